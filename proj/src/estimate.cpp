// Copyright 2026 The qmetro Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qmetro/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qmetro {

std::vector<long long> sample_outcomes(const StatePoint& point, const Povm& povm, long long n_c,
                                       std::uint64_t seed) {
    const OutcomeDistribution dist = outcome_distribution(point, povm);
    const int m = povm.size();
    std::vector<double> cdf(m);
    double acc = 0.0;
    for (int w = 0; w < m; ++w) {
        acc += std::max(dist.probabilities[w], 0.0);
        cdf[w] = acc;
    }
    if (acc <= 0.0) throw InvalidState("sample_outcomes: outcome distribution sums to zero");
    // acc == 1 up to rounding; normalize out the residue.
    for (double& c : cdf) c /= acc;

    std::vector<long long> counts(m, 0);
    Rng rng(seed);
    for (long long shot = 0; shot < n_c; ++shot) {
        const double u = rng.uniform01();
        const int w = static_cast<int>(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        ++counts[std::min(w, m - 1)];
    }
    return counts;
}

namespace {

double wrap_into(double value, const Interval& iv) {
    if (!iv.periodic) return value;
    const double width = iv.width();
    double v = std::fmod(value - iv.lo, width);
    if (v < 0) v += width;
    return iv.lo + v;
}

// Signed difference a - b, on the circle for periodic coordinates.
double wrapped_diff(double a, double b, const Interval& iv) {
    double d = a - b;
    if (!iv.periodic) return d;
    const double width = iv.width();
    d = std::fmod(d, width);
    if (d > width / 2.0) d -= width;
    if (d < -width / 2.0) d += width;
    return d;
}

double log_likelihood(const Model& model, const Povm& povm, const std::vector<long long>& counts,
                      const RealVector& x) {
    const Matrix rho = model.state(x);
    double ll = 0.0;
    for (int w = 0; w < povm.size(); ++w) {
        if (counts[w] == 0) continue;
        double p = (povm.elements[w] * rho).trace().real();
        p = std::max(p, 1e-300);
        ll += static_cast<double>(counts[w]) * std::log(p);
    }
    return ll;
}

}  // namespace

MleResult mle_fit(const Model& model, const Povm& povm, const std::vector<long long>& counts,
                  int grid_points) {
    if (static_cast<int>(counts.size()) != povm.size())
        throw DimensionMismatch("mle_fit: counts/POVM size mismatch");
    const int n = model.n_params;
    const int g = std::max(grid_points, 2);

    // Coarse scan.
    std::vector<int> idx(n, 0);
    RealVector best_x(n);
    double best_ll = -std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, RealVector>> top;  // for flatness detection
    RealVector x(n);
    bool done = false;
    while (!done) {
        for (int i = 0; i < n; ++i) {
            const Interval& iv = model.domain[i];
            // periodic axes: endpoints identified, avoid double-counting
            const double denom = iv.periodic ? g : (g - 1);
            x[i] = iv.lo + iv.width() * idx[i] / denom;
        }
        const double ll = log_likelihood(model, povm, counts, x);
        top.push_back({ll, x});
        if (ll > best_ll) {
            best_ll = ll;
            best_x = x;
        }
        done = true;
        for (int i = 0; i < n; ++i) {
            if (++idx[i] < g) {
                done = false;
                break;
            }
            idx[i] = 0;
        }
    }

    // Flatness: a near-optimal plateau far from the maximizer.
    MleResult res;
    const double flat_tol = 1e-9 * (1.0 + std::abs(best_ll));
    double plateau_spread = 0.0;
    for (const auto& [ll, pt] : top) {
        if (best_ll - ll > flat_tol) continue;
        double dist = 0.0;
        for (int i = 0; i < n; ++i) {
            const double step = model.domain[i].width() / g;
            dist = std::max(dist, std::abs(wrapped_diff(pt[i], best_x[i], model.domain[i])) / step);
        }
        plateau_spread = std::max(plateau_spread, dist);
    }
    if (plateau_spread > 1.5) res.degenerate = true;

    // Compass refinement.
    RealVector cur = best_x;
    double cur_ll = best_ll;
    double step = 1.0 / g;  // in units of domain width per axis
    while (step > 1e-8) {
        bool improved = false;
        for (int i = 0; i < n; ++i) {
            const Interval& iv = model.domain[i];
            for (double sgn : {1.0, -1.0}) {
                RealVector trial = cur;
                trial[i] = wrap_into(cur[i] + sgn * step * iv.width(), iv);
                if (!iv.periodic) trial[i] = std::clamp(trial[i], iv.lo, iv.hi);
                const double ll = log_likelihood(model, povm, counts, trial);
                if (ll > cur_ll + 1e-13 * std::abs(cur_ll)) {
                    cur = trial;
                    cur_ll = ll;
                    improved = true;
                }
            }
        }
        if (!improved) step /= 2.0;
    }

    res.x = cur;
    res.log_likelihood = cur_ll;
    for (int i = 0; i < n; ++i) {
        const Interval& iv = model.domain[i];
        if (!iv.periodic && (std::abs(cur[i] - iv.lo) < 1e-7 * iv.width() ||
                             std::abs(cur[i] - iv.hi) < 1e-7 * iv.width()))
            res.on_boundary = true;
    }
    return res;
}

CovarianceReport run_trials(const TrialConfig& cfg) {
    if (cfg.n_c < 1 || cfg.n_trials < 1) throw InvalidSpec("run_trials: need n_c >= 1 and n_trials >= 1");
    const StatePoint point = evaluate(cfg.model, cfg.true_x);
    const int n = cfg.model.n_params;

    CovarianceReport rep;
    rep.total_trials = cfg.n_trials;

    const FisherReport fr = fisher_report(point);
    const CfimResult cf = cfim(point, cfg.povm);
    rep.inv_qfim = fr.qfim.completeOrthogonalDecomposition().pseudoInverse();
    rep.inv_cfim = cf.matrix.completeOrthogonalDecomposition().pseudoInverse();

    RealMatrix mse = RealMatrix::Zero(n, n);
    RealVector mean = RealVector::Zero(n);
    int used = 0;
    for (int t = 0; t < cfg.n_trials; ++t) {
        const std::uint64_t trial_seed = Rng::child_seed(cfg.seed, static_cast<std::uint64_t>(t));
        const std::vector<long long> counts = sample_outcomes(point, cfg.povm, cfg.n_c, trial_seed);
        const MleResult fit = mle_fit(cfg.model, cfg.povm, counts, cfg.grid_points);
        if (fit.degenerate || fit.on_boundary) {
            ++rep.excluded_trials;
            continue;
        }
        RealVector resid(n);
        for (int i = 0; i < n; ++i) resid[i] = wrapped_diff(fit.x[i], cfg.true_x[i], cfg.model.domain[i]);
        mse += resid * resid.transpose();
        mean += fit.x;
        rep.estimates.push_back(fit.x);
        ++used;
    }
    if (used == 0) throw Error("run_trials: every trial was excluded");
    rep.mean_estimate = mean / used;
    rep.scaled_cov = static_cast<double>(cfg.n_c) * mse / used;
    rep.valid = rep.excluded_trials <= 0.01 * cfg.n_trials;

    rep.ratio_to_cfim.resize(n);
    rep.ratio_to_qfim.resize(n);
    for (int i = 0; i < n; ++i) {
        rep.ratio_to_cfim[i] = rep.scaled_cov(i, i) / rep.inv_cfim(i, i);
        rep.ratio_to_qfim[i] = rep.scaled_cov(i, i) / rep.inv_qfim(i, i);
    }
    return rep;
}

}  // namespace qmetro
