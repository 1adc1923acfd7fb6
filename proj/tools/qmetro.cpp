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

#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmetro/config.hpp"
#include "qmetro/estimate.hpp"
#include "qmetro/fisher.hpp"
#include "qmetro/report.hpp"
#include "qmetro/symmetry.hpp"
#include "qmetro/zoo.hpp"

namespace qm = qmetro;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

std::string out_path(const std::string& dir, const std::string& file) {
    if (dir.empty()) return file;
    fs::create_directories(dir);
    return (fs::path(dir) / file).string();
}

json matrix_to_json(const qm::RealMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

json vector_to_json(const qm::RealVector& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

std::string point_str(const qm::RealVector& x) {
    std::string s = "(";
    for (Eigen::Index i = 0; i < x.size(); ++i) s += (i ? ", " : "") + qm::format_double(x[i]);
    return s + ")";
}

int cmd_analyze(const std::string& config_path, const std::string& out_dir) {
    const qm::RunConfig cfg = qm::load_run_config(config_path, "analyze");
    const qm::Model model = qm::build_model(cfg);
    const std::vector<qm::RealVector> targets = qm::expand_targets(cfg, model);

    std::optional<qm::Antiunitary> gas;
    if (cfg.model_file.empty()) {
        try {
            gas = qm::canonical_gas(cfg.model_spec);
        } catch (const qm::NoKnownGas& e) {
            std::cout << "canonical GAS: none (" << e.what() << ")\n";
        } catch (const qm::UnknownName&) {
        }
    }
    if (gas) {
        const qm::SymmetryVerdict v = qm::verify_gas(model, *gas, targets);
        std::cout << "canonical GAS verification over " << targets.size()
                  << " point(s): " << (v.found() ? "PASS" : "FAIL")
                  << " (residual " << qm::format_double(v.residual) << ")\n";
    }

    json out;
    out["schema_version"] = 1;
    out["model"] = model.name;
    out["points"] = json::array();
    for (const qm::RealVector& x : targets) {
        const qm::StatePoint pt = qm::evaluate(model, x);
        const qm::FisherReport rep = qm::fisher_report(pt);
        std::cout << "\npoint x = " << point_str(x) << "\n";
        std::cout << "QFIM:\n" << qm::format_real_matrix(rep.qfim);
        std::cout << "mean Uhlmann curvature:\n" << qm::format_real_matrix(rep.uhlmann);
        std::cout << "weakly_commutative = " << (rep.weakly_commutative ? "true" : "false")
                  << ", quasi_classical = " << (rep.quasi_classical ? "true" : "false")
                  << ", partially_commutative = " << (rep.partially_commutative ? "true" : "false")
                  << " (tolerance " << qm::format_double(rep.tolerance) << ")\n";

        json jp;
        jp["x"] = vector_to_json(x);
        jp["qfim"] = matrix_to_json(rep.qfim);
        jp["uhlmann"] = matrix_to_json(rep.uhlmann);
        jp["weakly_commutative"] = rep.weakly_commutative;
        jp["quasi_classical"] = rep.quasi_classical;
        jp["partially_commutative"] = rep.partially_commutative;
        jp["flag_tolerance"] = rep.tolerance;

        const qm::SymmetryVerdict las = qm::find_las(pt);
        switch (las.status) {
            case qm::SymmetryVerdict::Status::found: {
                std::cout << "LAS: found (witness residual " << qm::format_double(las.residual) << ")\n";
                jp["las"] = "found";
                jp["las_residual"] = las.residual;
                break;
            }
            case qm::SymmetryVerdict::Status::not_found: {
                std::cout << "LAS: not found";
                if (!las.certificate_cycle.empty()) {
                    std::cout << "; inconsistent phase cycle [";
                    for (size_t i = 0; i < las.certificate_cycle.size(); ++i)
                        std::cout << (i ? " " : "") << las.certificate_cycle[i];
                    std::cout << "] defect " << qm::format_double(las.cycle_defect) << " rad";
                }
                std::cout << "\n";
                jp["las"] = "not_found";
                jp["las_cycle"] = las.certificate_cycle;
                break;
            }
            case qm::SymmetryVerdict::Status::inconclusive:
                std::cout << "LAS: inconclusive (" << las.message << ")\n";
                jp["las"] = "inconclusive";
                break;
        }
        out["points"].push_back(jp);
    }
    const std::string dir = out_dir.empty() ? cfg.out_dir : out_dir;
    if (!dir.empty()) {
        std::ofstream f(out_path(dir, "analyze.json"));
        f << out.dump(2) << "\n";
    }
    return 0;
}

int cmd_povm_eval(const std::string& config_path, const std::string& out_dir) {
    const qm::RunConfig cfg = qm::load_run_config(config_path, "povm-eval");
    const qm::Model model = qm::build_model(cfg);
    const qm::Povm povm = qm::build_povm(cfg, model);
    const std::vector<qm::RealVector> targets = qm::expand_targets(cfg, model);

    const std::string dir = out_dir.empty() ? cfg.out_dir : out_dir;
    std::vector<std::string> cols;
    for (int i = 0; i < model.n_params; ++i) cols.push_back("x" + std::to_string(i + 1));
    cols.insert(cols.end(), {"efficiency", "divergent", "yang_all_pass"});
    qm::CsvWriter csv(out_path(dir, "povm_eval.csv"), "povm-eval", cols);

    int shown = 0;
    for (const qm::RealVector& x : targets) {
        const qm::StatePoint pt = qm::evaluate(model, x);
        const qm::CfimResult cf = qm::cfim(pt, povm);
        const qm::Efficiency eff = qm::qcrb_efficiency(pt, povm);

        std::string yang = "n/a";
        bool yang_all = false;
        try {
            const qm::SldSet slds = qm::compute_sld(pt);
            const auto verdicts = qm::yang_optimality_check(pt, slds, povm);
            yang_all = true;
            int pass = 0;
            for (const auto& v : verdicts) {
                yang_all = yang_all && v.pass;
                pass += v.pass;
            }
            yang = std::to_string(pass) + "/" + std::to_string(verdicts.size()) + " elements pass";
        } catch (const qm::NotPure&) {
        }

        if (shown < 5) {
            std::cout << "x = " << point_str(x) << "\n";
            std::cout << "CFIM:\n" << qm::format_real_matrix(cf.matrix);
            std::cout << "efficiency = " << qm::format_double(eff.min_ratio) << ", yang: " << yang << "\n";
            ++shown;
        }
        for (int i = 0; i < model.n_params; ++i) csv.cell(x[i]);
        csv.cell(eff.min_ratio);
        csv.cell(static_cast<long long>(cf.divergent));
        csv.cell(yang == "n/a" ? std::string("n/a") : std::string(yang_all ? "1" : "0"));
        csv.end_row();
    }
    if (static_cast<int>(targets.size()) > shown)
        std::cout << "... (" << targets.size() << " points total, see povm_eval.csv)\n";
    return 0;
}

int cmd_fig3(const std::string& out_dir) {
    const double eta0 = 3.0 * std::numbers::pi / 4.0;
    const std::vector<double> phis{std::numbers::pi / 8.0, std::numbers::pi / 4.0};
    const std::vector<std::string> bases{"gisin", "antiparallel_product"};

    qm::CsvWriter csv(out_path(out_dir, "fig3.csv"), "fig3",
                      {"delta", "basis", "eta", "phi", "dev_phi2", "bound"});
    for (int step = 0; step <= 90; ++step) {
        const double delta = step * 0.01;
        qm::ZooSpec spec;
        spec.name = "antiparallel_depolarized";
        spec.scalars["delta"] = delta;
        const qm::Model model = qm::make_model(spec);
        for (const std::string& basis : bases) {
            const qm::Povm povm = qm::canonical_basis(basis, spec);
            for (const double phi : phis) {
                qm::RealVector x(2);
                x << eta0, phi;
                const qm::StatePoint pt = qm::evaluate(model, x);
                const qm::CfimResult cf = qm::cfim(pt, povm);
                const double dev = 1.0 / cf.matrix(1, 1);
                const double s = std::sin(eta0);
                const double bound = 1.0 / (2.0 * (1.0 - delta) * (1.0 - delta) * s * s);
                csv.cell(delta);
                csv.cell(basis);
                csv.cell(eta0);
                csv.cell(phi);
                csv.cell(dev);
                csv.cell(bound);
                csv.end_row();
            }
        }
    }
    std::cout << "wrote fig3.csv (91 deltas x 2 bases x 2 target points)\n";
    return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir,
                 std::optional<std::uint64_t> seed_override) {
    const qm::RunConfig cfg = qm::load_run_config(config_path, "simulate");
    qm::TrialConfig tc;
    tc.model = qm::build_model(cfg);
    tc.povm = qm::build_povm(cfg, tc.model);
    const std::vector<qm::RealVector> targets = qm::expand_targets(cfg, tc.model);
    if (targets.size() != 1) throw qm::ConfigError("simulate: needs exactly one target point");
    tc.true_x = targets[0];
    tc.n_c = cfg.n_c;
    tc.n_trials = cfg.n_trials;
    tc.grid_points = cfg.mle_grid;

    bool seed_generated = false;
    if (seed_override) {
        tc.seed = *seed_override;
    } else if (cfg.seed) {
        tc.seed = *cfg.seed;
    } else {
        tc.seed = std::random_device{}();
        seed_generated = true;
    }

    const qm::CovarianceReport rep = qm::run_trials(tc);

    const std::string dir = out_dir.empty() ? cfg.out_dir : out_dir;
    std::vector<std::string> cols{"trial"};
    for (int i = 0; i < tc.model.n_params; ++i) cols.push_back("x" + std::to_string(i + 1));
    qm::CsvWriter csv(out_path(dir, "trials.csv"), "simulate-trials", cols);
    for (size_t t = 0; t < rep.estimates.size(); ++t) {
        csv.cell(static_cast<long long>(t));
        for (int i = 0; i < tc.model.n_params; ++i) csv.cell(rep.estimates[t][i]);
        csv.end_row();
    }

    json summary;
    summary["schema_version"] = 1;
    summary["model"] = tc.model.name;
    summary["true_x"] = vector_to_json(tc.true_x);
    summary["n_c"] = tc.n_c;
    summary["n_trials"] = tc.n_trials;
    summary["seed"] = tc.seed;
    summary["seed_generated"] = seed_generated;
    summary["excluded_trials"] = rep.excluded_trials;
    summary["valid"] = rep.valid;
    summary["mean_estimate"] = vector_to_json(rep.mean_estimate);
    summary["scaled_covariance"] = matrix_to_json(rep.scaled_cov);
    summary["inv_cfim"] = matrix_to_json(rep.inv_cfim);
    summary["inv_qfim"] = matrix_to_json(rep.inv_qfim);
    summary["ratio_to_inv_cfim"] = vector_to_json(rep.ratio_to_cfim);
    summary["ratio_to_inv_qfim"] = vector_to_json(rep.ratio_to_qfim);
    std::ofstream f(out_path(dir, "summary.json"));
    f << summary.dump(2) << "\n";

    std::cout << "N_C * covariance (diagonal vs 1/F_Q):";
    for (int i = 0; i < tc.model.n_params; ++i)
        std::cout << " " << qm::format_double(rep.scaled_cov(i, i)) << "/"
                  << qm::format_double(rep.inv_qfim(i, i));
    std::cout << "\nexcluded " << rep.excluded_trials << " of " << tc.n_trials
              << " trials; report " << (rep.valid ? "valid" : "INVALID (exclusions exceed 1%)") << "\n";
    return 0;
}

int cmd_asymmetry(const std::string& config_path, const std::string& out_dir) {
    const qm::RunConfig cfg = qm::load_run_config(config_path, "asymmetry");
    const qm::Model model = qm::build_model(cfg);
    const std::vector<qm::RealVector> targets = qm::expand_targets(cfg, model);

    const std::string dir = out_dir.empty() ? cfg.out_dir : out_dir;
    std::vector<std::string> cols;
    for (int i = 0; i < model.n_params; ++i) cols.push_back("x" + std::to_string(i + 1));
    cols.insert(cols.end(), {"m_sq", "m1_max", "m1_mean"});
    qm::CsvWriter csv(out_path(dir, "asymmetry.csv"), "asymmetry", cols);

    for (const qm::RealVector& x : targets) {
        const qm::StatePoint pt = qm::evaluate(model, x);
        const qm::AsymmetryReport rep = qm::asymmetry_measures(pt);
        for (int i = 0; i < model.n_params; ++i) csv.cell(x[i]);
        csv.cell(rep.m_sq);
        csv.cell(rep.m1_max);
        csv.cell(rep.m1_mean);
        csv.end_row();
    }
    std::cout << "wrote asymmetry.csv (" << targets.size() << " points)\n";
    return 0;
}

int cmd_zoo_list() {
    for (const qm::ZooEntry& e : qm::zoo_list()) {
        std::cout << e.name << "\n  params: " << e.params << "\n  GAS:    " << e.gas
                  << "\n  bases:  " << e.bases << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"imaginarity-free quantum multiparameter estimation toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::optional<std::uint64_t> seed;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* opt = sub->add_option("--config", config_path, "run configuration file");
        if (needs_config) opt->required();
        sub->add_option("--out", out_dir, "output directory");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "QFIM, Uhlmann curvature, LAS/GAS verdicts");
    add_common(analyze, true);
    CLI::App* povm_eval = app.add_subcommand("povm-eval", "CFIM, QCRB efficiency, optimality checks");
    add_common(povm_eval, true);
    CLI::App* fig3 = app.add_subcommand("fig3", "phase-deviation curves for depolarized antiparallel spins");
    add_common(fig3, false);
    CLI::App* simulate = app.add_subcommand("simulate", "Monte-Carlo sampling + maximum likelihood");
    add_common(simulate, true);
    simulate->add_option("--seed", seed, "override the config seed");
    CLI::App* asym = app.add_subcommand("asymmetry", "antiunitary asymmetry measures over target points");
    add_common(asym, true);
    CLI::App* zoo = app.add_subcommand("zoo", "model zoo utilities");
    CLI::App* zoo_list_cmd = zoo->add_subcommand("list", "print models, parameters, symmetries, bases");
    zoo->require_subcommand(1);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(analyze)) return cmd_analyze(config_path, out_dir);
        if (app.got_subcommand(povm_eval)) return cmd_povm_eval(config_path, out_dir);
        if (app.got_subcommand(fig3)) return cmd_fig3(out_dir);
        if (app.got_subcommand(simulate)) return cmd_simulate(config_path, out_dir, seed);
        if (app.got_subcommand(asym)) return cmd_asymmetry(config_path, out_dir);
        if (app.got_subcommand(zoo) && zoo->got_subcommand(zoo_list_cmd)) return cmd_zoo_list();
    } catch (const qm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const qm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
