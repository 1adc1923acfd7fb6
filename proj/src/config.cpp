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

#include "qmetro/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace qmetro {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& what) {
    std::ostringstream os;
    os << origin << ":" << line << ": " << what;
    throw ConfigError(os.str());
}

double to_double(const std::string& tok, const std::string& origin, int line) {
    try {
        size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size()) fail(origin, line, "bad number '" + tok + "'");
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        fail(origin, line, "bad number '" + tok + "'");
    }
}

bool is_number(const std::string& tok) {
    try {
        size_t pos = 0;
        (void)std::stod(tok, &pos);
        return pos == tok.size();
    } catch (...) {
        return false;
    }
}

}  // namespace

const ConfigFile::Section* ConfigFile::find(const std::string& name) const {
    for (const Section& s : sections)
        if (s.name == name) return &s;
    return nullptr;
}

std::vector<const ConfigFile::Section*> ConfigFile::find_all(const std::string& name) const {
    std::vector<const Section*> out;
    for (const Section& s : sections)
        if (s.name == name) out.push_back(&s);
    return out;
}

ConfigFile parse_config_text(const std::string& text, const std::string& origin) {
    ConfigFile cfg;
    ConfigFile::Section* cur = &cfg.top;
    std::istringstream is(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(origin, lineno, "unterminated section header");
            const std::vector<std::string> parts = split_ws(line.substr(1, line.size() - 2));
            if (parts.empty()) fail(origin, lineno, "empty section header");
            ConfigFile::Section s;
            s.name = parts[0];
            for (size_t i = 1; i < parts.size(); ++i) s.arg += (i > 1 ? " " : "") + parts[i];
            s.line = lineno;
            cfg.sections.push_back(std::move(s));
            cur = &cfg.sections.back();
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(origin, lineno, "expected 'key = value'");
        ConfigFile::Entry e;
        e.key = trim(line.substr(0, eq));
        e.tokens = split_ws(line.substr(eq + 1));
        e.line = lineno;
        if (e.key.empty()) fail(origin, lineno, "empty key");
        if (e.tokens.empty()) fail(origin, lineno, "empty value for '" + e.key + "'");
        cur->entries.push_back(std::move(e));
    }
    return cfg;
}

ConfigFile parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

namespace {

Matrix parse_matrix_tokens(const std::vector<std::string>& toks, int dim, const std::string& origin,
                           int line) {
    if (static_cast<int>(toks.size()) != 2 * dim * dim)
        fail(origin, line, "matrix needs " + std::to_string(2 * dim * dim) +
                               " numbers (row-major re/im pairs), got " + std::to_string(toks.size()));
    Matrix m(dim, dim);
    int t = 0;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            const double re = to_double(toks[t], origin, line), im = to_double(toks[t + 1], origin, line);
            m(i, j) = Complex(re, im);
            t += 2;
        }
    return m;
}

void check_keys(const ConfigFile::Section& s, const std::set<std::string>& allowed,
                const std::string& origin) {
    for (const auto& e : s.entries)
        if (!allowed.count(e.key))
            fail(origin, e.line, "unknown key '" + e.key + "' in section [" + s.name + "]");
}

}  // namespace

Model load_model_file(const std::string& path) {
    const ConfigFile cfg = parse_config_file(path);
    int dim = 0, n_params = 0;
    std::vector<double> domain;
    for (const auto& e : cfg.top.entries) {
        if (e.key == "dim")
            dim = static_cast<int>(to_double(e.tokens[0], path, e.line));
        else if (e.key == "n_params")
            n_params = static_cast<int>(to_double(e.tokens[0], path, e.line));
        else if (e.key == "domain")
            for (const auto& t : e.tokens) domain.push_back(to_double(t, path, e.line));
        else
            fail(path, e.line, "unknown key '" + e.key + "'");
    }
    if (dim < 1 || n_params < 1) throw ConfigError(path + ": need dim >= 1 and n_params >= 1");
    if (static_cast<int>(domain.size()) != 2 * n_params)
        throw ConfigError(path + ": domain needs lo/hi per parameter");

    const ConfigFile::Section* rho0_sec = cfg.find("rho0");
    if (!rho0_sec || rho0_sec->entries.size() != 1 || rho0_sec->entries[0].key != "matrix")
        throw ConfigError(path + ": needs a [rho0] section with one 'matrix' entry");
    const Matrix rho0 =
        parse_matrix_tokens(rho0_sec->entries[0].tokens, dim, path, rho0_sec->entries[0].line);

    std::vector<Matrix> derivs(n_params);
    std::vector<bool> seen(n_params, false);
    for (const ConfigFile::Section* s : cfg.find_all("partial")) {
        const int k = s->arg.empty() ? -1 : static_cast<int>(to_double(s->arg, path, s->line));
        if (k < 1 || k > n_params) fail(path, s->line, "[partial k] needs k in 1.." + std::to_string(n_params));
        if (s->entries.size() != 1 || s->entries[0].key != "matrix")
            fail(path, s->line, "[partial] needs exactly one 'matrix' entry");
        derivs[k - 1] = parse_matrix_tokens(s->entries[0].tokens, dim, path, s->entries[0].line);
        seen[k - 1] = true;
    }
    for (int k = 0; k < n_params; ++k)
        if (!seen[k]) throw ConfigError(path + ": missing [partial " + std::to_string(k + 1) + "]");

    Model m;
    m.name = "file:" + path;
    m.dim = dim;
    m.n_params = n_params;
    for (int i = 0; i < n_params; ++i) m.domain.push_back({domain[2 * i], domain[2 * i + 1], false});
    m.state = [rho0, derivs](const RealVector& x) {
        Matrix r = rho0;
        for (size_t k = 0; k < derivs.size(); ++k) r += x[static_cast<int>(k)] * derivs[k];
        return r;
    };
    m.partials = [derivs](const RealVector&) { return derivs; };
    return m;
}

Povm load_povm_file(const std::string& path) {
    const ConfigFile cfg = parse_config_file(path);
    int dim = 0;
    for (const auto& e : cfg.top.entries) {
        if (e.key == "dim")
            dim = static_cast<int>(to_double(e.tokens[0], path, e.line));
        else
            fail(path, e.line, "unknown key '" + e.key + "'");
    }
    if (dim < 1) throw ConfigError(path + ": needs dim >= 1");
    Povm povm;
    for (const ConfigFile::Section* s : cfg.find_all("element")) {
        if (s->entries.size() != 1 || s->entries[0].key != "matrix")
            fail(path, s->line, "[element] needs exactly one 'matrix' entry");
        povm.elements.push_back(parse_matrix_tokens(s->entries[0].tokens, dim, path, s->entries[0].line));
        povm.labels.push_back(s->arg.empty() ? "e" + std::to_string(povm.elements.size()) : s->arg);
    }
    if (povm.elements.empty()) throw ConfigError(path + ": no [element] sections");
    const PovmReport rep = validate_povm(povm);
    if (!rep.ok())
        throw ConfigError(path + ": POVM invalid (completeness defect " +
                          std::to_string(rep.completeness_defect) + ")");
    return povm;
}

void save_povm_file(const std::string& path, const Povm& povm) {
    std::ofstream out(path);
    if (!out) throw ConfigError(path + ": cannot write");
    out.precision(17);
    out << "dim = " << povm.dim() << "\n";
    for (int w = 0; w < povm.size(); ++w) {
        out << "[element " << povm.labels[w] << "]\nmatrix =";
        for (int i = 0; i < povm.dim(); ++i)
            for (int j = 0; j < povm.dim(); ++j)
                out << " " << povm.elements[w](i, j).real() << " " << povm.elements[w](i, j).imag();
        out << "\n";
    }
}

RunConfig load_run_config(const std::string& path, const std::string& command) {
    const ConfigFile cfg = parse_config_file(path);
    RunConfig rc;
    rc.command = command;

    for (const auto& e : cfg.top.entries) {
        if (e.key == "command") {
            if (e.tokens[0] != command)
                fail(path, e.line, "config is for command '" + e.tokens[0] + "', invoked as '" + command + "'");
        } else {
            fail(path, e.line, "unknown top-level key '" + e.key + "'");
        }
    }

    static const std::set<std::string> known_sections{"model", "target", "povm", "simulate", "output"};
    const std::set<std::string> allowed_by_command =
        (command == "analyze")  ? std::set<std::string>{"model", "target", "output"}
        : (command == "povm-eval") ? std::set<std::string>{"model", "target", "povm", "output"}
        : (command == "fig3")      ? std::set<std::string>{"output"}
        : (command == "simulate")  ? std::set<std::string>{"model", "target", "povm", "simulate", "output"}
        : (command == "asymmetry") ? std::set<std::string>{"model", "target", "output"}
                                   : std::set<std::string>{};
    for (const auto& s : cfg.sections) {
        if (!known_sections.count(s.name)) fail(path, s.line, "unknown section [" + s.name + "]");
        if (!allowed_by_command.count(s.name))
            fail(path, s.line, "section [" + s.name + "] not allowed for command '" + command + "'");
    }

    if (const auto* s = cfg.find("model")) {
        for (const auto& e : s->entries) {
            if (e.key == "zoo") {
                rc.model_spec.name = e.tokens[0];
            } else if (e.key == "file") {
                rc.model_file = e.tokens[0];
            } else if (e.tokens.size() == 1 && is_number(e.tokens[0])) {
                rc.model_spec.scalars[e.key] = to_double(e.tokens[0], path, e.line);
            } else if (e.tokens.size() == 1) {
                rc.model_spec.strings[e.key] = e.tokens[0];
            } else {
                std::vector<double> v;
                for (const auto& t : e.tokens) v.push_back(to_double(t, path, e.line));
                rc.model_spec.vectors[e.key] = std::move(v);
            }
        }
        if (rc.model_spec.name.empty() && rc.model_file.empty())
            fail(path, s->line, "[model] needs 'zoo = <name>' or 'file = <path>'");
    } else if (command != "fig3") {
        throw ConfigError(path + ": missing [model] section");
    }

    if (const auto* s = cfg.find("target")) {
        check_keys(*s, {"x", "grid"}, path);
        for (const auto& e : s->entries) {
            if (e.key == "x") {
                RealVector x(e.tokens.size());
                for (size_t i = 0; i < e.tokens.size(); ++i) x[i] = to_double(e.tokens[i], path, e.line);
                rc.targets.push_back(std::move(x));
            } else {  // grid: per-axis lo:hi:count tokens
                for (const auto& t : e.tokens) {
                    GridAxis ax;
                    const auto c1 = t.find(':'), c2 = t.rfind(':');
                    if (c1 == std::string::npos || c2 == c1)
                        fail(path, e.line, "grid axis must be lo:hi:count, got '" + t + "'");
                    ax.lo = to_double(t.substr(0, c1), path, e.line);
                    ax.hi = to_double(t.substr(c1 + 1, c2 - c1 - 1), path, e.line);
                    ax.count = static_cast<int>(to_double(t.substr(c2 + 1), path, e.line));
                    if (ax.count < 1) fail(path, e.line, "grid count must be >= 1");
                    rc.grid.push_back(ax);
                }
            }
        }
    }

    if (const auto* s = cfg.find("povm")) {
        check_keys(*s, {"canonical", "file", "invariant", "rotations", "seed"}, path);
        for (const auto& e : s->entries) {
            if (e.key == "canonical") rc.povm.canonical = e.tokens[0];
            if (e.key == "file") rc.povm.file = e.tokens[0];
            if (e.key == "invariant") rc.povm.invariant = (e.tokens[0] == "true" || e.tokens[0] == "1");
            if (e.key == "rotations") rc.povm.rotations = static_cast<int>(to_double(e.tokens[0], path, e.line));
            if (e.key == "seed") rc.povm.seed = static_cast<std::uint64_t>(to_double(e.tokens[0], path, e.line));
        }
        const int sources = (!rc.povm.canonical.empty()) + (!rc.povm.file.empty()) + rc.povm.invariant;
        if (sources != 1) fail(path, s->line, "[povm] needs exactly one of canonical / file / invariant");
    }

    if (const auto* s = cfg.find("simulate")) {
        check_keys(*s, {"n_c", "n_trials", "seed", "grid"}, path);
        for (const auto& e : s->entries) {
            if (e.key == "n_c") rc.n_c = static_cast<long long>(to_double(e.tokens[0], path, e.line));
            if (e.key == "n_trials") rc.n_trials = static_cast<int>(to_double(e.tokens[0], path, e.line));
            if (e.key == "seed") rc.seed = static_cast<std::uint64_t>(to_double(e.tokens[0], path, e.line));
            if (e.key == "grid") rc.mle_grid = static_cast<int>(to_double(e.tokens[0], path, e.line));
        }
    }

    if (const auto* s = cfg.find("output")) {
        check_keys(*s, {"dir"}, path);
        for (const auto& e : s->entries)
            if (e.key == "dir") rc.out_dir = e.tokens[0];
    }
    return rc;
}

Model build_model(const RunConfig& cfg) {
    if (!cfg.model_file.empty()) return load_model_file(cfg.model_file);
    return make_model(cfg.model_spec);
}

Povm build_povm(const RunConfig& cfg, const Model& model) {
    if (!cfg.povm.canonical.empty()) return canonical_basis(cfg.povm.canonical, cfg.model_spec);
    if (!cfg.povm.file.empty()) {
        Povm p = load_povm_file(cfg.povm.file);
        if (p.dim() != model.dim) throw ConfigError("POVM file dimension does not match the model");
        return p;
    }
    if (cfg.povm.invariant) {
        if (!cfg.model_file.empty())
            throw ConfigError("the invariant POVM recipe needs a zoo model with a documented symmetry");
        const Antiunitary gas = canonical_gas(cfg.model_spec);
        return invariant_povm(gas, cfg.povm.rotations, cfg.povm.seed);
    }
    throw ConfigError("no POVM selected");
}

std::vector<RealVector> expand_targets(const RunConfig& cfg, const Model& model) {
    std::vector<RealVector> pts = cfg.targets;
    if (!cfg.grid.empty()) {
        if (static_cast<int>(cfg.grid.size()) != model.n_params)
            throw ConfigError("grid axis count does not match the model parameter count");
        std::vector<int> idx(cfg.grid.size(), 0);
        bool done = false;
        while (!done) {
            RealVector x(cfg.grid.size());
            for (size_t i = 0; i < cfg.grid.size(); ++i) {
                const GridAxis& ax = cfg.grid[i];
                x[i] = (ax.count == 1) ? ax.lo : ax.lo + (ax.hi - ax.lo) * idx[i] / (ax.count - 1);
            }
            pts.push_back(std::move(x));
            done = true;
            for (size_t i = 0; i < cfg.grid.size(); ++i) {
                if (++idx[i] < cfg.grid[i].count) {
                    done = false;
                    break;
                }
                idx[i] = 0;
            }
        }
    }
    if (pts.empty()) throw ConfigError("no target points: provide [target] x = ... or grid = ...");
    for (const RealVector& x : pts)
        if (x.size() != model.n_params) throw ConfigError("target point has wrong parameter count");
    return pts;
}

}  // namespace qmetro
