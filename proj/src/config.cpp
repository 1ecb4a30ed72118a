#include "ckm/config.hpp"

#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace ckm {

namespace {

struct Entry {
    std::string value;
    int line;
};

using Sections = std::map<std::string, std::vector<std::pair<std::string, Entry>>>;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw validation_error("config line " + std::to_string(line) + ": " + msg);
}

double to_number(const Entry& e, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(e.value, &pos);
        if (pos != e.value.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        fail(e.line, "key '" + key + "' expects a number, got '" + e.value + "'");
    }
}

bool to_bool(const Entry& e, const std::string& key) {
    if (e.value == "true" || e.value == "1" || e.value == "on") return true;
    if (e.value == "false" || e.value == "0" || e.value == "off") return false;
    fail(e.line, "key '" + key + "' expects true/false, got '" + e.value + "'");
}

std::vector<double> to_numbers(const Entry& e, const std::string& key) {
    std::istringstream is(e.value);
    std::vector<double> out;
    std::string tok;
    while (is >> tok) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(tok, &pos));
            if (pos != tok.size()) throw std::invalid_argument("");
        } catch (...) {
            fail(e.line, "key '" + key + "' expects numbers, got '" + tok + "'");
        }
    }
    return out;
}

std::complex<double> to_complex(const Entry& e, const std::string& key) {
    const auto v = to_numbers(e, key);
    if (v.size() == 1) return {v[0], 0.0};
    if (v.size() == 2) return {v[0], v[1]};
    fail(e.line, "key '" + key + "' expects 're' or 're im'");
}

Sections tokenize(const std::string& text) {
    static const std::map<std::string, std::set<std::string>> kAllowed = {
        {"run", {"command"}},
        {"system", {"preset", "n", "g", "d"}},
        {"grid", {"x_min", "x_max", "h"}},
        {"time", {"t_end", "tau", "snapshots", "stability_margin", "a_max",
                  "allow_tau_above_max", "type4_over_2h"}},
        {"initial", {"family", "a", "r", "m", "c1", "c2", "d1", "d2", "components",
                     "path", "zero_components"}},
        {"output", {"directory", "csv", "svg", "long_format", "errors"}},
        {"residual", {"kind", "fd_step", "x", "t"}},
        {"converge", {"h_list"}},
        {"singularities", {"t_min", "t_max", "resolution"}},
    };

    Sections out;
    std::istringstream is(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto cut = line.find_first_of("#;");
        if (cut != std::string::npos) line = line.substr(0, cut);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(lineno, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (!kAllowed.count(section)) fail(lineno, "unknown section [" + section + "]");
            out.try_emplace(section);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(lineno, "expected 'key = value'");
        if (section.empty()) fail(lineno, "key outside any section");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!kAllowed.at(section).count(key))
            fail(lineno, "unknown key '" + key + "' in section [" + section + "]");
        if (value.empty()) fail(lineno, "empty value for key '" + key + "'");
        out[section].emplace_back(key, Entry{value, lineno});
    }
    return out;
}

// Single-valued lookup; repeated keys are an error except g/d/…
const Entry* find_one(const Sections& s, const std::string& sec, const std::string& key,
                      bool repeatable = false) {
    const auto it = s.find(sec);
    if (it == s.end()) return nullptr;
    const Entry* found = nullptr;
    for (const auto& [k, e] : it->second) {
        if (k != key) continue;
        if (found && !repeatable) fail(e.line, "duplicate key '" + key + "'");
        found = &e;
    }
    return found;
}

}  // namespace

bool InitialSpec::operator==(const InitialSpec& o) const {
    auto key = [](const InitialSpec& s) {
        std::ostringstream os;
        os << s.family << '|' << s.csv_path << '|' << static_cast<int>(s.solution.kind) << '|'
           << s.solution.params.a << s.solution.params.c1 << s.solution.params.c2
           << s.solution.params.d1 << s.solution.params.d2 << '|'
           << (s.solution.params.r ? *s.solution.params.r : -1e300) << '|' << s.solution.m << '|'
           << s.solution.zero_components << '|';
        for (int c : s.solution.components) os << c << ',';
        return os.str();
    };
    return key(*this) == key(o);
}

bool RunConfig::operator==(const RunConfig& o) const {
    return command == o.command && preset == o.preset
           && explicit_coefficients == o.explicit_coefficients && x_min == o.x_min
           && x_max == o.x_max && h == o.h && t_end == o.t_end
           && stepper.tau == o.stepper.tau && stepper.auto_tau == o.stepper.auto_tau
           && stepper.stability_margin == o.stepper.stability_margin
           && stepper.a_max == o.stepper.a_max
           && stepper.allow_tau_above_max == o.stepper.allow_tau_above_max
           && stepper.type4_over_2h == o.stepper.type4_over_2h
           && snapshots == o.snapshots && initial == o.initial && output == o.output
           && residual_kind == o.residual_kind && fd_step == o.fd_step
           && residual_x == o.residual_x && residual_t == o.residual_t && h_list == o.h_list
           && sing_t_min == o.sing_t_min && sing_t_max == o.sing_t_max
           && sing_resolution == o.sing_resolution;
}

CoefficientSet RunConfig::system_coefficients() const {
    if (explicit_coefficients) return *explicit_coefficients;
    if (preset.empty()) throw validation_error("no system given: set [system] preset or g/d entries");
    return preset_system(preset).coefficients;
}

RunConfig parse_config(const std::string& text) {
    const Sections s = tokenize(text);
    RunConfig cfg;

    const Entry* cmd = find_one(s, "run", "command");
    if (!cmd) throw validation_error("config needs [run] command = ...");
    const std::string& c = cmd->value;
    if (c == "simulate") cfg.command = Subcommand::simulate;
    else if (c == "analytic") cfg.command = Subcommand::analytic;
    else if (c == "residual") cfg.command = Subcommand::residual;
    else if (c == "converge") cfg.command = Subcommand::converge;
    else if (c == "stability") cfg.command = Subcommand::stability;
    else if (c == "singularities") cfg.command = Subcommand::singularities;
    else fail(cmd->line, "unknown command '" + c + "'");

    if (const Entry* e = find_one(s, "system", "preset")) {
        preset_system(e->value);  // validates the name
        cfg.preset = e->value;
    }
    if (s.count("system")) {
        std::optional<int> n;
        if (const Entry* e = find_one(s, "system", "n"))
            n = static_cast<int>(to_number(*e, "n"));
        std::vector<std::pair<const Entry*, bool>> entries;  // (entry, is_g)
        for (const auto& [k, e] : s.at("system")) {
            if (k == "g") entries.emplace_back(&e, true);
            else if (k == "d") entries.emplace_back(&e, false);
        }
        if (!entries.empty()) {
            if (!cfg.preset.empty())
                fail(entries.front().first->line, "give either a preset or explicit g/d entries, not both");
            if (!n) fail(entries.front().first->line, "explicit coefficients need [system] n = <components>");
            CoefficientSet coeffs(*n);
            for (auto [e, is_g] : entries) {
                const auto v = to_numbers(*e, is_g ? "g" : "d");
                try {
                    if (is_g) {
                        if (v.size() != 5) throw validation_error("g entries are 'n l m k value'");
                        coeffs.set_g(static_cast<int>(v[0]), static_cast<int>(v[1]),
                                     static_cast<int>(v[2]), static_cast<int>(v[3]), v[4]);
                    } else {
                        if (v.size() != 2) throw validation_error("d entries are 'n value'");
                        coeffs.set_d(static_cast<int>(v[0]), v[1]);
                    }
                } catch (const validation_error& err) {
                    fail(e->line, err.what());
                }
            }
            cfg.explicit_coefficients = std::move(coeffs);
        }
    }

    if (const Entry* e = find_one(s, "grid", "x_min")) cfg.x_min = to_number(*e, "x_min");
    if (const Entry* e = find_one(s, "grid", "x_max")) cfg.x_max = to_number(*e, "x_max");
    if (const Entry* e = find_one(s, "grid", "h")) {
        cfg.h = to_number(*e, "h");
        if (!(cfg.h > 0.0)) fail(e->line, "grid spacing h must be positive");
    }
    if (!(cfg.x_max > cfg.x_min))
        throw validation_error("grid requires x_max > x_min");

    if (const Entry* e = find_one(s, "time", "t_end")) {
        cfg.t_end = to_number(*e, "t_end");
        if (cfg.t_end < 0.0) fail(e->line, "t_end must be nonnegative");
    }
    if (const Entry* e = find_one(s, "time", "tau")) {
        if (e->value == "auto") {
            cfg.stepper.auto_tau = true;
        } else {
            cfg.stepper.auto_tau = false;
            cfg.stepper.tau = to_number(*e, "tau");
            if (!(cfg.stepper.tau > 0.0)) fail(e->line, "tau must be positive or 'auto'");
        }
    }
    if (const Entry* e = find_one(s, "time", "snapshots")) cfg.snapshots = to_numbers(*e, "snapshots");
    if (const Entry* e = find_one(s, "time", "stability_margin")) {
        cfg.stepper.stability_margin = to_number(*e, "stability_margin");
        if (!(cfg.stepper.stability_margin > 0.0 && cfg.stepper.stability_margin <= 1.0))
            fail(e->line, "stability_margin must lie in (0, 1]");
    }
    if (const Entry* e = find_one(s, "time", "a_max")) cfg.stepper.a_max = to_number(*e, "a_max");
    if (const Entry* e = find_one(s, "time", "allow_tau_above_max"))
        cfg.stepper.allow_tau_above_max = to_bool(*e, "allow_tau_above_max");
    if (const Entry* e = find_one(s, "time", "type4_over_2h"))
        cfg.stepper.type4_over_2h = to_bool(*e, "type4_over_2h");
    for (double t : cfg.snapshots)
        if (t < 0.0 || t > cfg.t_end + 1e-14)
            throw validation_error("snapshot times must lie within [0, t_end]");

    if (s.count("initial")) {
        const Entry* fam = find_one(s, "initial", "family");
        if (!fam) throw validation_error("[initial] needs family = ...");
        cfg.initial.family = fam->value;
        auto& sol = cfg.initial.solution;
        auto& p = sol.params;
        if (const Entry* e = find_one(s, "initial", "a")) {
            const auto a = to_complex(*e, "a");
            if (std::abs(a) == 0.0) fail(e->line, "spectral parameter a must be nonzero");
            p.a = a;
        }
        if (const Entry* e = find_one(s, "initial", "c1")) p.c1 = to_complex(*e, "c1");
        if (const Entry* e = find_one(s, "initial", "c2")) p.c2 = to_complex(*e, "c2");
        if (const Entry* e = find_one(s, "initial", "d1")) p.d1 = to_complex(*e, "d1");
        if (const Entry* e = find_one(s, "initial", "d2")) p.d2 = to_complex(*e, "d2");
        if (const Entry* e = find_one(s, "initial", "r")) {
            const double r = to_number(*e, "r");
            p = ClosedFormParams::from_ratio(p.a.real(), r);
        }
        if (const Entry* e = find_one(s, "initial", "m")) sol.m = to_number(*e, "m");
        if (const Entry* e = find_one(s, "initial", "components")) {
            for (double v : to_numbers(*e, "components")) {
                if (v < 1.0 || v != std::floor(v)) fail(e->line, "components are 1-based indices");
                sol.components.push_back(static_cast<int>(v));
            }
        }
        if (const Entry* e = find_one(s, "initial", "zero_components"))
            sol.zero_components = static_cast<int>(to_number(*e, "zero_components"));
        if (const Entry* e = find_one(s, "initial", "path")) cfg.initial.csv_path = e->value;

        const std::string& f = fam->value;
        if (f == "two-component") sol.kind = FamilyKind::two_component;
        else if (f == "three-component") sol.kind = FamilyKind::three_component;
        else if (f == "r-family") sol.kind = FamilyKind::r_family;
        else if (f == "complex-case") sol.kind = FamilyKind::complex_case;
        else if (f == "zero") sol.kind = FamilyKind::zero;
        else if (f == "csv") {
            if (cfg.initial.csv_path.empty()) fail(fam->line, "family csv needs path = ...");
        } else fail(fam->line, "unknown family '" + f + "'");
        if (f == "r-family" && !p.r) fail(fam->line, "r-family needs r = ...");
    }

    if (const Entry* e = find_one(s, "output", "directory")) cfg.output.directory = e->value;
    if (const Entry* e = find_one(s, "output", "csv")) cfg.output.csv = to_bool(*e, "csv");
    if (const Entry* e = find_one(s, "output", "svg")) cfg.output.svg = to_bool(*e, "svg");
    if (const Entry* e = find_one(s, "output", "long_format"))
        cfg.output.long_format = to_bool(*e, "long_format");
    if (const Entry* e = find_one(s, "output", "errors")) cfg.output.errors = to_bool(*e, "errors");

    if (const Entry* e = find_one(s, "residual", "kind")) {
        if (e->value == "pde") cfg.residual_kind = ResidualKind::pde;
        else if (e->value == "two-component") cfg.residual_kind = ResidualKind::two_component;
        else if (e->value == "compat") cfg.residual_kind = ResidualKind::compat;
        else fail(e->line, "unknown residual kind '" + e->value + "'");
    }
    if (const Entry* e = find_one(s, "residual", "fd_step")) {
        cfg.fd_step = to_number(*e, "fd_step");
        if (!(cfg.fd_step > 0.0)) fail(e->line, "fd_step must be positive");
    }
    if (const Entry* e = find_one(s, "residual", "x")) cfg.residual_x = to_numbers(*e, "x");
    if (const Entry* e = find_one(s, "residual", "t")) cfg.residual_t = to_numbers(*e, "t");

    if (const Entry* e = find_one(s, "converge", "h_list")) {
        cfg.h_list = to_numbers(*e, "h_list");
        for (double h : cfg.h_list)
            if (!(h > 0.0)) fail(e->line, "h_list entries must be positive");
    }

    if (const Entry* e = find_one(s, "singularities", "t_min")) cfg.sing_t_min = to_number(*e, "t_min");
    if (const Entry* e = find_one(s, "singularities", "t_max")) cfg.sing_t_max = to_number(*e, "t_max");
    if (const Entry* e = find_one(s, "singularities", "resolution")) {
        cfg.sing_resolution = static_cast<int>(to_number(*e, "resolution"));
        if (cfg.sing_resolution < 2) fail(e->line, "resolution must be at least 2");
    }

    // Per-command requirements, checked before any run starts.
    switch (cfg.command) {
        case Subcommand::simulate:
            cfg.system_coefficients();
            if (!(cfg.t_end > 0.0)) throw validation_error("simulate needs t_end > 0");
            break;
        case Subcommand::converge:
            cfg.system_coefficients();
            if (cfg.h_list.size() < 3)
                throw validation_error("converge needs [converge] h_list with at least 3 levels");
            if (!(cfg.t_end > 0.0)) throw validation_error("converge needs t_end > 0");
            break;
        case Subcommand::residual:
            if (cfg.residual_x.empty() || cfg.residual_t.empty())
                throw validation_error("residual needs [residual] x and t sample lists");
            if (cfg.residual_kind == ResidualKind::pde) cfg.system_coefficients();
            break;
        case Subcommand::stability:
            cfg.system_coefficients();
            break;
        case Subcommand::analytic:
        case Subcommand::singularities:
            break;
    }
    return cfg;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_complex(std::complex<double> v) {
    return fmt(v.real()) + " " + fmt(v.imag());
}

}  // namespace

const char* subcommand_name(Subcommand c) {
    switch (c) {
        case Subcommand::simulate: return "simulate";
        case Subcommand::analytic: return "analytic";
        case Subcommand::residual: return "residual";
        case Subcommand::converge: return "converge";
        case Subcommand::stability: return "stability";
        case Subcommand::singularities: return "singularities";
    }
    return "?";
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream os;
    os << "[run]\ncommand = " << subcommand_name(cfg.command) << "\n";

    os << "[system]\n";
    if (!cfg.preset.empty()) os << "preset = " << cfg.preset << "\n";
    if (cfg.explicit_coefficients) {
        const auto& c = *cfg.explicit_coefficients;
        os << "n = " << c.n_components() << "\n";
        for (int n = 1; n <= c.n_components(); ++n) {
            for (int l = 1; l <= 5; ++l)
                for (int m = 1; m <= c.n_components(); ++m)
                    for (int k = 1; k <= c.n_components(); ++k)
                        if (c.g(n, l, m, k) != 0.0)
                            os << "g = " << n << " " << l << " " << m << " " << k << " "
                               << fmt(c.g(n, l, m, k)) << "\n";
            if (c.d(n) != 0.0) os << "d = " << n << " " << fmt(c.d(n)) << "\n";
        }
    }

    os << "[grid]\nx_min = " << fmt(cfg.x_min) << "\nx_max = " << fmt(cfg.x_max)
       << "\nh = " << fmt(cfg.h) << "\n";

    os << "[time]\nt_end = " << fmt(cfg.t_end) << "\ntau = ";
    if (cfg.stepper.auto_tau) os << "auto\n";
    else os << fmt(cfg.stepper.tau) << "\n";
    if (!cfg.snapshots.empty()) {
        os << "snapshots =";
        for (double t : cfg.snapshots) os << " " << fmt(t);
        os << "\n";
    }
    os << "stability_margin = " << fmt(cfg.stepper.stability_margin) << "\n"
       << "a_max = " << fmt(cfg.stepper.a_max) << "\n"
       << "allow_tau_above_max = " << (cfg.stepper.allow_tau_above_max ? "true" : "false") << "\n"
       << "type4_over_2h = " << (cfg.stepper.type4_over_2h ? "true" : "false") << "\n";

    os << "[initial]\nfamily = " << cfg.initial.family << "\n";
    const auto& sol = cfg.initial.solution;
    if (cfg.initial.family != "csv") {
        if (sol.params.r) {
            os << "a = " << fmt(sol.params.a.real()) << "\nr = " << fmt(*sol.params.r) << "\n";
        } else {
            os << "a = " << fmt_complex(sol.params.a) << "\n";
            os << "c1 = " << fmt_complex(sol.params.c1) << "\nc2 = " << fmt_complex(sol.params.c2)
               << "\nd1 = " << fmt_complex(sol.params.d1) << "\nd2 = " << fmt_complex(sol.params.d2)
               << "\n";
        }
        if (sol.kind == FamilyKind::complex_case) os << "m = " << fmt(sol.m) << "\n";
        if (sol.kind == FamilyKind::zero) os << "zero_components = " << sol.zero_components << "\n";
        if (!sol.components.empty()) {
            os << "components =";
            for (int c : sol.components) os << " " << c;
            os << "\n";
        }
    } else {
        os << "path = " << cfg.initial.csv_path << "\n";
    }

    os << "[output]\ndirectory = " << cfg.output.directory << "\ncsv = "
       << (cfg.output.csv ? "true" : "false") << "\nsvg = " << (cfg.output.svg ? "true" : "false")
       << "\nlong_format = " << (cfg.output.long_format ? "true" : "false") << "\nerrors = "
       << (cfg.output.errors ? "true" : "false") << "\n";

    os << "[residual]\nkind = "
       << (cfg.residual_kind == ResidualKind::pde ? "pde"
           : cfg.residual_kind == ResidualKind::two_component ? "two-component" : "compat")
       << "\nfd_step = " << fmt(cfg.fd_step) << "\n";
    if (!cfg.residual_x.empty()) {
        os << "x =";
        for (double v : cfg.residual_x) os << " " << fmt(v);
        os << "\n";
    }
    if (!cfg.residual_t.empty()) {
        os << "t =";
        for (double v : cfg.residual_t) os << " " << fmt(v);
        os << "\n";
    }

    if (!cfg.h_list.empty()) {
        os << "[converge]\nh_list =";
        for (double v : cfg.h_list) os << " " << fmt(v);
        os << "\n";
    }

    os << "[singularities]\nt_min = " << fmt(cfg.sing_t_min) << "\nt_max = " << fmt(cfg.sing_t_max)
       << "\nresolution = " << cfg.sing_resolution << "\n";
    return os.str();
}

}  // namespace ckm
