#include "cli.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qca/debruijn.h"
#include "qca/errors.h"
#include "qca/families.h"
#include "qca/oracle.h"
#include "qca/rule_io.h"
#include "qca/transfer.h"
#include "qca/unitarity.h"

namespace qca::cli {

namespace {

using nlohmann::json;

// Largest state the simulator will allocate, in amplitudes.
constexpr size_t kSimulationCap = size_t{1} << 24;

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x == 0 ? 0.0 : x);
    return buf;
}

struct Globals {
    std::optional<double> tolerance;
    bool json = false;
    uint64_t seed = 0;
};

class Runner {
   public:
    Runner(std::istream &in, std::ostream &out) : in_(in), out_(out) {
    }

    RuleTable load_rule(const std::string &path) const {
        std::string text;
        if (path == "-") {
            std::ostringstream ss;
            ss << in_.rdbuf();
            text = ss.str();
        } else {
            std::ifstream f(path);
            if (!f) {
                throw InputError("cannot open rule file '" + path + "'");
            }
            std::ostringstream ss;
            ss << f.rdbuf();
            text = ss.str();
        }
        try {
            return parse_rule(text, globals.tolerance);
        } catch (const InputError &e) {
            throw InputError(path + ": " + e.what());
        }
    }

    Globals globals;

    // verify
    std::string verify_file;
    std::string verify_mode = "periodic";
    size_t max_reports = 100;

    int verify() {
        RuleTable rule = load_rule(verify_file);
        CheckOptions options;
        options.max_reports = max_reports;
        Verdict v = verify_mode == "periodic" ? check_periodic(rule, options) : check_infinite(rule, options);
        if (globals.json) {
            out_ << to_json(v).dump(2) << "\n";
        } else {
            out_ << (v.unitary ? "unitary" : "not unitary") << " (" << verify_mode << ")\n";
            for (const auto &r : v.reports) {
                out_ << "  " << describe(r) << "\n";
            }
        }
        return v.unitary ? kOk : kNotUnitary;
    }

    // oracle
    std::string oracle_file;
    int oracle_sites = 0;
    int oracle_offset = 0;
    bool defect_only = false;
    double threshold = 1e-8;

    int oracle() {
        RuleTable rule = load_rule(oracle_file);
        auto f = global_matrix(rule, oracle_sites, {oracle_offset});
        double defect = unitarity_defect(f);
        bool ok = defect <= threshold;
        json entries = json::array();
        if (!defect_only) {
            for (Eigen::Index c = 0; c < f.entries.cols(); c++) {
                for (Eigen::Index r = 0; r < f.entries.rows(); r++) {
                    Amplitude a = f.entries(r, c);
                    if (a == Amplitude(0)) {
                        continue;
                    }
                    entries.push_back({{"to", LocalConfig::from_index(f.q, f.sites, r).str()},
                                       {"from", LocalConfig::from_index(f.q, f.sites, c).str()},
                                       {"value", amplitude_to_json(a)}});
                }
            }
        }
        if (globals.json) {
            json j = {{"sites", oracle_sites}, {"dimension", f.entries.rows()}, {"defect", defect}, {"unitary", ok}};
            if (!defect_only) {
                j["entries"] = entries;
            }
            out_ << j.dump(2) << "\n";
        } else {
            out_ << "N=" << oracle_sites << " dimension " << f.entries.rows() << " defect " << num(defect) << "\n";
            for (const auto &e : entries) {
                Amplitude a = amplitude_from_json(e["value"], "value");
                out_ << "  " << e["to"].get<std::string>() << " <- " << e["from"].get<std::string>() << "  "
                     << format_amplitude(a) << "\n";
            }
        }
        return ok ? kOk : kNotUnitary;
    }

    // simulate
    std::string sim_file;
    int sim_sites = 0;
    int sim_steps = 0;
    int sim_offset = 0;
    std::string initial;
    int top = 8;

    StateVector initial_state(int q) const {
        bool config_string = static_cast<int>(initial.size()) == sim_sites &&
                             std::all_of(initial.begin(), initial.end(), [](char c) { return std::isalnum(c); });
        if (config_string) {
            try {
                return basis_state(q, LocalConfig::parse(q, initial));
            } catch (const InputError &) {
                // fall through to a state file of that name
            }
        }
        std::ifstream f(initial);
        if (!f) {
            throw InputError("initial state '" + initial + "' is neither a configuration of length " +
                             std::to_string(sim_sites) + " nor a readable state file");
        }
        json j;
        try {
            j = json::parse(f);
        } catch (const json::parse_error &e) {
            throw InputError(initial + ": " + e.what());
        }
        size_t dim = ipow(q, sim_sites);
        if (!j.is_array() || j.size() != dim) {
            throw InputError(initial + ": expected an array of " + std::to_string(dim) + " [re, im] pairs");
        }
        ComplexVector v(dim);
        for (size_t i = 0; i < dim; i++) {
            v(i) = amplitude_from_json(j[i], initial + "[" + std::to_string(i) + "]");
        }
        return {sim_sites, q, v};
    }

    json snapshot(const StateVector &s, int step) const {
        std::vector<double> p(s.amplitudes.size());
        for (size_t i = 0; i < p.size(); i++) {
            p[i] = std::norm(s.amplitudes(i));
        }
        std::vector<size_t> order(p.size());
        std::iota(order.begin(), order.end(), 0);
        size_t m = std::min<size_t>(top, p.size());
        std::partial_sort(order.begin(), order.begin() + m, order.end(), [&](size_t a, size_t b) {
            return p[a] != p[b] ? p[a] > p[b] : a < b;
        });
        json best = json::array();
        for (size_t i = 0; i < m; i++) {
            best.push_back({{"config", LocalConfig::from_index(s.q, s.sites, order[i]).str()}, {"p", p[order[i]]}});
        }
        return {{"step", step}, {"norm", norm(s)}, {"top", best}};
    }

    int simulate() {
        RuleTable rule = load_rule(sim_file);
        if (sim_sites < 1 || sim_steps < 0 || top < 0) {
            throw InputError("--sites must be positive, --steps and -m non-negative");
        }
        if (sim_sites > 40 || ipow(rule.q(), sim_sites) > kSimulationCap) {
            throw ResourceError("state of " + std::to_string(sim_sites) + " sites exceeds the simulation cap of " +
                                std::to_string(kSimulationCap) + " amplitudes");
        }
        StateVector s = initial_state(rule.q());
        json steps = json::array();
        for (int t = 0;; t++) {
            json snap = snapshot(s, t);
            if (globals.json) {
                steps.push_back(snap);
            } else {
                out_ << "step " << t << " norm " << num(snap["norm"]) << "\n";
                for (const auto &b : snap["top"]) {
                    out_ << "  " << b["config"].get<std::string>() << " " << num(b["p"]) << "\n";
                }
            }
            if (t == sim_steps) {
                break;
            }
            s = apply_global(rule, s, {sim_offset});
        }
        if (globals.json) {
            out_ << json{{"sites", sim_sites}, {"steps", steps}}.dump(2) << "\n";
        }
        return kOk;
    }

    // family
    std::string family_name;
    std::vector<std::string> family_params;
    bool family_list = false;
    bool family_random = false;

    int family() {
        if (family_list) {
            if (globals.json) {
                json j = json::array();
                for (const auto &f : family_catalog()) {
                    json ps = json::array();
                    for (const auto &p : f.params) {
                        ps.push_back({{"name", p.name}, {"default", p.default_value}, {"description", p.description}});
                    }
                    j.push_back({{"name", f.name}, {"summary", f.summary}, {"params", ps}});
                }
                out_ << j.dump(2) << "\n";
            } else {
                for (const auto &f : family_catalog()) {
                    out_ << f.name << ": " << f.summary << "\n";
                    for (const auto &p : f.params) {
                        out_ << "  " << p.name << " = " << num(p.default_value) << "  " << p.description << "\n";
                    }
                }
            }
            return kOk;
        }
        if (family_name.empty()) {
            throw InputError("family needs a name or --list");
        }
        FamilySpec spec{family_name, {}};
        if (family_random) {
            std::mt19937_64 rng(globals.seed);
            spec = sample_family(family_name, rng);
        }
        for (const auto &kv : family_params) {
            auto eq = kv.find('=');
            if (eq == std::string::npos || eq == 0) {
                throw InputError("--param expects key=value, got '" + kv + "'");
            }
            std::string value = kv.substr(eq + 1);
            size_t used = 0;
            double x;
            try {
                x = std::stod(value, &used);
            } catch (const std::exception &) {
                used = 0;
            }
            if (used == 0 || used != value.size()) {
                throw InputError("--param " + kv.substr(0, eq) + ": '" + value + "' is not a number");
            }
            spec.params[kv.substr(0, eq)] = x;
        }
        RuleTable rule = make_family(spec);
        if (globals.tolerance) {
            rule = rule.with_tolerance(*globals.tolerance);
        }
        out_ << rule_to_json(rule).dump(2) << "\n";
        return kOk;
    }

    // graph
    std::string graph_file;
    std::string graph_which = "g1";

    int graph() {
        RuleTable rule = load_rule(graph_file);
        WeightedDiGraph g = graph_which == "g1" || graph_which == "d1" ? build_g1(rule) : build_g2(rule);
        if (graph_which == "m") {
            auto in_m = edge_set_predicate(g, EdgeSet::kM);
            std::vector<Edge> kept;
            for (const auto &e : g.edges()) {
                if (in_m(e)) {
                    kept.push_back(e);
                }
            }
            g = WeightedDiGraph(g.kind(), g.q(), g.k(), kept);
        } else if (graph_which == "d1" || graph_which == "d2") {
            auto sector = deterministic_sector(rule);
            if (sector.empty()) {
                throw NoDeterministicSector();
            }
            g = subgraph_d(g, sector);
        }
        out_ << to_dot(g);
        return kOk;
    }

    // paths
    std::string paths_file;
    int max_len = 4;

    int paths() {
        RuleTable rule = load_rule(paths_file);
        if (max_len < 1) {
            throw InputError("--max-len must be at least 1");
        }
        json j = json::array();
        for (int n = 1; n <= max_len; n++) {
            auto ms = path_monomials(rule, n);
            if (globals.json) {
                json list = json::array();
                for (const auto &m : ms) {
                    list.push_back({{"monomial", m.str()}, {"value", amplitude_to_json(m.evaluate(rule))}});
                }
                j.push_back({{"length", n}, {"monomials", list}});
            } else {
                out_ << "length " << n << ": " << ms.size() << " monomials\n";
                for (const auto &m : ms) {
                    out_ << "  " << m.str() << " = " << format_amplitude(m.evaluate(rule)) << "\n";
                }
            }
        }
        if (globals.json) {
            out_ << j.dump(2) << "\n";
        }
        return kOk;
    }

    // zpoly
    std::string zpoly_file;
    std::string zpoly_which = "g1";
    std::string convention = "raw";
    int trace_order = 0;

    int zpoly() {
        RuleTable rule = load_rule(zpoly_file);
        auto g = zpoly_which == "g1" ? build_g1(rule) : build_g2(rule);
        auto a = transfer_matrix(g, convention == "raw" ? Convention::kRaw : Convention::kSimplified);
        auto z = z_polynomial(a);
        std::optional<WeightPolynomial> tr;
        if (trace_order > 0) {
            tr = trace_series(z, trace_order);
        }
        if (globals.json) {
            json j = {{"graph", zpoly_which}, {"convention", convention}, {"z", json::array()}};
            for (auto c : z.coefficients) {
                j["z"].push_back(amplitude_to_json(c));
            }
            if (tr) {
                j["trace"] = json::array();
                for (auto c : tr->coefficients) {
                    j["trace"].push_back(amplitude_to_json(c));
                }
            }
            out_ << j.dump(2) << "\n";
        } else {
            out_ << "Z(t) = " << z.str() << "\n";
            if (tr) {
                out_ << "Tr A(t) = " << tr->str() << "\n";
            }
        }
        return kOk;
    }

   private:
    std::istream &in_;
    std::ostream &out_;
};

}  // namespace

int run(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err) {
    Runner r(in, out);
    CLI::App app{"Unitarity checker for one-dimensional quantum cellular automata", "qca"};
    app.require_subcommand(1);
    app.add_option("--tolerance", r.globals.tolerance, "Zero/one tolerance for amplitudes")
        ->check(CLI::PositiveNumber);
    app.add_flag("--json", r.globals.json, "Machine-readable output");
    app.add_option("--seed", r.globals.seed, "Seed for randomized sampling");

    auto *verify = app.add_subcommand("verify", "Decide unitarity from the rule table");
    verify->fallthrough();
    verify->add_option("rule", r.verify_file, "Rule file, or - for stdin")->required();
    verify->add_option("--mode", r.verify_mode)->check(CLI::IsMember({"periodic", "infinite"}));
    verify->add_option("--max-reports", r.max_reports, "Violations kept per condition");

    auto *oracle = app.add_subcommand("oracle", "Build the global matrix on Z_N");
    oracle->fallthrough();
    oracle->add_option("rule", r.oracle_file)->required();
    oracle->add_option("--sites,-N", r.oracle_sites)->required();
    oracle->add_option("--offset", r.oracle_offset, "Neighbourhood starts at x + offset");
    oracle->add_flag("--defect-only", r.defect_only);
    oracle->add_option("--threshold", r.threshold, "Largest defect still reported as unitary");

    auto *simulate = app.add_subcommand("simulate", "Evolve a state on Z_N");
    simulate->fallthrough();
    simulate->add_option("rule", r.sim_file)->required();
    simulate->add_option("--sites,-N", r.sim_sites)->required();
    simulate->add_option("--steps,-T", r.sim_steps)->required();
    simulate->add_option("--initial", r.initial, "Configuration string or JSON state file")->required();
    simulate->add_option("--offset", r.sim_offset);
    simulate->add_option("-m", r.top, "Probabilities shown per step");

    auto *family = app.add_subcommand("family", "Emit a rule from a named family");
    family->fallthrough();
    family->add_option("name", r.family_name);
    family->add_option("--param", r.family_params, "key=value")->allow_extra_args(false);
    family->add_flag("--list", r.family_list);
    family->add_flag("--random", r.family_random, "Draw parameters using --seed");

    auto *graph = app.add_subcommand("graph", "DOT export of a de Bruijn graph");
    graph->fallthrough();
    graph->add_option("rule", r.graph_file)->required();
    graph->add_option("--which", r.graph_which)->check(CLI::IsMember({"g1", "g2", "m", "d1", "d2"}));

    auto *paths = app.add_subcommand("paths", "Acyclic path monomials of the mismatch graph");
    paths->fallthrough();
    paths->add_option("rule", r.paths_file)->required();
    paths->add_option("--max-len", r.max_len);

    auto *zpoly = app.add_subcommand("zpoly", "Coefficients of det(I - tA)");
    zpoly->fallthrough();
    zpoly->add_option("rule", r.zpoly_file)->required();
    zpoly->add_option("--which", r.zpoly_which)->check(CLI::IsMember({"g1", "g2"}));
    zpoly->add_option("--convention", r.convention)->check(CLI::IsMember({"raw", "simplified"}));
    zpoly->add_option("--trace-order", r.trace_order, "Also expand Tr A(t) up to this order");

    std::vector<std::string> argv_store{"qca"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char *> argv;
    for (const auto &a : argv_store) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kUsageError;
    }

    try {
        if (*verify) return r.verify();
        if (*oracle) return r.oracle();
        if (*simulate) return r.simulate();
        if (*family) return r.family();
        if (*graph) return r.graph();
        if (*paths) return r.paths();
        if (*zpoly) return r.zpoly();
    } catch (const ResourceError &e) {
        err << "error: " << e.what() << "\n";
        return kResourceError;
    } catch (const InputError &e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const NoDeterministicSector &e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }
    return kUsageError;
}

}  // namespace qca::cli
