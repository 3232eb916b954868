// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qca/debruijn.h"
#include "qca/families.h"
#include "qca/oracle.h"
#include "qca/surjectivity.h"
#include "qca/transfer.h"
#include "qca/unitarity.h"

using namespace qca;
using C = Amplitude;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string &what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

using LabelSets = std::multiset<std::multiset<std::string>>;

LabelSets cycle_labels(const WeightedDiGraph &g) {
    LabelSets out;
    for (const auto &c : enumerate_cycles(g)) {
        std::multiset<std::string> s;
        for (size_t e : c.edges) {
            s.insert(g.edge_label(e));
        }
        out.insert(s);
    }
    return out;
}

std::vector<std::string> monomial_strings(int q, int k, int n) {
    std::vector<std::string> out;
    for (const auto &m : path_monomials(q, k, n)) {
        out.push_back(m.str());
    }
    return out;
}

double max_defect(const RuleTable &rule, std::initializer_list<int> sizes) {
    double worst = 0;
    for (int n : sizes) {
        worst = std::max(worst, unitarity_defect(global_matrix(rule, n)));
    }
    return worst;
}

RuleTable random_rule(int q, int k, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    std::vector<C> data(ipow(q, k) * q);
    for (auto &a : data) {
        a = {g(rng), g(rng)};
    }
    return RuleTable(q, k, data);
}

C expi(double x) {
    return std::polar(1.0, x);
}

bool is_permutation(const ComplexMatrix &m) {
    for (Eigen::Index c = 0; c < m.cols(); c++) {
        int ones = 0;
        for (Eigen::Index r = 0; r < m.rows(); r++) {
            if (m(r, c) == C(1)) {
                ones++;
            } else if (m(r, c) != C(0)) {
                return false;
            }
        }
        if (ones != 1) {
            return false;
        }
    }
    return (m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() == 0;
}

// Shared between the family criteria and the covariance criterion.
struct Sample {
    std::string family;
    RuleTable rule;
    bool infinite;
};
std::vector<Sample> samples;

Outcome constraint_lists() {
    Outcome o;
    std::mt19937_64 rng(101);
    auto g2 = build_g1(random_rule(2, 2, rng));
    o.require(cycle_labels(g2) == LabelSets{{"00"}, {"11"}, {"01", "10"}}, "G1(2,2) cycles");
    auto g3 = build_g1(random_rule(2, 3, rng));
    LabelSets k3{{"000"},
                 {"111"},
                 {"010", "101"},
                 {"001", "010", "100"},
                 {"011", "101", "110"},
                 {"001", "011", "100", "110"}};
    o.require(cycle_labels(g3) == k3, "G1(2,3) cycles");
    o.require(path_monomials(2, 2, 1).empty(), "k=2 length-1 monomials");
    o.require(monomial_strings(2, 2, 2) ==
                  std::vector<std::string>{"w_{01}w_{02}", "w_{01}w_{13}", "w_{02}w_{23}", "w_{13}w_{23}"},
              "k=2 length-2 monomials");
    const std::vector<std::string> len3 = {
        "w_{01}w_{02}w_{04}", "w_{01}w_{02}w_{15}", "w_{01}w_{13}w_{26}", "w_{01}w_{13}w_{37}",
        "w_{02}w_{04}w_{45}", "w_{02}w_{15}w_{45}", "w_{04}w_{23}w_{46}", "w_{04}w_{46}w_{67}",
        "w_{13}w_{26}w_{45}", "w_{13}w_{37}w_{45}", "w_{15}w_{23}w_{46}", "w_{15}w_{46}w_{67}",
        "w_{23}w_{26}w_{57}", "w_{23}w_{37}w_{57}", "w_{26}w_{57}w_{67}", "w_{37}w_{57}w_{67}"};
    const std::vector<std::string> len4 = {
        "w_{01}w_{03}w_{04}w_{06}", "w_{01}w_{03}w_{06}w_{15}", "w_{01}w_{03}w_{17}w_{26}", "w_{01}w_{03}w_{17}w_{37}",
        "w_{01}w_{04}w_{12}w_{24}", "w_{01}w_{12}w_{15}w_{24}", "w_{01}w_{12}w_{26}w_{35}", "w_{01}w_{12}w_{35}w_{37}",
        "w_{03}w_{04}w_{06}w_{45}", "w_{03}w_{06}w_{15}w_{45}", "w_{03}w_{17}w_{26}w_{45}", "w_{03}w_{17}w_{37}w_{45}",
        "w_{04}w_{06}w_{23}w_{47}", "w_{04}w_{06}w_{47}w_{67}", "w_{04}w_{12}w_{24}w_{45}", "w_{04}w_{23}w_{24}w_{56}",
        "w_{04}w_{24}w_{56}w_{67}", "w_{06}w_{15}w_{23}w_{47}", "w_{06}w_{15}w_{47}w_{67}", "w_{12}w_{15}w_{24}w_{45}",
        "w_{12}w_{26}w_{35}w_{45}", "w_{12}w_{35}w_{37}w_{45}", "w_{15}w_{23}w_{24}w_{56}", "w_{15}w_{24}w_{56}w_{67}",
        "w_{17}w_{23}w_{26}w_{47}", "w_{17}w_{23}w_{37}w_{47}", "w_{17}w_{26}w_{47}w_{67}", "w_{17}w_{37}w_{47}w_{67}",
        "w_{23}w_{26}w_{35}w_{56}", "w_{23}w_{35}w_{37}w_{56}", "w_{26}w_{35}w_{56}w_{67}", "w_{35}w_{37}w_{56}w_{67}"};
    o.require(monomial_strings(2, 3, 3) == len3, "k=3 length-3 monomials");
    o.require(monomial_strings(2, 3, 4) == len4, "k=3 length-4 monomials");
    o.detail = o.pass ? "3 + 6 cycles, 4 + 16 + 32 monomials" : o.detail;
    return o;
}

Outcome generating_functions() {
    Outcome o;
    std::mt19937_64 rng(202);
    for (int t = 0; t < 20; t++) {
        auto rule = random_rule(2, 2, rng);
        C w0 = inner(rule, 0, 0), w1 = inner(rule, 1, 1), w2 = inner(rule, 2, 2), w3 = inner(rule, 3, 3);
        auto z = z_polynomial(transfer_matrix(build_g1(rule)));
        C expected[3] = {1.0, -(w0 + w3), w0 * w3 - w1 * w2};
        for (int i = 0; i < 3; i++) {
            o.require(std::abs(z.coefficient(i) - expected[i]) <= 1e-9, "A_1(2,2) denominator");
        }
        o.require(z.degree() <= 2, "A_1(2,2) degree");
    }
    const std::vector<C> frame_z{1.0, 0.0, -1.0, -2.0, -1.0};
    for (const char *name : {"f31", "f30"}) {
        for (int t = 0; t < 20; t++) {
            auto rule = make_family(sample_family(name, rng));
            auto a = transfer_matrix(build_g2(rule), Convention::kSimplified);
            auto z = z_polynomial(a);
            o.require(z.coefficients.size() == frame_z.size(), std::string(name) + " Z_2 degree: " + z.str());
            for (size_t i = 0; i < frame_z.size() && o.pass; i++) {
                o.require(std::abs(z.coefficients[i] - frame_z[i]) <= 1e-9, std::string(name) + " Z_2 coefficient");
            }
            auto tr = trace_series(a, 8);
            ComplexMatrix p = ComplexMatrix::Identity(a.rows(), a.cols());
            for (int n = 1; n <= 8; n++) {
                p = p * a;
                o.require(std::abs(tr.coefficient(n) - p.trace()) <= 1e-9, std::string(name) + " trace series");
            }
        }
    }
    if (o.pass) {
        o.detail = "Z_1 matches, frames give 1 - t^2 - 2t^3 - t^4, traces agree to n = 8";
    }
    return o;
}

Outcome periodic_soundness() {
    Outcome o;
    std::mt19937_64 rng(303);
    double worst = 0;
    for (const char *name : {"f21", "f31", "f30"}) {
        for (int t = 0; t < 100; t++) {
            auto rule = make_family(sample_family(name, rng));
            samples.push_back({name, rule, false});
            o.require(check_periodic(rule).unitary, std::string(name) + " rejected by the periodic check");
            double d = rule.k() == 2 ? max_defect(rule, {2, 3, 4}) : max_defect(rule, {3, 4});
            worst = std::max(worst, d);
            o.require(d <= 1e-8, std::string(name) + " oracle defect " + std::to_string(d));
        }
    }
    if (o.pass) {
        std::ostringstream s;
        s << "300 draws unitary, worst defect " << worst;
        o.detail = s.str();
    }
    return o;
}

Outcome infinite_soundness() {
    Outcome o;
    std::mt19937_64 rng(404);
    const std::pair<const char *, std::vector<std::string>> cases[] = {
        {"f21_00", {"00"}}, {"f31_000", {"000"}}, {"f31_000_111", {"000", "111"}}};
    for (const auto &[name, sector] : cases) {
        for (int t = 0; t < 100; t++) {
            auto rule = make_family(sample_family(name, rng));
            samples.push_back({name, rule, true});
            o.require(deterministic_sector(rule).labels() == sector, std::string(name) + " sector");
            auto v = check_infinite(rule);
            o.require(v.unitary, std::string(name) + " rejected: " + (v.reports.empty() ? "" : describe(v.reports[0])));
        }
    }
    if (o.pass) {
        o.detail = "300 draws unitary, sectors {00}, {000}, {000,111}";
    }
    return o;
}

Outcome negative_detection() {
    Outcome o;
    std::mt19937_64 rng(505);
    int flips = 0;
    for (int t = 0; t < 10; t++) {
        auto rule = make_family(sample_family("f21", rng));
        for (size_t slot = 0; slot < rule.data().size(); slot++) {
            auto data = rule.data();
            C a = data[slot];
            data[slot] += std::abs(a) > 0 ? 1e-3 * a / std::abs(a) : C(1e-3);
            RuleTable bad(2, 2, data);
            auto v = check_periodic(bad);
            o.require(!v.unitary && !v.reports.empty(), "perturbation of slot " + std::to_string(slot) + " missed");
            double d = unitarity_defect(global_matrix(bad, 4));
            o.require(d > 1e-5, "Z_4 defect " + std::to_string(d) + " after perturbation");
            flips++;
        }
    }
    auto spec = sample_family("f21_00", rng);
    spec.params["theta"] = std::numbers::pi / 2;
    auto v = check_infinite(make_family(spec));
    o.require(!v.unitary, "theta = pi/2 accepted");
    bool named = false;
    for (const auto &r : v.reports) {
        o.require(r.condition == ConditionId::kInfiniteSurjective, "theta = pi/2 fails " + describe(r));
        for (const auto &l : r.witness.labels) {
            named = named || l == "f(0|10)";
        }
    }
    o.require(named, "no witness names f(0|10)");
    if (o.pass) {
        o.detail = std::to_string(flips) + " perturbations flipped; theta = pi/2 fails only I-v at f(0|10)";
    }
    return o;
}

Outcome surjectivity_machinery() {
    Outcome o;
    std::mt19937_64 rng(606);
    auto zero = LocalConfig::parse(2, "00");
    for (int t = 0; t < 20; t++) {
        auto spec = sample_family("f21_00", rng);
        auto rule = make_family(spec);
        auto op = restricted_f(rule, zero, zero, zero, 1);
        ComplexMatrix expected(2, 2);
        expected << 1, 0, 0, expi(spec.params["phi1"] + spec.params["alpha"]) * std::cos(spec.params["theta"]);
        o.require(op.matrix.rows() == 2 && (op.matrix - expected).cwiseAbs().maxCoeff() <= 1e-9,
                  "restricted operator at n = 1");
        for (int n = 1; n <= 3; n++) {
            o.require(det_factorization_check(rule, zero, zero, zero, n), "factorization at n = " + std::to_string(n));
        }
    }
    if (o.pass) {
        o.detail = "20 draws, n = 1 operator and factorization for n = 1..3";
    }
    return o;
}

Outcome frame_property() {
    Outcome o;
    std::mt19937_64 rng(707);
    for (int j : {1, 2, 3}) {
        for (int t = 0; t < 50; t++) {
            auto rule = frame_rule(2, 4, j, random_frame_assignment(2, 4, j, rng));
            o.require(evaluate_condition(rule, ConditionId::kPeriodicMPath).empty(),
                      "frame j = " + std::to_string(j) + " has a mismatched path");
        }
    }
    if (o.pass) {
        o.detail = "150 frame assignments at k = 4 have no mismatched path";
    }
    return o;
}

Outcome patt_and_quantization() {
    Outcome o;
    auto patt = patt_rule();
    for (int n : {4, 5, 6}) {
        o.require(is_permutation(global_matrix(patt, n).entries), "patt at N = " + std::to_string(n));
    }
    std::mt19937_64 rng(808);
    double worst = 0;
    for (int t = 0; t < 10; t++) {
        auto rule = quantize(patt, random_unitary(2, rng));
        o.require(check_periodic(rule).unitary, "quantized rule rejected");
        double d = unitarity_defect(global_matrix(rule, 5));
        worst = std::max(worst, d);
        o.require(d <= 1e-8, "quantized defect " + std::to_string(d));
    }
    if (o.pass) {
        std::ostringstream s;
        s << "permutation at N = 4..6, 10 rotations unitary, worst defect " << worst;
        o.detail = s.str();
    }
    return o;
}

Outcome covariance() {
    Outcome o;
    const int swap[2] = {1, 0};
    size_t checked = 0;
    for (const auto &s : samples) {
        auto mirror = parity_transform(s.rule);
        auto flipped = state_transpose(s.rule, TransposeSide::kBoth, swap);
        bool p = check_periodic(s.rule).unitary;
        o.require(p == check_periodic(mirror).unitary, s.family + " periodic verdict under parity");
        o.require(p == check_periodic(flipped).unitary, s.family + " periodic verdict under transposition");
        if (s.infinite) {
            bool i = check_infinite(s.rule).unitary;
            o.require(i == check_infinite(mirror).unitary, s.family + " infinite verdict under parity");
            o.require(i == check_infinite(flipped).unitary, s.family + " infinite verdict under transposition");
        }
        checked++;
    }
    o.require(checked == 600, "expected 600 samples, have " + std::to_string(checked));
    if (o.pass) {
        o.detail = std::to_string(checked) + " samples agree under parity and state transposition";
    }
    return o;
}

Outcome conservation() {
    Outcome o;
    std::mt19937_64 rng(1010);
    std::normal_distribution<double> g;
    double drift = 0;
    for (int t = 0; t < 3; t++) {
        auto rule = make_family(sample_family("f21", rng));
        ComplexVector v(1024);
        for (auto &a : v) {
            a = {g(rng), g(rng)};
        }
        StateVector s{10, 2, v.normalized()};
        for (int step = 0; step < 100; step++) {
            s = apply_global(rule, s);
        }
        drift = std::max(drift, std::abs(norm(s) - 1));
        auto p = probabilities(s, 1e-7);
        double total = 0;
        for (double x : p) {
            total += x;
        }
        o.require(std::abs(total - 1) <= 1e-7, "probability sum");
    }
    o.require(drift <= 1e-7, "norm drift " + std::to_string(drift));
    if (o.pass) {
        std::ostringstream s;
        s << "N = 10, 100 steps, norm drift " << drift;
        o.detail = s.str();
    }
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        double budget_seconds;
        std::function<Outcome()> run;
    };
    const Criterion criteria[] = {
        {1, 1, constraint_lists},      {2, 5, generating_functions},    {3, 60, periodic_soundness},
        {4, 60, infinite_soundness},   {5, 30, negative_detection},     {6, 10, surjectivity_machinery},
        {7, 30, frame_property},       {8, 60, patt_and_quantization},  {9, 60, covariance},
        {10, 60, conservation},
    };
    int failures = 0;
    for (const auto &c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (o.pass && secs > c.budget_seconds) {
            o.pass = false;
            o.detail = "over the time budget of " + std::to_string(c.budget_seconds) + " s";
        }
        failures += !o.pass;
        std::printf("criterion %d: %s (%s; %.2f s)\n", c.id, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    }
    std::fflush(stdout);
    return failures == 0 ? 0 : 1;
}
