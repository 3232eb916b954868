#include "qca/families.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "qca/errors.h"

namespace qca {

namespace {

using C = Amplitude;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kTwoPi = 2 * std::numbers::pi;
const C kI{0, 1};

C expi(double x) {
    return std::polar(1.0, x);
}

std::vector<ParamSchema> angles(std::initializer_list<const char *> names) {
    std::vector<ParamSchema> out;
    for (const char *n : names) {
        out.push_back({n, 0.0, "angle"});
    }
    return out;
}

std::vector<ParamSchema> join(std::vector<ParamSchema> a, const std::vector<ParamSchema> &b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

const std::vector<ParamSchema> &derived_moduli() {
    static const std::vector<ParamSchema> v{{"r4", kNaN, "optional; must match the derived modulus"},
                                            {"r5", kNaN, "optional; must match the derived modulus"},
                                            {"r6", kNaN, "optional; must match the derived modulus"}};
    return v;
}

std::vector<FamilyInfo> build_catalog() {
    auto k2 = join(angles({"alpha", "beta", "theta", "phi1", "phi2"}), {{"rho", 1.0, "modulus, > 0"}});
    auto k2q = join(angles({"alpha", "beta", "theta", "phi1", "phi3"}), {{"rho", 1.0, "modulus, > 0"}});
    auto k3 = join(join(angles({"alpha", "beta", "theta"}),
                        {{"r1", 1.0, "modulus of z1"}, {"r2", 1.0, "modulus of z2"}, {"r3", 1.0, "modulus of z3"}}),
                   join(angles({"phi1", "phi2", "phi3", "phi4", "phi5", "phi6"}), derived_moduli()));
    auto k3q = join(join({{"r1", 1.0, "modulus of f(1|001)"}, {"r2", 1.0, "modulus of |010>>"},
                          {"r3", 1.0, "modulus of |011>>"}},
                         angles({"phi1", "phi2", "phi3", "phi4", "phi5", "phi6", "phi7"})),
                    join(angles({"theta01", "beta01", "theta10", "beta10", "theta11", "beta11"}), derived_moduli()));
    auto k3qq = join(join({{"r2", 1.0, "modulus of |010>>"}, {"r3", 1.0, "modulus of |011>>"}},
                          angles({"phi1", "phi2", "phi3", "phi4", "phi5", "phi6"})),
                     angles({"theta01", "beta01", "theta10", "beta10"}));
    return {
        {"f21", "k=2 periodic family", k2},
        {"f2m1", "mirror image of f21", k2},
        {"f21_00", "k=2 infinite family with 0 quiescent", k2q},
        {"f2m1_00", "mirror image of f21_00", k2q},
        {"f31", "k=3 periodic family split by the middle cell", k3},
        {"f30", "k=3 periodic family split by the second cell", k3},
        {"f3m1", "mirror image of f31", k3},
        {"f31_000", "k=3 infinite family with 000 the only deterministic config", k3q},
        {"f3m1_000", "mirror image of f31_000", k3q},
        {"f31_000_111", "k=3 infinite family with deterministic configs 000 and 111", k3qq},
        {"frame", "random frame rule; needs q, k, j and seed",
         {{"q", 2, "states"}, {"k", 3, "neighborhood"}, {"j", 1, "frame depth, 0 < j < k"}, {"seed", 0, "rng seed"}}},
        {"patt", "reversible deterministic k=4 rule", {}},
        {"quantized", "patt rotated by the unitary with rows (e^{ia}cos t, -e^{-ib}sin t), (e^{ib}sin t, e^{-ia}cos t)",
         angles({"alpha", "beta", "theta"})},
    };
}

class Params {
   public:
    Params(const FamilyInfo &info, const std::map<std::string, double> &given) : info_(info) {
        for (const auto &p : info.params) {
            values_[p.name] = p.default_value;
        }
        for (const auto &[name, value] : given) {
            if (!values_.count(name)) {
                throw ParameterError("family " + info.name + " has no parameter \"" + name + "\"");
            }
            if (!std::isfinite(value)) {
                throw ParameterError("parameter \"" + name + "\" must be finite");
            }
            values_[name] = value;
        }
    }

    double operator[](const std::string &name) const {
        return values_.at(name);
    }

    double positive(const std::string &name) const {
        double v = values_.at(name);
        if (!(v > 0)) {
            throw ParameterError("parameter \"" + name + "\" of family " + info_.name + " must be positive");
        }
        return v;
    }

    /// An optional modulus the caller may pin; it must agree with the one the
    /// constraint forces.
    void check_derived(const std::string &name, double derived, const std::string &constraint) const {
        double v = values_.at(name);
        if (!std::isnan(v) && std::abs(v - derived) > 1e-9 * std::max(1.0, derived)) {
            throw ParameterError("parameters violate " + constraint + " (" + name + " must be " +
                                 std::to_string(derived) + ")");
        }
    }

   private:
    const FamilyInfo &info_;
    std::map<std::string, double> values_;
};

const FamilyInfo &info_for(const std::string &name) {
    for (const auto &f : family_catalog()) {
        if (f.name == name) {
            return f;
        }
    }
    throw ParameterError("unknown family \"" + name + "\"");
}

struct Table {
    int q;
    int k;
    std::vector<C> data;

    Table(int q_, int k_) : q(q_), k(k_), data(ipow(q_, k_) * q_, 0.0) {
    }
    void set(const char *config, std::initializer_list<C> vec) {
        size_t c = LocalConfig::parse(q, config).index();
        size_t i = 0;
        for (C a : vec) {
            data[c * q + i++] = a;
        }
    }
    RuleTable rule() const {
        return RuleTable(q, k, data);
    }
};

RuleTable f21(const Params &p) {
    double a = p["alpha"], b = p["beta"], t = p["theta"], rho = p.positive("rho");
    C u0 = expi(a) * std::cos(t), u1 = expi(b) * kI * std::sin(t);
    C v0 = expi(-b) * kI * std::sin(t), v1 = expi(-a) * std::cos(t);
    C s01 = expi(p["phi1"]) * rho, s10 = expi(p["phi2"]) / rho;
    Table tab(2, 2);
    tab.set("00", {u0, u1});
    tab.set("01", {s01 * v0, s01 * v1});
    tab.set("10", {s10 * u0, s10 * u1});
    tab.set("11", {v0, v1});
    return tab.rule();
}

RuleTable f21_00(const Params &p) {
    double a = p["alpha"], b = p["beta"], t = p["theta"], rho = p.positive("rho");
    C s11 = expi(p["phi3"]);
    Table tab(2, 2);
    tab.set("00", {1.0, 0.0});
    tab.set("01", {0.0, rho * expi(p["phi1"])});
    tab.set("10", {expi(a) * std::cos(t) / rho, expi(b) * kI * std::sin(t) / rho});
    tab.set("11", {s11 * expi(-b) * kI * std::sin(t), s11 * expi(-a) * std::cos(t)});
    return tab.rule();
}

// k=3 periodic rules: an orthonormal pair u, v and six multiples of them. The
// cycle norms force |z2 z5| = 1, |z1 z2 z4| = 1, |z3 z5 z6| = 1.
RuleTable k3_periodic(const Params &p, bool middle_split) {
    double a = p["alpha"], b = p["beta"], t = p["theta"];
    C u[2] = {expi(a) * std::cos(t), expi(b) * kI * std::sin(t)};
    C v[2] = {expi(-b) * kI * std::sin(t), expi(-a) * std::cos(t)};
    double r1 = p.positive("r1"), r2 = p.positive("r2"), r3 = p.positive("r3");
    double r5 = 1 / r2, r4 = 1 / (r1 * r2), r6 = r2 / r3;
    p.check_derived("r5", r5, "|z2 z5| = 1");
    p.check_derived("r4", r4, "|z1 z2 z4| = 1");
    p.check_derived("r6", r6, "|z3 z5 z6| = 1");
    double r[7] = {0, r1, r2, r3, r4, r5, r6};
    // Which of 001..110 are multiples of u (the rest follow v).
    bool with_u[7] = {true, false, true, false, true, false, true};
    if (!middle_split) {
        bool alt[7] = {true, true, false, false, true, true, false};
        std::copy(alt, alt + 7, with_u);
    }
    Table tab(2, 3);
    tab.set("000", {u[0], u[1]});
    tab.set("111", {v[0], v[1]});
    for (int c = 1; c <= 6; c++) {
        C z = r[c] * expi(p["phi" + std::to_string(c)]);
        const C *base = with_u[c] ? u : v;
        tab.set(LocalConfig::from_index(2, 3, c).str().c_str(), {z * base[0], z * base[1]});
    }
    return tab.rule();
}

void orthogonal_pair(Table &tab, const char *first, const char *second, double r_first, double r_second,
                     double phase_first, double phase_second, double theta, double beta) {
    C x = r_first * expi(phase_first), y = r_second * expi(phase_second);
    tab.set(first, {x * std::cos(theta), x * expi(beta) * std::sin(theta)});
    tab.set(second, {-y * expi(-beta) * std::sin(theta), y * std::cos(theta)});
}

RuleTable f31_000(const Params &p) {
    double r1 = p.positive("r1"), r2 = p.positive("r2"), r3 = p.positive("r3");
    double r5 = 1 / r2, r4 = 1 / (r1 * r2), r6 = r2 / r3;
    p.check_derived("r5", r5, "|z2 z5| = 1");
    p.check_derived("r4", r4, "|z1 z2 z4| = 1");
    p.check_derived("r6", r6, "|z3 z5 z6| = 1");
    Table tab(2, 3);
    tab.set("000", {1.0, 0.0});
    tab.set("001", {0.0, r1 * expi(p["phi1"])});
    orthogonal_pair(tab, "010", "011", r2, r3, p["phi2"], p["phi3"], p["theta01"], p["beta01"]);
    orthogonal_pair(tab, "100", "101", r4, r5, p["phi4"], p["phi5"], p["theta10"], p["beta10"]);
    orthogonal_pair(tab, "110", "111", r6, 1.0, p["phi6"], p["phi7"], p["theta11"], p["beta11"]);
    return tab.rule();
}

// Norms: |z2 z5| = 1, |z1 z2 z4| = 1, |z3 z5 z6| = 1 and |z1 z3| = 1 leave r2, r3 free.
RuleTable f31_000_111(const Params &p) {
    double r2 = p.positive("r2"), r3 = p.positive("r3");
    double r1 = 1 / r3, r4 = r3 / r2, r5 = 1 / r2, r6 = r2 / r3;
    Table tab(2, 3);
    tab.set("000", {1.0, 0.0});
    tab.set("111", {0.0, 1.0});
    tab.set("001", {0.0, r1 * expi(p["phi1"])});
    tab.set("110", {r6 * expi(p["phi6"]), 0.0});
    orthogonal_pair(tab, "010", "011", r2, r3, p["phi2"], p["phi3"], p["theta01"], p["beta01"]);
    orthogonal_pair(tab, "100", "101", r4, r5, p["phi4"], p["phi5"], p["theta10"], p["beta10"]);
    return tab.rule();
}

ComplexMatrix su2(double a, double b, double t) {
    ComplexMatrix u(2, 2);
    u << expi(a) * std::cos(t), -expi(-b) * std::sin(t), expi(b) * std::sin(t), expi(-a) * std::cos(t);
    return u;
}

double uniform_angle(std::mt19937_64 &rng) {
    return std::uniform_real_distribution<double>(0, kTwoPi)(rng);
}

// Angle with |cos| >= 0.1.
double angle_with_cosine(std::mt19937_64 &rng) {
    while (true) {
        double t = uniform_angle(rng);
        if (std::abs(std::cos(t)) >= 0.1) {
            return t;
        }
    }
}

}  // namespace

const std::vector<FamilyInfo> &family_catalog() {
    static const std::vector<FamilyInfo> catalog = build_catalog();
    return catalog;
}

RuleTable make_family(const FamilySpec &spec) {
    const FamilyInfo &info = info_for(spec.name);
    Params p(info, spec.params);
    const std::string &n = spec.name;
    if (n == "f21") {
        return f21(p);
    }
    if (n == "f2m1") {
        return parity_transform(f21(p));
    }
    if (n == "f21_00") {
        return f21_00(p);
    }
    if (n == "f2m1_00") {
        return parity_transform(f21_00(p));
    }
    if (n == "f31") {
        return k3_periodic(p, true);
    }
    if (n == "f30") {
        return k3_periodic(p, false);
    }
    if (n == "f3m1") {
        return parity_transform(k3_periodic(p, true));
    }
    if (n == "f31_000") {
        return f31_000(p);
    }
    if (n == "f3m1_000") {
        return parity_transform(f31_000(p));
    }
    if (n == "f31_000_111") {
        return f31_000_111(p);
    }
    if (n == "frame") {
        double q = p["q"], k = p["k"], j = p["j"], seed = p["seed"];
        for (double v : {q, k, j, seed}) {
            if (v != std::floor(v) || v < 0) {
                throw ParameterError("frame parameters q, k, j, seed must be non-negative integers");
            }
        }
        if (q < 2 || k < 2 || j < 1 || j >= k || std::pow(q, k) > 1 << 16) {
            throw ParameterError("frame needs q >= 2 and 0 < j < k with q^k at most 65536");
        }
        std::mt19937_64 rng(static_cast<uint64_t>(seed));
        int qi = static_cast<int>(q), ki = static_cast<int>(k), ji = static_cast<int>(j);
        return frame_rule(qi, ki, ji, random_frame_assignment(qi, ki, ji, rng));
    }
    if (n == "patt") {
        return patt_rule();
    }
    if (n == "quantized") {
        return quantize(patt_rule(), su2(p["alpha"], p["beta"], p["theta"]));
    }
    throw ParameterError("unknown family \"" + n + "\"");
}

FamilySpec sample_family(const std::string &name, std::mt19937_64 &rng) {
    const FamilyInfo &info = info_for(name);
    FamilySpec spec{name, {}};
    std::uniform_real_distribution<double> modulus(0.5, 2.0);
    std::set<std::string> guarded;
    if (name == "f21_00" || name == "f2m1_00") {
        guarded = {"theta"};
    } else if (name == "f31_000" || name == "f3m1_000") {
        guarded = {"theta01", "theta10", "theta11"};
    } else if (name == "f31_000_111") {
        guarded = {"theta01", "theta10"};
    }
    for (const auto &p : info.params) {
        if (std::isnan(p.default_value)) {
            continue;
        }
        if (name == "frame") {
            spec.params[p.name] = p.name == "seed" ? static_cast<double>(rng() % 1000000) : p.default_value;
        } else if (p.name == "rho" || p.name[0] == 'r') {
            spec.params[p.name] = modulus(rng);
        } else if (guarded.count(p.name)) {
            spec.params[p.name] = angle_with_cosine(rng);
        } else {
            spec.params[p.name] = uniform_angle(rng);
        }
    }
    return spec;
}

RuleTable frame_rule(int q, int k, int j, std::vector<Amplitude> amplitudes, double tolerance) {
    if (j <= 0 || j >= k) {
        throw InputError("frame depth j must satisfy 0 < j < k");
    }
    RuleTable rule(q, k, std::move(amplitudes), tolerance);
    // Configs sharing the first j cells form one block; within it, the cell
    // after the prefix picks the class.
    size_t block = ipow(q, k - j);
    size_t per_class = block / q;
    for (size_t start = 0; start < rule.config_count(); start += block) {
        for (size_t a = start; a < start + block; a++) {
            for (size_t b = a + 1; b < start + block; b++) {
                if ((a - start) / per_class == (b - start) / per_class) {
                    continue;
                }
                if (!rule.is_zero(inner(rule, a, b))) {
                    throw InputError("frame assignment is not orthogonal: <<" + rule.config(a).str() + "|" +
                                     rule.config(b).str() + ">> != 0");
                }
            }
        }
    }
    return rule;
}

ComplexMatrix random_unitary(int q, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    ComplexMatrix m(q, q);
    for (int r = 0; r < q; r++) {
        for (int c = 0; c < q; c++) {
            m(r, c) = C(g(rng), g(rng));
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(m);
    ComplexMatrix qm = qr.householderQ();
    ComplexMatrix rm = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int c = 0; c < q; c++) {
        C d = rm(c, c);
        qm.col(c) *= std::abs(d) > 0 ? d / std::abs(d) : C(1);
    }
    return qm;
}

std::vector<Amplitude> random_frame_assignment(int q, int k, int j, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> modulus(0.5, 2.0);
    size_t count = ipow(q, k);
    size_t block = ipow(q, k - j);
    size_t per_class = block / q;
    std::vector<Amplitude> data(count * q);
    for (size_t start = 0; start < count; start += block) {
        ComplexMatrix basis = random_unitary(q, rng);
        for (size_t c = start; c < start + block; c++) {
            size_t cls = (c - start) / per_class;
            C scale = modulus(rng) * expi(uniform_angle(rng));
            for (int i = 0; i < q; i++) {
                data[c * q + i] = scale * basis(i, static_cast<Eigen::Index>(cls));
            }
        }
    }
    return data;
}

RuleTable patt_rule() {
    Table tab(2, 4);
    for (size_t c = 0; c < 16; c++) {
        auto cells = LocalConfig::from_index(2, 4, c);
        int out = cells[1];
        if (cells[0] == 0 && cells[3] == 0 && cells[2] == 1) {
            out = 1 - out;
        }
        tab.data[c * 2 + out] = 1.0;
    }
    return tab.rule();
}

RuleTable quantize(const RuleTable &det_rule, const ComplexMatrix &u) {
    int q = det_rule.q();
    if (!is_deterministic(det_rule)) {
        throw InputError("quantize needs a deterministic rule");
    }
    if (u.rows() != q || u.cols() != q) {
        throw InputError("quantize needs a q x q matrix");
    }
    ComplexMatrix defect = u.adjoint() * u - ComplexMatrix::Identity(q, q);
    if (defect.cwiseAbs().maxCoeff() > det_rule.tolerance()) {
        throw InputError("quantize needs a unitary matrix");
    }
    std::vector<Amplitude> data(det_rule.data().size());
    for (size_t c = 0; c < det_rule.config_count(); c++) {
        int d = det_rule.deterministic_output(c);
        for (int i = 0; i < q; i++) {
            data[c * q + i] = u(i, d);
        }
    }
    return RuleTable(q, det_rule.k(), std::move(data), det_rule.tolerance());
}

}  // namespace qca
