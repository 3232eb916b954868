#include "qca/families.h"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "qca/debruijn.h"
#include "qca/errors.h"
#include "qca/oracle.h"
#include "qca/unitarity.h"
#include "test_rules.h"

using namespace qca;
using namespace qca::testing;

namespace {

constexpr double kPi = std::numbers::pi;

double table_distance(const RuleTable &a, const RuleTable &b) {
    EXPECT_EQ(a.q(), b.q());
    EXPECT_EQ(a.k(), b.k());
    double d = 0;
    for (size_t i = 0; i < a.data().size(); i++) {
        d = std::max(d, std::abs(a.data()[i] - b.data()[i]));
    }
    return d;
}

bool parallel(const RuleTable &r, size_t a, size_t b) {
    return std::abs(std::abs(inner(r, a, b)) - std::sqrt(std::abs(inner(r, a, a) * inner(r, b, b)))) < 1e-9;
}

size_t idx(const char *s) {
    return LocalConfig::parse(2, s).index();
}

}  // namespace

TEST(Catalog, ListsEveryFamily) {
    std::set<std::string> names;
    for (const auto &f : family_catalog()) {
        names.insert(f.name);
    }
    std::set<std::string> expected{"f21",     "f2m1",     "f21_00",      "f2m1_00", "f31",  "f30",      "f3m1",
                                   "f31_000", "f3m1_000", "f31_000_111", "frame",   "patt", "quantized"};
    EXPECT_EQ(names, expected);
}

TEST(MakeFamily, F21MatchesHandTable) {
    FamilySpec spec{"f21", {{"alpha", 0.3}, {"beta", 1.1}, {"theta", 0.7}, {"phi1", 0.2}, {"phi2", 2.0}, {"rho", 1.5}}};
    EXPECT_LE(table_distance(make_family(spec), f21_table(0.3, 1.1, 0.7, 0.2, 2.0, 1.5)), 1e-15);
}

TEST(MakeFamily, F21QuiescentMatchesHandTable) {
    FamilySpec spec{"f21_00", {{"alpha", 0.4}, {"beta", 0.9}, {"theta", 1.0}, {"phi1", 0.1}, {"phi3", 1.7}, {"rho", 2.0}}};
    EXPECT_LE(table_distance(make_family(spec), f21_00_table(0.4, 0.9, 1.0, 0.1, 1.7, 2.0)), 1e-15);
}

TEST(MakeFamily, DeterministicLimitCopiesSecondCell) {
    auto rule = make_family({"f21", {}});
    EXPECT_LE(table_distance(rule, identity_rule()), 1e-15);
    EXPECT_TRUE(is_deterministic(rule));
}

TEST(MakeFamily, MirrorsAreParityTransforms) {
    std::mt19937_64 rng(1);
    for (auto [base, mirror] : {std::pair{"f21", "f2m1"}, {"f21_00", "f2m1_00"}, {"f31", "f3m1"},
                                {"f31_000", "f3m1_000"}}) {
        for (int t = 0; t < 10; t++) {
            auto spec = sample_family(base, rng);
            auto m = make_family({mirror, spec.params});
            EXPECT_LE(table_distance(m, parity_transform(make_family(spec))), 0) << base;
        }
    }
}

TEST(MakeFamily, UnknownNamesAndParameters) {
    EXPECT_THROW(make_family({"f99", {}}), ParameterError);
    EXPECT_THROW(make_family({"f21", {{"gamma", 1.0}}}), ParameterError);
    EXPECT_THROW(make_family({"f21", {{"rho", -1.0}}}), ParameterError);
    EXPECT_THROW(make_family({"f21", {{"rho", std::nan("")}}}), ParameterError);
}

TEST(MakeFamily, DerivedModulusMustMatch) {
    FamilySpec spec{"f31", {{"r1", 2.0}, {"r2", 0.5}, {"r3", 1.0}}};
    EXPECT_NO_THROW(make_family(spec));
    spec.params["r5"] = 2.0;
    EXPECT_NO_THROW(make_family(spec));
    spec.params["r5"] = 1.0;
    try {
        make_family(spec);
        FAIL() << "expected a ParameterError";
    } catch (const ParameterError &e) {
        EXPECT_NE(std::string(e.what()).find("|z2 z5| = 1"), std::string::npos);
    }
}

TEST(MakeFamily, K3NormConstraintsHold) {
    // Each G1(2,3) cycle: 000, 111, 010-101, 001-010-100, 011-110-101, 001-011-110-100.
    std::vector<std::vector<const char *>> cycles{{"000"},        {"111"},        {"010", "101"},
                                                  {"001", "010", "100"}, {"011", "110", "101"},
                                                  {"001", "011", "110", "100"}};
    std::mt19937_64 rng(6);
    for (const char *name : {"f31", "f30", "f3m1", "f31_000", "f31_000_111"}) {
        for (int t = 0; t < 20; t++) {
            auto rule = make_family(sample_family(name, rng));
            for (const auto &c : cycles) {
                C w = 1;
                for (const char *s : c) {
                    w *= inner(rule, idx(s), idx(s));
                }
                EXPECT_NEAR(std::abs(w - 1.0), 0, 1e-9) << name;
            }
        }
    }
}

TEST(MakeFamily, K3FrameRelations) {
    std::mt19937_64 rng(10);
    for (int t = 0; t < 10; t++) {
        // Middle split: 000, 010, 100, 110 along one vector; 001, 011, 101, 111 along the other.
        auto r = make_family(sample_family("f31", rng));
        for (const char *a : {"010", "100", "110"}) {
            EXPECT_TRUE(parallel(r, idx("000"), idx(a)));
        }
        for (const char *a : {"001", "011", "101"}) {
            EXPECT_TRUE(parallel(r, idx("111"), idx(a)));
        }
        EXPECT_NEAR(std::abs(inner(r, idx("000"), idx("111"))), 0, 1e-12);
        // Second-cell split.
        auto s = make_family(sample_family("f30", rng));
        for (const char *a : {"001", "100", "101"}) {
            EXPECT_TRUE(parallel(s, idx("000"), idx(a)));
        }
        for (const char *a : {"010", "011", "110"}) {
            EXPECT_TRUE(parallel(s, idx("111"), idx(a)));
        }
    }
}

TEST(MakeFamily, QuiescentK3Shapes) {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 10; t++) {
        auto r = make_family(sample_family("f31_000", rng));
        EXPECT_NEAR(std::abs(r(0, idx("000")) - 1.0), 0, 1e-15);
        EXPECT_NEAR(std::abs(r(0, idx("001"))), 0, 1e-15);
        for (const char *a : {"01", "10", "11"}) {
            std::string x = std::string(a) + "0", y = std::string(a) + "1";
            EXPECT_NEAR(std::abs(inner(r, idx(x.c_str()), idx(y.c_str()))), 0, 1e-12);
        }
        EXPECT_EQ(deterministic_sector(r).labels(), std::vector<std::string>{"000"});
        auto s = make_family(sample_family("f31_000_111", rng));
        EXPECT_NEAR(std::abs(s(1, idx("111")) - 1.0), 0, 1e-15);
        EXPECT_NEAR(std::abs(s(1, idx("110"))), 0, 1e-15);
        EXPECT_NEAR(std::abs(inner(s, idx("001"), idx("001")) * inner(s, idx("011"), idx("011")) - 1.0), 0, 1e-12);
        EXPECT_EQ(deterministic_sector(s).labels(), (std::vector<std::string>{"000", "111"}));
    }
}

TEST(MakeFamily, ParameterCounts) {
    auto count = [](const std::string &name) {
        for (const auto &f : family_catalog()) {
            if (f.name == name) {
                size_t n = 0;
                for (const auto &p : f.params) {
                    n += !std::isnan(p.default_value);
                }
                return n;
            }
        }
        return size_t{0};
    };
    EXPECT_EQ(count("f21"), 6u);
    EXPECT_EQ(count("f21_00"), 6u);
    EXPECT_EQ(count("f31"), 12u);
    EXPECT_EQ(count("f31_000"), 16u);
    EXPECT_EQ(count("f31_000_111"), 12u);
}

TEST(SampleFamily, IsReproducibleAndGuarded) {
    std::mt19937_64 a(99), b(99);
    for (int t = 0; t < 50; t++) {
        auto x = sample_family("f21_00", a);
        EXPECT_EQ(x.params, sample_family("f21_00", b).params);
        EXPECT_GE(std::abs(std::cos(x.params.at("theta"))), 0.1);
        EXPECT_GE(x.params.at("rho"), 0.5);
        EXPECT_LE(x.params.at("rho"), 2.0);
    }
}

TEST(FamilySoundness, PeriodicAndInfinite) {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 20; t++) {
        for (const char *name : {"f21", "f2m1", "f31", "f30", "f3m1"}) {
            EXPECT_TRUE(check_periodic(make_family(sample_family(name, rng))).unitary) << name;
        }
        for (const char *name : {"f21_00", "f2m1_00", "f31_000", "f3m1_000", "f31_000_111"}) {
            EXPECT_TRUE(check_infinite(make_family(sample_family(name, rng))).unitary) << name;
        }
    }
}

TEST(FamilySoundness, ExcludedSubmanifoldsFailSurjectivity) {
    // cos(theta01) = 0 makes f(0|010) vanish.
    std::mt19937_64 rng(23);
    auto spec = sample_family("f31_000", rng);
    spec.params["theta01"] = kPi / 2;
    auto v = check_infinite(make_family(spec));
    EXPECT_FALSE(v.unitary);
    for (const auto &r : v.reports) {
        EXPECT_EQ(r.condition, ConditionId::kInfiniteSurjective);
    }
}

TEST(FrameRule, RandomAssignmentsPassOrthogonality) {
    std::mt19937_64 rng(29);
    for (int k : {3, 4}) {
        for (int j = 1; j < k; j++) {
            for (int t = 0; t < 5; t++) {
                auto rule = frame_rule(2, k, j, random_frame_assignment(2, k, j, rng));
                EXPECT_TRUE(evaluate_condition(rule, ConditionId::kPeriodicMPath).empty()) << k << j;
            }
        }
    }
}

TEST(FrameRule, ThreeStates) {
    std::mt19937_64 rng(30);
    auto rule = frame_rule(3, 3, 1, random_frame_assignment(3, 3, 1, rng));
    EXPECT_TRUE(evaluate_condition(rule, ConditionId::kPeriodicMPath).empty());
}

TEST(FrameRule, RejectsNonOrthogonalClasses) {
    std::mt19937_64 rng(31);
    auto data = random_frame_assignment(2, 3, 1, rng);
    // Copy the vector of 000 into 010, which belongs to the other class of gamma = 0.
    data[idx("010") * 2] = data[0];
    data[idx("010") * 2 + 1] = data[1];
    EXPECT_THROW(frame_rule(2, 3, 1, data), InputError);
    EXPECT_THROW(frame_rule(2, 3, 3, random_frame_assignment(2, 3, 1, rng)), InputError);
}

TEST(FrameRule, MiddleSplitFamilyIsAFrameRule) {
    std::mt19937_64 rng(37);
    auto r = make_family(sample_family("f31", rng));
    EXPECT_NO_THROW(frame_rule(2, 3, 2, r.data()));
    auto s = make_family(sample_family("f30", rng));
    EXPECT_NO_THROW(frame_rule(2, 3, 1, s.data()));
}

TEST(RandomUnitary, IsUnitary) {
    std::mt19937_64 rng(41);
    for (int q : {2, 3, 5}) {
        auto u = random_unitary(q, rng);
        EXPECT_LE((u.adjoint() * u - ComplexMatrix::Identity(q, q)).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Patt, TableAndPermutation) {
    auto rule = patt_rule();
    ASSERT_EQ(rule.k(), 4);
    for (size_t c = 0; c < 16; c++) {
        auto l = LocalConfig::from_index(2, 4, c);
        int expected = (l[0] == 0 && l[3] == 0 && l[2] == 1) ? 1 - l[1] : l[1];
        EXPECT_EQ(rule.deterministic_output(c), expected);
    }
    for (int n : {4, 5, 6, 7}) {
        auto f = global_matrix(rule, n).entries;
        for (Eigen::Index c = 0; c < f.cols(); c++) {
            EXPECT_NEAR(f.col(c).cwiseAbs().sum(), 1.0, 0);
            EXPECT_NEAR(f.row(c).cwiseAbs().sum(), 1.0, 0);
        }
    }
    EXPECT_TRUE(check_periodic(rule).unitary);
}

TEST(Quantize, IdentityLeavesRuleUnchanged) {
    auto rule = patt_rule();
    EXPECT_LE(table_distance(quantize(rule, ComplexMatrix::Identity(2, 2)), rule), 0);
}

TEST(Quantize, RotatedPattIsUnitary) {
    ComplexMatrix r(2, 2);
    double c = std::cos(kPi / 4), s = std::sin(kPi / 4);
    r << c, -s, s, c;
    auto rule = quantize(patt_rule(), r);
    EXPECT_FALSE(is_deterministic(rule));
    EXPECT_TRUE(check_periodic(rule).unitary);
    for (int n : {4, 5, 6}) {
        EXPECT_LE(unitarity_defect(global_matrix(rule, n)), 1e-8);
    }
    auto named = make_family({"quantized", {{"theta", 0.3}, {"alpha", 1.0}, {"beta", 2.0}}});
    EXPECT_TRUE(check_periodic(named).unitary);
}

TEST(Quantize, DeterministicLimitStaysInOneFrame) {
    std::mt19937_64 rng(43);
    auto det = make_family({"f21", {}});
    for (int t = 0; t < 5; t++) {
        auto rule = quantize(det, random_unitary(2, rng));
        // Relations of the k=2 frame: |00>> par |10>> perp |01>> par |11>>.
        EXPECT_TRUE(parallel(rule, 0, 2));
        EXPECT_TRUE(parallel(rule, 1, 3));
        EXPECT_NEAR(std::abs(inner(rule, 0, 1)), 0, 1e-12);
        EXPECT_TRUE(check_periodic(rule).unitary);
    }
}

TEST(Quantize, RejectsBadInput) {
    ComplexMatrix skew(2, 2);
    skew << 1, 1, 0, 1;
    EXPECT_THROW(quantize(patt_rule(), skew), InputError);
    EXPECT_THROW(quantize(f21_table(0.3, 1.1, 0.7, 0.2, 2.0, 1.5), ComplexMatrix::Identity(2, 2)), InputError);
    EXPECT_THROW(quantize(patt_rule(), ComplexMatrix::Identity(3, 3)), InputError);
}

TEST(FrameFamily, ByName) {
    auto rule = make_family({"frame", {{"q", 2}, {"k", 4}, {"j", 2}, {"seed", 5}}});
    EXPECT_EQ(rule.k(), 4);
    EXPECT_TRUE(evaluate_condition(rule, ConditionId::kPeriodicMPath).empty());
    EXPECT_THROW(make_family({"frame", {{"j", 3}, {"k", 3}}}), ParameterError);
    EXPECT_THROW(make_family({"frame", {{"q", 2.5}}}), ParameterError);
}
