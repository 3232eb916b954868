#ifndef QCA_FAMILIES_H
#define QCA_FAMILIES_H

#include <map>
#include <random>
#include <string>
#include <vector>

#include "qca/linalg.h"
#include "qca/rule.h"

namespace qca {

struct ParamSchema {
    std::string name;
    double default_value;
    std::string description;
};

struct FamilyInfo {
    std::string name;
    std::string summary;
    std::vector<ParamSchema> params;
};

/// Every family name with its parameters.
const std::vector<FamilyInfo> &family_catalog();

/// A family name plus named real parameters; anything omitted takes its default.
struct FamilySpec {
    std::string name;
    std::map<std::string, double> params;
};

/// Builds the rule table of a named family. Throws ParameterError on unknown
/// names, unknown parameters, or violated constraints.
RuleTable make_family(const FamilySpec &spec);

/// Parameters drawn from the family's generic region: angles uniform, moduli in
/// [0.5, 2], and the cosines that must not vanish kept at least 0.1 in magnitude.
FamilySpec sample_family(const std::string &name, std::mt19937_64 &rng);

/// Checks that for every gamma of length j the vectors of configs gamma i ...
/// are orthogonal to those of gamma i' ..., i != i', and returns the rule.
RuleTable frame_rule(int q, int k, int j, std::vector<Amplitude> amplitudes, double tolerance = kDefaultTolerance);

/// Frame assignment with, per gamma, a random orthonormal basis b and vectors
/// c * b_i for the configs gamma i ..., c a random complex scale.
std::vector<Amplitude> random_frame_assignment(int q, int k, int j, std::mt19937_64 &rng);

/// Haar-distributed q x q unitary.
ComplexMatrix random_unitary(int q, std::mt19937_64 &rng);

/// f(i|i1 i2 i3 i4) = 1 - [i == i2] when i1 = i4 = 0 and i3 = 1, [i == i2] otherwise.
RuleTable patt_rule();

/// Replaces each deterministic amplitude vector e_d by column d of U.
RuleTable quantize(const RuleTable &det_rule, const ComplexMatrix &u);

}  // namespace qca

#endif
