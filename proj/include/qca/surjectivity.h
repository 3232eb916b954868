#ifndef QCA_SURJECTIVITY_H
#define QCA_SURJECTIVITY_H

#include <vector>

#include "qca/debruijn.h"
#include "qca/linalg.h"
#include "qca/report.h"
#include "qca/rule.h"

namespace qca {

/// <out|F|in> on a finite window: the product over x of f(out_x | in_x .. in_{x+k-1}).
/// `in` must be k-1 cells longer than `out`.
Amplitude bordered_amplitude(const RuleTable &rule, const LocalConfig &out, const LocalConfig &in);

/// q x q matrix whose row i is the amplitude vector of gamma followed by i.
struct PhiMatrix {
    LocalConfig gamma;
    ComplexMatrix entries;
};

PhiMatrix phi_matrix(const RuleTable &rule, const LocalConfig &gamma);

/// Evolution of a length-n interior between fixed deterministic ends: entry
/// (a', a) is <a' rhoPrime_0..rhoPrime_{k-2} | F | lambda_1..lambda_{k-1} a rho_0..rho_{k-2}>.
/// Interior strings index rows and columns in base q, first cell most significant.
struct RestrictedOperator {
    LocalConfig lambda;
    LocalConfig rho;
    LocalConfig rho_prime;
    int n;
    ComplexMatrix matrix;
};

RestrictedOperator restricted_f(const RuleTable &rule, const LocalConfig &lambda, const LocalConfig &rho,
                                const LocalConfig &rho_prime, int n);

/// Entry (a', a) is <a'|F|lambda_1..lambda_{k-1} a>, built one cell at a time.
struct ReducedMatrix {
    LocalConfig lambda;
    int n;
    ComplexMatrix matrix;
};

ReducedMatrix reduced_f(const RuleTable &rule, const LocalConfig &lambda, int n);

/// Product of the per-column scalars that separate the restricted operator from
/// the reduced one.
Amplitude column_factor_product(const RuleTable &rule, const LocalConfig &lambda, const LocalConfig &rho,
                                const LocalConfig &rho_prime, int n);

/// det(reduced_{n+1}) / det(reduced_n)^q as a product of determinants of phi matrices.
Amplitude tensor_factor_product(const RuleTable &rule, const LocalConfig &lambda, int n);

/// Checks det(restricted_n) = column factors * det(reduced_n), and the tensor
/// recurrence for every m < n, each within tolerance * dimension.
bool det_factorization_check(const RuleTable &rule, const LocalConfig &lambda, const LocalConfig &rho,
                             const LocalConfig &rho_prime, int n, int max_n = 3);

/// Violations of the surjectivity conditions for this orientation of the rule:
/// for every rho, rho' in the sector with f(rho'_{k-1}|rho) = 1 and every gamma of
/// length k-1, neither <rho'_0..rho'_{k-2}|F|gamma rho_0..rho_{k-2}> nor det phi(gamma)
/// may vanish.
std::vector<ConstraintReport> check_surjectivity(const RuleTable &rule, const DeterministicSector &sector,
                                                 size_t max_reports = 100);

}  // namespace qca

#endif
