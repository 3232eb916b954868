#ifndef QCA_ORACLE_H
#define QCA_ORACLE_H

#include <random>
#include <string>
#include <vector>

#include "qca/linalg.h"
#include "qca/rule.h"

namespace qca {

/// Cells read by site x are x+offset, ..., x+offset+k-1 (mod N).
struct Neighborhood {
    int offset = 0;
};

/// Largest dense matrix dimension global_matrix will build (q=2, N=12).
inline constexpr size_t kDenseDimensionCap = 4096;

/// Evolution matrix on the cycle Z_N. Row and column indices encode periodic
/// configurations in base q with site 0 most significant.
struct GlobalMatrix {
    int sites;
    int q;
    ComplexMatrix entries;
};

struct StateVector {
    int sites;
    int q;
    ComplexVector amplitudes;
};

GlobalMatrix global_matrix(const RuleTable &rule, int sites, Neighborhood e = {},
                           size_t max_dimension = kDenseDimensionCap);

/// max |(F^dagger F - I)_{ij}|
double unitarity_defect(const GlobalMatrix &f);

/// One step of F (or of its adjoint) without building the matrix.
StateVector apply_global(const RuleTable &rule, const StateVector &state, Neighborhood e = {});
StateVector apply_global_adjoint(const RuleTable &rule, const StateVector &state, Neighborhood e = {});

StateVector evolve(const RuleTable &rule, const StateVector &state, int steps, Neighborhood e = {});

/// max over `samples` random unit vectors v of ||F^dagger F v - v||.
double estimated_defect(const RuleTable &rule, int sites, int samples, std::mt19937_64 &rng, Neighborhood e = {});

/// |phi_sigma|^2 for every configuration; throws PreconditionError unless the
/// state has norm 1 within `tolerance`.
std::vector<double> probabilities(const StateVector &state, double tolerance = kDefaultTolerance);

StateVector basis_state(int q, const LocalConfig &config);
double norm(const StateVector &state);

/// Applies the cyclic shift sigma_x -> sigma_{x+1} to a configuration index.
size_t rotate_left(size_t index, int q, int sites, int by = 1);

}  // namespace qca

#endif
