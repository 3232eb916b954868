#ifndef QCA_TRANSFER_H
#define QCA_TRANSFER_H

#include <string>
#include <utility>
#include <vector>

#include "qca/debruijn.h"
#include "qca/linalg.h"

namespace qca {

/// coefficients[n] multiplies t^n. Trailing zeros are trimmed.
struct WeightPolynomial {
    std::vector<Amplitude> coefficients;

    size_t degree() const {
        return coefficients.empty() ? 0 : coefficients.size() - 1;
    }
    Amplitude coefficient(size_t n) const {
        return n < coefficients.size() ? coefficients[n] : Amplitude(0);
    }
    Amplitude operator()(Amplitude t) const;
    std::string str(int precision = 6) const;
};

enum class Convention {
    kRaw,
    /// Pair graphs only: matched edges become 0 on self-loops and 1 elsewhere,
    /// mismatched edges keep their weights.
    kSimplified,
};

/// Entry (i, j) sums the weights of the edges from vertex i to vertex j.
ComplexMatrix transfer_matrix(const WeightedDiGraph &g, Convention convention = Convention::kRaw);

/// det(I - tA) from the characteristic polynomial.
WeightPolynomial z_polynomial(const ComplexMatrix &a);

/// Coefficients of sum_n Tr(A^n) t^n for n = 0..order, from -t Z'(t) / Z(t).
WeightPolynomial trace_series(const ComplexMatrix &a, int order);
WeightPolynomial trace_series(const WeightPolynomial &z, int order);

/// Product of edge weights, each named by the unordered pair of config indices
/// it compares. Factors are kept sorted.
struct WeightMonomial {
    std::vector<std::pair<size_t, size_t>> factors;

    /// "w_{01}w_{02}w_{04}"; indices get a comma between them once either
    /// needs two digits.
    std::string str() const;
    Amplitude evaluate(const RuleTable &rule) const;

    bool operator==(const WeightMonomial &) const = default;
    auto operator<=>(const WeightMonomial &) const = default;
};

/// Monomials of the simple mismatched paths of `length` edges that leave a
/// diagonal pair vertex and first return to the diagonal at their last edge.
/// Sorted and deduplicated.
std::vector<WeightMonomial> path_monomials(int q, int k, int length);
std::vector<WeightMonomial> path_monomials(const RuleTable &rule, int length);

/// Longest such path: every off-diagonal vertex once, plus the final edge.
int longest_path_length(int q, int k);

}  // namespace qca

#endif
