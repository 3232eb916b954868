#ifndef QCA_LINALG_H
#define QCA_LINALG_H

#include <Eigen/Dense>

#include "qca/rule.h"

namespace qca {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Dense LU with partial pivoting.
Amplitude determinant(const ComplexMatrix &m);

/// |det| <= tolerance * dimension.
bool is_singular(Amplitude det, double tolerance, Eigen::Index dimension);

}  // namespace qca

#endif
