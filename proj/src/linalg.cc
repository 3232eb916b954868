#include "qca/linalg.h"

#include "qca/errors.h"

namespace qca {

Amplitude determinant(const ComplexMatrix &m) {
    if (m.rows() != m.cols()) {
        throw InputError("determinant of a non-square matrix");
    }
    if (m.rows() == 0) {
        return 1.0;
    }
    return Eigen::PartialPivLU<ComplexMatrix>(m).determinant();
}

bool is_singular(Amplitude det, double tolerance, Eigen::Index dimension) {
    return std::abs(det) <= tolerance * static_cast<double>(std::max<Eigen::Index>(dimension, 1));
}

}  // namespace qca
