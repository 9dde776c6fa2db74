#pragma once

#include "qconn/operators.hpp"

namespace qconn {

// Dense matrix exponential by scaling-and-squaring: A is halved until its
// 1-norm is at most 0.5, the exponential of the scaled matrix is summed as a
// Taylor series to machine precision, and the result is squared back up.
// Throws if A is non-finite or the series fails to converge.
MatrixCd expm_dense(const MatrixCd& a);

OperatorMatrix expm(const OperatorMatrix& a);

}  // namespace qconn
