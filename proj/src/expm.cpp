#include "qconn/expm.hpp"

#include <cmath>
#include <stdexcept>

namespace qconn {

MatrixCd expm_dense(const MatrixCd& a) {
  if (!a.allFinite())
    throw std::runtime_error("expm: matrix has non-finite entries");
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) throw std::invalid_argument("expm: matrix must be square");

  double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
    if (squarings > 60)
      throw std::runtime_error("expm: norm overflow, matrix too large to scale");
  }
  MatrixCd b = a / std::pow(2.0, squarings);

  MatrixCd sum = MatrixCd::Identity(n, n);
  MatrixCd term = MatrixCd::Identity(n, n);
  bool converged = false;
  for (int k = 1; k <= 40; ++k) {
    term = (term * b) / static_cast<double>(k);
    sum += term;
    double tn = term.cwiseAbs().colwise().sum().maxCoeff();
    if (tn < 1e-16) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw std::runtime_error("expm: Taylor series failed to converge");

  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

OperatorMatrix expm(const OperatorMatrix& a) {
  return OperatorMatrix(a.grid(), expm_dense(a.dense()));
}

}  // namespace qconn
