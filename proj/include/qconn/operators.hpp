#pragma once

#include <functional>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "qconn/grid.hpp"

namespace qconn {

using SparseCd = Eigen::SparseMatrix<Complex>;
using MatrixCd = Eigen::MatrixXcd;

// Complex linear operator on the grid Hilbert space, stored sparse with a
// dense view on demand. The hermiticity flag is measured from the entries at
// construction (max |A - A^dagger| < 1e-12), never asserted blindly.
class OperatorMatrix {
 public:
  OperatorMatrix(GridSpec grid, SparseCd mat);
  OperatorMatrix(GridSpec grid, const MatrixCd& mat);

  const GridSpec& grid() const { return grid_; }
  int rows() const { return static_cast<int>(mat_.rows()); }
  const SparseCd& sparse() const { return mat_; }
  MatrixCd dense() const { return MatrixCd(mat_); }

  bool hermitian() const { return herm_defect_ < 1e-12; }
  double hermiticity_defect() const { return herm_defect_; }

  WaveState apply(const WaveState& psi) const;
  OperatorMatrix adjoint() const;

  friend OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator*(Complex c, const OperatorMatrix& a);

  // max_ij |A_ij - B_ij|
  static double max_diff(const OperatorMatrix& a, const OperatorMatrix& b);

 private:
  void check_same_grid(const OperatorMatrix& o) const;

  GridSpec grid_;
  SparseCd mat_;
  double herm_defect_ = 0.0;
};

OperatorMatrix identity_op(const GridSpec& grid);

// Antisymmetric central-difference momentum -i d/dx along `axis`, with
// wraparound iff the grid is periodic. A plane wave e^{ikx} on a periodic
// grid is an eigenvector with eigenvalue sin(kh)/h.
OperatorMatrix build_momentum(const GridSpec& grid, int axis = 0);

// Multiplication by the coordinate of `axis`.
OperatorMatrix build_position(const GridSpec& grid, int axis = 0);

// H = (sum_axes P_axis^2) / (2m) + diag(V), with P^2 the square of the
// first-difference stencil so operator identities with P hold exactly.
// V is sampled per flat grid index; all entries must be finite.
OperatorMatrix build_hamiltonian(const GridSpec& grid, double mass,
                                 const Eigen::VectorXd& potential);

// Convenience: H for a scalar potential callable V(x) or V(x, y).
OperatorMatrix build_hamiltonian(const GridSpec& grid, double mass,
                                 const std::function<double(double)>& pot);

}  // namespace qconn
