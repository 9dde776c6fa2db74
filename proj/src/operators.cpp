#include "qconn/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace qconn {

namespace {

double measure_hermiticity_defect(const SparseCd& m) {
  SparseCd diff = SparseCd(m - SparseCd(m.adjoint()));
  double worst = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k)
    for (SparseCd::InnerIterator it(diff, k); it; ++it)
      worst = std::max(worst, std::abs(it.value()));
  return worst;
}

}  // namespace

OperatorMatrix::OperatorMatrix(GridSpec grid, SparseCd mat)
    : grid_(grid), mat_(std::move(mat)) {
  if (mat_.rows() != mat_.cols() || mat_.rows() != grid_.size())
    throw std::invalid_argument("OperatorMatrix: size does not match grid");
  mat_.makeCompressed();
  herm_defect_ = measure_hermiticity_defect(mat_);
}

OperatorMatrix::OperatorMatrix(GridSpec grid, const MatrixCd& mat)
    : OperatorMatrix(grid, SparseCd(mat.sparseView())) {}

void OperatorMatrix::check_same_grid(const OperatorMatrix& o) const {
  if (grid_ != o.grid_)
    throw std::invalid_argument("OperatorMatrix: operands on different grids");
}

WaveState OperatorMatrix::apply(const WaveState& psi) const {
  if (psi.grid != grid_)
    throw std::invalid_argument("OperatorMatrix: state lives on a different grid");
  return WaveState(grid_, mat_ * psi.amps, psi.time);
}

OperatorMatrix OperatorMatrix::adjoint() const {
  return OperatorMatrix(grid_, SparseCd(mat_.adjoint()));
}

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
  a.check_same_grid(b);
  return OperatorMatrix(a.grid_, SparseCd(a.mat_ + b.mat_));
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
  a.check_same_grid(b);
  return OperatorMatrix(a.grid_, SparseCd(a.mat_ - b.mat_));
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  a.check_same_grid(b);
  return OperatorMatrix(a.grid_, SparseCd(a.mat_ * b.mat_));
}

OperatorMatrix operator*(Complex c, const OperatorMatrix& a) {
  return OperatorMatrix(a.grid_, SparseCd(c * a.mat_));
}

double OperatorMatrix::max_diff(const OperatorMatrix& a, const OperatorMatrix& b) {
  a.check_same_grid(b);
  SparseCd diff = SparseCd(a.mat_ - b.mat_);
  double worst = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k)
    for (SparseCd::InnerIterator it(diff, k); it; ++it)
      worst = std::max(worst, std::abs(it.value()));
  return worst;
}

OperatorMatrix identity_op(const GridSpec& grid) {
  SparseCd m(grid.size(), grid.size());
  m.setIdentity();
  return OperatorMatrix(grid, std::move(m));
}

OperatorMatrix build_momentum(const GridSpec& grid, int axis) {
  if (axis < 0 || axis >= grid.dimension())
    throw std::invalid_argument("build_momentum: axis out of range");
  const double h = grid.spacing(axis);
  const Complex up(0.0, -0.5 / h);   // coefficient of psi_{j+1}
  const Complex down(0.0, 0.5 / h);  // coefficient of psi_{j-1}
  const bool wrap = grid.boundary() == Boundary::Periodic;
  const int n = grid.points(axis);

  std::vector<Eigen::Triplet<Complex>> trips;
  auto couple = [&](int row, int j, int jn, const Complex& w) {
    if (jn < 0 || jn >= n) {
      if (!wrap) return;
      jn = (jn + n) % n;
    }
    (void)j;
    int col;
    if (grid.dimension() == 1) {
      col = jn;
    } else {
      auto [ix, iy] = grid.unflat(row);
      col = axis == 0 ? grid.flat(jn, iy) : grid.flat(ix, jn);
    }
    trips.emplace_back(row, col, w);
  };

  for (int row = 0; row < grid.size(); ++row) {
    int j;
    if (grid.dimension() == 1) {
      j = row;
    } else {
      auto [ix, iy] = grid.unflat(row);
      j = axis == 0 ? ix : iy;
    }
    couple(row, j, j + 1, up);
    couple(row, j, j - 1, down);
  }

  SparseCd m(grid.size(), grid.size());
  m.setFromTriplets(trips.begin(), trips.end());
  return OperatorMatrix(grid, std::move(m));
}

OperatorMatrix build_position(const GridSpec& grid, int axis) {
  if (axis < 0 || axis >= grid.dimension())
    throw std::invalid_argument("build_position: axis out of range");
  SparseCd m(grid.size(), grid.size());
  std::vector<Eigen::Triplet<Complex>> trips;
  for (int k = 0; k < grid.size(); ++k) {
    double x;
    if (grid.dimension() == 1) {
      x = grid.coord(0, k);
    } else {
      auto [ix, iy] = grid.unflat(k);
      x = axis == 0 ? grid.coord(0, ix) : grid.coord(1, iy);
    }
    trips.emplace_back(k, k, Complex(x, 0.0));
  }
  m.setFromTriplets(trips.begin(), trips.end());
  return OperatorMatrix(grid, std::move(m));
}

OperatorMatrix build_hamiltonian(const GridSpec& grid, double mass,
                                 const Eigen::VectorXd& potential) {
  if (!(mass > 0.0))
    throw std::invalid_argument("build_hamiltonian: mass must be positive");
  if (potential.size() != grid.size())
    throw std::invalid_argument("build_hamiltonian: potential size does not match grid");
  if (!potential.allFinite())
    throw std::invalid_argument("build_hamiltonian: potential has non-finite entries");

  SparseCd kin(grid.size(), grid.size());
  for (int axis = 0; axis < grid.dimension(); ++axis) {
    const OperatorMatrix p = build_momentum(grid, axis);
    kin += SparseCd(p.sparse() * p.sparse());
  }
  kin *= Complex(1.0 / (2.0 * mass), 0.0);

  SparseCd v(grid.size(), grid.size());
  std::vector<Eigen::Triplet<Complex>> trips;
  for (int k = 0; k < grid.size(); ++k)
    if (potential[k] != 0.0) trips.emplace_back(k, k, Complex(potential[k], 0.0));
  v.setFromTriplets(trips.begin(), trips.end());

  return OperatorMatrix(grid, SparseCd(kin + v));
}

OperatorMatrix build_hamiltonian(const GridSpec& grid, double mass,
                                 const std::function<double(double)>& pot) {
  if (grid.dimension() != 1)
    throw std::invalid_argument("build_hamiltonian: callable form is 1-D only");
  Eigen::VectorXd v(grid.size());
  for (int j = 0; j < grid.size(); ++j) v[j] = pot(grid.coord(0, j));
  return build_hamiltonian(grid, mass, v);
}

}  // namespace qconn
