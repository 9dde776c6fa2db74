#pragma once

#include <complex>
#include <utility>

#include <Eigen/Dense>

namespace qconn {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;

enum class Boundary { Periodic, Dirichlet };

// Uniform one- or two-dimensional spatial grid, x_j = -L/2 + j h with
// h = L/N. Two-dimensional data is stored row-major: flat = ix * ny + iy.
class GridSpec {
 public:
  static GridSpec line(int n, double length, Boundary bc = Boundary::Periodic);
  static GridSpec plane(int nx, int ny, double lx, double ly,
                        Boundary bc = Boundary::Periodic);

  int dimension() const { return dim_; }
  int points(int axis) const { return n_[check_axis(axis)]; }
  double length(int axis) const { return len_[check_axis(axis)]; }
  double spacing(int axis) const { return len_[check_axis(axis)] / n_[axis]; }
  Boundary boundary() const { return bc_; }

  // Total number of amplitudes (N in 1-D, Nx*Ny in 2-D).
  int size() const { return dim_ == 1 ? n_[0] : n_[0] * n_[1]; }
  // Integration weight per grid point (h or hx*hy).
  double weight() const;

  double coord(int axis, int index) const {
    return -0.5 * len_[check_axis(axis)] + index * spacing(axis);
  }
  int flat(int ix, int iy) const { return ix * n_[1] + iy; }
  std::pair<int, int> unflat(int k) const { return {k / n_[1], k % n_[1]}; }

  bool operator==(const GridSpec& o) const;
  bool operator!=(const GridSpec& o) const { return !(*this == o); }

 private:
  GridSpec() = default;
  int check_axis(int axis) const;

  int dim_ = 1;
  int n_[2] = {0, 0};
  double len_[2] = {0.0, 0.0};
  Boundary bc_ = Boundary::Periodic;
};

// Complex amplitude vector living on a grid, tagged with the time at which it
// represents the state.
struct WaveState {
  GridSpec grid;
  Vector amps;
  double time = 0.0;

  WaveState(GridSpec g, Vector a, double t = 0.0);

  double norm() const;
  bool normalized(double tol = 1e-12) const;
  WaveState normalized_copy() const;
};

// Conjugate-linear in the first slot, weighted by the grid cell volume.
Complex inner_product(const WaveState& a, const WaveState& b);

// <x_axis> = sum x |psi|^2 * weight (state need not be normalized; the raw
// weighted moment is returned).
double position_expectation(const WaveState& psi, int axis = 0);

// Normalized Gaussian wave packet exp(-(x-x0)^2/(4 sigma^2) + i p0 x) on a
// one-dimensional grid. Requires sigma > 3h so the packet is resolvable;
// Dirichlet grids additionally require the 5-sigma support to stay away from
// the boundary.
WaveState gaussian_packet(const GridSpec& grid, double x0, double p0,
                          double sigma);

// Product of two 1-D packets on a 2-D grid, exp(i p.x) phase convention.
WaveState gaussian_packet_2d(const GridSpec& grid, double x0, double y0,
                             double p0x, double p0y, double sigma);

// Closed-form free evolution of gaussian_packet under H = P^2/2m in the
// continuum, sampled on the grid:
//   psi(x,t) = (2 pi s^2)^{-1/4} a^{-1/2}
//              exp(-(x-x0-p0 t/m)^2/(4 s^2 a) + i p0 (x-x0) - i p0^2 t/(2m))
//              * exp(i p0 x0),  a = 1 + i t/(2 m s^2).
// Serves as the independent oracle for the evolution integrator.
WaveState free_gaussian_analytic(const GridSpec& grid, double x0, double p0,
                                 double sigma, double mass, double t);

}  // namespace qconn
