#include "qconn/grid.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qconn {

namespace {
void check_points(int n) {
  if (n < 8) throw std::invalid_argument("GridSpec: need at least 8 points per axis");
}
void check_length(double l) {
  if (!(l > 0.0) || !std::isfinite(l))
    throw std::invalid_argument("GridSpec: axis length must be positive and finite");
}
}  // namespace

GridSpec GridSpec::line(int n, double length, Boundary bc) {
  check_points(n);
  check_length(length);
  GridSpec g;
  g.dim_ = 1;
  g.n_[0] = n;
  g.n_[1] = 1;
  g.len_[0] = length;
  g.len_[1] = 0.0;
  g.bc_ = bc;
  return g;
}

GridSpec GridSpec::plane(int nx, int ny, double lx, double ly, Boundary bc) {
  check_points(nx);
  check_points(ny);
  check_length(lx);
  check_length(ly);
  GridSpec g;
  g.dim_ = 2;
  g.n_[0] = nx;
  g.n_[1] = ny;
  g.len_[0] = lx;
  g.len_[1] = ly;
  g.bc_ = bc;
  return g;
}

int GridSpec::check_axis(int axis) const {
  if (axis < 0 || axis >= dim_)
    throw std::invalid_argument("GridSpec: axis out of range");
  return axis;
}

double GridSpec::weight() const {
  double w = spacing(0);
  if (dim_ == 2) w *= spacing(1);
  return w;
}

bool GridSpec::operator==(const GridSpec& o) const {
  return dim_ == o.dim_ && n_[0] == o.n_[0] && n_[1] == o.n_[1] &&
         len_[0] == o.len_[0] && len_[1] == o.len_[1] && bc_ == o.bc_;
}

WaveState::WaveState(GridSpec g, Vector a, double t)
    : grid(g), amps(std::move(a)), time(t) {
  if (amps.size() != grid.size())
    throw std::invalid_argument("WaveState: amplitude count does not match grid");
  if (!amps.allFinite())
    throw std::invalid_argument("WaveState: non-finite amplitudes");
}

double WaveState::norm() const { return std::sqrt(grid.weight()) * amps.norm(); }

bool WaveState::normalized(double tol) const { return std::abs(norm() - 1.0) < tol; }

WaveState WaveState::normalized_copy() const {
  double n = norm();
  if (n == 0.0) throw std::domain_error("WaveState: cannot normalize the zero state");
  return WaveState(grid, amps / n, time);
}

Complex inner_product(const WaveState& a, const WaveState& b) {
  if (a.grid != b.grid)
    throw std::invalid_argument("inner_product: states live on different grids");
  return a.grid.weight() * a.amps.dot(b.amps);
}

double position_expectation(const WaveState& psi, int axis) {
  const GridSpec& g = psi.grid;
  double acc = 0.0;
  for (int k = 0; k < g.size(); ++k) {
    double x;
    if (g.dimension() == 1) {
      x = g.coord(0, k);
    } else {
      auto [ix, iy] = g.unflat(k);
      x = axis == 0 ? g.coord(0, ix) : g.coord(1, iy);
    }
    acc += x * std::norm(psi.amps[k]);
  }
  return acc * g.weight();
}

WaveState gaussian_packet(const GridSpec& grid, double x0, double p0,
                          double sigma) {
  if (grid.dimension() != 1)
    throw std::invalid_argument("gaussian_packet: expected a 1-D grid");
  double h = grid.spacing(0);
  if (!(sigma > 3.0 * h)) {
    std::ostringstream os;
    os << "gaussian_packet: width sigma=" << sigma
       << " is under-resolved; need sigma > 3h = " << 3.0 * h
       << " (increase N or widen the packet)";
    throw std::invalid_argument(os.str());
  }
  if (grid.boundary() == Boundary::Dirichlet) {
    double lo = -0.5 * grid.length(0), hi = 0.5 * grid.length(0);
    if (x0 - 5.0 * sigma < lo || x0 + 5.0 * sigma > hi)
      throw std::invalid_argument(
          "gaussian_packet: 5-sigma support touches the Dirichlet boundary");
  }
  Vector a(grid.size());
  for (int j = 0; j < grid.size(); ++j) {
    double x = grid.coord(0, j);
    double u = (x - x0) / (2.0 * sigma);
    a[j] = std::exp(Complex(-u * u, p0 * x));
  }
  WaveState psi(grid, std::move(a), 0.0);
  return psi.normalized_copy();
}

WaveState gaussian_packet_2d(const GridSpec& grid, double x0, double y0,
                             double p0x, double p0y, double sigma) {
  if (grid.dimension() != 2)
    throw std::invalid_argument("gaussian_packet_2d: expected a 2-D grid");
  double h = std::max(grid.spacing(0), grid.spacing(1));
  if (!(sigma > 3.0 * h))
    throw std::invalid_argument("gaussian_packet_2d: width under-resolved, need sigma > 3h");
  Vector a(grid.size());
  for (int ix = 0; ix < grid.points(0); ++ix) {
    double x = grid.coord(0, ix);
    for (int iy = 0; iy < grid.points(1); ++iy) {
      double y = grid.coord(1, iy);
      double ux = (x - x0) / (2.0 * sigma), uy = (y - y0) / (2.0 * sigma);
      a[grid.flat(ix, iy)] =
          std::exp(Complex(-(ux * ux + uy * uy), p0x * x + p0y * y));
    }
  }
  WaveState psi(grid, std::move(a), 0.0);
  return psi.normalized_copy();
}

WaveState free_gaussian_analytic(const GridSpec& grid, double x0, double p0,
                                 double sigma, double mass, double t) {
  if (grid.dimension() != 1)
    throw std::invalid_argument("free_gaussian_analytic: expected a 1-D grid");
  if (!(mass > 0.0))
    throw std::invalid_argument("free_gaussian_analytic: mass must be positive");
  const Complex I(0.0, 1.0);
  Complex a = 1.0 + I * t / (2.0 * mass * sigma * sigma);
  Complex pref = std::pow(2.0 * M_PI * sigma * sigma, -0.25) / std::sqrt(a);
  double drift = x0 + p0 * t / mass;
  Vector v(grid.size());
  for (int j = 0; j < grid.size(); ++j) {
    double x = grid.coord(0, j);
    Complex arg = -(x - drift) * (x - drift) / (4.0 * sigma * sigma * a) +
                  I * (p0 * (x - x0) - p0 * p0 * t / (2.0 * mass)) + I * p0 * x0;
    v[j] = pref * std::exp(arg);
  }
  return WaveState(grid, std::move(v), t);
}

}  // namespace qconn
