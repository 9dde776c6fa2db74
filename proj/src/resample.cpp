#include "qconn/resample.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace qconn {

namespace {

void require_periodic_1d(const GridSpec& g, const char* who) {
  if (g.dimension() != 1)
    throw std::invalid_argument(std::string(who) + ": expected a 1-D grid");
  if (g.boundary() != Boundary::Periodic)
    throw std::invalid_argument(std::string(who) + ": periodic grids only");
}

// Forward DFT, result reordered to signed frequencies k = -N/2 .. N/2-1 and
// scaled by 1/N so the inverse is a plain mode sum.
Vector signed_spectrum(const Vector& v) {
  Eigen::FFT<double> fft;
  std::vector<Complex> in(v.data(), v.data() + v.size());
  std::vector<Complex> out(in.size());
  fft.fwd(out, in);
  const int n = static_cast<int>(v.size());
  Vector c(n);
  for (int j = 0; j < n; ++j) {
    int k = j < (n + 1) / 2 ? j : j - n;  // signed frequency of DFT bin j
    c[k + n / 2] = out[j] / static_cast<double>(n);
  }
  return c;
}

}  // namespace

TrigInterp1D::TrigInterp1D(const WaveState& psi) : grid_(psi.grid) {
  require_periodic_1d(grid_, "TrigInterp1D");
  coeffs_ = signed_spectrum(psi.amps);
}

Complex TrigInterp1D::eval(double x) const {
  const int n = grid_.points(0);
  const double base = 2.0 * M_PI * (x + 0.5 * grid_.length(0)) / grid_.length(0);
  Complex acc(0.0, 0.0);
  for (int i = 0; i < n; ++i) {
    int k = i - n / 2;
    acc += coeffs_[i] * std::exp(Complex(0.0, k * base));
  }
  return acc;
}

WaveState resample_shift(const WaveState& psi, double delta) {
  require_periodic_1d(psi.grid, "resample_shift");
  const int n = psi.grid.points(0);
  const double l = psi.grid.length(0);

  Eigen::FFT<double> fft;
  std::vector<Complex> in(psi.amps.data(), psi.amps.data() + n);
  std::vector<Complex> spec(n);
  fft.fwd(spec, in);
  for (int j = 0; j < n; ++j) {
    int k = j < (n + 1) / 2 ? j : j - n;
    spec[j] *= std::exp(Complex(0.0, -k * 2.0 * M_PI * delta / l));
  }
  std::vector<Complex> out(n);
  fft.inv(out, spec);
  Vector v = Eigen::Map<Vector>(out.data(), n);
  return WaveState(psi.grid, std::move(v), psi.time);
}

WaveState resample_rotate_2d(const WaveState& psi, double theta) {
  const GridSpec& g = psi.grid;
  if (g.dimension() != 2)
    throw std::invalid_argument("resample_rotate_2d: expected a 2-D grid");
  if (g.boundary() != Boundary::Periodic)
    throw std::invalid_argument("resample_rotate_2d: periodic grids only");

  const int nx = g.points(0), ny = g.points(1);
  const double lx = g.length(0), ly = g.length(1);

  // Row-wise then column-wise 1-D transforms give the 2-D spectrum.
  Eigen::MatrixXcd f(nx, ny);
  for (int ix = 0; ix < nx; ++ix)
    for (int iy = 0; iy < ny; ++iy) f(ix, iy) = psi.amps[g.flat(ix, iy)];
  Eigen::FFT<double> fft;
  Eigen::MatrixXcd spec(nx, ny);
  for (int ix = 0; ix < nx; ++ix) {
    std::vector<Complex> in(ny), out(ny);
    for (int iy = 0; iy < ny; ++iy) in[iy] = f(ix, iy);
    fft.fwd(out, in);
    for (int iy = 0; iy < ny; ++iy) spec(ix, iy) = out[iy];
  }
  for (int iy = 0; iy < ny; ++iy) {
    std::vector<Complex> in(nx), out(nx);
    for (int ix = 0; ix < nx; ++ix) in[ix] = spec(ix, iy);
    fft.fwd(out, in);
    for (int ix = 0; ix < nx; ++ix) spec(ix, iy) = out[ix] / double(nx * ny);
  }

  // Signed frequencies per bin.
  auto signed_k = [](int j, int n) { return j < (n + 1) / 2 ? j : j - n; };

  const double c = std::cos(theta), s = std::sin(theta);
  Vector result(g.size());
  Vector phase_y(ny);
  for (int ix = 0; ix < nx; ++ix) {
    double x = g.coord(0, ix);
    for (int iy = 0; iy < ny; ++iy) {
      double y = g.coord(1, iy);
      double xs = c * x + s * y;   // source point the value is pulled from
      double ys = -s * x + c * y;
      double bx = 2.0 * M_PI * (xs + 0.5 * lx) / lx;
      double by = 2.0 * M_PI * (ys + 0.5 * ly) / ly;
      for (int jy = 0; jy < ny; ++jy)
        phase_y[jy] = std::exp(Complex(0.0, signed_k(jy, ny) * by));
      Complex acc(0.0, 0.0);
      for (int jx = 0; jx < nx; ++jx) {
        Complex row = (spec.row(jx).array() * phase_y.transpose().array()).sum();
        acc += row * std::exp(Complex(0.0, signed_k(jx, nx) * bx));
      }
      result[g.flat(ix, iy)] = acc;
    }
  }
  return WaveState(g, std::move(result), psi.time);
}

}  // namespace qconn
