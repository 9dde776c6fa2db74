#pragma once

#include "qconn/grid.hpp"

namespace qconn {

// Band-limited (trigonometric) interpolation of periodic grid data. The
// interpolant uses modes k = -N/2 .. N/2-1; it reproduces grid values exactly
// and evaluates smooth, well-resolved packets between grid points to
// spectral accuracy. Periodic grids only.
class TrigInterp1D {
 public:
  explicit TrigInterp1D(const WaveState& psi);
  Complex eval(double x) const;
  const GridSpec& grid() const { return grid_; }

 private:
  GridSpec grid_;
  Vector coeffs_;  // signed-frequency order k = -N/2 .. N/2-1
};

// chi_j = psi(x_j - delta): the state translated by +delta, computed exactly
// in the trig-interpolant sense via a spectral phase.
WaveState resample_shift(const WaveState& psi, double delta);

// 2-D: chi(x, y) = psi(x', y') with (x', y') = (x cos t + y sin t,
// -x sin t + y cos t) — evaluation of psi at the rotated points.
WaveState resample_rotate_2d(const WaveState& psi, double theta);

}  // namespace qconn
