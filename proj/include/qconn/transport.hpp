#pragma once

#include <vector>

#include "qconn/expm.hpp"
#include "qconn/forms.hpp"
#include "qconn/grid.hpp"

namespace qconn {

// Piecewise-linear path in base coordinates. Open curves need at least two
// points; a single point is the trivial curve (transport gives the identity).
struct Curve {
  std::vector<BasePoint> points;

  static Curve polyline(std::vector<BasePoint> pts);
  static Curve segment(const BasePoint& a, const BasePoint& b);
  // Counter-clockwise rectangle in the (t, x) chart centred at (t0, x0):
  // start at (t0 - dt/2, x0 - dx/2), then legs +x, +t, -x, -t.
  static Curve rectangle_tx(double t0, double x0, double dt, double dx);

  int segments() const { return static_cast<int>(points.size()) - 1; }
  bool closed() const;
  Curve reversed() const;
  Curve concat(const Curve& tail) const;
};

struct TransportResult {
  OperatorMatrix u;
  int steps_per_segment = 0;
  double unitarity_defect = 0.0;  // max entry of |U^dagger U - I|
};

// Ordered exponential of -omega along the curve, built from midpoint-sampled
// short-interval exponentials, later intervals multiplying from the left.
// Base-constant connections collapse to one exponential per segment.
TransportResult ordered_exponential(const OpOneForm& w, const Curve& curve,
                                    int steps_per_segment = 64);

// Applies the transport operator to a state; the time tag advances by the
// curve's net displacement along the chart's "t" coordinate, if it has one.
WaveState transport_state(const OpOneForm& w, const Curve& curve,
                          const WaveState& psi, int steps_per_segment = 64);

struct HolonomyReport {
  OperatorMatrix loop;            // transport around the rectangle
  double area = 0.0;              // dx * dt
  double defect = 0.0;            // max entry of |loop - expm(-Omega_xt * area)|
  double loop_phase = 0.0;        // arg <probe| loop |probe>
  double curvature_phase = 0.0;   // first-order prediction from Omega_xt
};

// Transport around the counter-clockwise (t, x) rectangle, compared against
// the curvature prediction exp(-Omega_xt(center) * dx * dt).
HolonomyReport holonomy(const OpOneForm& w, double t0, double x0, double dt,
                        double dx, const WaveState& probe,
                        int steps_per_segment = 64);

}  // namespace qconn
