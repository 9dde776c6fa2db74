#include "qconn/transport.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qconn {

namespace {

void validate_points(const std::vector<BasePoint>& pts) {
  if (pts.empty()) {
    throw std::invalid_argument("curve needs at least one point");
  }
  const auto dim = pts.front().size();
  for (const auto& p : pts) {
    if (p.size() != dim) {
      throw std::invalid_argument("curve points must share a dimension");
    }
    if (!p.allFinite()) {
      throw std::invalid_argument("curve points must be finite");
    }
  }
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if ((pts[i + 1] - pts[i]).norm() == 0.0) {
      throw std::invalid_argument("consecutive curve points must be distinct");
    }
  }
}

}  // namespace

Curve Curve::polyline(std::vector<BasePoint> pts) {
  validate_points(pts);
  return Curve{std::move(pts)};
}

Curve Curve::segment(const BasePoint& a, const BasePoint& b) {
  return polyline({a, b});
}

Curve Curve::rectangle_tx(double t0, double x0, double dt, double dx) {
  if (!(dt > 0.0) || !(dx > 0.0)) {
    throw std::invalid_argument("rectangle extents must be positive");
  }
  auto pt = [](double t, double x) {
    BasePoint p(2);
    p << t, x;
    return p;
  };
  const double tm = t0 - dt / 2.0, tp = t0 + dt / 2.0;
  const double xm = x0 - dx / 2.0, xp = x0 + dx / 2.0;
  return polyline({pt(tm, xm), pt(tm, xp), pt(tp, xp), pt(tp, xm), pt(tm, xm)});
}

bool Curve::closed() const {
  return points.size() >= 2 && (points.front() - points.back()).norm() == 0.0;
}

Curve Curve::reversed() const {
  std::vector<BasePoint> pts(points.rbegin(), points.rend());
  return Curve{std::move(pts)};
}

Curve Curve::concat(const Curve& tail) const {
  if (points.empty() || tail.points.empty()) {
    throw std::invalid_argument("cannot concatenate empty curves");
  }
  if ((points.back() - tail.points.front()).norm() > 1e-12) {
    throw std::invalid_argument("curves do not join: endpoint mismatch");
  }
  std::vector<BasePoint> pts = points;
  pts.insert(pts.end(), tail.points.begin() + 1, tail.points.end());
  return Curve{std::move(pts)};
}

namespace {

// -sum_mu omega_mu(at) * delta_mu, skipping coordinates with no displacement.
MatrixCd interval_exponent(const OpOneForm& w, const BasePoint& at,
                           const BasePoint& delta) {
  const auto n = static_cast<Eigen::Index>(w.grid().size());
  MatrixCd e = MatrixCd::Zero(n, n);
  for (int mu = 0; mu < w.dim(); ++mu) {
    if (delta[mu] == 0.0) continue;
    e -= delta[mu] * w.comp(mu).eval(at).dense();
  }
  return e;
}

}  // namespace

TransportResult ordered_exponential(const OpOneForm& w, const Curve& curve,
                                    int steps_per_segment) {
  validate_points(curve.points);
  if (curve.points.front().size() != w.dim()) {
    throw std::invalid_argument("curve dimension does not match the chart");
  }
  if (steps_per_segment < 1) {
    throw std::invalid_argument("steps per segment must be at least 1");
  }
  const bool constant = w.all_constant();
  const int steps = constant ? 1 : steps_per_segment;
  const auto n = static_cast<Eigen::Index>(w.grid().size());
  MatrixCd u = MatrixCd::Identity(n, n);
  for (int seg = 0; seg < curve.segments(); ++seg) {
    const BasePoint& a = curve.points[seg];
    const BasePoint& b = curve.points[seg + 1];
    const BasePoint delta = (b - a) / steps;
    for (int i = 0; i < steps; ++i) {
      const BasePoint mid = a + (i + 0.5) * delta;
      try {
        u = expm_dense(interval_exponent(w, mid, delta)) * u;
      } catch (const std::runtime_error& err) {
        throw std::runtime_error("transport failed on segment " +
                                 std::to_string(seg) + ": " + err.what());
      }
    }
  }
  TransportResult result{OperatorMatrix(w.grid(), u), steps, 0.0};
  result.unitarity_defect =
      (u.adjoint() * u - MatrixCd::Identity(n, n)).cwiseAbs().maxCoeff();
  return result;
}

WaveState transport_state(const OpOneForm& w, const Curve& curve,
                          const WaveState& psi, int steps_per_segment) {
  if (psi.grid != w.grid()) {
    throw std::invalid_argument("state grid does not match the connection grid");
  }
  TransportResult res = ordered_exponential(w, curve, steps_per_segment);
  WaveState out = res.u.apply(psi);
  const auto& names = w.chart().names;
  auto it = std::find(names.begin(), names.end(), "t");
  if (it != names.end()) {
    const auto idx = static_cast<int>(it - names.begin());
    out.time = psi.time + (curve.points.back()[idx] - curve.points.front()[idx]);
  }
  return out;
}

HolonomyReport holonomy(const OpOneForm& w, double t0, double x0, double dt,
                        double dx, const WaveState& probe,
                        int steps_per_segment) {
  const Curve loop = Curve::rectangle_tx(t0, x0, dt, dx);
  TransportResult res = ordered_exponential(w, loop, steps_per_segment);

  const int it = w.chart().index("t");
  const int ix = w.chart().index("x");
  BasePoint center(2);
  center[it] = t0;
  center[ix] = x0;
  const OpTwoForm curv = curvature(w);
  const OperatorMatrix omega_xt = curv.eval(ix, it, center);
  const double area = dx * dt;
  const MatrixCd predicted =
      expm_dense(Complex(-area, 0.0) * omega_xt.dense());

  HolonomyReport report{res.u, area, 0.0, 0.0, 0.0};
  report.defect = (res.u.dense() - predicted).cwiseAbs().maxCoeff();
  const WaveState probe_n = probe.normalized_copy();
  report.loop_phase =
      std::arg(inner_product(probe_n, res.u.apply(probe_n)));
  WaveState predicted_state = probe_n;
  predicted_state.amps = predicted * probe_n.amps;
  report.curvature_phase =
      std::arg(inner_product(probe_n, predicted_state));
  return report;
}

}  // namespace qconn
