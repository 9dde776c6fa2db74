#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qconn/grid.hpp"
#include "qconn/identities.hpp"
#include "qconn/operators.hpp"

namespace qconn {

// Time-dependent point transformation between the lab chart and a moving
// frame, with the multiplicative phase that maps frame solutions back:
//   psi_lab(x, t) = exp(i phi(x'(x, t), t)) psi_frame(x'(x, t), t),
// where x' = to_frame(t, x). All built-in frames coincide with the lab at
// t = 0. The frame-side Hamiltonian is static for every built-in frame.
struct FrameTransform {
  std::string name;
  int spatial_dim = 1;
  double mass = 1.0;
  double param = 0.0;  // v, g, or omega; 0 is the identity frame

  std::function<Eigen::VectorXd(double t, const Eigen::VectorXd&)> to_frame;
  std::function<Eigen::VectorXd(double t, const Eigen::VectorXd&)> to_lab;
  std::function<double(const Eigen::VectorXd& xp, double t)> phase;
  // exact counterpart of `phase` in symbols {m, v|g, x', t'}
  sym::Poly phase_poly = sym::Poly::zero(sym::make_symbols({"m"}));
  std::function<OperatorMatrix(const GridSpec&)> lab_hamiltonian;
  std::function<OperatorMatrix(const GridSpec&)> frame_hamiltonian;

  bool is_identity() const { return param == 0.0; }
};

// x' = x - v t; phase m v x' + (1/2) m v^2 t; frame Hamiltonian free.
FrameTransform galilean_boost(double mass, double v);

// x' = x - (1/2) g t^2; phase m g (t x' + g t^3/6); frame Hamiltonian
// gains the linear potential m g x'.
FrameTransform uniform_acceleration(double mass, double g);

// 2-D, x' = R(omega t) x; phase 0; frame Hamiltonian p^2/2m - omega J.
FrameTransform uniform_rotation(double mass, double omega);

// Acceleration g followed by a further g' relative to the first frame. The
// net frame equals uniform_acceleration(m, g + g') and the phases add up to
// the exact cross term -(1/6) m g g' t^3, returned for inspection.
struct AccelCompositionReport {
  sym::CompositionIdentity identity = sym::composition_identity();
  double phase_residual_sample = 0.0;  // numeric check at a sample point
};
FrameTransform compose_accelerations(double mass, double g, double gprime,
                                     AccelCompositionReport* report = nullptr);

// J = x p_y - y p_x on a 2-D grid, assembled from the symmetrized products
// (the factors commute, so this equals the plain products exactly).
OperatorMatrix angular_momentum_operator(const GridSpec& grid);

// The rotating-frame Hamiltonian in its two algebraically equal forms:
// p^2/2m - omega J, and the completed square
// ((p_x + m w y)^2 + (p_y - m w x)^2)/(2m) - (1/2) m w^2 (x^2 + y^2).
struct RotatingFrameForms {
  OperatorMatrix angular;
  OperatorMatrix completed_square;
};
RotatingFrameForms rotating_frame_hamiltonians(const GridSpec& grid,
                                               double mass, double omega);

struct PacketSpec {
  double x0 = 0.0, y0 = 0.0;
  double p0x = 0.0, p0y = 0.0;
  double sigma = 1.0;
};

struct CovarianceParams {
  int n = 512;           // grid points per axis at the finest level
  double length = 40.0;  // box length per axis
  double dt = 1e-3;      // step at the finest level
  double horizon = 1.0;  // final time T
  int joint_levels = 3;  // h and dt refined together by factors of 2
  int dt_levels = 0;     // extra dt-only refinements at the finest grid
  double boundary_mass_tol = 1e-9;
};

struct CovarianceReport {
  struct Row {
    int n = 0;
    double dt = 0.0;
    double value = 0.0;
  };
  double discrepancy = 0.0;  // finest level, phase-aligned L2 distance
  std::vector<Row> joint_table;
  double joint_order = 0.0;  // mean log2 ratio of successive joint rows
  std::vector<Row> dt_table;
  double dt_halving_factor = 0.0;  // last ratio of the dt-only table
};

// Evolves the packet in the lab and in the moving frame, maps the frame
// result back through the coordinate change (spectral resampling) and the
// phase, and reports the phase-aligned L2 discrepancy
//   d^2 = |a|^2 + |b|^2 - 2 |<a, b>|
// together with refinement tables. Throws domain_error if either evolution
// puts more than boundary_mass_tol of probability into the outer 5% of the
// box, since the comparison is then contaminated by wraparound.
CovarianceReport verify_covariance(const FrameTransform& frame,
                                   const PacketSpec& packet,
                                   const CovarianceParams& params);

struct RindlerSample {
  double c = 0.0;
  double residual_dt = 0.0;
  double residual_dx = 0.0;
  double total = 0.0;
};

struct RindlerScalingReport {
  std::vector<RindlerSample> rows;
  double slope = 0.0;  // least-squares log-log slope of total against c
  bool monotone = true;
};

// Residual between the exact coefficients of the action form in uniformly
// accelerated (hyperbolic) coordinates and their low-velocity weak-field
// limit, evaluated with cancellation-free closed forms so the 1/c decay is
// visible far below double rounding of the raw differences. Every sample
// must satisfy g t / c < 0.1, g |x'| / c^2 < 0.1 and |p| / (m c) < 0.1;
// violations throw invalid_argument.
RindlerScalingReport rindler_limit_scaling(double mass, double g, double p,
                                           double t, double xprime,
                                           const std::vector<double>& cs);

}  // namespace qconn
