#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qconn/operators.hpp"

namespace qconn {

using BasePoint = Eigen::VectorXd;

// Coordinate chart on the spacetime base: ordered coordinate names plus the
// central-difference step used for base-point derivatives of operator fields.
struct BaseChart {
  std::vector<std::string> names;
  Eigen::VectorXd steps;

  static BaseChart tx(double step = 1e-3);             // (t, x)
  static BaseChart txy(double step = 1e-3);            // (t, x, y)
  int dim() const { return static_cast<int>(names.size()); }
  int index(const std::string& name) const;
  BaseChart with_steps_scaled(double factor) const;
};

// Base-point-dependent operator on a fixed grid Hilbert space. Samplers are
// pure functions of the base point; optional analytic partial derivatives
// override finite differences, and per-axis constancy flags make derivative
// terms exactly zero.
class OperatorField {
 public:
  using Sampler = std::function<OperatorMatrix(const BasePoint&)>;

  OperatorField(GridSpec grid, int base_dim, Sampler s);
  static OperatorField constant(int base_dim, const OperatorMatrix& value);

  OperatorField& with_partial(int axis, Sampler ds);
  OperatorField& mark_constant(int axis);

  const GridSpec& grid() const { return grid_; }
  int base_dim() const { return base_dim_; }
  bool constant_along(int axis) const { return const_axes_.at(axis); }
  bool constant_everywhere() const;

  OperatorMatrix eval(const BasePoint& p) const;
  // d/dx_axis at p: exact zero if flagged constant, else analytic partial if
  // supplied, else central difference with the given step.
  OperatorMatrix partial(int axis, const BasePoint& p, double step) const;

 private:
  GridSpec grid_;
  int base_dim_;
  Sampler sampler_;
  std::vector<Sampler> partials_;
  std::vector<bool> const_axes_;
};

// Operator-valued one-form: one component field per base coordinate.
class OpOneForm {
 public:
  OpOneForm(BaseChart chart, std::vector<OperatorField> comps);

  const BaseChart& chart() const { return chart_; }
  const GridSpec& grid() const { return comps_.front().grid(); }
  const OperatorField& comp(int mu) const { return comps_.at(mu); }
  int dim() const { return chart_.dim(); }
  bool all_constant() const;
  OpOneForm with_chart(const BaseChart& chart) const;

 private:
  BaseChart chart_;
  std::vector<OperatorField> comps_;
};

// Operator-valued two-form, components stored for mu < nu; access is
// antisymmetric in the indices.
class OpTwoForm {
 public:
  OpTwoForm(BaseChart chart, GridSpec grid,
            std::map<std::pair<int, int>, OperatorField> comps);

  const BaseChart& chart() const { return chart_; }
  OperatorMatrix eval(int mu, int nu, const BasePoint& p) const;

 private:
  BaseChart chart_;
  GridSpec grid_;
  std::map<std::pair<int, int>, OperatorField> comps_;
};

// omega_mu = i * G_mu from hermitian generator fields G, one per coordinate.
// For the (t, x) chart of a particle the generators are (H, -P), giving
// omega_t = iH, omega_x = -iP. Throws on count mismatch; hermiticity of each
// generator is checked at every evaluation.
OpOneForm connection_from_generators(const BaseChart& chart,
                                     const std::vector<OperatorField>& generators);

// Convenience for base-constant H and P on the (t, x) chart.
OpOneForm action_connection_1d(const OperatorMatrix& h, const OperatorMatrix& p,
                               double fd_step = 1e-3);

// (d omega)_{mu nu} = d_mu omega_nu - d_nu omega_mu.
OpTwoForm exterior_derivative(const OpOneForm& w);

// Omega = d omega + omega ^ omega with (omega ^ omega)_{mu nu} =
// [omega_mu, omega_nu]. The hermitian field strength is F_{mu nu} =
// -i Omega_{mu nu}.
OpTwoForm curvature(const OpOneForm& w);
OperatorMatrix field_strength(const OpTwoForm& curv, int mu, int nu,
                              const BasePoint& p);

// omega'_mu = U omega_mu U^dagger + U d_mu(U^dagger), with U a field of
// unitaries (checked to 1e-10 at every evaluation point).
OpOneForm gauge_transform(const OpOneForm& w, const OperatorField& u);

// Residual of curvature covariance: curvature(gauge_transform(w, U)) compared
// with U curvature(w) U^dagger at the sample points, repeated over halved
// finite-difference steps to measure the convergence order.
struct GaugeCovarianceReport {
  std::vector<std::pair<double, double>> table;  // (step, residual)
  double residual;                               // at the smallest step
  double order;                                  // mean log2 ratio
};
GaugeCovarianceReport curvature_covariance_check(
    const OpOneForm& w, const OperatorField& u,
    const std::vector<BasePoint>& points, int levels = 3);

}  // namespace qconn
