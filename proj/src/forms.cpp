#include "qconn/forms.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qconn {

namespace {

OperatorMatrix zero_operator(const GridSpec& grid) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  return OperatorMatrix(grid, SparseCd(n, n));
}

void require_axis(int axis, int dim) {
  if (axis < 0 || axis >= dim) {
    throw std::invalid_argument("base axis " + std::to_string(axis) +
                                " out of range for dimension " + std::to_string(dim));
  }
}

}  // namespace

BaseChart BaseChart::tx(double step) {
  BaseChart c;
  c.names = {"t", "x"};
  c.steps = Eigen::VectorXd::Constant(2, step);
  return c;
}

BaseChart BaseChart::txy(double step) {
  BaseChart c;
  c.names = {"t", "x", "y"};
  c.steps = Eigen::VectorXd::Constant(3, step);
  return c;
}

int BaseChart::index(const std::string& name) const {
  for (int i = 0; i < dim(); ++i) {
    if (names[i] == name) return i;
  }
  throw std::invalid_argument("chart has no coordinate named '" + name + "'");
}

BaseChart BaseChart::with_steps_scaled(double factor) const {
  if (!(factor > 0.0)) {
    throw std::invalid_argument("step scale factor must be positive");
  }
  BaseChart c = *this;
  c.steps *= factor;
  return c;
}

OperatorField::OperatorField(GridSpec grid, int base_dim, Sampler s)
    : grid_(std::move(grid)), base_dim_(base_dim), sampler_(std::move(s)) {
  if (base_dim_ <= 0) {
    throw std::invalid_argument("operator field needs a positive base dimension");
  }
  if (!sampler_) {
    throw std::invalid_argument("operator field needs a sampler");
  }
  partials_.resize(base_dim_);
  const_axes_.assign(base_dim_, false);
}

OperatorField OperatorField::constant(int base_dim, const OperatorMatrix& value) {
  OperatorField f(value.grid(), base_dim,
                  [value](const BasePoint&) { return value; });
  for (int a = 0; a < base_dim; ++a) f.mark_constant(a);
  return f;
}

OperatorField& OperatorField::with_partial(int axis, Sampler ds) {
  require_axis(axis, base_dim_);
  partials_[axis] = std::move(ds);
  return *this;
}

OperatorField& OperatorField::mark_constant(int axis) {
  require_axis(axis, base_dim_);
  const_axes_[axis] = true;
  return *this;
}

bool OperatorField::constant_everywhere() const {
  for (bool c : const_axes_) {
    if (!c) return false;
  }
  return true;
}

OperatorMatrix OperatorField::eval(const BasePoint& p) const {
  if (p.size() != base_dim_) {
    throw std::invalid_argument("base point dimension mismatch");
  }
  OperatorMatrix m = sampler_(p);
  if (m.grid() != grid_) {
    throw std::invalid_argument("operator field sampler returned a matrix on the wrong grid");
  }
  return m;
}

OperatorMatrix OperatorField::partial(int axis, const BasePoint& p, double step) const {
  require_axis(axis, base_dim_);
  if (const_axes_[axis]) return zero_operator(grid_);
  if (partials_[axis]) {
    OperatorMatrix m = partials_[axis](p);
    if (m.grid() != grid_) {
      throw std::invalid_argument("operator field partial returned a matrix on the wrong grid");
    }
    return m;
  }
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw std::invalid_argument("finite-difference step must be positive and finite");
  }
  BasePoint fwd = p;
  BasePoint bwd = p;
  fwd[axis] += step;
  bwd[axis] -= step;
  return Complex(1.0 / (2.0 * step), 0.0) * (eval(fwd) - eval(bwd));
}

OpOneForm::OpOneForm(BaseChart chart, std::vector<OperatorField> comps)
    : chart_(std::move(chart)), comps_(std::move(comps)) {
  if (comps_.empty() || static_cast<int>(comps_.size()) != chart_.dim()) {
    throw std::invalid_argument("one-form needs one component per chart coordinate");
  }
  for (const auto& c : comps_) {
    if (c.base_dim() != chart_.dim()) {
      throw std::invalid_argument("one-form component has wrong base dimension");
    }
    if (c.grid() != comps_.front().grid()) {
      throw std::invalid_argument("one-form components must share a grid");
    }
  }
}

bool OpOneForm::all_constant() const {
  for (const auto& c : comps_) {
    if (!c.constant_everywhere()) return false;
  }
  return true;
}

OpOneForm OpOneForm::with_chart(const BaseChart& chart) const {
  if (chart.dim() != chart_.dim()) {
    throw std::invalid_argument("replacement chart must have the same dimension");
  }
  return OpOneForm(chart, comps_);
}

OpTwoForm::OpTwoForm(BaseChart chart, GridSpec grid,
                     std::map<std::pair<int, int>, OperatorField> comps)
    : chart_(std::move(chart)), grid_(std::move(grid)), comps_(std::move(comps)) {}

OperatorMatrix OpTwoForm::eval(int mu, int nu, const BasePoint& p) const {
  require_axis(mu, chart_.dim());
  require_axis(nu, chart_.dim());
  if (mu == nu) return zero_operator(grid_);
  if (mu < nu) return comps_.at({mu, nu}).eval(p);
  return Complex(-1.0, 0.0) * comps_.at({nu, mu}).eval(p);
}

OpOneForm connection_from_generators(const BaseChart& chart,
                                     const std::vector<OperatorField>& generators) {
  if (static_cast<int>(generators.size()) != chart.dim()) {
    throw std::invalid_argument("need one generator per chart coordinate, got " +
                                std::to_string(generators.size()) + " for dimension " +
                                std::to_string(chart.dim()));
  }
  std::vector<OperatorField> comps;
  comps.reserve(generators.size());
  for (int mu = 0; mu < chart.dim(); ++mu) {
    const OperatorField gen = generators[mu];
    OperatorField comp(gen.grid(), chart.dim(), [gen](const BasePoint& p) {
      OperatorMatrix g = gen.eval(p);
      if (!g.hermitian()) {
        throw std::invalid_argument(
            "connection generator is not hermitian (defect=" +
            std::to_string(g.hermiticity_defect()) + ")");
      }
      return Complex(0.0, 1.0) * g;
    });
    for (int a = 0; a < chart.dim(); ++a) {
      if (gen.constant_along(a)) comp.mark_constant(a);
      comp.with_partial(a, [gen, a, chart](const BasePoint& p) {
        return Complex(0.0, 1.0) * gen.partial(a, p, chart.steps[a]);
      });
    }
    comps.push_back(std::move(comp));
  }
  return OpOneForm(chart, std::move(comps));
}

OpOneForm action_connection_1d(const OperatorMatrix& h, const OperatorMatrix& p,
                               double fd_step) {
  BaseChart chart = BaseChart::tx(fd_step);
  std::vector<OperatorField> gens;
  gens.push_back(OperatorField::constant(2, h));
  gens.push_back(OperatorField::constant(2, Complex(-1.0, 0.0) * p));
  return connection_from_generators(chart, gens);
}

namespace {

std::map<std::pair<int, int>, OperatorField> derivative_components(
    const OpOneForm& w, bool add_commutator) {
  const BaseChart chart = w.chart();
  const GridSpec grid = w.grid();
  std::map<std::pair<int, int>, OperatorField> comps;
  for (int mu = 0; mu < chart.dim(); ++mu) {
    for (int nu = mu + 1; nu < chart.dim(); ++nu) {
      const OperatorField wmu = w.comp(mu);
      const OperatorField wnu = w.comp(nu);
      const double step_mu = chart.steps[mu];
      const double step_nu = chart.steps[nu];
      OperatorField comp(grid, chart.dim(),
                         [wmu, wnu, mu, nu, step_mu, step_nu,
                          add_commutator](const BasePoint& p) {
                           OperatorMatrix m = wnu.partial(mu, p, step_mu) -
                                              wmu.partial(nu, p, step_nu);
                           if (add_commutator) {
                             OperatorMatrix a = wmu.eval(p);
                             OperatorMatrix b = wnu.eval(p);
                             m = m + (a * b - b * a);
                           }
                           return m;
                         });
      comps.emplace(std::make_pair(mu, nu), std::move(comp));
    }
  }
  return comps;
}

}  // namespace

OpTwoForm exterior_derivative(const OpOneForm& w) {
  return OpTwoForm(w.chart(), w.grid(), derivative_components(w, false));
}

OpTwoForm curvature(const OpOneForm& w) {
  return OpTwoForm(w.chart(), w.grid(), derivative_components(w, true));
}

OperatorMatrix field_strength(const OpTwoForm& curv, int mu, int nu,
                              const BasePoint& p) {
  return Complex(0.0, -1.0) * curv.eval(mu, nu, p);
}

namespace {

void require_unitary(const OperatorMatrix& u) {
  const MatrixCd dense = u.dense();
  const double defect =
      (dense.adjoint() * dense - MatrixCd::Identity(dense.rows(), dense.cols()))
          .cwiseAbs()
          .maxCoeff();
  if (!(defect < 1e-10)) {
    throw std::invalid_argument("gauge field value is not unitary (defect=" +
                                std::to_string(defect) + ")");
  }
}

}  // namespace

OpOneForm gauge_transform(const OpOneForm& w, const OperatorField& u) {
  if (u.base_dim() != w.chart().dim()) {
    throw std::invalid_argument("gauge field base dimension does not match the chart");
  }
  if (u.grid() != w.grid()) {
    throw std::invalid_argument("gauge field grid does not match the connection grid");
  }
  const BaseChart chart = w.chart();
  std::vector<OperatorField> comps;
  comps.reserve(chart.dim());
  for (int mu = 0; mu < chart.dim(); ++mu) {
    const OperatorField wmu = w.comp(mu);
    const double step = chart.steps[mu];
    const bool du_vanishes = u.constant_along(mu);
    OperatorField comp(w.grid(), chart.dim(),
                       [wmu, u, mu, step, du_vanishes](const BasePoint& p) {
                         OperatorMatrix uu = u.eval(p);
                         require_unitary(uu);
                         OperatorMatrix udag = uu.adjoint();
                         OperatorMatrix out = uu * wmu.eval(p) * udag;
                         if (!du_vanishes) {
                           OperatorMatrix dudag = u.partial(mu, p, step).adjoint();
                           out = out + uu * dudag;
                         }
                         return out;
                       });
    for (int a = 0; a < chart.dim(); ++a) {
      if (wmu.constant_along(a) && u.constant_along(a)) comp.mark_constant(a);
    }
    comps.push_back(std::move(comp));
  }
  return OpOneForm(chart, std::move(comps));
}

GaugeCovarianceReport curvature_covariance_check(
    const OpOneForm& w, const OperatorField& u,
    const std::vector<BasePoint>& points, int levels) {
  if (points.empty()) {
    throw std::invalid_argument("covariance check needs at least one sample point");
  }
  if (levels < 1) {
    throw std::invalid_argument("covariance check needs at least one level");
  }
  GaugeCovarianceReport report;
  for (int level = 0; level < levels; ++level) {
    const double factor = std::pow(0.5, level);
    const OpOneForm wl = w.with_chart(w.chart().with_steps_scaled(factor));
    const OpOneForm wp = gauge_transform(wl, u);
    const OpTwoForm curv_p = curvature(wp);
    const OpTwoForm curv_w = curvature(wl);
    double resid = 0.0;
    for (const auto& p : points) {
      OperatorMatrix uu = u.eval(p);
      OperatorMatrix udag = uu.adjoint();
      for (int mu = 0; mu < wl.dim(); ++mu) {
        for (int nu = mu + 1; nu < wl.dim(); ++nu) {
          OperatorMatrix lhs = curv_p.eval(mu, nu, p);
          OperatorMatrix rhs = uu * curv_w.eval(mu, nu, p) * udag;
          resid = std::max(resid, OperatorMatrix::max_diff(lhs, rhs));
        }
      }
    }
    report.table.emplace_back(w.chart().steps.maxCoeff() * factor, resid);
  }
  report.residual = report.table.back().second;
  int used = 0;
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < report.table.size(); ++i) {
    const double a = report.table[i].second;
    const double b = report.table[i + 1].second;
    if (a > 1e-13 && b > 1e-13) {
      sum += std::log2(a / b);
      ++used;
    }
  }
  report.order = used > 0 ? sum / used : std::numeric_limits<double>::quiet_NaN();
  return report;
}

}  // namespace qconn
