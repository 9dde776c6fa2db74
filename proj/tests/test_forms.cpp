#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "qconn/expm.hpp"
#include "qconn/forms.hpp"
#include "qconn/grid.hpp"
#include "qconn/operators.hpp"

using namespace qconn;

namespace {

BasePoint pt2(double t, double x) {
  BasePoint p(2);
  p << t, x;
  return p;
}

OperatorMatrix diag_op(const GridSpec& grid, const std::function<double(double)>& f) {
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(grid.size());
  for (int j = 0; j < grid.size(); ++j) {
    trips.emplace_back(j, j, Complex(f(grid.coord(0, j)), 0.0));
  }
  SparseCd m(grid.size(), grid.size());
  m.setFromTriplets(trips.begin(), trips.end());
  return OperatorMatrix(grid, m);
}

// Weighted L2 norm of (A psi - target) where target_j = f(x_j) * psi_j.
double apply_error(const OperatorMatrix& a, const WaveState& psi,
                   const std::function<Complex(double)>& f) {
  WaveState out = a.apply(psi);
  double s = 0.0;
  for (int j = 0; j < psi.grid.size(); ++j) {
    s += std::norm(out.amps[j] - f(psi.grid.coord(0, j)) * psi.amps[j]);
  }
  return std::sqrt(s * psi.grid.weight());
}

OpOneForm particle_connection(const GridSpec& grid, double mass,
                              const std::function<double(double)>& pot) {
  const OperatorMatrix h = build_hamiltonian(grid, mass, pot);
  const OperatorMatrix p = build_momentum(grid, 0);
  return action_connection_1d(h, p);
}

// Diagonal unitary field U(t, x) = exp(i t x K) with K = diag(sin(2 pi x_j / L)).
OperatorField phase_gauge_field(const GridSpec& grid, bool analytic_partials) {
  const double length = grid.length(0);
  auto k_of = [length](double x) { return std::sin(2.0 * M_PI * x / length); };
  auto unitary = [grid, k_of](const BasePoint& p) {
    std::vector<Eigen::Triplet<Complex>> trips;
    for (int j = 0; j < grid.size(); ++j) {
      const double theta = p[0] * p[1] * k_of(grid.coord(0, j));
      trips.emplace_back(j, j, std::exp(Complex(0.0, theta)));
    }
    SparseCd m(grid.size(), grid.size());
    m.setFromTriplets(trips.begin(), trips.end());
    return OperatorMatrix(grid, m);
  };
  OperatorField u(grid, 2, unitary);
  if (analytic_partials) {
    // d/dt U = i x K U and d/dx U = i t K U, entrywise on the diagonal.
    auto partial = [grid, k_of, unitary](int axis, const BasePoint& p) {
      const double coef = axis == 0 ? p[1] : p[0];
      std::vector<Eigen::Triplet<Complex>> trips;
      for (int j = 0; j < grid.size(); ++j) {
        const double k = k_of(grid.coord(0, j));
        const double theta = p[0] * p[1] * k;
        trips.emplace_back(j, j, Complex(0.0, coef * k) * std::exp(Complex(0.0, theta)));
      }
      SparseCd m(grid.size(), grid.size());
      m.setFromTriplets(trips.begin(), trips.end());
      return OperatorMatrix(grid, m);
    };
    u.with_partial(0, [partial](const BasePoint& p) { return partial(0, p); });
    u.with_partial(1, [partial](const BasePoint& p) { return partial(1, p); });
  }
  return u;
}

}  // namespace

TEST_CASE("chart lookups and step scaling") {
  BaseChart chart = BaseChart::tx(1e-3);
  CHECK(chart.dim() == 2);
  CHECK(chart.index("t") == 0);
  CHECK(chart.index("x") == 1);
  CHECK_THROWS_AS(chart.index("y"), std::invalid_argument);
  BaseChart halved = chart.with_steps_scaled(0.5);
  CHECK(halved.steps[0] == doctest::Approx(5e-4));
  CHECK_THROWS_AS(chart.with_steps_scaled(0.0), std::invalid_argument);
  CHECK(BaseChart::txy().dim() == 3);
}

TEST_CASE("operator fields: constancy flags, analytic partials, validation") {
  const GridSpec grid = GridSpec::line(32, 8.0, Boundary::Periodic);
  const OperatorMatrix v = diag_op(grid, [](double x) { return 2.0 * x; });

  SUBCASE("constant fields have exactly zero derivatives") {
    OperatorField f = OperatorField::constant(2, v);
    CHECK(f.constant_everywhere());
    OperatorMatrix d = f.partial(0, pt2(0.3, 0.4), 1e-3);
    CHECK(OperatorMatrix::max_diff(d, Complex(0.0, 0.0) * v) == 0.0);
  }

  SUBCASE("central differences are exact on fields linear in the base point") {
    const OperatorMatrix h0 = build_hamiltonian(grid, 1.0, Eigen::VectorXd::Zero(grid.size()));
    OperatorField f(grid, 2, [h0, v](const BasePoint& p) { return h0 + Complex(p[1], 0.0) * v; });
    OperatorMatrix fd = f.partial(1, pt2(0.0, 0.7), 1e-3);
    CHECK(OperatorMatrix::max_diff(fd, v) < 1e-10);

    f.with_partial(1, [v](const BasePoint&) { return v; });
    OperatorMatrix an = f.partial(1, pt2(0.0, 0.7), 1e-3);
    CHECK(OperatorMatrix::max_diff(an, v) == 0.0);
  }

  SUBCASE("base point dimension and sampler grid are validated") {
    OperatorField f = OperatorField::constant(2, v);
    BasePoint p3(3);
    p3 << 0.0, 0.0, 0.0;
    CHECK_THROWS_AS(f.eval(p3), std::invalid_argument);

    const GridSpec other = GridSpec::line(16, 8.0, Boundary::Periodic);
    OperatorField bad(grid, 2, [other](const BasePoint&) { return identity_op(other); });
    CHECK_THROWS_AS(bad.eval(pt2(0.0, 0.0)), std::invalid_argument);
    CHECK_THROWS_AS(OperatorField(grid, 0, nullptr), std::invalid_argument);
  }
}

TEST_CASE("connection components are i * generator and anti-hermitian") {
  const GridSpec grid = GridSpec::line(64, 16.0, Boundary::Periodic);
  OpOneForm w = particle_connection(grid, 1.0, [](double x) { return 2.0 * x; });
  const BasePoint p0 = pt2(0.0, 0.0);

  const OperatorMatrix wt = w.comp(0).eval(p0);
  const OperatorMatrix wx = w.comp(1).eval(p0);
  // i H and -i P flip sign under the adjoint.
  CHECK(OperatorMatrix::max_diff(wt.adjoint(), Complex(-1.0, 0.0) * wt) < 1e-12);
  CHECK(OperatorMatrix::max_diff(wx.adjoint(), Complex(-1.0, 0.0) * wx) < 1e-12);

  const OperatorMatrix h = build_hamiltonian(grid, 1.0, [](double x) { return 2.0 * x; });
  CHECK(OperatorMatrix::max_diff(wt, Complex(0.0, 1.0) * h) == 0.0);
  const OperatorMatrix p = build_momentum(grid, 0);
  CHECK(OperatorMatrix::max_diff(wx, Complex(0.0, -1.0) * p) == 0.0);
  CHECK(w.all_constant());
}

TEST_CASE("generator validation: count mismatch and non-hermitian values") {
  const GridSpec grid = GridSpec::line(32, 8.0, Boundary::Periodic);
  const OperatorMatrix p = build_momentum(grid, 0);
  CHECK_THROWS_AS(
      connection_from_generators(BaseChart::tx(), {OperatorField::constant(2, p)}),
      std::invalid_argument);

  // i P is not hermitian; the defect is reported at evaluation time.
  const OperatorMatrix skew = Complex(0.0, 1.0) * p;
  OpOneForm w = connection_from_generators(
      BaseChart::tx(),
      {OperatorField::constant(2, skew), OperatorField::constant(2, skew)});
  CHECK_THROWS_WITH_AS(w.comp(0).eval(pt2(0.0, 0.0)),
                       doctest::Contains("not hermitian"), std::invalid_argument);
}

TEST_CASE("two-form index antisymmetry is exact") {
  const GridSpec grid = GridSpec::line(32, 8.0, Boundary::Periodic);
  OpOneForm w = particle_connection(grid, 1.0, [](double x) { return 0.5 * x * x; });
  OpTwoForm curv = curvature(w);
  const BasePoint p0 = pt2(0.0, 0.0);
  const OperatorMatrix a = curv.eval(0, 1, p0);
  const OperatorMatrix b = curv.eval(1, 0, p0);
  CHECK(OperatorMatrix::max_diff(a, Complex(-1.0, 0.0) * b) == 0.0);
  CHECK(OperatorMatrix::max_diff(curv.eval(0, 0, p0), Complex(0.0, 0.0) * a) == 0.0);
  CHECK_THROWS_AS(curv.eval(0, 2, p0), std::invalid_argument);
}

TEST_CASE("exterior derivative of a base-constant one-form vanishes exactly") {
  const GridSpec grid = GridSpec::line(32, 8.0, Boundary::Periodic);
  OpOneForm w = particle_connection(grid, 1.0, [](double x) { return 2.0 * x; });
  OpTwoForm dw = exterior_derivative(w);
  const OperatorMatrix z = dw.eval(0, 1, pt2(0.2, -0.1));
  CHECK(OperatorMatrix::max_diff(z, Complex(0.0, 0.0) * z) == 0.0);
}

TEST_CASE("curvature of the free particle vanishes to rounding") {
  const GridSpec grid = GridSpec::line(64, 16.0, Boundary::Periodic);
  OpOneForm w = particle_connection(grid, 1.0, [](double) { return 0.0; });
  OpTwoForm curv = curvature(w);
  const OperatorMatrix z = curv.eval(1, 0, pt2(0.0, 0.0));
  // [P^2/2m, P] differs from zero only by product-rounding of the stencils.
  CHECK(OperatorMatrix::max_diff(z, Complex(0.0, 0.0) * z) < 1e-12);
}

TEST_CASE("curvature acts as -i V' on smooth packets, second order in h") {
  struct Case {
    std::function<double(double)> pot;
    std::function<double(double)> dpot;
  };
  const std::vector<Case> cases = {
      {[](double x) { return 2.0 * x; }, [](double) { return 2.0; }},
      {[](double x) { return 0.5 * x * x; }, [](double x) { return x; }},
      {[](double x) { return 0.1 * x * x * x * x; },
       [](double x) { return 0.4 * x * x * x; }},
  };
  for (const auto& c : cases) {
    auto error_at = [&c](int n) {
      const GridSpec grid = GridSpec::line(n, 20.0, Boundary::Periodic);
      OpOneForm w = particle_connection(grid, 1.0, c.pot);
      OpTwoForm curv = curvature(w);
      const OperatorMatrix omega_xt = curv.eval(1, 0, pt2(0.0, 0.0));
      const WaveState psi = gaussian_packet(grid, 0.0, 0.6, 1.0);
      return apply_error(omega_xt, psi,
                         [&c](double x) { return Complex(0.0, -c.dpot(x)); });
    };
    const double e1 = error_at(128);
    const double e2 = error_at(256);
    const double order = std::log2(e1 / e2);
    CHECK(order > 1.7);
    CHECK(order < 2.4);
  }
}

TEST_CASE("field strength is the hermitian -i times curvature") {
  const GridSpec grid = GridSpec::line(128, 20.0, Boundary::Periodic);
  OpOneForm w = particle_connection(grid, 1.0, [](double x) { return 2.0 * x; });
  OpTwoForm curv = curvature(w);
  const BasePoint p0 = pt2(0.0, 0.0);
  const OperatorMatrix f = field_strength(curv, 1, 0, p0);
  CHECK(f.hermiticity_defect() < 1e-12);
  // On a packet, F_xt multiplies by -V' = -2 up to the O(h^2) stencil error.
  const WaveState psi = gaussian_packet(grid, 0.0, 0.0, 1.0);
  CHECK(apply_error(f, psi, [](double) { return Complex(-2.0, 0.0); }) < 0.05);
}

TEST_CASE("gauge transform by a constant unitary conjugates the connection") {
  const GridSpec grid = GridSpec::line(64, 16.0, Boundary::Periodic);
  OpOneForm w = particle_connection(grid, 1.0, [](double x) { return 2.0 * x; });
  const OperatorMatrix k = diag_op(grid, [](double x) { return std::cos(x); });
  const OperatorMatrix u_mat(grid, expm_dense(Complex(0.0, 1.0) * k.dense()));
  const OperatorField u = OperatorField::constant(2, u_mat);

  OpOneForm wp = gauge_transform(w, u);
  CHECK(wp.all_constant());
  const BasePoint p0 = pt2(0.1, 0.2);
  const OperatorMatrix lhs = wp.comp(0).eval(p0);
  const OperatorMatrix rhs = u_mat * w.comp(0).eval(p0) * u_mat.adjoint();
  CHECK(OperatorMatrix::max_diff(lhs, rhs) < 1e-12);

  // Curvature conjugates the same way; derivative terms stay exactly zero.
  OpTwoForm cp = curvature(wp);
  OpTwoForm cw = curvature(w);
  const OperatorMatrix clhs = cp.eval(0, 1, p0);
  const OperatorMatrix crhs = u_mat * cw.eval(0, 1, p0) * u_mat.adjoint();
  CHECK(OperatorMatrix::max_diff(clhs, crhs) < 1e-9);

  GaugeCovarianceReport report = curvature_covariance_check(w, u, {p0}, 2);
  CHECK(report.residual < 1e-9);
}

TEST_CASE("gauge transform rejects non-unitary fields and grid mismatches") {
  const GridSpec grid = GridSpec::line(32, 8.0, Boundary::Periodic);
  OpOneForm w = particle_connection(grid, 1.0, [](double) { return 0.0; });
  const OperatorField doubled =
      OperatorField::constant(2, Complex(2.0, 0.0) * identity_op(grid));
  OpOneForm wp = gauge_transform(w, doubled);
  CHECK_THROWS_WITH_AS(wp.comp(0).eval(pt2(0.0, 0.0)),
                       doctest::Contains("not unitary"), std::invalid_argument);

  const GridSpec other = GridSpec::line(16, 8.0, Boundary::Periodic);
  CHECK_THROWS_AS(gauge_transform(w, OperatorField::constant(2, identity_op(other))),
                  std::invalid_argument);
}

TEST_CASE("pure-gauge connection equals -i (d theta) K for diagonal K") {
  const GridSpec grid = GridSpec::line(48, 12.0, Boundary::Periodic);
  const OperatorMatrix zero(grid, SparseCd(grid.size(), grid.size()));
  OpOneForm w = connection_from_generators(
      BaseChart::tx(),
      {OperatorField::constant(2, zero), OperatorField::constant(2, zero)});
  const OperatorMatrix k =
      diag_op(grid, [&grid](double x) { return std::sin(2.0 * M_PI * x / grid.length(0)); });
  const BasePoint p0 = pt2(0.3, 0.7);

  SUBCASE("finite-difference gauge derivative") {
    OpOneForm wp = gauge_transform(w, phase_gauge_field(grid, false));
    // With theta = t x, d(theta)/dt = x and d(theta)/dx = t at the sample point.
    const OperatorMatrix expect_t = Complex(0.0, -p0[1]) * k;
    const OperatorMatrix expect_x = Complex(0.0, -p0[0]) * k;
    CHECK(OperatorMatrix::max_diff(wp.comp(0).eval(p0), expect_t) < 1e-6);
    CHECK(OperatorMatrix::max_diff(wp.comp(1).eval(p0), expect_x) < 1e-6);
  }

  SUBCASE("analytic gauge derivative is exact and leaves a flat connection") {
    OpOneForm wp = gauge_transform(w, phase_gauge_field(grid, true));
    const OperatorMatrix expect_t = Complex(0.0, -p0[1]) * k;
    CHECK(OperatorMatrix::max_diff(wp.comp(0).eval(p0), expect_t) < 1e-12);
    // The curvature of a pure gauge vanishes; only rounding survives because
    // the transformed components are exactly linear in the base point.
    OpTwoForm cp = curvature(wp);
    const OperatorMatrix z = cp.eval(0, 1, p0);
    CHECK(OperatorMatrix::max_diff(z, Complex(0.0, 0.0) * z) < 5e-12);
  }
}

TEST_CASE("curvature covariance residual shrinks at second order in the step") {
  const GridSpec grid = GridSpec::line(64, 16.0, Boundary::Periodic);
  const OperatorMatrix h = build_hamiltonian(grid, 1.0, [](double x) { return 2.0 * x; });
  const OperatorMatrix p = build_momentum(grid, 0);
  OpOneForm w = action_connection_1d(h, p, 2e-2);
  const OperatorField u = phase_gauge_field(grid, false);

  const std::vector<BasePoint> points = {pt2(0.3, 0.7), pt2(0.1, -0.4)};
  GaugeCovarianceReport report = curvature_covariance_check(w, u, points, 3);
  REQUIRE(report.table.size() == 3);
  CHECK(report.table[0].second > report.table[1].second);
  CHECK(report.table[1].second > report.table[2].second);
  CHECK(report.order == doctest::Approx(2.0).epsilon(0.15));
  CHECK(report.residual < report.table.front().second / 8.0);

  CHECK_THROWS_AS(curvature_covariance_check(w, u, {}, 3), std::invalid_argument);
  CHECK_THROWS_AS(curvature_covariance_check(w, u, points, 0), std::invalid_argument);
}
