#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "qconn/evolve.hpp"
#include "qconn/forms.hpp"
#include "qconn/grid.hpp"
#include "qconn/operators.hpp"
#include "qconn/resample.hpp"
#include "qconn/transport.hpp"

using namespace qconn;

namespace {

BasePoint pt2(double t, double x) {
  BasePoint p(2);
  p << t, x;
  return p;
}

OpOneForm particle_connection(const GridSpec& grid, double mass,
                              const std::function<double(double)>& pot) {
  const OperatorMatrix h = build_hamiltonian(grid, mass, pot);
  const OperatorMatrix p = build_momentum(grid, 0);
  return action_connection_1d(h, p);
}

double dist(const WaveState& a, const WaveState& b) {
  return std::sqrt((a.amps - b.amps).squaredNorm() * a.grid.weight());
}

double mean_position(const WaveState& psi) {
  double num = 0.0, den = 0.0;
  for (int j = 0; j < psi.grid.size(); ++j) {
    const double w = std::norm(psi.amps[j]);
    num += psi.grid.coord(0, j) * w;
    den += w;
  }
  return num / den;
}

// Connection with base-dependent components: a pure-gauge dressing of the
// particle connection by U(t, x) = exp(i t x K), K = diag(cos(2 pi x_j / L)).
OpOneForm dressed_connection(const GridSpec& grid) {
  OpOneForm w = particle_connection(grid, 1.0, [](double x) { return 2.0 * x; });
  auto unitary = [grid](const BasePoint& p) {
    std::vector<Eigen::Triplet<Complex>> trips;
    for (int j = 0; j < grid.size(); ++j) {
      const double k = std::cos(2.0 * M_PI * grid.coord(0, j) / grid.length(0));
      trips.emplace_back(j, j, std::exp(Complex(0.0, p[0] * p[1] * k)));
    }
    SparseCd m(grid.size(), grid.size());
    m.setFromTriplets(trips.begin(), trips.end());
    return OperatorMatrix(grid, m);
  };
  return gauge_transform(w, OperatorField(grid, 2, unitary));
}

}  // namespace

TEST_CASE("curve construction and validation") {
  CHECK_THROWS_AS(Curve::polyline({}), std::invalid_argument);
  CHECK_THROWS_AS(Curve::polyline({pt2(0, 0), pt2(0, 0)}), std::invalid_argument);
  BasePoint p3(3);
  p3 << 0, 0, 0;
  CHECK_THROWS_AS(Curve::polyline({pt2(0, 0), p3}), std::invalid_argument);
  CHECK_THROWS_AS(Curve::rectangle_tx(0, 0, -0.1, 0.1), std::invalid_argument);

  const Curve rect = Curve::rectangle_tx(0.0, 1.0, 0.2, 0.4);
  CHECK(rect.segments() == 4);
  CHECK(rect.closed());
  CHECK((rect.points.front() - pt2(-0.1, 0.8)).norm() == 0.0);
  CHECK((rect.points[1] - pt2(-0.1, 1.2)).norm() == 0.0);  // first leg is +x

  const Curve rev = rect.reversed();
  CHECK((rev.points.front() - rect.points.back()).norm() == 0.0);
  CHECK_THROWS_AS(Curve::segment(pt2(0, 0), pt2(1, 0))
                      .concat(Curve::segment(pt2(2, 0), pt2(3, 0))),
                  std::invalid_argument);
}

TEST_CASE("trivial and rejected transports") {
  const GridSpec grid = GridSpec::line(32, 8.0, Boundary::Periodic);
  OpOneForm w = particle_connection(grid, 1.0, [](double x) { return 2.0 * x; });

  const Curve point = Curve::polyline({pt2(0.0, 0.0)});
  TransportResult res = ordered_exponential(w, point);
  CHECK(OperatorMatrix::max_diff(res.u, identity_op(grid)) == 0.0);
  CHECK(res.unitarity_defect == 0.0);

  CHECK_THROWS_AS(ordered_exponential(w, Curve::segment(pt2(0, 0), pt2(1, 0)), 0),
                  std::invalid_argument);
  BasePoint p3(3);
  p3 << 0, 0, 0;
  BasePoint q3(3);
  q3 << 1, 0, 0;
  CHECK_THROWS_AS(ordered_exponential(w, Curve::polyline({p3, q3})),
                  std::invalid_argument);

  const GridSpec other = GridSpec::line(32, 10.0, Boundary::Periodic);
  const WaveState psi = gaussian_packet(other, 0.0, 0.0, 1.0);
  CHECK_THROWS_AS(transport_state(w, Curve::segment(pt2(0, 0), pt2(1, 0)), psi),
                  std::invalid_argument);
}

TEST_CASE("transport around a loop is unitary and concatenation composes") {
  const GridSpec grid = GridSpec::line(64, 16.0, Boundary::Periodic);
  OpOneForm w = particle_connection(grid, 1.0, [](double x) { return 2.0 * x; });

  TransportResult loop =
      ordered_exponential(w, Curve::rectangle_tx(0.0, 1.0, 0.1, 0.1));
  CHECK(loop.unitarity_defect < 1e-10);

  const Curve first = Curve::segment(pt2(0.0, 0.0), pt2(0.3, 0.6));
  const Curve second = Curve::segment(pt2(0.3, 0.6), pt2(0.7, 0.2));
  const OperatorMatrix u1 = ordered_exponential(w, first).u;
  const OperatorMatrix u2 = ordered_exponential(w, second).u;
  const OperatorMatrix joined = ordered_exponential(w, first.concat(second)).u;
  CHECK(OperatorMatrix::max_diff(joined, u2 * u1) < 1e-13);
}

TEST_CASE("reversing a curve inverts the transport") {
  const GridSpec grid = GridSpec::line(64, 16.0, Boundary::Periodic);
  OpOneForm w = dressed_connection(grid);
  const Curve path = Curve::segment(pt2(0.0, 0.0), pt2(0.4, 0.5));
  const OperatorMatrix u = ordered_exponential(w, path, 16).u;
  const OperatorMatrix back = ordered_exponential(w, path.reversed(), 16).u;
  CHECK(OperatorMatrix::max_diff(back * u, identity_op(grid)) < 1e-9);
}

TEST_CASE("pure time legs reproduce Crank-Nicolson at second order in dt") {
  const GridSpec grid = GridSpec::line(64, 16.0, Boundary::Periodic);
  OpOneForm w = particle_connection(grid, 1.0, [](double x) { return 2.0 * x; });
  const WaveState psi0 = gaussian_packet(grid, 1.0, 0.5, 1.0);
  const double horizon = 0.5;

  // The one-exponential transport is the exact propagator here, so it serves
  // as the reference the time stepper must approach quadratically.
  const WaveState exact =
      transport_state(w, Curve::segment(pt2(0.0, 0.0), pt2(horizon, 0.0)), psi0);
  CHECK(exact.time == doctest::Approx(psi0.time + horizon));

  const OperatorMatrix h = build_hamiltonian(grid, 1.0, [](double x) { return 2.0 * x; });
  auto cn_error = [&](double dt) {
    const int steps = static_cast<int>(std::llround(horizon / dt));
    WaveState evolved = CrankNicolson(h, dt).evolve(psi0, steps);
    return dist(evolved, exact);
  };
  const double e1 = cn_error(2e-3);
  const double e2 = cn_error(1e-3);
  CHECK(std::log2(e1 / e2) == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("pure space legs translate the packet backwards") {
  const GridSpec grid = GridSpec::line(256, 20.0, Boundary::Periodic);
  OpOneForm w = particle_connection(grid, 1.0, [](double) { return 0.0; });
  const WaveState psi0 = gaussian_packet(grid, 0.8, 0.0, 1.0);
  const double delta = 0.5;

  const WaveState moved =
      transport_state(w, Curve::segment(pt2(0.0, 0.0), pt2(0.0, delta)), psi0);
  CHECK(std::abs(mean_position(moved) - (0.8 - delta)) < 2e-3);
  CHECK(dist(moved, resample_shift(psi0, -delta)) < 2e-3);
  CHECK(moved.time == psi0.time);  // no displacement along t
}

TEST_CASE("rectangle holonomy matches the curvature prediction") {
  const GridSpec grid = GridSpec::line(128, 20.0, Boundary::Periodic);
  OpOneForm w = particle_connection(grid, 1.0, [](double x) { return 2.0 * x; });
  const WaveState probe = gaussian_packet(grid, 1.0, 0.0, 1.0);

  SUBCASE("loop phase equals area times the local field strength") {
    HolonomyReport rep = holonomy(w, 0.0, 1.0, 0.05, 0.05, probe);
    CHECK(rep.area == doctest::Approx(0.0025));
    // V' = 2 everywhere, so the phase picked up is V' * area = 0.005 up to
    // the O(h^2) stencil correction, well inside 1e-4.
    CHECK(std::abs(rep.loop_phase - 0.005) < 1e-4);
    CHECK(std::abs(rep.loop_phase - rep.curvature_phase) < 5e-5);
    const double defect =
        (rep.loop.dense().adjoint() * rep.loop.dense() -
         MatrixCd::Identity(grid.size(), grid.size()))
            .cwiseAbs()
            .maxCoeff();
    CHECK(defect < 1e-10);
  }

  SUBCASE("the operator-level defect shrinks faster than the area") {
    // Sides small enough that ||H dt|| is small even on the potential's
    // wraparound rows; larger rectangles are not yet in the cubic regime.
    const double d1 = holonomy(w, 0.0, 1.0, 0.025, 0.025, probe).defect;
    const double d2 = holonomy(w, 0.0, 1.0, 0.0125, 0.0125, probe).defect;
    CHECK(std::log2(d1 / d2) > 2.5);
  }
}

TEST_CASE("free-particle holonomy is trivial") {
  const GridSpec grid = GridSpec::line(128, 20.0, Boundary::Periodic);
  OpOneForm w = particle_connection(grid, 1.0, [](double) { return 0.0; });
  const WaveState probe = gaussian_packet(grid, 0.0, 0.4, 1.0);
  HolonomyReport rep = holonomy(w, 0.0, 0.0, 0.1, 0.1, probe);
  CHECK(rep.defect < 1e-10);
  CHECK(std::abs(rep.loop_phase) < 1e-10);
  CHECK(std::abs(rep.curvature_phase) < 1e-10);
}

TEST_CASE("exponential failures carry the segment index") {
  const GridSpec grid = GridSpec::line(32, 8.0, Boundary::Periodic);
  OpOneForm w = particle_connection(grid, 1.0, [](double x) { return 1e19 * x; });
  bool threw = false;
  try {
    ordered_exponential(w, Curve::segment(pt2(0.0, 0.0), pt2(1.0, 0.0)));
  } catch (const std::runtime_error& err) {
    threw = true;
    CHECK(std::string(err.what()).find("segment 0") != std::string::npos);
  }
  CHECK(threw);
}
