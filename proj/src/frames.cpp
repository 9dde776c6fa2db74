#include "qconn/frames.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "qconn/evolve.hpp"
#include "qconn/resample.hpp"

namespace qconn {

namespace {

Eigen::VectorXd vec1(double v) { return Eigen::VectorXd::Constant(1, v); }

std::function<OperatorMatrix(const GridSpec&)> free_hamiltonian(double mass) {
  return [mass](const GridSpec& grid) {
    return build_hamiltonian(grid, mass,
                             Eigen::VectorXd::Zero(grid.size()));
  };
}

}  // namespace

FrameTransform galilean_boost(double mass, double v) {
  if (!(mass > 0.0)) throw std::invalid_argument("mass must be positive");
  FrameTransform f;
  f.name = "boost";
  f.spatial_dim = 1;
  f.mass = mass;
  f.param = v;
  f.to_frame = [v](double t, const Eigen::VectorXd& x) {
    return vec1(x[0] - v * t);
  };
  f.to_lab = [v](double t, const Eigen::VectorXd& xp) {
    return vec1(xp[0] + v * t);
  };
  f.phase = [mass, v](const Eigen::VectorXd& xp, double t) {
    return mass * v * xp[0] + 0.5 * mass * v * v * t;
  };
  f.phase_poly = sym::boost_identity().phase;
  f.lab_hamiltonian = free_hamiltonian(mass);
  f.frame_hamiltonian = free_hamiltonian(mass);
  return f;
}

FrameTransform uniform_acceleration(double mass, double g) {
  if (!(mass > 0.0)) throw std::invalid_argument("mass must be positive");
  FrameTransform f;
  f.name = "acceleration";
  f.spatial_dim = 1;
  f.mass = mass;
  f.param = g;
  f.to_frame = [g](double t, const Eigen::VectorXd& x) {
    return vec1(x[0] - 0.5 * g * t * t);
  };
  f.to_lab = [g](double t, const Eigen::VectorXd& xp) {
    return vec1(xp[0] + 0.5 * g * t * t);
  };
  f.phase = [mass, g](const Eigen::VectorXd& xp, double t) {
    return mass * g * (t * xp[0] + g * t * t * t / 6.0);
  };
  f.phase_poly = sym::acceleration_identity().phase;
  f.lab_hamiltonian = free_hamiltonian(mass);
  f.frame_hamiltonian = [mass, g](const GridSpec& grid) {
    Eigen::VectorXd v(grid.size());
    for (int k = 0; k < grid.size(); ++k) {
      const double xp = grid.dimension() == 1
                            ? grid.coord(0, k)
                            : grid.coord(0, grid.unflat(k).first);
      v[k] = mass * g * xp;
    }
    return build_hamiltonian(grid, mass, v);
  };
  return f;
}

FrameTransform uniform_rotation(double mass, double omega) {
  if (!(mass > 0.0)) throw std::invalid_argument("mass must be positive");
  FrameTransform f;
  f.name = "rotation";
  f.spatial_dim = 2;
  f.mass = mass;
  f.param = omega;
  f.to_frame = [omega](double t, const Eigen::VectorXd& x) {
    const double c = std::cos(omega * t), s = std::sin(omega * t);
    Eigen::VectorXd xp(2);
    xp << c * x[0] + s * x[1], -s * x[0] + c * x[1];
    return xp;
  };
  f.to_lab = [omega](double t, const Eigen::VectorXd& xp) {
    const double c = std::cos(omega * t), s = std::sin(omega * t);
    Eigen::VectorXd x(2);
    x << c * xp[0] - s * xp[1], s * xp[0] + c * xp[1];
    return x;
  };
  f.phase = [](const Eigen::VectorXd&, double) { return 0.0; };
  f.phase_poly = sym::Poly::zero(sym::make_symbols({"m"}));
  f.lab_hamiltonian = free_hamiltonian(mass);
  f.frame_hamiltonian = [mass, omega](const GridSpec& grid) {
    return rotating_frame_hamiltonians(grid, mass, omega).angular;
  };
  return f;
}

FrameTransform compose_accelerations(double mass, double g, double gprime,
                                     AccelCompositionReport* report) {
  FrameTransform net = uniform_acceleration(mass, g + gprime);
  net.name = "acceleration-composition";
  if (report != nullptr) {
    report->identity = sym::composition_identity();
    const std::map<std::string, double> at = {
        {"m", mass}, {"g", g}, {"g'", gprime}, {"x''", 0.7}, {"t''", 1.3}};
    const double sum = report->identity.phase_sum.eval(at);
    const double cross = report->identity.cross_term.eval(at);
    const double combined = report->identity.phase_combined.eval(at);
    report->phase_residual_sample = std::abs(sum + cross - combined);
  }
  return net;
}

OperatorMatrix angular_momentum_operator(const GridSpec& grid) {
  if (grid.dimension() != 2) {
    throw std::invalid_argument("angular momentum needs a 2-D grid");
  }
  const OperatorMatrix x = build_position(grid, 0);
  const OperatorMatrix y = build_position(grid, 1);
  const OperatorMatrix px = build_momentum(grid, 0);
  const OperatorMatrix py = build_momentum(grid, 1);
  const Complex half(0.5, 0.0);
  return half * (x * py + py * x) - half * (y * px + px * y);
}

RotatingFrameForms rotating_frame_hamiltonians(const GridSpec& grid,
                                               double mass, double omega) {
  if (grid.dimension() != 2) {
    throw std::invalid_argument("rotating frame needs a 2-D grid");
  }
  if (!(mass > 0.0)) throw std::invalid_argument("mass must be positive");
  const OperatorMatrix h0 =
      build_hamiltonian(grid, mass, Eigen::VectorXd::Zero(grid.size()));
  const OperatorMatrix j = angular_momentum_operator(grid);
  RotatingFrameForms forms{h0 - Complex(omega, 0.0) * j,
                           h0 - Complex(omega, 0.0) * j};

  const OperatorMatrix x = build_position(grid, 0);
  const OperatorMatrix y = build_position(grid, 1);
  const OperatorMatrix px = build_momentum(grid, 0);
  const OperatorMatrix py = build_momentum(grid, 1);
  const Complex mw(mass * omega, 0.0);
  const OperatorMatrix sx = px + mw * y;
  const OperatorMatrix sy = py - mw * x;
  forms.completed_square =
      Complex(1.0 / (2.0 * mass), 0.0) * (sx * sx + sy * sy) -
      Complex(0.5 * mass * omega * omega, 0.0) * (x * x + y * y);
  return forms;
}

namespace {

double boundary_mass(const WaveState& psi) {
  const GridSpec& g = psi.grid;
  double mass = 0.0;
  if (g.dimension() == 1) {
    const int n = g.points(0);
    const int band = std::max(1, n / 20);
    for (int j = 0; j < n; ++j) {
      if (j < band || j >= n - band) mass += std::norm(psi.amps[j]);
    }
  } else {
    const int nx = g.points(0), ny = g.points(1);
    const int bx = std::max(1, nx / 20), by = std::max(1, ny / 20);
    for (int ix = 0; ix < nx; ++ix) {
      for (int iy = 0; iy < ny; ++iy) {
        if (ix < bx || ix >= nx - bx || iy < by || iy >= ny - by) {
          mass += std::norm(psi.amps[g.flat(ix, iy)]);
        }
      }
    }
  }
  return mass * g.weight();
}

void check_boundary(const WaveState& psi, double tol, const char* which) {
  const double m = boundary_mass(psi);
  if (m > tol) {
    char mass_text[32];
    std::snprintf(mass_text, sizeof(mass_text), "%.3e", m);
    throw std::domain_error(
        std::string("covariance check aborted: the ") + which +
        " state puts " + mass_text +
        " probability in the outer 5% of the box; enlarge the box or "
        "shorten the horizon");
  }
}

int step_count(double horizon, double dt) {
  const auto n = static_cast<int>(std::llround(horizon / dt));
  if (n < 1 || std::abs(n * dt - horizon) > 1e-9 * std::max(1.0, horizon)) {
    throw std::invalid_argument("dt must divide the horizon evenly");
  }
  return n;
}

// Phase-aligned L2 distance: min over a global phase of |a - e^{i c} b|.
double aligned_distance(const WaveState& a, const WaveState& b) {
  const double na = a.norm(), nb = b.norm();
  const double d2 = na * na + nb * nb - 2.0 * std::abs(inner_product(a, b));
  return std::sqrt(std::max(0.0, d2));
}

double covariance_run(const FrameTransform& frame, const PacketSpec& packet,
                      int n, double length, double dt, double horizon,
                      double boundary_tol) {
  const int nsteps = step_count(horizon, dt);
  if (frame.spatial_dim == 1) {
    const GridSpec grid = GridSpec::line(n, length, Boundary::Periodic);
    WaveState lab0 = gaussian_packet(grid, packet.x0, packet.p0x, packet.sigma);
    WaveState frame0 = lab0;
    for (int j = 0; j < grid.size(); ++j) {
      const Eigen::VectorXd xp = frame.to_frame(0.0, vec1(grid.coord(0, j)));
      frame0.amps[j] *= std::exp(Complex(0.0, -frame.phase(xp, 0.0)));
    }
    WaveState lab_t = CrankNicolson(frame.lab_hamiltonian(grid), dt)
                          .evolve(lab0, nsteps);
    WaveState frame_t = CrankNicolson(frame.frame_hamiltonian(grid), dt)
                            .evolve(frame0, nsteps);
    check_boundary(lab_t, boundary_tol, "lab");
    check_boundary(frame_t, boundary_tol, "frame");

    // The 1-D maps are rigid shifts x' = x - d(T); anything else cannot be
    // resampled by a spectral translation.
    const double t_final = nsteps * dt;
    const double d = -frame.to_frame(t_final, vec1(0.0))[0];
    const double probe =
        frame.to_frame(t_final, vec1(1.0))[0] - frame.to_frame(t_final, vec1(0.0))[0];
    if (std::abs(probe - 1.0) > 1e-12) {
      throw std::logic_error("1-D frame map is not a rigid shift");
    }
    WaveState predicted = resample_shift(frame_t, d);
    for (int j = 0; j < grid.size(); ++j) {
      const Eigen::VectorXd xp = frame.to_frame(t_final, vec1(grid.coord(0, j)));
      predicted.amps[j] *= std::exp(Complex(0.0, frame.phase(xp, t_final)));
    }
    return aligned_distance(lab_t, predicted);
  }

  const GridSpec grid = GridSpec::plane(n, n, length, length, Boundary::Periodic);
  WaveState lab0 = gaussian_packet_2d(grid, packet.x0, packet.y0, packet.p0x,
                                      packet.p0y, packet.sigma);
  WaveState frame0 = lab0;
  for (int k = 0; k < grid.size(); ++k) {
    const auto [ix, iy] = grid.unflat(k);
    Eigen::VectorXd x(2);
    x << grid.coord(0, ix), grid.coord(1, iy);
    frame0.amps[k] *=
        std::exp(Complex(0.0, -frame.phase(frame.to_frame(0.0, x), 0.0)));
  }
  WaveState lab_t = CrankNicolson(frame.lab_hamiltonian(grid), dt)
                        .evolve(lab0, nsteps);
  WaveState frame_t = CrankNicolson(frame.frame_hamiltonian(grid), dt)
                          .evolve(frame0, nsteps);
  check_boundary(lab_t, boundary_tol, "lab");
  check_boundary(frame_t, boundary_tol, "frame");

  const double t_final = nsteps * dt;
  WaveState predicted = resample_rotate_2d(frame_t, frame.param * t_final);
  for (int k = 0; k < grid.size(); ++k) {
    const auto [ix, iy] = grid.unflat(k);
    Eigen::VectorXd x(2);
    x << grid.coord(0, ix), grid.coord(1, iy);
    predicted.amps[k] *=
        std::exp(Complex(0.0, frame.phase(frame.to_frame(t_final, x), t_final)));
  }
  return aligned_distance(lab_t, predicted);
}

}  // namespace

CovarianceReport verify_covariance(const FrameTransform& frame,
                                   const PacketSpec& packet,
                                   const CovarianceParams& params) {
  if (frame.spatial_dim != 1 && frame.spatial_dim != 2) {
    throw std::invalid_argument("frame spatial dimension must be 1 or 2");
  }
  if (params.joint_levels < 1 || params.dt_levels < 0) {
    throw std::invalid_argument("refinement level counts are out of range");
  }
  if (!(params.dt > 0.0) || !(params.horizon > 0.0)) {
    throw std::invalid_argument("dt and horizon must be positive");
  }
  const int coarsest_div = 1 << (params.joint_levels - 1);
  if (params.n % coarsest_div != 0 || params.n / coarsest_div < 8) {
    throw std::invalid_argument(
        "grid size is not divisible into the requested refinement levels");
  }

  CovarianceReport report;
  for (int level = 0; level < params.joint_levels; ++level) {
    const int scale = 1 << (params.joint_levels - 1 - level);
    const int n = params.n / scale;
    const double dt = params.dt * scale;
    const double value = covariance_run(frame, packet, n, params.length, dt,
                                        params.horizon, params.boundary_mass_tol);
    report.joint_table.push_back({n, dt, value});
  }
  report.discrepancy = report.joint_table.back().value;

  double order_sum = 0.0;
  int order_count = 0;
  for (std::size_t i = 0; i + 1 < report.joint_table.size(); ++i) {
    const double a = report.joint_table[i].value;
    const double b = report.joint_table[i + 1].value;
    if (a > 1e-14 && b > 1e-14) {
      order_sum += std::log2(a / b);
      ++order_count;
    }
  }
  report.joint_order = order_count > 0 ? order_sum / order_count : 0.0;

  if (params.dt_levels > 0) {
    report.dt_table.push_back({params.n, params.dt, report.discrepancy});
    for (int extra = 1; extra <= params.dt_levels; ++extra) {
      const double dt = params.dt / (1 << extra);
      const double value =
          covariance_run(frame, packet, params.n, params.length, dt,
                         params.horizon, params.boundary_mass_tol);
      report.dt_table.push_back({params.n, dt, value});
    }
    const auto& tail = report.dt_table;
    report.dt_halving_factor =
        tail[tail.size() - 2].value / tail.back().value;
  }
  return report;
}

RindlerScalingReport rindler_limit_scaling(double mass, double g, double p,
                                           double t, double xprime,
                                           const std::vector<double>& cs) {
  if (!(mass > 0.0)) throw std::invalid_argument("mass must be positive");
  if (cs.empty()) throw std::invalid_argument("need at least one value of c");

  RindlerScalingReport report;
  for (double c : cs) {
    if (!(c > 0.0)) throw std::invalid_argument("c must be positive");
    if (!(g * t / c < 0.1) || !(g * std::abs(xprime) / (c * c) < 0.1) ||
        !(std::abs(p) / (mass * c) < 0.1)) {
      throw std::invalid_argument(
          "sample violates the smallness preconditions g t/c < 0.1, "
          "g|x'|/c^2 < 0.1, |p|/(m c) < 0.1 at c=" + std::to_string(c));
    }
    const double w = g / (c * c);
    const double denom_x = 1.0 + w * xprime;
    const double u = g * t / (c * denom_x);
    const double ch = std::sqrt(1.0 + u * u);
    const double eps2 = (p / (mass * c)) * (p / (mass * c));
    const double s1 = 1.0 + std::sqrt(1.0 + eps2);
    const double d0 = -(mass * c * c) * eps2 * eps2 / (2.0 * s1 * s1);
    const double q = 2.0 * w * xprime + (w * xprime) * (w * xprime) +
                     (g * t / c) * (g * t / c);
    const double s = std::sqrt(1.0 + q);
    const double bigfrac = q / (s * (1.0 + s));

    RindlerSample row;
    row.c = c;
    row.residual_dt = c * d0 + c * p * g * t * bigfrac;
    row.residual_dx = p * c * u * u / (ch * (1.0 + ch));
    row.total = std::abs(row.residual_dt) + std::abs(row.residual_dx);
    report.rows.push_back(row);
  }

  for (std::size_t i = 0; i + 1 < report.rows.size(); ++i) {
    if (report.rows[i + 1].total > report.rows[i].total) {
      report.monotone = false;
    }
  }

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int m = 0;
  for (const auto& row : report.rows) {
    if (row.total <= 0.0) continue;
    const double lx = std::log(row.c), ly = std::log(row.total);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  if (m >= 2 && sxx * m - sx * sx > 0.0) {
    report.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  }
  return report;
}

}  // namespace qconn
