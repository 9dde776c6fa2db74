#include "qconn/identities.hpp"

#include <stdexcept>

namespace qconn::sym {

namespace {

Poly S(const SymbolTablePtr& t, const std::string& n, int k = 1) {
  return Poly::symbol(t, n, k);
}
Poly C(const SymbolTablePtr& t, const Rational& r) { return Poly::constant(t, r); }

} // namespace

FormExpr BoostIdentity::residual() const {
  return transformed - free_primed - FormExpr::d(phase, {"x'", "t'"});
}

BoostIdentity boost_identity() {
  BoostIdentity out;
  out.tab = make_symbols({"m", "v", "p", "x", "t", "p'", "x'", "t'"});
  const auto& T = out.tab;

  Poly m = S(T, "m"), v = S(T, "v"), p = S(T, "p");
  Poly half(C(T, Rational(1, 2)));

  // lab frame: i*omega = p dx - (p^2/2m) dt
  FormExpr lab = FormExpr::term(p, "x") -
                 FormExpr::term(half * p * p * S(T, "m", -1), "t");

  // coordinates of the moving frame: x = x' + v t', t = t'
  std::map<std::string, Poly> coords{
      {"x", S(T, "x'") + v * S(T, "t'")},
      {"t", S(T, "t'")},
  };
  FormExpr pulled = lab.substitute(coords, {"x'", "t'"});

  // momentum seen from the moving frame: p = p' + m v
  std::map<std::string, Poly> mom{{"p", S(T, "p'") + m * v}};
  out.transformed = pulled.substitute(mom, {"x'", "t'"});

  Poly pp = S(T, "p'");
  out.free_primed = FormExpr::term(pp, "x'") -
                    FormExpr::term(half * pp * pp * S(T, "m", -1), "t'");
  out.phase = m * v * S(T, "x'") + half * m * v * v * S(T, "t'");
  return out;
}

FormExpr AccelerationIdentity::residual() const {
  return transformed - target_frame - FormExpr::d(phase, {"x'", "t'"});
}

AccelerationIdentity acceleration_identity() {
  AccelerationIdentity out;
  out.tab = make_symbols({"m", "g", "p", "x", "t", "p'", "x'", "t'"});
  const auto& T = out.tab;

  Poly m = S(T, "m"), g = S(T, "g"), p = S(T, "p");
  Poly half(C(T, Rational(1, 2)));
  Poly sixth(C(T, Rational(1, 6)));

  FormExpr lab = FormExpr::term(p, "x") -
                 FormExpr::term(half * p * p * S(T, "m", -1), "t");

  std::map<std::string, Poly> coords{
      {"x", S(T, "x'") + half * g * S(T, "t'", 2)},
      {"t", S(T, "t'")},
  };
  FormExpr pulled = lab.substitute(coords, {"x'", "t'"});

  std::map<std::string, Poly> mom{{"p", S(T, "p'") + m * g * S(T, "t'")}};
  out.transformed = pulled.substitute(mom, {"x'", "t'"});

  Poly pp = S(T, "p'");
  out.target_frame =
      FormExpr::term(pp, "x'") -
      FormExpr::term(half * pp * pp * S(T, "m", -1) + m * g * S(T, "x'"), "t'");
  out.phase = m * g * (S(T, "t'") * S(T, "x'") + sixth * g * S(T, "t'", 3));
  return out;
}

Poly CompositionIdentity::phase_residual() const {
  return phase_sum + cross_term - phase_combined;
}

FormExpr CompositionIdentity::potential_residual() const {
  // -m g x' dt' - m g' x'' dt'' expressed at the composed frame must equal
  // -m (g+g') x'' dt'' + d(cross_term): the cross correction is exactly the
  // exact-differential part that moves into the phase.
  const auto& T = tab;
  Poly m = S(T, "m"), g = S(T, "g"), gp = S(T, "g'");
  Poly half(C(T, Rational(1, 2)));
  std::map<std::string, Poly> coords{
      {"x'", S(T, "x''") + half * gp * S(T, "t''", 2)},
      {"t'", S(T, "t''")},
  };
  FormExpr first = FormExpr::term(-(m * g * S(T, "x'")), "t'");
  FormExpr combined_potentials =
      first.substitute(coords, {"x''", "t''"}) +
      FormExpr::term(-(m * gp * S(T, "x''")), "t''");
  FormExpr target = FormExpr::term(-(m * (g + gp) * S(T, "x''")), "t''") +
                    FormExpr::d(cross_term, {"x''", "t''"});
  return combined_potentials - target;
}

bool CompositionIdentity::holds() const {
  return phase_residual().is_zero() && potential_residual().is_zero();
}

CompositionIdentity composition_identity() {
  CompositionIdentity out;
  out.tab = make_symbols({"m", "g", "g'", "x'", "t'", "x''", "t''"});
  const auto& T = out.tab;

  Poly m = S(T, "m"), g = S(T, "g"), gp = S(T, "g'");
  Poly half(C(T, Rational(1, 2)));
  Poly sixth(C(T, Rational(1, 6)));

  Poly phi_g = m * g * (S(T, "t'") * S(T, "x'") + sixth * g * S(T, "t'", 3));
  std::map<std::string, Poly> coords{
      {"x'", S(T, "x''") + half * gp * S(T, "t''", 2)},
      {"t'", S(T, "t''")},
  };
  Poly phi_g_at_composed = phi_g.substitute(coords);
  Poly phi_gp =
      m * gp * (S(T, "t''") * S(T, "x''") + sixth * gp * S(T, "t''", 3));

  out.phase_sum = phi_g_at_composed + phi_gp;
  out.cross_term = -(sixth * m * g * gp * S(T, "t''", 3));
  Poly gsum = g + gp;
  out.phase_combined =
      m * gsum * S(T, "t''") * S(T, "x''") +
      sixth * m * gsum * gsum * S(T, "t''", 3);
  return out;
}

RotationIdentity rotation_identity() {
  RotationIdentity out;
  out.tab = make_symbols({"m", "omega", "x'", "y'", "px'", "py'"});
  const auto& T = out.tab;

  Poly m = S(T, "m"), w = S(T, "omega");
  Poly x = S(T, "x'"), y = S(T, "y'"), px = S(T, "px'"), py = S(T, "py'");
  Poly half(C(T, Rational(1, 2)));
  Poly minv = S(T, "m", -1);

  // Coriolis shifts pair px with y' and py with x' (vector potential
  // proportional to omega cross r).
  Poly sx = px + m * w * y;
  Poly sy = py - m * w * x;
  out.completed_square = half * minv * (sx * sx + sy * sy) -
                         half * m * w * w * (x * x + y * y);
  out.angular_momentum = x * py - y * px;
  out.angular_form = half * minv * (px * px + py * py) - w * out.angular_momentum;
  return out;
}

RindlerExpansion rindler_expand(int cutoff) {
  if (cutoff > 0)
    throw std::invalid_argument(
        "rindler_expand: truncation must keep orders down to c^0 (cutoff <= 0)");

  RindlerExpansion out;
  out.cutoff = cutoff;
  out.tab = make_symbols({"m", "g", "t", "x'", "p", "c"});
  const auto& T = out.tab;

  // Intermediate series keep extra depth so products with the c^3-scale
  // leading terms stay exact down to the requested cutoff.
  const int wc = cutoff - 8;
  auto G = [&](const Poly& p) { return GradedSeries(p, "c", wc); };

  Poly m = S(T, "m"), g = S(T, "g"), t = S(T, "t"), xp = S(T, "x'"),
       p = S(T, "p"), c = S(T, "c");
  Poly one = C(T, Rational(1));
  Poly half(C(T, Rational(1, 2)));

  // A = c^2/g + x'. 1/A expands as (g/c^2) * (1 + g x'/c^2)^(-1).
  Poly g_over_c2 = Poly::monomial(T, 1, {{"g", 1}, {"c", -2}});
  GradedSeries invA = G(g_over_c2) * G(one + g_over_c2 * xp).pow_binomial(-1);
  GradedSeries A = G(Poly::monomial(T, 1, {{"c", 2}, {"g", -1}}) + xp);

  // u = sinh(tau) = c t / A; cosh(tau) = sqrt(1 + u^2).
  GradedSeries u = G(c * t) * invA;
  GradedSeries one_plus_u2 = G(one) + u * u;
  GradedSeries cosh_tau = one_plus_u2.pow_binomial(Rational(1, 2));
  GradedSeries inv_cosh = one_plus_u2.pow_binomial(Rational(-1, 2));

  // dtau = d asinh(u) = du / sqrt(1+u^2); u depends on t and x'.
  GradedSeries du_dt = G(c) * invA;
  GradedSeries du_dx = G(c * t) * invA.derivative("x'");
  GradedSeries dtau_dt = inv_cosh * du_dt;
  GradedSeries dtau_dx = inv_cosh * du_dx;

  // Generators: P0 = m c^2 + p^2/2m (energy), P1 = -p c (covariant component
  // conjugate to x^1, the momentum itself carrying one factor of c).
  GradedSeries P0 = G(Poly::monomial(T, 1, {{"m", 1}, {"c", 2}}) +
                      Poly::monomial(T, Rational(1, 2), {{"p", 2}, {"m", -1}}));
  GradedSeries P1 = G(-(p * c));

  GradedSeries P_tau = A * (P0 * cosh_tau + P1 * u);
  GradedSeries P_A = P0 * u + P1 * cosh_tau;

  // -i omega = P_tau dtau + P_A dA with dA = dx'.
  GradedSeries dt_coeff = P_tau * dtau_dt;
  GradedSeries dx_coeff = P_tau * dtau_dx + P_A;

  // Target: (m c^2 + (p - m g t)^2/2m + m g x') c dt - (p - m g t) c dx'
  //         - c d[ m g (x' t + g t^3/6) ].
  Poly pm = p - m * g * t;
  Poly sixth(C(T, Rational(1, 6)));
  Poly phase = m * g * (xp * t + sixth * g * t.pow(3));
  Poly target_dt = c * (m * c * c + half * pm * pm * S(T, "m", -1) + m * g * xp) -
                   c * phase.derivative("t");
  Poly target_dx = -(pm * c) - c * phase.derivative("x'");

  out.dt_coeff = dt_coeff.truncated(cutoff);
  out.dx_coeff = dx_coeff.truncated(cutoff);
  out.target_dt = GradedSeries(target_dt, "c", cutoff);
  out.target_dx = GradedSeries(target_dx, "c", cutoff);
  out.residual_dt = out.dt_coeff - out.target_dt;
  out.residual_dx = out.dx_coeff - out.target_dx;
  return out;
}

ProofRecord prove_identity(const std::string& name, int rindler_cutoff) {
  ProofRecord rec;
  rec.identity = name;
  if (name == "boost") {
    auto id = boost_identity();
    rec.lines = {{"transformed", id.transformed.str()},
                 {"free_primed", id.free_primed.str()},
                 {"phase", id.phase.str()},
                 {"residual", id.residual().str()}};
    rec.holds = id.holds();
  } else if (name == "acceleration") {
    auto id = acceleration_identity();
    rec.lines = {{"transformed", id.transformed.str()},
                 {"target_frame", id.target_frame.str()},
                 {"phase", id.phase.str()},
                 {"residual", id.residual().str()}};
    rec.holds = id.holds();
  } else if (name == "compose") {
    auto id = composition_identity();
    rec.lines = {{"phase_sum", id.phase_sum.str()},
                 {"cross_term", id.cross_term.str()},
                 {"phase_combined", id.phase_combined.str()},
                 {"phase_residual", id.phase_residual().str()},
                 {"potential_residual", id.potential_residual().str()}};
    rec.holds = id.holds();
  } else if (name == "rotation") {
    auto id = rotation_identity();
    rec.lines = {{"completed_square", id.completed_square.str()},
                 {"angular_form", id.angular_form.str()},
                 {"angular_momentum", id.angular_momentum.str()},
                 {"residual", id.residual().str()}};
    rec.holds = id.holds();
  } else if (name == "rindler") {
    auto id = rindler_expand(rindler_cutoff);
    rec.lines = {{"dt_coefficient", id.dt_coeff.str()},
                 {"dx_coefficient", id.dx_coeff.str()},
                 {"target_dt", id.target_dt.str()},
                 {"target_dx", id.target_dx.str()},
                 {"residual_dt", id.residual_dt.str()},
                 {"residual_dx", id.residual_dx.str()}};
    rec.holds = id.matches();
  } else {
    throw std::invalid_argument("prove_identity: unknown identity " + name);
  }
  return rec;
}

} // namespace qconn::sym
