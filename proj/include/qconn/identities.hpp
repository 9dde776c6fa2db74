#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qconn/formexpr.hpp"
#include "qconn/graded.hpp"

namespace qconn::sym {

// Frame-change identities of the action one-form, certified by exact
// polynomial algebra. Each builder returns the assembled pieces so tests can
// both assert the residual is the literal zero object and probe sensitivity
// (perturb one ingredient, check the predicted nonzero residual).

// Galilean boost: i*omega = p dx - (p^2/2m) dt pulled back through
// x = x' + v t', t = t', then p = p' + m v. The leftover beyond the
// free-particle form in primed variables is d(phase) with
// phase = m v x' + (1/2) m v^2 t'.
struct BoostIdentity {
  SymbolTablePtr tab;        // {m, v, p, x, t, p', x', t'}
  FormExpr transformed;      // pulled-back and momentum-substituted one-form
  FormExpr free_primed;      // p' dx' - (p'^2/2m) dt'
  Poly phase;
  FormExpr residual() const; // transformed - free_primed - d(phase)
  bool holds() const { return residual().is_zero(); }
};
BoostIdentity boost_identity();

// Uniform acceleration: x = x' + (1/2) g t'^2, then p = p' + m g t'. Target
// adds the linear potential term -(m g x') dt' and phase
// m g (t' x' + g t'^3 / 6).
struct AccelerationIdentity {
  SymbolTablePtr tab;        // {m, g, p, x, t, p', x', t'}
  FormExpr transformed;
  FormExpr target_frame;     // p' dx' - (p'^2/2m + m g x') dt'
  Poly phase;
  FormExpr residual() const;
  bool holds() const { return residual().is_zero(); }
};
AccelerationIdentity acceleration_identity();

// Composing accelerations g then g': phases add up to the cross correction
// -(1/6) m g g' t''^3, and the potential terms combine into the g+g' frame.
struct CompositionIdentity {
  SymbolTablePtr tab;        // {m, g, g', x', t', x'', t''}
  Poly phase_sum;            // phi_g(x'(x'',t''), t'') + phi_g'(x'', t'')
  Poly cross_term;           // -(1/6) m g g' t''^3
  Poly phase_combined;       // phi_{g+g'}(x'', t'')
  Poly phase_residual() const;     // phase_sum + cross_term - phase_combined
  FormExpr potential_residual() const; // dt'' bookkeeping of the same statement
  bool holds() const;
};
CompositionIdentity composition_identity();

// Rotating frame: the Coriolis/centrifugal completed square
// (px' + m w y')^2/2m + (py' - m w x')^2/2m - (1/2) m w^2 (x'^2 + y'^2)
// equals p'^2/2m - w J with J = x' py' - y' px'.
struct RotationIdentity {
  SymbolTablePtr tab;        // {m, omega, x', y', px', py'}
  Poly completed_square;
  Poly angular_form;         // p'^2/2m - omega J
  Poly angular_momentum;     // J
  Poly residual() const { return completed_square - angular_form; }
  bool holds() const { return residual().is_zero(); }
};
RotationIdentity rotation_identity();

// Relativistic accelerated frame (Rindler coordinates x = A cosh tau,
// ct = A sinh tau, A = c^2/g + x'). Assembles P_tau dtau + P_A dA with
// P0 = m c^2 + p^2/2m and P1 = -p c, expands in powers of 1/c, and compares
// with the target
//   (m c^2 + (p - m g t)^2/2m + m g x') c dt - (p - m g t) c dx'
//   - c d[ m g (x' t + g t^3/6) ].
// `cutoff` is the lowest retained grade in c and must be <= 0 so the
// comparison covers everything down to c^0.
struct RindlerExpansion {
  SymbolTablePtr tab;        // {m, g, t, x', p, c}
  int cutoff;
  GradedSeries dt_coeff, dx_coeff;
  GradedSeries target_dt, target_dx;
  GradedSeries residual_dt, residual_dx;
  bool matches() const { return residual_dt.is_zero() && residual_dx.is_zero(); }
};
RindlerExpansion rindler_expand(int cutoff);

// Text report consumed by the CLI prover: label/value lines in canonical
// rendering plus the overall verdict.
struct ProofRecord {
  std::string identity;
  std::vector<std::pair<std::string, std::string>> lines;
  bool holds = false;
};
ProofRecord prove_identity(const std::string& name, int rindler_cutoff = 0);

} // namespace qconn::sym
