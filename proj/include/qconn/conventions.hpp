#pragma once

// Unit and sign conventions used across the library. Each choice is pinned by
// a dedicated test so an accidental flip fails loudly.
//
//  * hbar = 1 everywhere; time, length and momentum are dimensionless and all
//    phases are plain radians.
//  * Spatial grids are uniform with x_j = -L/2 + j*h, h = L/N; the momentum
//    stencil is the antisymmetric central difference with periodic wrap, so a
//    plane wave e^{ikx} is an eigenvector with eigenvalue sin(kh)/h.
//  * For base coordinates ordered (t, x[, y]) the connection built from
//    hermitian generators is omega = i * G_mu dx^mu with G = (H, -P[, -P_y]),
//    i.e. omega_t = iH and omega_x = -iP.
//  * Transport acts on kets: U = ordered product of exp(-omega_mu dx^mu)
//    along the curve, later segments multiplying from the left. The bra-side
//    transport is the adjoint of U.
//  * A pure time leg of length T under constant H therefore gives
//    U = exp(-iHT) (ordinary Schroedinger evolution), and a pure space leg of
//    length d gives U = exp(+iPd), which re-centres a wave packet from x0 to
//    x0 - d.
//  * Curvature: Omega = d omega + omega ^ omega, with
//    (omega ^ omega)_{mu nu} = [omega_mu, omega_nu]. The hermitian field
//    strength is F_{mu nu} = -i * Omega_{mu nu}; for H = P^2/2m + V(x) with
//    base-constant generators, Omega_{xt} = [P, H] = -i V'(x), so
//    F_{xt} = -V'(x).
//  * Counter-clockwise rectangular loops in the (x, t) plane (legs +x, +t,
//    -x, -t) around a region of area dA pick up the phase +V'(x0) * dA to
//    leading order.

namespace qconn {

inline constexpr double kHbar = 1.0;

// Tolerance for "algebraically exact" matrix statements (hermiticity flags,
// antisymmetry, conjugation identities at constant unitaries).
inline constexpr double kAlgebraTol = 1e-12;

}  // namespace qconn
