#pragma once

#include <functional>
#include <memory>

#include "qconn/operators.hpp"

namespace qconn {

// Crank-Nicolson propagator psi <- (1 + i H dt/2)^{-1} (1 - i H dt/2) psi.
// The update matrix is factored once at construction (sparse LU), making long
// trajectories with a time-independent H cheap. The Cayley transform is
// exactly unitary for hermitian H, so norms are preserved to rounding.
class CrankNicolson {
 public:
  CrankNicolson(const OperatorMatrix& h, double dt);
  ~CrankNicolson();
  CrankNicolson(CrankNicolson&&) noexcept;
  CrankNicolson& operator=(CrankNicolson&&) noexcept;

  double dt() const { return dt_; }
  const GridSpec& grid() const { return grid_; }

  WaveState step(const WaveState& psi) const;
  WaveState evolve(WaveState psi, int nsteps) const;

 private:
  struct Impl;
  GridSpec grid_;
  double dt_;
  std::unique_ptr<Impl> impl_;
};

// One-off step (factors internally).
WaveState crank_nicolson_step(const OperatorMatrix& h, const WaveState& psi,
                              double dt);

// Time-dependent variant: each step uses the midpoint Hamiltonian
// H(t + dt/2), preserving second-order accuracy. The supplier is called once
// per step.
WaveState evolve_time_dependent(
    const std::function<OperatorMatrix(double)>& h_of_t, WaveState psi,
    double dt, int nsteps);

}  // namespace qconn
