#include "qconn/evolve.hpp"

#include <sstream>
#include <stdexcept>

#include <Eigen/SparseLU>

namespace qconn {

struct CrankNicolson::Impl {
  SparseCd forward;  // 1 - i H dt/2
  Eigen::SparseLU<SparseCd> solver;
};

CrankNicolson::CrankNicolson(const OperatorMatrix& h, double dt)
    : grid_(h.grid()), dt_(dt), impl_(std::make_unique<Impl>()) {
  if (!(dt > 0.0)) throw std::invalid_argument("CrankNicolson: dt must be positive");
  const int n = h.rows();
  SparseCd eye(n, n);
  eye.setIdentity();
  const Complex half_idt(0.0, 0.5 * dt);
  impl_->forward = SparseCd(eye - half_idt * h.sparse());
  SparseCd backward = SparseCd(eye + half_idt * h.sparse());
  backward.makeCompressed();
  impl_->solver.compute(backward);
  if (impl_->solver.info() != Eigen::Success) {
    // diagnose: the update matrix 1 + i H dt/2 is singular exactly when H has
    // eigenvalue 2i/dt, impossible for hermitian H
    std::ostringstream os;
    os << "CrankNicolson: singular update matrix at dt=" << dt
       << " (hermiticity defect of H: " << h.hermiticity_defect()
       << "); solver says: " << impl_->solver.lastErrorMessage();
    throw std::runtime_error(os.str());
  }
}

CrankNicolson::~CrankNicolson() = default;
CrankNicolson::CrankNicolson(CrankNicolson&&) noexcept = default;
CrankNicolson& CrankNicolson::operator=(CrankNicolson&&) noexcept = default;

WaveState CrankNicolson::step(const WaveState& psi) const {
  if (psi.grid != grid_)
    throw std::invalid_argument("CrankNicolson: state lives on a different grid");
  Vector rhs = impl_->forward * psi.amps;
  Vector out = impl_->solver.solve(rhs);
  if (impl_->solver.info() != Eigen::Success || !out.allFinite()) {
    std::ostringstream os;
    os << "CrankNicolson: linear solve failed at dt=" << dt_;
    throw std::runtime_error(os.str());
  }
  return WaveState(grid_, std::move(out), psi.time + dt_);
}

WaveState CrankNicolson::evolve(WaveState psi, int nsteps) const {
  for (int i = 0; i < nsteps; ++i) psi = step(psi);
  return psi;
}

WaveState crank_nicolson_step(const OperatorMatrix& h, const WaveState& psi,
                              double dt) {
  return CrankNicolson(h, dt).step(psi);
}

WaveState evolve_time_dependent(
    const std::function<OperatorMatrix(double)>& h_of_t, WaveState psi,
    double dt, int nsteps) {
  for (int i = 0; i < nsteps; ++i) {
    OperatorMatrix h = h_of_t(psi.time + 0.5 * dt);
    psi = CrankNicolson(h, dt).step(psi);
  }
  return psi;
}

}  // namespace qconn
