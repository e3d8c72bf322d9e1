#include "mzm/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <fmt/format.h>

namespace mzm {

CMat SpectralDecomposition::reconstruct() const {
    return eigenvectors * eigenvalues.cast<cplx>().asDiagonal() * eigenvectors.adjoint();
}

double hermitian_asymmetry(const CMat& H) {
    if (H.rows() != H.cols()) throw NumericsError("matrix is not square");
    return (H - H.adjoint()).cwiseAbs().maxCoeff();
}

SpectralDecomposition eigh(const CMat& H, const Tolerances& tol) {
    if (H.rows() != H.cols()) throw NumericsError("matrix is not square");
    if (H.rows() == 0) return {RVec(0), CMat(0, 0)};
    const double asym = hermitian_asymmetry(H);
    const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
    if (asym > tol.hermitian * scale)
        throw NumericsError(fmt::format("matrix not Hermitian: max asymmetry {:.3e}", asym));
    Eigen::SelfAdjointEigenSolver<CMat> es(H);
    if (es.info() != Eigen::Success) throw NumericsError("Hermitian eigensolver failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

CMat unitary_exp(const SpectralDecomposition& sd, double s) {
    CVec phases(sd.eigenvalues.size());
    for (Eigen::Index k = 0; k < phases.size(); ++k)
        phases(k) = std::exp(-kI * (s * sd.eigenvalues(k)));
    return sd.eigenvectors * phases.asDiagonal() * sd.eigenvectors.adjoint();
}

CMat unitary_exp(const CMat& H, double s, const Tolerances& tol) {
    return unitary_exp(eigh(H, tol), s);
}

PropagationResult rk4_propagate(const TimeDependentOp& H_of_t, const CVec& psi0, double t_final,
                                long steps, const Tolerances& tol) {
    if (steps <= 0) throw NumericsError("rk4_propagate: steps must be positive");
    const double dt = t_final / static_cast<double>(steps);
    const Eigen::Index n = psi0.size();
    CVec psi = psi0, k1(n), k2(n), k3(n), k4(n), tmp(n);
    auto rhs = [&](double t, const CVec& in, CVec& out) {
        H_of_t(t, in, out);
        out *= -kI;
    };
    for (long s = 0; s < steps; ++s) {
        const double t = dt * static_cast<double>(s);
        rhs(t, psi, k1);
        tmp = psi + (0.5 * dt) * k1;
        rhs(t + 0.5 * dt, tmp, k2);
        tmp = psi + (0.5 * dt) * k2;
        rhs(t + 0.5 * dt, tmp, k3);
        tmp = psi + dt * k3;
        rhs(t + dt, tmp, k4);
        psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    PropagationResult out;
    out.norm_drift = std::abs(psi.norm() - psi0.norm());
    out.warning = out.norm_drift > tol.norm_drift;
    out.psi = std::move(psi);
    return out;
}

RVec periodic_grid(int N) {
    if (N <= 0) throw NumericsError("grid size must be positive");
    RVec g(N);
    for (int n = 0; n < N; ++n) g(n) = 2.0 * kPi * n / N;
    return g;
}

}  // namespace mzm
