#include "mzm/dynamics.hpp"

#include <Eigen/Sparse>
#include <cmath>
#include <fmt/format.h>
#include <memory>

namespace mzm {

void check_drive(const DriveSettings& s) {
    if (!(s.alpha >= 0)) throw std::invalid_argument(fmt::format("alpha must be nonnegative, got {}", s.alpha));
    if (s.eps < 0) throw std::invalid_argument(fmt::format("eps must be nonnegative, got {}", s.eps));
    check_j_max(s.j_max);
}

CMat evolution_operator(const EdgeBasis& basis, const DriveSettings& s) {
    check_drive(s);
    const RVec p = basis.momentum();
    const RMat h = build_edge_hamiltonian(basis, s.eps);
    RMat gen = s.alpha * h;
    gen.diagonal() -= p;
    Eigen::SelfAdjointEigenSolver<RMat> es(gen);
    CVec ph(p.size());
    for (Eigen::Index k = 0; k < ph.size(); ++k) ph(k) = std::exp(-kI * (s.phi_total * es.eigenvalues()(k)));
    const CMat V = es.eigenvectors().cast<cplx>();
    CMat co = V * ph.asDiagonal() * V.adjoint();
    CVec lab(p.size());
    for (Eigen::Index k = 0; k < lab.size(); ++k) lab(k) = std::exp(-kI * (s.phi_total * p(k)));
    return lab.asDiagonal() * co;
}

CMat evolution_operator(const DriveSettings& s) { return evolution_operator(EdgeBasis::J1(s.j_max), s); }

cplx overlap_A0(const DriveSettings& s, const ZeroMode& zm) {
    const CMat U = evolution_operator(s);
    return zm.coeffs.dot(U * zm.coeffs);
}

cplx overlap_A0(const DriveSettings& s) { return overlap_A0(s, zero_mode(s.eps, s.j_max)); }

MajoranaOverlaps majorana_overlaps(cplx A0) { return {A0.real(), A0.imag(), -A0.imag()}; }

cplx majorana_matrix_element(const DriveSettings& s, const ZeroMode& zm, int a, int b) {
    const CMat U1 = evolution_operator(EdgeBasis::J1(s.j_max), s);
    const CMat U2 = evolution_operator(EdgeBasis::J2(s.j_max), s);
    const double r2 = std::sqrt(2.0);
    const CVec& c = zm.coeffs;
    const CVec cc = c.conjugate();
    auto part1 = [&](int m) -> CVec { return m == 0 ? CVec(c / r2) : CVec(kI * c / r2); };
    auto part2 = [&](int m) -> CVec { return m == 0 ? CVec(cc / r2) : CVec(-kI * cc / r2); };
    return part1(a).dot(U1 * part1(b)) + part2(a).dot(U2 * part2(b));
}

TimeDependentOp driven_rhs(const EdgeBasis& basis, double eps, double alpha) {
    if (!(alpha > 0)) throw std::invalid_argument("alpha must be positive for time stepping");
    const RMat hd = build_edge_hamiltonian(basis, eps);
    auto h = std::make_shared<Eigen::SparseMatrix<double>>(hd.sparseView());
    auto p = std::make_shared<RVec>(basis.momentum());
    return [h, p, alpha](double tau, const CVec& in, CVec& out) {
        const double phi = tau / alpha;
        CVec rot(in.size());
        for (Eigen::Index k = 0; k < in.size(); ++k) rot(k) = std::exp(kI * ((*p)(k) * phi)) * in(k);
        out = (*h) * rot;
        for (Eigen::Index k = 0; k < in.size(); ++k) out(k) *= std::exp(-kI * ((*p)(k) * phi));
    };
}

PropagationResult propagate_rk4(const DriveSettings& s, const CVec& psi0, long steps) {
    check_drive(s);
    const EdgeBasis basis = EdgeBasis::J1(s.j_max);
    return rk4_propagate(driven_rhs(basis, s.eps, s.alpha), psi0, s.alpha * s.phi_total, steps);
}

double fold_quasi_energy(double e) { return e - std::ceil(e - 0.5); }

FloquetResult floquet_spectrum(const DriveSettings& s, double pi_tol) {
    check_drive(s);
    const EdgeBasis basis = EdgeBasis::J1(s.j_max);
    RMat hF = s.alpha * build_edge_hamiltonian(basis, s.eps);
    hF.diagonal() -= basis.momentum();
    hF.diagonal().array() += 0.5;
    Eigen::SelfAdjointEigenSolver<RMat> es(hF, Eigen::EigenvaluesOnly);
    FloquetResult r;
    r.alpha = s.alpha;
    r.unfolded = es.eigenvalues();
    r.quasi_energies.resize(r.unfolded.size());
    for (Eigen::Index k = 0; k < r.unfolded.size(); ++k) r.quasi_energies(k) = fold_quasi_energy(r.unfolded(k));
    std::sort(r.quasi_energies.data(), r.quasi_energies.data() + r.quasi_energies.size());
    r.gap_at_zero = std::numeric_limits<double>::infinity();
    r.folded_gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < r.unfolded.size(); ++k) {
        const double d = std::abs(r.unfolded(k) - 0.5);
        if (d < pi_tol)
            r.has_pi_mode = true;
        else
            r.gap_at_zero = std::min(r.gap_at_zero, d);
        r.folded_gap = std::min(r.folded_gap, std::abs(r.quasi_energies(k)));
    }
    return r;
}

double perturbative_overlap(double alpha, double eps) {
    if (!(alpha > 0)) throw std::invalid_argument("alpha must be positive");
    const double s = std::sin(alpha * std::sqrt(4 * eps) * kPi);
    return -1.0 + s * s / (2 * alpha * alpha);
}

TransitionAmplitudes transition_amplitudes(double alpha, double eps, double phi) {
    if (!(alpha > 0)) throw std::invalid_argument("alpha must be positive");
    const double e1 = std::sqrt(4 * eps);
    const double s = std::sin(alpha * e1 * phi / 2);
    TransitionAmplitudes t;
    t.a0 = 1.0 - s * s / (2 * alpha * alpha);
    t.a1 = (1.0 - std::exp(-kI * (alpha * e1 * phi))) / (2 * std::sqrt(2.0) * alpha);
    t.a_minus1 = std::conj(t.a1);
    return t;
}

double high_fidelity_frequency(double eps, double omega0, double dphi, int nu) {
    if (nu < 1) throw std::invalid_argument("nu must be a positive integer");
    return std::sqrt(4 * eps) * omega0 * dphi / (2 * kPi * nu);
}

NuBound minimal_nu(double eps, double dphi) {
    const double crit = 4 * std::sqrt(4 * eps) * dphi / (2 * kPi);
    const int bound = static_cast<int>(std::ceil(crit - 1e-12));
    return {bound, bound + 1};
}

}  // namespace mzm
