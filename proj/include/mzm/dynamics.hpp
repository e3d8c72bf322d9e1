#pragma once

#include <tuple>

#include "mzm/edge_model.hpp"
#include "mzm/numerics.hpp"

namespace mzm {

struct DriveSettings {
    double alpha = 1.0;  // omega0 / omega
    double eps = 5.0;
    double j_max = 48.5;
    double phi_total = 2 * kPi;
};

void check_drive(const DriveSettings& s);

// U = exp(-i p phi) exp(-i phi (alpha h - p)) on J1.
CMat evolution_operator(const DriveSettings& s);
CMat evolution_operator(const EdgeBasis& basis, const DriveSettings& s);

// <psi0| U |psi0>
cplx overlap_A0(const DriveSettings& s);
cplx overlap_A0(const DriveSettings& s, const ZeroMode& zm);

struct MajoranaOverlaps {
    double m11;
    double m12;
    double m21;
};

// (Re A0, Im A0, -Im A0)
MajoranaOverlaps majorana_overlaps(cplx A0);

// Direct matrix elements <psi_a|U|psi_b> for the Majorana pair built from zm,
// propagating the J1 and J2 parts separately. Indices 0 -> psi1m, 1 -> psi2m.
cplx majorana_matrix_element(const DriveSettings& s, const ZeroMode& zm, int a, int b);

// Right-hand side of the lab-frame equation i dpsi/dtau = H(tau) psi with
// H_ab(phi) = h_ab exp(-i (j_a - j_b) phi), phi = tau / alpha.
TimeDependentOp driven_rhs(const EdgeBasis& basis, double eps, double alpha);

// RK4 over one drive (tau in [0, alpha * phi_total]).
PropagationResult propagate_rk4(const DriveSettings& s, const CVec& psi0, long steps);

struct FloquetResult {
    double alpha = 0.0;
    RVec unfolded;        // eigenvalues of alpha h - p + 1/2, ascending
    RVec quasi_energies;  // folded into (-1/2, 1/2], ascending
    double gap_at_zero = 0.0;  // min |E - 1/2| over unfolded levels, pi-mode excluded
    double folded_gap = 0.0;   // min |folded quasi-energy|
    bool has_pi_mode = false;  // an unfolded level within pi_tol of 1/2
};

double fold_quasi_energy(double e);

FloquetResult floquet_spectrum(const DriveSettings& s, double pi_tol = 1e-3);

// -1 + sin^2(alpha sqrt(4 eps) pi) / (2 alpha^2)
double perturbative_overlap(double alpha, double eps);

struct TransitionAmplitudes {
    double a0;
    cplx a1;
    cplx a_minus1;
};

TransitionAmplitudes transition_amplitudes(double alpha, double eps, double phi);

// sqrt(4 eps) omega0 dphi / (2 pi nu)
double high_fidelity_frequency(double eps, double omega0, double dphi, int nu);

struct NuBound {
    int bound;   // ceil of the critical value 4 sqrt(4 eps) dphi / (2 pi)
    int nu_min;  // bound + 1
};

// Smallest nu for which omega_nu < omega0 / 4 (alpha > 4), reported as the
// integer bound and the first integer above it.
NuBound minimal_nu(double eps, double dphi = 2 * kPi);

}  // namespace mzm
