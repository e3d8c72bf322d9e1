#pragma once

#include <vector>

#include "mzm/numerics.hpp"

namespace mzm {

struct EdgeState {
    double j;  // half-integer angular momentum
    int chi;   // chirality, +1 or -1
};

// Ordered edge basis. J1 runs (j_max,-), (j_max-1,+), ..., (-j_max+1,-);
// J2 is its image under j -> -j with chirality kept.
class EdgeBasis {
public:
    static EdgeBasis J1(double j_max);
    static EdgeBasis J2(double j_max);

    double j_max() const { return j_max_; }
    int dim() const { return static_cast<int>(states_.size()); }
    const std::vector<EdgeState>& states() const { return states_; }
    const EdgeState& operator[](int i) const { return states_[static_cast<size_t>(i)]; }
    // -1 when (j, chi) is not part of the basis
    int index_of(double j, int chi) const;
    // diag(j)
    RVec momentum() const;

private:
    EdgeBasis(double j_max, std::vector<EdgeState> states);
    double j_max_;
    std::vector<EdgeState> states_;
};

void check_j_max(double j_max);

// h = -p sigma_z - 2 eps sin(theta) sigma_y in units of omega0. Real symmetric.
RMat build_edge_hamiltonian(const EdgeBasis& basis, double eps);

// Same operator obtained by sampling the basis modes on an N-point theta grid and
// applying sin(theta) pointwise (Galerkin projection; exact for N > 2 j_max + 2).
RMat theta_grid_hamiltonian(const EdgeBasis& basis, double eps, int N);

// Real-space discretization on N points with anti-periodic boundary: 2N x 2N,
// spectral derivative in half-integer modes. Contains both J1 and J2.
CMat theta_grid_full_hamiltonian(double eps, int N);

RVec edge_spectrum(double eps, double j_max);

// Two-component wavefunction sampled on a uniform theta grid over [0, 2pi).
struct AngularSpinor {
    RVec theta;
    CVec plus;
    CVec minus;

    double norm() const;
    cplx dot(const AngularSpinor& other) const;  // <this|other>
};

// psi_chi(theta) = (2 pi)^(-1/2) sum_j c_{j,chi} e^{i j theta}
AngularSpinor to_theta(const EdgeBasis& basis, const CVec& coeffs, const RVec& theta);
AngularSpinor sigma_x_conjugate(const AngularSpinor& psi);
// psi(theta + 2 pi) evaluated directly from coefficients, for the anti-periodicity check
double antiperiodicity_residual(const EdgeBasis& basis, const CVec& coeffs, const RVec& theta);

// sigma_x K acting on J1 coefficients: c(j,+) <- conj c(-j,-) and vice versa.
CVec sigma_x_conjugate(const EdgeBasis& basis, const CVec& coeffs);

struct ZeroMode {
    double energy = 0.0;
    CVec coeffs;  // over J1
    bool isolated = true;
    double symmetry_residual = 0.0;  // max |sigma_x conj(psi) - psi| on the theta grid
    double j_max = 0.0;
};

ZeroMode zero_mode(double eps, double j_max, int grid = 1024);

struct MajoranaPair {
    AngularSpinor psi1m;
    AngularSpinor psi2m;
    RVec phi;  // 2 Re psi0_+(theta)
};

MajoranaPair majorana_pair(const ZeroMode& zm, int grid = 1024);

// Shift f(theta) -> f(theta - pi) on an even grid, using anti-periodicity.
CVec antiperiodic_shift_half(const CVec& f);

// theta_2(z, q) = 2 sum_{n>=0} q^{(n+1/2)^2} cos((2n+1) z)
double jacobi_theta2(double z, double q, double rel_cutoff = 1e-14);

// N_eps theta_2(theta/2, exp(-1/(4 eps))), normalized to unit L2 norm on [0, 2pi).
double theta_function_mode(double eps, double theta, double rel_cutoff = 1e-14);
RVec theta_function_profile(double eps, const RVec& theta, double rel_cutoff = 1e-14);

// (2 eps / pi)^(1/4) exp(-eps theta^2)
double gaussian_mode(double eps, double theta);

// sqrt(h sum (a - b)^2)
double l2_distance(const RVec& a, const RVec& b, double h);

}  // namespace mzm
