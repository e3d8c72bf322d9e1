#pragma once

#include <Eigen/Sparse>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mzm/numerics.hpp"

namespace mzm {

// Square-lattice sites inside a disk, row-major (n outer, m inner).
class LatticeDisk {
public:
    explicit LatticeDisk(double R, double a = 1.0);

    double R() const { return R_; }
    double a() const { return a_; }
    int size() const { return static_cast<int>(sites_.size()); }
    const std::vector<std::pair<int, int>>& sites() const { return sites_; }
    // -1 outside the disk
    int index_of(int m, int n) const;
    double radius(int i) const;
    double angle(int i) const;

private:
    double R_, a_;
    std::vector<std::pair<int, int>> sites_;
    std::unordered_map<long long, int> index_;
};

struct LatticeParams {
    double eps_onsite = 15.0;
    double u = 4.0;
    double Delta = 0.35355339059327373;
    double gamma = 1.0 / 16;
    double lambda = 50.0;
    double E_Z = 0.0;
    double phi = 0.0;

    // u = 1/(a kF)^2, Delta = sqrt(2 gamma)/(2 a kF), eps_onsite = 4u - 1, lambda = kF R
    static LatticeParams from_fermi(double kF, double a, double gamma, double R);
    // 2 eps sqrt(2 gamma) / lambda
    static double zeeman_from_eps(double eps, double gamma, double lambda);
    void check() const;
};

using SparseHermitian = Eigen::SparseMatrix<cplx>;

// Nambu block of dimension 2 |sites|, index 2 i + tau.
SparseHermitian build_chiral_block(const LatticeParams& p, const LatticeDisk& disk, int chirality);
// H_- obtained as tau_y conj(H_+) tau_y.
SparseHermitian conjugate_chiral_block(const SparseHermitian& Hplus);
// 4 |sites|, index 4 i + 2 s + tau with s = 0 the + block and s = 1 the - block.
SparseHermitian build_full_tsc(const LatticeParams& p, const LatticeDisk& disk);

double sparse_hermitian_asymmetry(const SparseHermitian& H);

struct MidSpectrumOptions {
    double sigma = 1e-3;       // real shift for shift-invert
    double tol = 1e-8;         // residual target ||Hv - Ev||
    int extra = 20;            // Ritz pairs tracked beyond count
    int block = 4;             // Lanczos block size
    int max_krylov = 0;        // 0 -> max(8 (count + extra), count + extra + 200)
    unsigned seed = 12345;
};

struct Eigenpairs {
    RVec values;     // sorted by |E|
    CMat vectors;    // columns
    RVec residuals;  // ||H v - E v||
    bool converged = false;
    int krylov_dim = 0;
};

// Eigenpairs closest to zero: block Lanczos with full reorthogonalization on (H - sigma)^-1.
Eigenpairs mid_spectrum_states(const SparseHermitian& H, int count, const MidSpectrumOptions& opt = {});

// Sum over internal components of |psi|^2 per site.
RVec probability_density(const CVec& state, const LatticeDisk& disk);

struct EdgeEntry {
    double energy;
    double j_raw;      // expectation of J_z
    double j;          // nearest half-integer
    bool ambiguous;    // |j_raw - j| > 0.2
    double rim_weight;
    double gamma_c;    // |E - E_eff| / |E_eff|
};

struct CensusOptions {
    double rim_radius_fraction = 0.8;  // rim = sites with r > fraction * R
    double bulk_rim_weight = 0.5;      // states with less rim weight count as bulk
};

struct EdgeCensus {
    double bulk_onset = 0.0;
    double predicted_onset = 0.0;  // sqrt(2 gamma - gamma^2)
    int count = 0;
    int ambiguous = 0;
    double j_min = 0.0, j_max = 0.0;
    double gamma_c_min = 0.0, gamma_c_max = 0.0;
    std::vector<EdgeEntry> edges;  // sorted by energy
};

// <J_z> = <-i d_theta> - chirality <tau_z>/2 using a sixth-order angular
// finite-difference stencil, over rim sites weighted by density.
double angular_momentum(const CVec& state, const LatticeDisk& disk, int chirality, double rim_radius_fraction);

EdgeCensus classify_edge_states(const Eigenpairs& pairs, const LatticeDisk& disk, const LatticeParams& p,
                                int chirality = +1, const CensusOptions& opt = {});

// Phase winding of one Nambu component (tau = 0 or 1) along the ring of sites
// at the radius of maximal density.
int rim_winding(const CVec& state, const LatticeDisk& disk, int tau);

struct MajoranaDensity {
    RVec density;
    double peak_angle;  // circular mean of the density's angle
    double rim_weight;
};

// Split a near-zero +/-E pair of the full TSC into two localized Majorana
// combinations.
std::pair<MajoranaDensity, MajoranaDensity> majorana_densities(const CVec& a, const CVec& b,
                                                               const LatticeDisk& disk,
                                                               double rim_radius_fraction = 0.8);

}  // namespace mzm
