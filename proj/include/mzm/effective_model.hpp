#pragma once

#include "mzm/edge_model.hpp"
#include "mzm/numerics.hpp"

namespace mzm {

// sign(n) sqrt(4 eps |n|)
double effective_energy(double eps, int n);

// Uniform k grid with spacing 1/(4m), symmetric about 0, covering at least
// [-half_width, half_width] with at least min_points points. Integers and
// quarter shifts are exact grid points.
struct KGrid {
    double h = 0.25;
    int quarter = 1;  // grid points per 1/4
    RVec k;

    static KGrid make(double half_width, int min_points);
    static KGrid for_eps(double eps, int min_points = 2048);
    Eigen::Index size() const { return k.size(); }
    // index of the grid point at value x, or -1
    Eigen::Index index_of(double x) const;
    // f(k - s) sampled on the grid for s a multiple of 1/4; zero outside
    RVec shifted(const RVec& f, double s) const;
};

// Oscillator eigenstate for a = k/sqrt(eps) + (sqrt(eps)/2) d/dk, normalized on the grid.
struct OscillatorState {
    int n = 0;
    double eps = 0.0;
    RVec values;
};

OscillatorState oscillator_state(double eps, int n, const KGrid& grid);

// Finite-difference ladder operators on the grid (central differences).
RVec apply_lowering(double eps, const RVec& f, const KGrid& grid);
RVec apply_raising(double eps, const RVec& f, const KGrid& grid);

struct EffectiveState {
    int n = 0;
    RVec plus;
    RVec minus;
};

EffectiveState effective_eigenstate(double eps, int n, const KGrid& grid);

// Sample an effective state at integer k and map onto J1 coefficients via
// |k;+> -> j = 2k - 1/2, |k;-> -> j = 2k + 1/2. Result normalized.
CVec effective_to_j1(const EffectiveState& s, const KGrid& grid, const EdgeBasis& basis);

double trapezoid_dot(const RVec& a, const RVec& b, double h);

}  // namespace mzm
