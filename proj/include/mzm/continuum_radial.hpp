#pragma once

#include "mzm/numerics.hpp"

namespace mzm {

// J_n(z) for integer n and complex z via Miller downward recurrence,
// normalized with the generating-function sum e^{-iz} (Im z >= 0) or e^{iz}.
cplx bessel_j(int n, cplx z);
// J_{n-1}(z), J_n(z) from one recurrence pass
std::pair<cplx, cplx> bessel_j_pair(int n, cplx z);
// Direct power series, for moderate |z|.
cplx bessel_j_series(int n, cplx z);

// 2000 uniform points on (0, 1]
RVec radial_grid(int N = 2000);

// xi = arctan(sqrt(2 gamma) / (1 - gamma)) / 2
double radial_xi(double gamma);

struct ExactRadial {
    double j = 0.5;
    double energy = 0.0;  // in-gap dispersion -sqrt(2 gamma) j / lambda
    cplx kappa_plus, kappa_minus;
    RVec rho;
    RVec f;
    RVec g;
    double norm = 0.0;  // N_j = (2 pi int rho (f^2 + g^2))^(-1/2)
};

ExactRadial exact_radial(double j, double gamma, double lambda, const RVec& rho);

struct RadialProfile {
    double gamma = 0.0, lambda = 0.0, xi = 0.0;
    double norm_tilde = 0.0;
    RVec rho;
    RVec f;  // -N~ / sqrt(rho) e^{lambda sin xi rho} sin(lambda cos xi (1 - rho))
};

RadialProfile asymptotic_radial(double gamma, double lambda, const RVec& rho);

// trapezoid of y on a uniform grid with spacing h
double trapezoid(const RVec& y, double h);

// Relative L2 distance on rho in [rho_min, 1] between N_j f_j (sign aligned)
// and f / sqrt(4 pi).
double radial_deviation(const ExactRadial& ex, const RadialProfile& asym, double rho_min = 0.9);

}  // namespace mzm
