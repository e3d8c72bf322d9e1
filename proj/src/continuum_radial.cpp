#include "mzm/continuum_radial.hpp"

#include <cmath>
#include <fmt/format.h>
#include <vector>

namespace mzm {

namespace {

// J_0 .. J_top(z) for z != 0
std::vector<cplx> bessel_table(int top, cplx z) {
    const double az = std::abs(z);
    if (az > 1e3) throw NumericsError(fmt::format("|z| = {} outside the supported Bessel range; rescale", az));
    const int start = 2 * (std::max(top, static_cast<int>(std::ceil(az))) + 20) +
                      static_cast<int>(std::sqrt(40.0 * std::max<double>(top, az)));
    std::vector<cplx> b(static_cast<size_t>(start + 2), 0.0);
    b[static_cast<size_t>(start)] = 1e-30;
    for (int k = start; k >= 1; --k) {
        b[static_cast<size_t>(k - 1)] = (2.0 * k / z) * b[static_cast<size_t>(k)] - b[static_cast<size_t>(k + 1)];
        if (std::abs(b[static_cast<size_t>(k - 1)]) > 1e250)
            for (int q = k - 1; q <= start; ++q) b[static_cast<size_t>(q)] *= 1e-250;
    }
    // sum_k J_k t^k with t = -i for Im z >= 0 equals e^{-iz}; t = +i otherwise
    const cplx t = z.imag() >= 0 ? cplx(0, -1) : cplx(0, 1);
    cplx S = b[0], tk = 1.0;
    for (int k = 1; k <= start; ++k) {
        tk *= t;
        S += 2.0 * tk * b[static_cast<size_t>(k)];
    }
    const cplx target = z.imag() >= 0 ? std::exp(-kI * z) : std::exp(kI * z);
    const cplx scale = target / S;
    std::vector<cplx> out(static_cast<size_t>(top + 1));
    for (int k = 0; k <= top; ++k) out[static_cast<size_t>(k)] = scale * b[static_cast<size_t>(k)];
    return out;
}

cplx signed_order(int n, const std::vector<cplx>& tab) {
    const int a = std::abs(n);
    const cplx v = tab[static_cast<size_t>(a)];
    return (n < 0 && (a % 2 == 1)) ? -v : v;
}

}  // namespace

std::pair<cplx, cplx> bessel_j_pair(int n, cplx z) {
    if (z == 0.0) return {n - 1 == 0 ? 1.0 : 0.0, n == 0 ? 1.0 : 0.0};
    const int top = std::max(std::abs(n), std::abs(n - 1));
    const auto tab = bessel_table(top, z);
    return {signed_order(n - 1, tab), signed_order(n, tab)};
}

cplx bessel_j(int n, cplx z) { return bessel_j_pair(n, z).second; }

cplx bessel_j_series(int n, cplx z) {
    const int a = std::abs(n);
    using ld = long double;
    std::complex<ld> half(static_cast<ld>(z.real()) / 2, static_cast<ld>(z.imag()) / 2);
    std::complex<ld> term = 1;
    for (int k = 1; k <= a; ++k) term *= half / static_cast<ld>(k);
    const std::complex<ld> q = -half * half;
    std::complex<ld> sum = term;
    for (int k = 1; k < 500; ++k) {
        term *= q / static_cast<ld>(k * (k + a));
        sum += term;
        if (std::abs(term) < 1e-22L * std::abs(sum)) break;
    }
    cplx v(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
    return (n < 0 && (a % 2 == 1)) ? -v : v;
}

RVec radial_grid(int N) {
    if (N < 2) throw std::invalid_argument("radial grid needs at least two points");
    RVec r(N);
    for (int i = 0; i < N; ++i) r(i) = static_cast<double>(i + 1) / N;
    return r;
}

double radial_xi(double gamma) { return 0.5 * std::atan(std::sqrt(2 * gamma) / (1 - gamma)); }

double trapezoid(const RVec& y, double h) {
    const Eigen::Index n = y.size();
    if (n < 2) return 0.0;
    return h * (y.sum() - 0.5 * (y(0) + y(n - 1)));
}

namespace {

// integral over [0, 1] of y sampled on (0, 1], with y(0) supplied separately
double integrate_from_zero(const RVec& y, double y0) {
    const double h = 1.0 / static_cast<double>(y.size());
    return h * (0.5 * y0 + y.sum() - 0.5 * y(y.size() - 1));
}

}  // namespace

ExactRadial exact_radial(double j, double gamma, double lambda, const RVec& rho) {
    if (std::abs(j - std::floor(j) - 0.5) > 1e-12) throw std::invalid_argument("j must be a half-integer");
    if (!(gamma > 0) || !(lambda > 0)) throw std::invalid_argument("gamma and lambda must be positive");
    if (std::abs(j) >= lambda * std::sqrt(1 - gamma / 2))
        throw std::invalid_argument(fmt::format("j = {} is embedded in the continuum", j));
    ExactRadial ex;
    ex.j = j;
    ex.rho = rho;
    ex.energy = -std::sqrt(2 * gamma) * j / lambda;
    const double disc = 2 * gamma - gamma * gamma - ex.energy * ex.energy;
    if (disc <= 0) throw std::invalid_argument("energy outside the gap");
    ex.kappa_plus = std::sqrt(cplx(1 - gamma, std::sqrt(disc)));
    ex.kappa_minus = std::conj(ex.kappa_plus);
    const int n = static_cast<int>(std::lround(j + 0.5));
    const cplx kp = ex.kappa_plus, km = ex.kappa_minus;
    const cplx Jm = bessel_j(n, lambda * km);
    const cplx cf = -std::sqrt(2 * gamma) * km * kp * Jm;
    const cplx cg = km * (kp * kp - 1.0 - ex.energy) * Jm;
    ex.f.resize(rho.size());
    ex.g.resize(rho.size());
    for (Eigen::Index i = 0; i < rho.size(); ++i) {
        const auto [jl, jn] = bessel_j_pair(n, lambda * kp * rho(i));
        ex.f(i) = std::imag(cf * jn);
        ex.g(i) = std::imag(cg * jl);
    }
    const RVec integrand = (rho.array() * (ex.f.array().square() + ex.g.array().square())).matrix();
    ex.norm = 1.0 / std::sqrt(2 * kPi * integrate_from_zero(integrand, 0.0));
    return ex;
}

RadialProfile asymptotic_radial(double gamma, double lambda, const RVec& rho) {
    RadialProfile p;
    p.gamma = gamma;
    p.lambda = lambda;
    p.xi = radial_xi(gamma);
    p.rho = rho;
    const double s = lambda * std::sin(p.xi), c = lambda * std::cos(p.xi);
    auto w = [&](double r) {
        const double v = std::sin(c * (1 - r));
        return std::exp(2 * s * r) * v * v;
    };
    RVec y(rho.size());
    for (Eigen::Index i = 0; i < rho.size(); ++i) y(i) = w(rho(i));
    p.norm_tilde = 1.0 / std::sqrt(integrate_from_zero(y, w(0.0)));
    p.f.resize(rho.size());
    for (Eigen::Index i = 0; i < rho.size(); ++i)
        p.f(i) = -p.norm_tilde / std::sqrt(rho(i)) * std::exp(s * rho(i)) * std::sin(c * (1 - rho(i)));
    return p;
}

double radial_deviation(const ExactRadial& ex, const RadialProfile& asym, double rho_min) {
    double dot = 0.0, na = 0.0;
    const double k = 1.0 / std::sqrt(4 * kPi);
    for (Eigen::Index i = 0; i < ex.rho.size(); ++i)
        if (ex.rho(i) >= rho_min) dot += ex.norm * ex.f(i) * asym.f(i);
    const double sg = dot >= 0 ? 1.0 : -1.0;
    double d = 0.0;
    for (Eigen::Index i = 0; i < ex.rho.size(); ++i) {
        if (ex.rho(i) < rho_min) continue;
        const double a = k * asym.f(i);
        const double e = sg * ex.norm * ex.f(i);
        d += (e - a) * (e - a);
        na += a * a;
    }
    return std::sqrt(d / na);
}

}  // namespace mzm
