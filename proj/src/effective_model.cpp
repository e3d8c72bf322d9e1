#include "mzm/effective_model.hpp"

#include <cmath>
#include <stdexcept>

namespace mzm {

double effective_energy(double eps, int n) {
    if (eps <= 0) throw std::invalid_argument("eps must be positive");
    if (n == 0) return 0.0;
    const double e = std::sqrt(4 * eps * std::abs(n));
    return n > 0 ? e : -e;
}

KGrid KGrid::make(double half_width, int min_points) {
    if (half_width <= 0 || min_points < 3) throw std::invalid_argument("invalid k grid");
    KGrid g;
    g.quarter = std::max(1, static_cast<int>(std::ceil((min_points - 1) / (8.0 * half_width))));
    g.h = 0.25 / g.quarter;
    const long M = static_cast<long>(std::ceil(half_width / g.h - 1e-12));
    g.k.resize(2 * M + 1);
    for (long i = -M; i <= M; ++i) g.k(i + M) = i * g.h;
    return g;
}

KGrid KGrid::for_eps(double eps, int min_points) { return make(10.0 * std::sqrt(eps), min_points); }

Eigen::Index KGrid::index_of(double x) const {
    const double M = (static_cast<double>(k.size()) - 1) / 2;
    const double i = x / h + M;
    const long r = std::lround(i);
    if (std::abs(i - r) > 1e-9 || r < 0 || r >= k.size()) return -1;
    return r;
}

RVec KGrid::shifted(const RVec& f, double s) const {
    const double q = s / h;
    const long d = std::lround(q);
    if (std::abs(q - d) > 1e-9) throw std::invalid_argument("shift is not a multiple of the grid spacing");
    RVec g = RVec::Zero(f.size());
    for (Eigen::Index i = 0; i < f.size(); ++i) {
        const Eigen::Index src = i - d;
        if (src >= 0 && src < f.size()) g(i) = f(src);
    }
    return g;
}

double trapezoid_dot(const RVec& a, const RVec& b, double h) {
    const Eigen::Index n = a.size();
    double s = a.dot(b) - 0.5 * (a(0) * b(0) + a(n - 1) * b(n - 1));
    return h * s;
}

OscillatorState oscillator_state(double eps, int n, const KGrid& grid) {
    if (eps <= 0) throw std::invalid_argument("eps must be positive");
    if (n < 0) throw std::invalid_argument("oscillator index must be nonnegative");
    const Eigen::Index N = grid.size();
    const RVec x = grid.k * std::sqrt(2.0 / eps);
    RVec prev = RVec::Zero(N);
    RVec cur = (std::pow(kPi, -0.25) * (-0.5 * x.array().square()).exp()).matrix();
    for (int m = 0; m < n; ++m) {
        RVec next = (std::sqrt(2.0 / (m + 1)) * x.array() * cur.array() -
                     std::sqrt(static_cast<double>(m) / (m + 1)) * prev.array())
                        .matrix();
        prev = std::move(cur);
        cur = std::move(next);
    }
    cur /= std::sqrt(trapezoid_dot(cur, cur, grid.h));
    return {n, eps, cur};
}

namespace {

RVec derivative(const RVec& f, double h) {
    const Eigen::Index n = f.size();
    RVec d = RVec::Zero(n);
    for (Eigen::Index i = 1; i + 1 < n; ++i) d(i) = (f(i + 1) - f(i - 1)) / (2 * h);
    return d;
}

}  // namespace

RVec apply_lowering(double eps, const RVec& f, const KGrid& grid) {
    return (grid.k.array() * f.array() / std::sqrt(eps)).matrix() + 0.5 * std::sqrt(eps) * derivative(f, grid.h);
}

RVec apply_raising(double eps, const RVec& f, const KGrid& grid) {
    return (grid.k.array() * f.array() / std::sqrt(eps)).matrix() - 0.5 * std::sqrt(eps) * derivative(f, grid.h);
}

EffectiveState effective_eigenstate(double eps, int n, const KGrid& grid) {
    EffectiveState s;
    s.n = n;
    if (n == 0) {
        const RVec p0 = oscillator_state(eps, 0, grid).values;
        s.plus = grid.shifted(p0, 0.25) / std::sqrt(2.0);
        s.minus = grid.shifted(p0, -0.25) / std::sqrt(2.0);
        return s;
    }
    const int N = std::abs(n);
    const double sg = n > 0 ? 1.0 : -1.0;
    const RVec pN = oscillator_state(eps, N, grid).values;
    const RVec pN1 = oscillator_state(eps, N - 1, grid).values;
    s.plus = 0.5 * (sg * grid.shifted(pN, 0.25) - grid.shifted(pN1, 0.25));
    s.minus = 0.5 * (sg * grid.shifted(pN, -0.25) + grid.shifted(pN1, -0.25));
    return s;
}

CVec effective_to_j1(const EffectiveState& s, const KGrid& grid, const EdgeBasis& basis) {
    CVec c = CVec::Zero(basis.dim());
    for (int b = 0; b < basis.dim(); ++b) {
        const auto& st = basis[b];
        const double k = st.chi == +1 ? (st.j + 0.5) / 2 : (st.j - 0.5) / 2;
        const Eigen::Index i = grid.index_of(k);
        if (i < 0) continue;
        c(b) = st.chi == +1 ? s.plus(i) : s.minus(i);
    }
    const double nrm = c.norm();
    if (nrm > 0) c /= nrm;
    return c;
}

}  // namespace mzm
