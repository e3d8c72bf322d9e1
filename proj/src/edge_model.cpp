#include "mzm/edge_model.hpp"

#include <cmath>
#include <fmt/format.h>

namespace mzm {

namespace {

bool is_half_integer(double x) { return std::abs(x - std::floor(x) - 0.5) < 1e-12; }

// chirality of a J1 state: j = 2k + 1/2 -> -1, j = 2k - 1/2 -> +1
int j1_chirality(double j) {
    const long twice = std::lround(j - 0.5);
    return (twice % 2 == 0) ? -1 : +1;
}

}  // namespace

void check_j_max(double j_max) {
    if (!is_half_integer(j_max) || j_max <= 0)
        throw std::invalid_argument(fmt::format("j_max must be a positive half-integer, got {}", j_max));
    if (j1_chirality(j_max) != -1)
        throw std::invalid_argument(
            fmt::format("j_max must have the form 2k+1/2 so the J1 basis starts with chirality -, got {}", j_max));
}

EdgeBasis::EdgeBasis(double j_max, std::vector<EdgeState> states)
    : j_max_(j_max), states_(std::move(states)) {}

EdgeBasis EdgeBasis::J1(double j_max) {
    check_j_max(j_max);
    std::vector<EdgeState> s;
    const int dim = static_cast<int>(std::lround(2 * j_max));
    s.reserve(static_cast<size_t>(dim));
    for (int i = 0; i < dim; ++i) {
        const double j = j_max - i;
        s.push_back({j, j1_chirality(j)});
    }
    return EdgeBasis(j_max, std::move(s));
}

EdgeBasis EdgeBasis::J2(double j_max) {
    EdgeBasis b = J1(j_max);
    for (auto& st : b.states_) st.j = -st.j;
    return b;
}

int EdgeBasis::index_of(double j, int chi) const {
    for (int i = 0; i < dim(); ++i)
        if (states_[static_cast<size_t>(i)].chi == chi && std::abs(states_[static_cast<size_t>(i)].j - j) < 1e-9)
            return i;
    return -1;
}

RVec EdgeBasis::momentum() const {
    RVec p(dim());
    for (int i = 0; i < dim(); ++i) p(i) = states_[static_cast<size_t>(i)].j;
    return p;
}

RMat build_edge_hamiltonian(const EdgeBasis& basis, double eps) {
    if (eps < 0) throw std::invalid_argument(fmt::format("eps must be nonnegative, got {}", eps));
    const int d = basis.dim();
    RMat H = RMat::Zero(d, d);
    for (int b = 0; b < d; ++b) {
        const auto& sb = basis[b];
        H(b, b) = -sb.chi * sb.j;
        // <j', +|H|j, -> = eps (delta_{j', j+1} - delta_{j', j-1})
        if (sb.chi != -1) continue;
        const int up = basis.index_of(sb.j + 1, +1);
        const int dn = basis.index_of(sb.j - 1, +1);
        if (up >= 0) H(up, b) = H(b, up) = eps;
        if (dn >= 0) H(dn, b) = H(b, dn) = -eps;
    }
    return H;
}

RMat theta_grid_hamiltonian(const EdgeBasis& basis, double eps, int N) {
    if (eps < 0) throw std::invalid_argument("eps must be nonnegative");
    const RVec th = periodic_grid(N);
    const int d = basis.dim();
    const double w = 2 * kPi / N;
    // (sigma_y)_{+-} = -i, (sigma_y)_{-+} = +i
    auto sy = [](int ca, int cb) -> cplx {
        if (ca == cb) return 0.0;
        return ca == +1 ? cplx(0, -1) : cplx(0, 1);
    };
    CMat H = CMat::Zero(d, d);
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            const auto& sa = basis[a];
            const auto& sb = basis[b];
            cplx acc = 0.0;
            if (a == b) acc += -sa.chi * sa.j;
            const cplx s = sy(sa.chi, sb.chi);
            if (s != 0.0) {
                cplx sum = 0.0;
                for (int n = 0; n < N; ++n)
                    sum += std::exp(kI * ((sb.j - sa.j) * th(n))) * std::sin(th(n));
                acc += -2.0 * eps * s * sum * w / (2 * kPi);
            }
            H(a, b) = acc;
        }
    }
    if (H.imag().cwiseAbs().maxCoeff() > 1e-9) throw NumericsError("theta-grid Hamiltonian is not real");
    return H.real();
}

CMat theta_grid_full_hamiltonian(double eps, int N) {
    if (N % 2 != 0) throw std::invalid_argument("grid size must be even");
    const RVec th = periodic_grid(N);
    CMat P = CMat::Zero(N, N);
    for (int n = 0; n < N; ++n)
        for (int m = 0; m < N; ++m) {
            cplx s = 0.0;
            for (int k = 0; k < N; ++k) {
                const double j = -N / 2 + 0.5 + k;
                s += j * std::exp(kI * (j * (th(n) - th(m))));
            }
            P(n, m) = s / static_cast<double>(N);
        }
    CMat H = CMat::Zero(2 * N, 2 * N);
    H.topLeftCorner(N, N) = -P;
    H.bottomRightCorner(N, N) = P;
    for (int n = 0; n < N; ++n) {
        H(n, N + n) = kI * (2.0 * eps * std::sin(th(n)));
        H(N + n, n) = -kI * (2.0 * eps * std::sin(th(n)));
    }
    return H;
}

RVec edge_spectrum(double eps, double j_max) {
    Eigen::SelfAdjointEigenSolver<RMat> es(build_edge_hamiltonian(EdgeBasis::J1(j_max), eps),
                                           Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

double AngularSpinor::norm() const {
    const double h = 2 * kPi / static_cast<double>(theta.size());
    return std::sqrt(h * (plus.squaredNorm() + minus.squaredNorm()));
}

cplx AngularSpinor::dot(const AngularSpinor& o) const {
    const double h = 2 * kPi / static_cast<double>(theta.size());
    return h * (plus.dot(o.plus) + minus.dot(o.minus));
}

AngularSpinor to_theta(const EdgeBasis& basis, const CVec& c, const RVec& theta) {
    AngularSpinor s{theta, CVec::Zero(theta.size()), CVec::Zero(theta.size())};
    const double nrm = 1.0 / std::sqrt(2 * kPi);
    for (int b = 0; b < basis.dim(); ++b) {
        if (c(b) == 0.0) continue;
        CVec& target = basis[b].chi == +1 ? s.plus : s.minus;
        for (Eigen::Index n = 0; n < theta.size(); ++n)
            target(n) += nrm * c(b) * std::exp(kI * (basis[b].j * theta(n)));
    }
    return s;
}

AngularSpinor sigma_x_conjugate(const AngularSpinor& psi) {
    return {psi.theta, psi.minus.conjugate(), psi.plus.conjugate()};
}

double antiperiodicity_residual(const EdgeBasis& basis, const CVec& coeffs, const RVec& theta) {
    const AngularSpinor a = to_theta(basis, coeffs, theta);
    const AngularSpinor b = to_theta(basis, coeffs, (theta.array() + 2 * kPi).matrix());
    return std::max((a.plus + b.plus).cwiseAbs().maxCoeff(), (a.minus + b.minus).cwiseAbs().maxCoeff());
}

CVec sigma_x_conjugate(const EdgeBasis& basis, const CVec& c) {
    CVec out = CVec::Zero(c.size());
    for (int b = 0; b < basis.dim(); ++b) {
        const int partner = basis.index_of(-basis[b].j, -basis[b].chi);
        if (partner >= 0) out(b) = std::conj(c(partner));
    }
    return out;
}

ZeroMode zero_mode(double eps, double j_max, int grid) {
    const EdgeBasis basis = EdgeBasis::J1(j_max);
    Eigen::SelfAdjointEigenSolver<RMat> es(build_edge_hamiltonian(basis, eps));
    const RVec& E = es.eigenvalues();
    const RMat& V = es.eigenvectors();
    const RVec th = periodic_grid(grid);

    auto phi0 = [&](const CVec& c) {
        cplx s = 0.0;
        for (int b = 0; b < basis.dim(); ++b)
            if (basis[b].chi == +1) s += c(b);
        return 2.0 * std::real(s) / std::sqrt(2 * kPi);
    };

    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < E.size(); ++k) {
        const double dk = std::abs(E(k)), db = std::abs(E(best));
        if (dk < db - 1e-12)
            best = k;
        else if (std::abs(dk - db) <= 1e-12 &&
                 std::abs(phi0(V.col(k).cast<cplx>())) > std::abs(phi0(V.col(best).cast<cplx>())))
            best = k;
    }

    CVec psi = V.col(best).cast<cplx>();
    CVec p1 = psi + sigma_x_conjugate(basis, psi);
    const CVec ipsi = kI * psi;
    CVec p2 = ipsi + sigma_x_conjugate(basis, ipsi);
    CVec fixed = p1.norm() >= p2.norm() ? p1 : p2;
    fixed.normalize();
    if (phi0(fixed) < 0) fixed = -fixed;

    ZeroMode zm;
    zm.energy = E(best);
    zm.coeffs = fixed;
    zm.isolated = eps > 2.0;
    zm.j_max = j_max;
    const AngularSpinor s = to_theta(basis, fixed, th);
    const AngularSpinor c = sigma_x_conjugate(s);
    zm.symmetry_residual =
        std::max((s.plus - c.plus).cwiseAbs().maxCoeff(), (s.minus - c.minus).cwiseAbs().maxCoeff());
    return zm;
}

CVec antiperiodic_shift_half(const CVec& f) {
    const Eigen::Index N = f.size();
    if (N % 2 != 0) throw std::invalid_argument("grid size must be even");
    const Eigen::Index s = N / 2;
    CVec g(N);
    g.tail(N - s) = f.head(N - s);
    g.head(s) = -f.tail(s);
    return g;
}

MajoranaPair majorana_pair(const ZeroMode& zm, int grid) {
    const EdgeBasis basis = EdgeBasis::J1(zm.j_max);
    const RVec th = periodic_grid(grid);
    const AngularSpinor p = to_theta(basis, zm.coeffs, th);
    const double r2 = std::sqrt(2.0);
    MajoranaPair mp;
    mp.psi1m = {th, (p.plus + p.plus.conjugate()) / r2, (p.minus + p.minus.conjugate()) / r2};
    mp.psi2m = {th, kI * (p.plus - p.plus.conjugate()) / r2, kI * (p.minus - p.minus.conjugate()) / r2};
    mp.phi = 2.0 * p.plus.real();
    return mp;
}

double jacobi_theta2(double z, double q, double rel_cutoff) {
    if (!(q > 0 && q < 1)) throw std::invalid_argument("theta_2 nome must lie in (0, 1)");
    double sum = 0.0, mag = 0.0;
    const double lq = std::log(q);
    for (int n = 0; n < 100000; ++n) {
        const double e = (n + 0.5) * (n + 0.5);
        const double t = std::exp(e * lq);
        sum += 2 * t * std::cos((2 * n + 1) * z);
        mag += 2 * t;
        if (2 * t < rel_cutoff * mag) break;
    }
    return sum;
}

RVec theta_function_profile(double eps, const RVec& theta, double rel_cutoff) {
    if (eps <= 0) throw std::invalid_argument("eps must be positive");
    const double q = std::exp(-1.0 / (4 * eps));
    const int Nn = 1024;
    const RVec g = periodic_grid(Nn);
    double s = 0.0;
    for (int n = 0; n < Nn; ++n) {
        const double v = jacobi_theta2(g(n) / 2, q, rel_cutoff);
        s += v * v;
    }
    const double norm = 1.0 / std::sqrt(s * 2 * kPi / Nn);
    RVec out(theta.size());
    for (Eigen::Index i = 0; i < theta.size(); ++i) out(i) = norm * jacobi_theta2(theta(i) / 2, q, rel_cutoff);
    return out;
}

double theta_function_mode(double eps, double theta, double rel_cutoff) {
    RVec t(1);
    t(0) = theta;
    return theta_function_profile(eps, t, rel_cutoff)(0);
}

double gaussian_mode(double eps, double theta) {
    if (eps <= 0) throw std::invalid_argument("eps must be positive");
    return std::pow(2 * eps / kPi, 0.25) * std::exp(-eps * theta * theta);
}

double l2_distance(const RVec& a, const RVec& b, double h) { return std::sqrt(h * (a - b).squaredNorm()); }

}  // namespace mzm
