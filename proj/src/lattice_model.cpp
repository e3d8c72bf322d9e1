#include "mzm/lattice_model.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numeric>
#include <random>

namespace mzm {

namespace {

long long site_key(int m, int n) { return (static_cast<long long>(m) << 32) ^ static_cast<unsigned>(n); }

using Triplets = std::vector<Eigen::Triplet<cplx>>;

void add_block(Triplets& t, int row0, int col0, const Eigen::Matrix2cd& M) {
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            if (M(a, b) != 0.0) t.emplace_back(row0 + a, col0 + b, M(a, b));
}

const Eigen::Matrix2cd& tau_x() {
    static const Eigen::Matrix2cd m = (Eigen::Matrix2cd() << 0, 1, 1, 0).finished();
    return m;
}
const Eigen::Matrix2cd& tau_y() {
    static const Eigen::Matrix2cd m = (Eigen::Matrix2cd() << 0, cplx(0, -1), cplx(0, 1), 0).finished();
    return m;
}
const Eigen::Matrix2cd& tau_z() {
    static const Eigen::Matrix2cd m = (Eigen::Matrix2cd() << 1, 0, 0, -1).finished();
    return m;
}

// Chiral block entries on a 2-per-site layout with offset stride `stride` and
// in-site offset `off` (used to embed into the full operator).
void chiral_triplets(Triplets& t, const LatticeParams& p, const LatticeDisk& disk, int chirality, int stride,
                     int off) {
    const double c = chirality > 0 ? 1.0 : -1.0;
    const Eigen::Matrix2cd onsite = c * p.eps_onsite * tau_z();
    const Eigen::Matrix2cd hop = -c * p.u * tau_z();
    const cplx iD = kI * p.Delta;
    struct Hop {
        int dm, dn;
        Eigen::Matrix2cd M;
    };
    const Hop hops[4] = {{1, 0, hop + iD * tau_y()},
                         {-1, 0, hop - iD * tau_y()},
                         {0, 1, hop + iD * tau_x()},
                         {0, -1, hop - iD * tau_x()}};
    for (int i = 0; i < disk.size(); ++i) {
        const auto [m, n] = disk.sites()[static_cast<size_t>(i)];
        add_block(t, stride * i + off, stride * i + off, onsite);
        for (const auto& h : hops) {
            const int tgt = disk.index_of(m + h.dm, n + h.dn);
            if (tgt >= 0) add_block(t, stride * tgt + off, stride * i + off, h.M);
        }
    }
}

}  // namespace

LatticeDisk::LatticeDisk(double R, double a) : R_(R), a_(a) {
    if (!(R >= 0) || !(a > 0)) throw std::invalid_argument("disk radius and lattice constant must be positive");
    const int r = static_cast<int>(std::floor(R / a));
    for (int n = -r; n <= r; ++n)
        for (int m = -r; m <= r; ++m) {
            const double x = m * a, y = n * a;
            if (x * x + y * y <= R * R) {
                index_[site_key(m, n)] = static_cast<int>(sites_.size());
                sites_.emplace_back(m, n);
            }
        }
}

int LatticeDisk::index_of(int m, int n) const {
    const auto it = index_.find(site_key(m, n));
    return it == index_.end() ? -1 : it->second;
}

double LatticeDisk::radius(int i) const {
    const auto [m, n] = sites_[static_cast<size_t>(i)];
    return a_ * std::hypot(m, n);
}

double LatticeDisk::angle(int i) const {
    const auto [m, n] = sites_[static_cast<size_t>(i)];
    return std::atan2(static_cast<double>(n), static_cast<double>(m));
}

LatticeParams LatticeParams::from_fermi(double kF, double a, double gamma, double R) {
    LatticeParams p;
    p.u = 1.0 / ((a * kF) * (a * kF));
    p.Delta = std::sqrt(2 * gamma) / (2 * a * kF);
    p.eps_onsite = 4 * p.u - 1;
    p.gamma = gamma;
    p.lambda = kF * R;
    return p;
}

double LatticeParams::zeeman_from_eps(double eps, double gamma, double lambda) {
    return 2 * eps * std::sqrt(2 * gamma) / lambda;
}

void LatticeParams::check() const {
    if (!(u > 0) || !(Delta >= 0) || !(gamma > 0) || !(lambda > 0))
        throw std::invalid_argument("lattice parameters must be positive");
    if (E_Z < 0) throw std::invalid_argument("Zeeman energy must be nonnegative");
}

SparseHermitian build_chiral_block(const LatticeParams& p, const LatticeDisk& disk, int chirality) {
    if (chirality != 1 && chirality != -1) throw std::invalid_argument("chirality must be +1 or -1");
    p.check();
    Triplets t;
    t.reserve(static_cast<size_t>(disk.size()) * 20);
    chiral_triplets(t, p, disk, chirality, 2, 0);
    SparseHermitian H(2 * disk.size(), 2 * disk.size());
    H.setFromTriplets(t.begin(), t.end());
    H.makeCompressed();
    return H;
}

SparseHermitian conjugate_chiral_block(const SparseHermitian& Hp) {
    const Eigen::Index N = Hp.rows() / 2;
    Triplets t;
    for (Eigen::Index i = 0; i < N; ++i) add_block(t, 2 * static_cast<int>(i), 2 * static_cast<int>(i), tau_y());
    SparseHermitian TY(Hp.rows(), Hp.cols());
    TY.setFromTriplets(t.begin(), t.end());
    SparseHermitian out = TY * SparseHermitian(Hp.conjugate()) * TY;
    out.prune(cplx(0.0), 0.0);
    out.makeCompressed();
    return out;
}

SparseHermitian build_full_tsc(const LatticeParams& p, const LatticeDisk& disk) {
    p.check();
    Triplets t;
    t.reserve(static_cast<size_t>(disk.size()) * 44);
    chiral_triplets(t, p, disk, +1, 4, 0);
    chiral_triplets(t, p, disk, -1, 4, 2);
    // kron(s_x, E_Z (cos phi tau_x - sin phi tau_y))
    Eigen::Matrix2cd Z;
    Z << 0, std::exp(kI * p.phi), std::exp(-kI * p.phi), 0;
    Z *= p.E_Z;
    if (p.E_Z != 0.0)
        for (int i = 0; i < disk.size(); ++i) {
            add_block(t, 4 * i, 4 * i + 2, Z);
            add_block(t, 4 * i + 2, 4 * i, Z);
        }
    SparseHermitian H(4 * disk.size(), 4 * disk.size());
    H.setFromTriplets(t.begin(), t.end());
    H.makeCompressed();
    return H;
}

double sparse_hermitian_asymmetry(const SparseHermitian& H) {
    const SparseHermitian D = H - SparseHermitian(H.adjoint());
    double m = 0.0;
    for (Eigen::Index k = 0; k < D.outerSize(); ++k)
        for (SparseHermitian::InnerIterator it(D, k); it; ++it) m = std::max(m, std::abs(it.value()));
    return m;
}

Eigenpairs mid_spectrum_states(const SparseHermitian& H, int count, const MidSpectrumOptions& opt) {
    const Eigen::Index n = H.rows();
    if (count <= 0 || count >= n) throw std::invalid_argument("count must satisfy 0 < count < dim");
    const int b = std::max(1, opt.block);
    const int want = static_cast<int>(std::min<Eigen::Index>(count + opt.extra, n - 1));
    Eigen::Index maxk = opt.max_krylov > 0 ? opt.max_krylov : std::max<Eigen::Index>(8 * want, want + 200);
    maxk = std::min<Eigen::Index>(maxk, n - n % b);
    maxk -= maxk % b;

    SparseHermitian A = H;
    for (Eigen::Index i = 0; i < n; ++i) A.coeffRef(i, i) -= opt.sigma;
    A.makeCompressed();
    Eigen::SparseLU<SparseHermitian, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(A);
    if (lu.info() != Eigen::Success) throw NumericsError("sparse LU factorization of H - sigma failed");

    double normH = 0.0;  // max absolute column sum (1-norm bound)
    for (Eigen::Index k = 0; k < H.outerSize(); ++k) {
        double s = 0.0;
        for (SparseHermitian::InnerIterator it(H, k); it; ++it) s += std::abs(it.value());
        normH = std::max(normH, s);
    }
    normH += std::abs(opt.sigma);

    std::mt19937 rng(opt.seed);
    std::normal_distribution<double> nd;
    auto random_vec = [&]() {
        CVec v(n);
        for (Eigen::Index i = 0; i < n; ++i) v(i) = cplx(nd(rng), nd(rng));
        return v;
    };

    CMat V(n, maxk + b);
    CMat T = CMat::Zero(maxk + b, maxk + b);

    // Orthonormalize columns of W among themselves (and against V(:, 0:k) when
    // project is set); returns R.
    auto orthonormalize = [&](CMat& W, Eigen::Index k, bool project) {
        Eigen::MatrixXcd R = Eigen::MatrixXcd::Zero(W.cols(), W.cols());
        for (Eigen::Index c = 0; c < W.cols(); ++c) {
            CVec w = W.col(c);
            const double w0 = w.norm();
            for (int pass = 0; pass < 2; ++pass) {
                if (project && k > 0) w -= V.leftCols(k) * (V.leftCols(k).adjoint() * w);
                for (Eigen::Index d = 0; d < c; ++d) {
                    const cplx h = W.col(d).dot(w);
                    if (pass == 0) R(d, c) = h;
                    else R(d, c) += h;
                    w -= h * W.col(d);
                }
            }
            double r = w.norm();
            if (r <= 1e-10 * std::max(w0, 1e-300)) {
                // deflated direction: continue with a fresh random vector
                R(c, c) = 0.0;
                w = random_vec();
                for (int pass = 0; pass < 2; ++pass) {
                    if (k > 0) w -= V.leftCols(k) * (V.leftCols(k).adjoint() * w);
                    for (Eigen::Index d = 0; d < c; ++d) w -= W.col(d).dot(w) * W.col(d);
                }
                r = w.norm();
                W.col(c) = w / r;
            } else {
                R(c, c) = r;
                W.col(c) = w / r;
            }
        }
        return R;
    };

    {
        CMat W(n, b);
        for (int c = 0; c < b; ++c) W.col(c) = random_vec();
        orthonormalize(W, 0, false);
        V.leftCols(b) = W;
    }

    Eigenpairs out;
    Eigen::Index k = 0;  // columns with complete projections
    Eigen::Index next_check = std::max<Eigen::Index>(want + b, 2 * b);
    RVec sel_E;
    CMat sel_Y;
    bool done = false;
    while (!done) {
        CMat W(n, b);
        for (int c = 0; c < b; ++c) W.col(c) = lu.solve(V.col(k + c));
        const Eigen::Index kk = k + b;
        CMat C = V.leftCols(kk).adjoint() * W;
        W -= V.leftCols(kk) * C;
        CMat C2 = V.leftCols(kk).adjoint() * W;
        W -= V.leftCols(kk) * C2;
        C += C2;
        T.block(0, k, kk, b) = C;
        const Eigen::MatrixXcd R = orthonormalize(W, kk, false);
        T.block(kk, k, b, b) = R;
        V.middleCols(kk, b) = W;
        k = kk;

        const bool last = k + b > maxk;
        if (k < next_check && !last) continue;
        next_check = k + std::max<Eigen::Index>(4 * b, k / 8);

        CMat Tk = T.topLeftCorner(k, k);
        Tk = 0.5 * (Tk + Tk.adjoint()).eval();
        Eigen::SelfAdjointEigenSolver<CMat> es(Tk);
        const RVec& th = es.eigenvalues();
        std::vector<Eigen::Index> order(static_cast<size_t>(k));
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](Eigen::Index x, Eigen::Index y) { return std::abs(th(x)) > std::abs(th(y)); });
        const int nw = static_cast<int>(std::min<Eigen::Index>(want, k));
        std::vector<std::pair<double, Eigen::Index>> cand;
        for (int i = 0; i < nw; ++i) {
            const Eigen::Index q = order[static_cast<size_t>(i)];
            cand.emplace_back(opt.sigma + 1.0 / th(q), q);
        }
        std::sort(cand.begin(), cand.end(),
                  [](const auto& x, const auto& y) { return std::abs(x.first) < std::abs(y.first); });
        const Eigen::MatrixXcd Rlast = T.block(k, k - b, b, b);
        bool all_ok = static_cast<int>(cand.size()) >= count;
        for (int i = 0; i < count && all_ok; ++i) {
            const Eigen::Index q = cand[static_cast<size_t>(i)].second;
            const double r = (Rlast * es.eigenvectors().col(q).tail(b)).norm();
            const double est = normH * r / std::abs(th(q));
            if (est > 0.1 * opt.tol) all_ok = false;
        }
        if (all_ok || last) {
            sel_E.resize(count);
            sel_Y.resize(k, count);
            for (int i = 0; i < count; ++i) {
                sel_Y.col(i) = es.eigenvectors().col(cand[static_cast<size_t>(i)].second);
                sel_E(i) = cand[static_cast<size_t>(i)].first;
            }
            out.converged = all_ok;
            done = true;
        }
    }

    out.krylov_dim = static_cast<int>(k);
    out.vectors = V.leftCols(k) * sel_Y;
    out.values.resize(count);
    out.residuals.resize(count);
    for (int i = 0; i < count; ++i) {
        CVec x = out.vectors.col(i);
        x.normalize();
        const CVec Hx = H * x;
        const double E = std::real(x.dot(Hx));
        out.vectors.col(i) = x;
        out.values(i) = E;
        out.residuals(i) = (Hx - E * x).norm();
    }
    std::vector<int> idx(static_cast<size_t>(count));
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int x, int y) { return std::abs(out.values(x)) < std::abs(out.values(y)); });
    Eigenpairs sorted = out;
    for (int i = 0; i < count; ++i) {
        sorted.values(i) = out.values(idx[static_cast<size_t>(i)]);
        sorted.residuals(i) = out.residuals(idx[static_cast<size_t>(i)]);
        sorted.vectors.col(i) = out.vectors.col(idx[static_cast<size_t>(i)]);
    }
    sorted.converged = out.converged && sorted.residuals.maxCoeff() < opt.tol;
    return sorted;
}

RVec probability_density(const CVec& state, const LatticeDisk& disk) {
    const Eigen::Index c = state.size() / disk.size();
    if (c * disk.size() != state.size()) throw std::invalid_argument("state size does not match the disk");
    RVec rho(disk.size());
    for (int i = 0; i < disk.size(); ++i) rho(i) = state.segment(c * i, c).squaredNorm();
    const double s = rho.sum();
    if (s > 0) rho /= s;
    return rho;
}

double angular_momentum(const CVec& state, const LatticeDisk& disk, int chirality, double rim_fraction) {
    if (state.size() != 2 * disk.size()) throw std::invalid_argument("angular momentum needs a chiral-block state");
    static const double coef[3] = {45.0 / 60, -9.0 / 60, 1.0 / 60};
    auto val = [&](int m, int n, int tau) -> cplx {
        const int i = disk.index_of(m, n);
        return i < 0 ? cplx(0.0) : state(2 * i + tau);
    };
    const double rcut = rim_fraction * disk.R();
    double num = 0.0, den = 0.0;
    for (int i = 0; i < disk.size(); ++i) {
        if (disk.radius(i) <= rcut) continue;
        const auto [m, n] = disk.sites()[static_cast<size_t>(i)];
        for (int tau = 0; tau < 2; ++tau) {
            cplx dx = 0.0, dy = 0.0;
            for (int d = 1; d <= 3; ++d) {
                dx += coef[d - 1] * (val(m + d, n, tau) - val(m - d, n, tau));
                dy += coef[d - 1] * (val(m, n + d, tau) - val(m, n - d, tau));
            }
            // -i d_theta = -i (x d_y - y d_x)
            const cplx L = -kI * (static_cast<double>(m) * dy - static_cast<double>(n) * dx);
            const cplx psi = state(2 * i + tau);
            const double tz = tau == 0 ? 1.0 : -1.0;
            num += std::real(std::conj(psi) * L) - chirality * 0.5 * tz * std::norm(psi);
            den += std::norm(psi);
        }
    }
    if (den <= 0) throw NumericsError("state has no weight on the rim");
    return num / den;
}

EdgeCensus classify_edge_states(const Eigenpairs& pairs, const LatticeDisk& disk, const LatticeParams& p,
                                int chirality, const CensusOptions& opt) {
    EdgeCensus c;
    c.predicted_onset = std::sqrt(2 * p.gamma - p.gamma * p.gamma);
    const Eigen::Index ns = pairs.values.size();
    RVec rim(ns);
    const double rcut = opt.rim_radius_fraction * disk.R();
    for (Eigen::Index k = 0; k < ns; ++k) {
        const RVec rho = probability_density(pairs.vectors.col(k), disk);
        double s = 0.0;
        for (int i = 0; i < disk.size(); ++i)
            if (disk.radius(i) > rcut) s += rho(i);
        rim(k) = s;
    }
    c.bulk_onset = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < ns; ++k)
        if (rim(k) < opt.bulk_rim_weight) c.bulk_onset = std::min(c.bulk_onset, std::abs(pairs.values(k)));
    if (!std::isfinite(c.bulk_onset))
        throw NumericsError("no bulk state among the computed eigenpairs; request more states");

    const double slope = std::sqrt(2 * p.gamma) / p.lambda;
    c.gamma_c_min = std::numeric_limits<double>::infinity();
    c.gamma_c_max = 0.0;
    c.j_min = std::numeric_limits<double>::infinity();
    c.j_max = -std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < ns; ++k) {
        const double E = pairs.values(k);
        if (std::abs(E) >= c.bulk_onset) continue;
        EdgeEntry e;
        e.energy = E;
        e.rim_weight = rim(k);
        e.j_raw = angular_momentum(pairs.vectors.col(k), disk, chirality, opt.rim_radius_fraction);
        e.j = std::floor(e.j_raw) + 0.5;
        e.ambiguous = std::abs(e.j_raw - e.j) > 0.2;
        const double E_eff = -chirality * slope * e.j;
        e.gamma_c = std::abs(E - E_eff) / std::abs(E_eff);
        c.ambiguous += e.ambiguous ? 1 : 0;
        c.gamma_c_min = std::min(c.gamma_c_min, e.gamma_c);
        c.gamma_c_max = std::max(c.gamma_c_max, e.gamma_c);
        c.j_min = std::min(c.j_min, e.j);
        c.j_max = std::max(c.j_max, e.j);
        c.edges.push_back(e);
    }
    std::sort(c.edges.begin(), c.edges.end(), [](const EdgeEntry& x, const EdgeEntry& y) { return x.energy < y.energy; });
    c.count = static_cast<int>(c.edges.size());
    return c;
}

int rim_winding(const CVec& state, const LatticeDisk& disk, int tau) {
    if (state.size() != 2 * disk.size()) throw std::invalid_argument("winding needs a chiral-block state");
    const RVec rho = probability_density(state, disk);
    // radius of maximal density, in integer shells
    const int nsh = static_cast<int>(std::ceil(disk.R())) + 1;
    RVec shell = RVec::Zero(nsh);
    for (int i = 0; i < disk.size(); ++i) shell(static_cast<int>(std::lround(disk.radius(i)))) += rho(i);
    Eigen::Index rpk;
    shell.maxCoeff(&rpk);
    std::vector<std::pair<double, cplx>> ring;
    for (int i = 0; i < disk.size(); ++i)
        if (std::abs(disk.radius(i) - static_cast<double>(rpk)) < 0.5) ring.emplace_back(disk.angle(i), state(2 * i + tau));
    std::sort(ring.begin(), ring.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    double total = 0.0;
    for (size_t i = 0; i < ring.size(); ++i) {
        const cplx a = ring[i].second, b = ring[(i + 1) % ring.size()].second;
        total += std::arg(b * std::conj(a));
    }
    return static_cast<int>(std::lround(total / (2 * kPi)));
}

std::pair<MajoranaDensity, MajoranaDensity> majorana_densities(const CVec& a, const CVec& b, const LatticeDisk& disk,
                                                               double rim_fraction) {
    const Eigen::Index c = a.size() / disk.size();
    const RVec rho = probability_density(a, disk);
    cplx quad = 0.0;
    for (int i = 0; i < disk.size(); ++i) quad += rho(i) * std::exp(kI * (2 * disk.angle(i)));
    const double axis = 0.5 * std::arg(quad);
    Eigen::Matrix2cd M = Eigen::Matrix2cd::Zero();
    const CVec* v[2] = {&a, &b};
    for (int i = 0; i < disk.size(); ++i) {
        const double x = std::cos(disk.angle(i) - axis);
        for (int p = 0; p < 2; ++p)
            for (int q = 0; q < 2; ++q) M(p, q) += x * v[p]->segment(c * i, c).dot(v[q]->segment(c * i, c));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(M);
    auto make = [&](int col) {
        const CVec s = es.eigenvectors()(0, col) * a + es.eigenvectors()(1, col) * b;
        MajoranaDensity d;
        d.density = probability_density(s, disk);
        cplx mean = 0.0;
        double rw = 0.0;
        for (int i = 0; i < disk.size(); ++i) {
            mean += d.density(i) * std::exp(kI * disk.angle(i));
            if (disk.radius(i) > rim_fraction * disk.R()) rw += d.density(i);
        }
        d.peak_angle = std::arg(mean);
        d.rim_weight = rw;
        return d;
    };
    return {make(1), make(0)};
}

}  // namespace mzm
