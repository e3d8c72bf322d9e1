#include <doctest.h>

#include <cmath>

#include "mzm/effective_model.hpp"

using namespace mzm;

namespace {

struct Match {
    double energy;   // exact level nearest to the effective prediction
    double overlap;  // best overlap with an exact eigenvector
};

Match nearest_exact(double eps, int n) {
    const EdgeBasis b = EdgeBasis::J1(48.5);
    const RMat H = build_edge_hamiltonian(b, eps);
    Eigen::SelfAdjointEigenSolver<RMat> es(H);
    const KGrid g = KGrid::for_eps(eps);
    const CVec c = effective_to_j1(effective_eigenstate(eps, n, g), g, b);
    const double target = effective_energy(eps, n);
    Match m{1e300, 0.0};
    for (int i = 0; i < b.dim(); ++i) {
        if (std::abs(es.eigenvalues()(i) - target) < std::abs(m.energy - target)) m.energy = es.eigenvalues()(i);
        m.overlap = std::max(m.overlap, std::abs(es.eigenvectors().col(i).cast<cplx>().dot(c)));
    }
    return m;
}

}  // namespace

TEST_CASE("effective energies") {
    CHECK(effective_energy(5.0, 0) == 0.0);
    CHECK(effective_energy(5.0, 1) == doctest::Approx(std::sqrt(20.0)));
    CHECK(effective_energy(5.0, -2) == doctest::Approx(-std::sqrt(40.0)));
    CHECK_THROWS(effective_energy(0.0, 1));
}

TEST_CASE("k grid keeps quarter shifts exact") {
    const KGrid g = KGrid::for_eps(5.0);
    CHECK(g.size() >= 2048);
    CHECK(g.k(0) <= -10 * std::sqrt(5.0));
    CHECK(g.index_of(0.0) == (g.size() - 1) / 2);
    CHECK(g.index_of(0.25) >= 0);
    CHECK(g.index_of(-3.0) >= 0);
    CHECK(g.index_of(0.1) == -1);
    RVec f = RVec::Zero(g.size());
    f(g.index_of(1.0)) = 1.0;
    CHECK(g.shifted(f, 0.25)(g.index_of(1.25)) == 1.0);
    CHECK(g.shifted(f, -0.25)(g.index_of(0.75)) == 1.0);
    CHECK_THROWS(g.shifted(f, 0.1 * g.h));
}

TEST_CASE("oscillator states are orthonormal") {
    const double eps = 5.0;
    const KGrid g = KGrid::for_eps(eps);
    for (int n = 0; n < 5; ++n)
        for (int m = 0; m <= n; ++m) {
            const double d = trapezoid_dot(oscillator_state(eps, n, g).values, oscillator_state(eps, m, g).values, g.h);
            CHECK(std::abs(d - (n == m ? 1.0 : 0.0)) < 1e-12);
        }
    CHECK_THROWS(oscillator_state(eps, -1, g));
}

TEST_CASE("ladder operators act as annihilation and creation") {
    for (double eps : {3.0, 5.0}) {
        const KGrid g = KGrid::for_eps(eps);
        const RVec p0 = oscillator_state(eps, 0, g).values;
        const RVec p1 = oscillator_state(eps, 1, g).values;
        const RVec p2 = oscillator_state(eps, 2, g).values;
        CHECK(apply_lowering(eps, p0, g).cwiseAbs().maxCoeff() < 1e-3);
        CHECK((apply_lowering(eps, p1, g) - p0).cwiseAbs().maxCoeff() < 1e-3);
        CHECK((apply_lowering(eps, p2, g) - std::sqrt(2.0) * p1).cwiseAbs().maxCoeff() < 1e-3);
        CHECK((apply_raising(eps, p0, g) - p1).cwiseAbs().maxCoeff() < 1e-3);
        CHECK((apply_raising(eps, p1, g) - std::sqrt(2.0) * p2).cwiseAbs().maxCoeff() < 1e-3);
    }
}

TEST_CASE("finite-difference ladder error is second order") {
    const double eps = 5.0;
    const KGrid g1 = KGrid::make(10 * std::sqrt(eps), 1024), g2 = KGrid::make(10 * std::sqrt(eps), 2048 + 1024);
    REQUIRE(g2.h < g1.h);
    const double e1 = apply_lowering(eps, oscillator_state(eps, 0, g1).values, g1).cwiseAbs().maxCoeff();
    const double e2 = apply_lowering(eps, oscillator_state(eps, 0, g2).values, g2).cwiseAbs().maxCoeff();
    const double order = std::log(e1 / e2) / std::log(g1.h / g2.h);
    CHECK(order > 1.8);
    CHECK(order < 2.2);
}

TEST_CASE("effective zero mode overlaps the exact zero mode") {
    for (double eps : {3.0, 4.0, 5.0}) CHECK(nearest_exact(eps, 0).overlap > 0.999);
}

TEST_CASE("low effective levels track the exact spectrum") {
    for (double eps : {3.0, 4.0, 5.0})
        for (int n : {-2, -1, 1, 2}) {
            const Match m = nearest_exact(eps, n);
            const double E = effective_energy(eps, n);
            CHECK(std::abs(m.energy - E) / std::abs(E) < 0.05);
            CHECK(m.overlap > 0.98);
        }
    for (int n : {-3, 3}) {
        const Match m = nearest_exact(5.0, n);
        CHECK(std::abs(m.energy - effective_energy(5.0, n)) / std::abs(effective_energy(5.0, n)) < 0.05);
    }
}

TEST_CASE("mapping to J1 is normalized and respects the chirality rule") {
    const double eps = 5.0;
    const KGrid g = KGrid::for_eps(eps);
    const EdgeBasis b = EdgeBasis::J1(48.5);
    const CVec c = effective_to_j1(effective_eigenstate(eps, 1, g), g, b);
    CHECK(std::abs(c.norm() - 1.0) < 1e-12);
    const EffectiveState s = effective_eigenstate(eps, 0, g);
    const CVec z = effective_to_j1(s, g, b);
    // (j = 1/2, -) comes from k = 0 of the minus component, (j = -1/2, +) from k = 0 of plus
    const Eigen::Index k0 = g.index_of(0.0);
    CHECK(std::abs(z(b.index_of(0.5, -1)) / z(b.index_of(-0.5, +1)) - s.minus(k0) / s.plus(k0)) < 1e-12);
}
