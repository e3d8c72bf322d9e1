// Acceptance run: one PASS/FAIL line per criterion.
//   acceptance [--slow] [--only N]
// Criterion 9 needs --slow (R = 100 disk).

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "mzm/continuum_radial.hpp"
#include "mzm/dynamics.hpp"
#include "mzm/edge_model.hpp"
#include "mzm/effective_model.hpp"
#include "mzm/lattice_model.hpp"
#include "mzm/params.hpp"

using namespace mzm;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    void need(bool ok, const std::string& msg) {
        if (!ok) pass = false;
        if (!detail.empty()) detail += "; ";
        detail += (ok ? "" : "!") + msg;
    }
};

void note(const std::string& s) { fmt::print("    {}\n", s); }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

Outcome c1_zero_mode_suppression() {
    Outcome o;
    for (double eps : {2.5, 3.0, 3.5, 4.0, 4.5, 5.0}) {
        const double E0 = std::abs(zero_mode(eps, 48.5).energy), bound = 0.528 * std::exp(-2.66 * eps);
        o.need(E0 <= bound, fmt::format("eps={} |E0|={:.3e} bound={:.3e}", eps, E0, bound));
    }
    return o;
}

Outcome c2_effective_spectrum() {
    Outcome o;
    const RVec E = edge_spectrum(5.0, 48.5);
    std::vector<double> pos;
    for (Eigen::Index i = 0; i < E.size(); ++i)
        if (E(i) > 1e-3) pos.push_back(E(i));
    std::sort(pos.begin(), pos.end());
    for (int n = 1; n <= 3; ++n) {
        const double want = effective_energy(5.0, n), got = pos[static_cast<size_t>(n - 1)];
        o.need(rel(got, want) < 0.05, fmt::format("n={} E={:.4f} eff={:.4f} rel={:.2f}%", n, got, want, 100 * rel(got, want)));
    }
    return o;
}

Outcome c3_zero_mode_profile() {
    Outcome o;
    const int N = 1024;
    const RVec th = periodic_grid(N);
    for (double eps : {5.0, 4.0, 3.0, 2.0}) {
        const MajoranaPair mp = majorana_pair(zero_mode(eps, 48.5), N);
        const double d = l2_distance(mp.phi, theta_function_profile(eps, th), 2 * kPi / N);
        const double tol = eps == 5.0 ? 1e-3 : 1e-2;
        o.need(d < tol, fmt::format("eps={} L2={:.4e} tol={:g}", eps, d, tol));
    }
    return o;
}

Outcome c4_limits() {
    Outcome o;
    const ZeroMode zm = zero_mode(5.0, 48.5);
    DriveSettings s;
    double worst = 0.0, at = 0.0;
    for (int k = 0; k <= 20; ++k) {
        s.alpha = 0.01 * k;
        const double d = std::abs(overlap_A0(s, zm).real() - 1.0);
        if (d > worst) worst = d, at = s.alpha;
    }
    o.need(worst <= 2e-2, fmt::format("sudden: max|Re A0 - 1| over alpha in [0, 0.2] = {:.3e} at alpha={:g}", worst, at));
    s.alpha = 30.0;
    const double d30 = std::abs(overlap_A0(s, zm).real() + 1.0);
    o.need(d30 <= 1e-3, fmt::format("adiabatic: |Re A0(30) + 1| = {:.3e}", d30));
    return o;
}

Outcome c5_floquet_transition() {
    Outcome o;
    DriveSettings s;
    double gmin = 1e9, amin = 0.0;
    bool pi_ok = true;
    std::string missing;
    for (int k = 0; k <= 50; ++k) {
        s.alpha = 0.2 + 0.02 * k;
        const FloquetResult f = floquet_spectrum(s);
        if (f.gap_at_zero < gmin) gmin = f.gap_at_zero, amin = s.alpha;
        if (s.alpha > 1.02 + 1e-9 && !f.has_pi_mode) {
            pi_ok = false;
            missing += fmt::format(" {:g}", s.alpha);
        }
    }
    o.need(std::abs(amin - 1.0) <= 0.02 + 1e-9, fmt::format("gap minimum at alpha={:g}", amin));
    o.need(gmin < 0.02, fmt::format("min gap={:.4e}", gmin));
    o.need(pi_ok, pi_ok ? "pi mode for every alpha > 1.02" : "pi mode missing at" + missing);
    return o;
}

Outcome c6_perturbative_fidelity() {
    Outcome o;
    const ZeroMode zm = zero_mode(5.0, 48.5);
    DriveSettings s;
    double worst = 0.0, at = 0.0;
    for (int k = 0; k <= 60; ++k) {
        s.alpha = 4.0 + 0.1 * k;
        const double d = std::abs(overlap_A0(s, zm).real() - perturbative_overlap(s.alpha, 5.0));
        if (d > worst) worst = d, at = s.alpha;
    }
    o.need(worst <= 5e-3, fmt::format("max deviation (step 0.1) {:.3e} at alpha={:g}", worst, at));

    // maxima of |Re A0| located on a fine grid, judged against the 0.1 sampling step
    const double h = 0.01, step = 0.1;
    std::vector<double> a, v;
    for (int k = 0; k <= 600; ++k) {
        s.alpha = 4.0 + h * k;
        a.push_back(s.alpha);
        v.push_back(std::abs(overlap_A0(s, zm).real()));
    }
    double fine_worst = 0.0;
    for (size_t k = 0; k < a.size(); ++k)
        fine_worst = std::max(fine_worst, std::abs(-v[k] - perturbative_overlap(a[k], 5.0)));
    note(fmt::format("fine grid (step 0.01) max deviation {:.3e}", fine_worst));
    int found = 0, off = 0;
    double worst_off = 0.0;
    for (size_t k = 1; k + 1 < a.size(); ++k) {
        if (!(v[k] > v[k - 1] && v[k] >= v[k + 1])) continue;
        ++found;
        const double nu = std::round(a[k] * std::sqrt(20.0));
        const double dist = std::abs(a[k] - nu / std::sqrt(20.0));
        worst_off = std::max(worst_off, dist);
        if (dist > step + 1e-12) ++off;
    }
    o.need(found > 0 && off == 0,
           fmt::format("{} local maxima of |Re A0|, {} farther than {:g} from nu/sqrt(20) (worst {:.4f})", found, off, step,
                       worst_off));
    return o;
}

Outcome c7_oracle_equivalence() {
    Outcome o;
    const ZeroMode zm = zero_mode(5.0, 48.5);
    for (auto [alpha, steps] : {std::pair{5.0, 40000L}, std::pair{0.5, 8000L}}) {
        DriveSettings s;
        s.alpha = alpha;
        const CVec exact = evolution_operator(s) * zm.coeffs;
        const PropagationResult r = propagate_rk4(s, zm.coeffs, steps);
        const double d = (r.psi - exact).norm();
        o.need(d < 1e-6, fmt::format("alpha={} steps={} |diff|={:.3e} drift={:.1e}", alpha, steps, d, r.norm_drift));
    }
    return o;
}

// Pairs every level E with a level at -E, skipping the outermost shell whose
// partner may lie outside the computed window.
double pm_symmetry(const RVec& values) {
    std::vector<double> E(values.data(), values.data() + values.size());
    std::sort(E.begin(), E.end());
    double cut = 0.0;
    for (double e : E) cut = std::max(cut, std::abs(e));
    double worst = 0.0;
    for (double e : E) {
        if (std::abs(e) > cut - 1e-6) continue;
        double best = 1e9;
        for (double f : E) best = std::min(best, std::abs(e + f));
        worst = std::max(worst, best);
    }
    return worst;
}

struct LatticeRun {
    EdgeCensus census;
    Eigenpairs full;
    double t_block = 0.0, t_full = 0.0;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

LatticeRun run_lattice(double R, int block_states, double E_Z, int full_states) {
    const LatticeDisk d(R);
    LatticeParams p = LatticeParams::from_fermi(0.5, 1.0, 1.0 / 16, R);
    LatticeRun run;
    auto t0 = std::chrono::steady_clock::now();
    const Eigenpairs ep = mid_spectrum_states(build_chiral_block(p, d, +1), block_states);
    run.t_block = seconds_since(t0);
    note(fmt::format("R={} H+ dim {} : {} states, krylov {}, max residual {:.1e}, {:.1f}s", R, 2 * d.size(),
                     block_states, ep.krylov_dim, ep.residuals.maxCoeff(), run.t_block));
    run.census = classify_edge_states(ep, d, p, +1);
    p.E_Z = E_Z;
    t0 = std::chrono::steady_clock::now();
    run.full = mid_spectrum_states(build_full_tsc(p, d), full_states);
    run.t_full = seconds_since(t0);
    note(fmt::format("R={} full TSC dim {} E_Z={:.5f}: krylov {}, max residual {:.1e}, {:.1f}s", R, 4 * d.size(), E_Z,
                     run.full.krylov_dim, run.full.residuals.maxCoeff(), run.t_full));
    return run;
}

Outcome c8_lattice_fast() {
    Outcome o;
    const double R = 60.0;
    const LatticeParams p = LatticeParams::from_fermi(0.5, 1.0, 1.0 / 16, R);
    const LatticeRun run = run_lattice(R, 70, LatticeParams::zeeman_from_eps(5.0, p.gamma, p.lambda), 24);
    const double sym = pm_symmetry(run.full.values);
    o.need(sym < 1e-9, fmt::format("full-TSC +/-E symmetry {:.2e}", sym));
    const EdgeCensus& c = run.census;
    o.need(rel(c.bulk_onset, c.predicted_onset) < 0.05,
           fmt::format("bulk onset {:.5f} vs {:.5f}", c.bulk_onset, c.predicted_onset));
    o.need(c.count > 0 && c.ambiguous == 0, fmt::format("{} edge states, {} ambiguous", c.count, c.ambiguous));
    o.need(c.gamma_c_min >= 0.005 && c.gamma_c_max <= 0.08,
           fmt::format("Gamma_c in [{:.2f}%, {:.2f}%]", 100 * c.gamma_c_min, 100 * c.gamma_c_max));
    return o;
}

Outcome c9_lattice_paper() {
    Outcome o;
    const LatticeRun run = run_lattice(100.0, 130, 1.0 / (10 * std::sqrt(2.0)), 12);
    const EdgeCensus& c = run.census;
    o.need(std::abs(c.bulk_onset - 0.34312) <= 0.002, fmt::format("bulk onset {:.5f}", c.bulk_onset));
    o.need(std::abs(c.count - 91) <= 2, fmt::format("edge count {}", c.count));
    o.need(c.j_min == -46.5 && c.j_max == 46.5, fmt::format("j range [{}, {}]", c.j_min, c.j_max));
    std::vector<double> E(run.full.values.data(), run.full.values.data() + run.full.values.size());
    for (double& e : E) e = std::abs(e);
    std::sort(E.begin(), E.end());
    o.need(E[0] < 1e-6 && E[1] < 1e-6, fmt::format("zero modes {:.2e}, {:.2e}", E[0], E[1]));
    // distinct |E| levels above the zero pair; each carries +/-E in both sectors
    std::vector<double> levels;
    for (size_t k = 2; k < E.size(); ++k)
        if (levels.empty() || E[k] - levels.back() > 1e-3 * E[k]) levels.push_back(E[k]);
    note(fmt::format("excited |E| levels: {:.5f}", fmt::join(levels, ", ")));
    o.need(levels.size() >= 2 && rel(levels[0], 0.0316) <= 0.10,
           fmt::format("first excited {:.4f} vs 0.0316", levels.empty() ? 0.0 : levels[0]));
    o.need(levels.size() >= 2 && rel(levels[1], 0.0447) <= 0.10,
           fmt::format("second excited {:.4f} vs 0.0447", levels.size() < 2 ? 0.0 : levels[1]));
    return o;
}

Outcome c10_radial() {
    Outcome o;
    const double g = 1.0 / 16, lam = 50.0;
    const RVec rho = radial_grid(2000);
    const RadialProfile asym = asymptotic_radial(g, lam, rho);
    double worst = 0.0, at = 0.0;
    for (int twice = -29; twice <= 17; twice += 2) {
        const double j = twice / 2.0;
        const double d = radial_deviation(exact_radial(j, g, lam, rho), asym);
        if (d > worst) worst = d, at = j;
    }
    o.need(worst < 0.05, fmt::format("max deviation {:.2f}% at j={}", 100 * worst, at));
    return o;
}

Outcome c11_params() {
    Outcome o;
    const DerivedParams d = derive_dimensionless(PhysicalParams{}, 5.0);
    auto chk = [&](const char* name, double got, double want) {
        o.need(rel(got, want) <= 0.01, fmt::format("{}={:.5g} (stated {:g})", name, got, want));
    };
    chk("lambda", d.lambda, 1e4);
    chk("gamma", d.gamma, 4.5e-6);
    chk("omega_c[1e6/s]", d.omega_c / 1e6, 91.2);
    chk("B0[mT]", d.B0_T * 1e3, 4.0);
    chk("window[1e6/s]", d.window / 1e6, 22.8);
    chk("spacing[1e6/s]", d.spacing_coeff / 1e6, 407.0);
    chk("nu_min", d.nu_min, 19);
    chk("width[1e6/s]", d.width_budget / 1e6, 0.315);
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    bool slow = false;
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--slow"))
            slow = true;
        else if (!std::strcmp(argv[i], "--only") && i + 1 < argc)
            only = std::atoi(argv[++i]);
        else {
            fmt::print(stderr, "usage: acceptance [--slow] [--only N]\n");
            return 2;
        }
    }
    struct Item {
        int id;
        const char* name;
        std::function<Outcome()> run;
        bool slow;
    };
    const std::vector<Item> items = {
        {1, "zero-mode suppression", c1_zero_mode_suppression, false},
        {2, "effective spectrum", c2_effective_spectrum, false},
        {3, "zero-mode profile", c3_zero_mode_profile, false},
        {4, "sudden/adiabatic limits", c4_limits, false},
        {5, "Floquet transition", c5_floquet_transition, false},
        {6, "perturbative fidelity", c6_perturbative_fidelity, false},
        {7, "closed form vs RK4", c7_oracle_equivalence, false},
        {8, "lattice census R=60", c8_lattice_fast, false},
        {9, "lattice numbers R=100", c9_lattice_paper, true},
        {10, "radial reduction", c10_radial, false},
        {11, "parameter table", c11_params, false},
    };
    int failed = 0, ran = 0;
    for (const auto& it : items) {
        if (only && it.id != only) continue;
        if (it.slow && !slow) {
            fmt::print("SKIP {:>2} {} (needs --slow)\n", it.id, it.name);
            continue;
        }
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = it.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        ++ran;
        if (!o.pass) ++failed;
        fmt::print("{} {:>2} {} [{:.1f}s]: {}\n", o.pass ? "PASS" : "FAIL", it.id, it.name, seconds_since(t0), o.detail);
        std::fflush(stdout);
    }
    fmt::print("{} of {} criteria passed\n", ran - failed, ran);
    return failed ? 1 : 0;
}
