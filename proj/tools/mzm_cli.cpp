#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "mzm/continuum_radial.hpp"
#include "mzm/dynamics.hpp"
#include "mzm/edge_model.hpp"
#include "mzm/lattice_model.hpp"
#include "mzm/params.hpp"
#include "sweep.hpp"

#ifndef MZM_VERSION
#define MZM_VERSION "dev"
#endif

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace mzm;
using mzm::cli::fmt_num;

namespace {

constexpr int kSchemaVersion = 1;

struct Common {
    std::string out = "out";
    int workers = 0;
};

class Run {
public:
    Run(std::string name, const Common& c) : name_(std::move(name)), common_(c), t0_(clock::now()) {
        fs::create_directories(c.out);
    }

    std::ofstream open_csv(const std::string& file, const std::vector<std::string>& header) {
        const fs::path p = fs::path(common_.out) / file;
        std::ofstream f(p);
        if (!f) throw std::runtime_error("cannot write " + p.string());
        for (size_t i = 0; i < header.size(); ++i) f << (i ? "," : "") << header[i];
        f << "\n";
        outputs_.push_back(p.string());
        return f;
    }

    void mark(const std::string& phase) {
        timings_[phase] = std::chrono::duration<double>(clock::now() - t0_).count();
    }

    json& inputs() { return inputs_; }
    json& results() { return results_; }

    void finish() {
        mark("total");
        json m;
        m["schema_version"] = kSchemaVersion;
        m["command"] = name_;
        m["code_version"] = MZM_VERSION;
        m["inputs"] = inputs_;
        m["workers"] = workers();
        m["outputs"] = outputs_;
        m["results"] = results_;
        m["timings_s"] = timings_;
        std::ofstream f(fs::path(common_.out) / (name_ + "_manifest.json"));
        f << m.dump(2) << "\n";
    }

    void fail(const std::string& msg) {
        json d;
        d["schema_version"] = kSchemaVersion;
        d["command"] = name_;
        d["code_version"] = MZM_VERSION;
        d["inputs"] = inputs_;
        d["error"] = msg;
        std::ofstream f(fs::path(common_.out) / (name_ + "_error.json"));
        f << d.dump(2) << "\n";
    }

    int workers() const { return common_.workers > 0 ? common_.workers : cli::worker_count(); }

private:
    using clock = std::chrono::steady_clock;
    std::string name_;
    Common common_;
    clock::time_point t0_;
    json inputs_ = json::object(), results_ = json::object(), timings_ = json::object();
    std::vector<std::string> outputs_;
};

void cmd_spectrum(Run& run, const std::vector<double>& eps, double jmax, int levels) {
    std::vector<RVec> rows(eps.size());
    cli::parallel_for(static_cast<int>(eps.size()), run.workers(), [&](int i) {
        RVec E = edge_spectrum(eps[static_cast<size_t>(i)], jmax);
        std::vector<double> v(E.data(), E.data() + E.size());
        std::stable_sort(v.begin(), v.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
        v.resize(static_cast<size_t>(std::min<Eigen::Index>(levels, E.size())));
        std::sort(v.begin(), v.end());
        rows[static_cast<size_t>(i)] = Eigen::Map<RVec>(v.data(), static_cast<Eigen::Index>(v.size()));
    });
    run.mark("compute");
    std::vector<std::string> header{"eps"};
    for (int k = 0; k < levels; ++k) header.push_back("level_" + std::to_string(k));
    auto f = run.open_csv("spectrum.csv", header);
    for (size_t i = 0; i < eps.size(); ++i) {
        f << fmt_num(eps[i]);
        for (Eigen::Index k = 0; k < rows[i].size(); ++k) f << "," << fmt_num(rows[i](k));
        f << "\n";
    }
}

void cmd_zeromode(Run& run, double eps, double jmax, int grid) {
    const ZeroMode zm = zero_mode(eps, jmax, grid);
    const MajoranaPair mp = majorana_pair(zm, grid);
    const RVec th = periodic_grid(grid);
    const RVec tf = theta_function_profile(eps, th);
    const double h = 2 * kPi / grid;
    run.mark("compute");
    auto f = run.open_csv("zeromode.csv", {"theta", "phi_diag", "phi_theta", "phi_gauss"});
    for (int n = 0; n < grid; ++n) {
        const double t = th(n) > kPi ? th(n) - 2 * kPi : th(n);
        f << fmt_num(th(n)) << "," << fmt_num(mp.phi(n)) << "," << fmt_num(tf(n)) << ","
          << fmt_num(gaussian_mode(eps, t)) << "\n";
    }
    run.results()["energy"] = zm.energy;
    run.results()["isolated"] = zm.isolated;
    run.results()["symmetry_residual"] = zm.symmetry_residual;
    run.results()["l2_theta_function"] = l2_distance(mp.phi, tf, h);
    if (!zm.isolated) run.results()["status"] = "no isolated zero mode";
}

void cmd_evolve(Run& run, double eps, double jmax, const std::vector<double>& alphas) {
    const ZeroMode zm = zero_mode(eps, jmax);
    std::vector<cplx> A(alphas.size());
    cli::parallel_for(static_cast<int>(alphas.size()), run.workers(), [&](int i) {
        DriveSettings s{alphas[static_cast<size_t>(i)], eps, jmax, 2 * kPi};
        A[static_cast<size_t>(i)] = overlap_A0(s, zm);
    });
    run.mark("compute");
    auto f = run.open_csv("evolve.csv", {"alpha", "re_A0", "im_A0"});
    for (size_t i = 0; i < alphas.size(); ++i)
        f << fmt_num(alphas[i]) << "," << fmt_num(A[i].real()) << "," << fmt_num(A[i].imag()) << "\n";
}

void cmd_floquet(Run& run, double eps, double jmax, const std::vector<double>& alphas) {
    std::vector<FloquetResult> res(alphas.size());
    cli::parallel_for(static_cast<int>(alphas.size()), run.workers(), [&](int i) {
        res[static_cast<size_t>(i)] = floquet_spectrum({alphas[static_cast<size_t>(i)], eps, jmax, 2 * kPi});
    });
    run.mark("compute");
    auto f = run.open_csv("floquet.csv", {"alpha", "gap_at_zero", "folded_gap", "has_pi_mode"});
    auto g = run.open_csv("floquet_levels.csv", {"alpha", "index", "quasi_energy", "unfolded"});
    double best = 1e300, best_alpha = 0;
    for (size_t i = 0; i < alphas.size(); ++i) {
        const auto& r = res[i];
        f << fmt_num(alphas[i]) << "," << fmt_num(r.gap_at_zero) << "," << fmt_num(r.folded_gap) << ","
          << (r.has_pi_mode ? 1 : 0) << "\n";
        for (Eigen::Index k = 0; k < r.quasi_energies.size(); ++k)
            g << fmt_num(alphas[i]) << "," << k << "," << fmt_num(r.quasi_energies(k)) << ","
              << fmt_num(r.unfolded(k)) << "\n";
        if (r.gap_at_zero < best) best = r.gap_at_zero, best_alpha = alphas[i];
    }
    run.results()["min_gap"] = best;
    run.results()["min_gap_alpha"] = best_alpha;
}

void cmd_fidelity(Run& run, double eps, double jmax, const std::vector<double>& alphas) {
    const ZeroMode zm = zero_mode(eps, jmax);
    std::vector<double> re(alphas.size());
    cli::parallel_for(static_cast<int>(alphas.size()), run.workers(), [&](int i) {
        re[static_cast<size_t>(i)] = overlap_A0({alphas[static_cast<size_t>(i)], eps, jmax, 2 * kPi}, zm).real();
    });
    run.mark("compute");
    auto f = run.open_csv("fidelity.csv", {"alpha", "re_A0", "re_A0_perturbative", "deviation"});
    double worst = 0;
    for (size_t i = 0; i < alphas.size(); ++i) {
        const double p = alphas[i] > 0 ? perturbative_overlap(alphas[i], eps) : 1.0;
        f << fmt_num(alphas[i]) << "," << fmt_num(re[i]) << "," << fmt_num(p) << "," << fmt_num(re[i] - p) << "\n";
        worst = std::max(worst, std::abs(re[i] - p));
    }
    run.results()["max_abs_deviation"] = worst;
}

struct LatticeArgs {
    double R = 60;
    double kF = 0.5;
    double gamma = 1.0 / 16;
    int count = 80;
    std::string mode = "chiral";
    double eps = 5;
    double phi = 0;
    int chirality = 1;
};

void cmd_lattice(Run& run, const LatticeArgs& a) {
    const LatticeDisk disk(a.R);
    LatticeParams p = LatticeParams::from_fermi(a.kF, 1.0, a.gamma, a.R);
    const bool full = a.mode == "full";
    if (!full && a.mode != "chiral") throw CLI::ValidationError("--mode", "must be chiral or full");
    if (full) {
        p.E_Z = LatticeParams::zeeman_from_eps(a.eps, a.gamma, p.lambda);
        p.phi = a.phi;
    }
    const SparseHermitian H = full ? build_full_tsc(p, disk) : build_chiral_block(p, disk, a.chirality);
    run.mark("build");
    const Eigenpairs ep = mid_spectrum_states(H, a.count);
    run.mark("eigensolve");
    run.results()["dim"] = H.rows();
    run.results()["sites"] = disk.size();
    run.results()["converged"] = ep.converged;
    run.results()["max_residual"] = ep.residuals.maxCoeff();
    run.results()["krylov_dim"] = ep.krylov_dim;
    {
        auto f = run.open_csv("lattice_spectrum.csv", {"index", "energy", "residual"});
        for (Eigen::Index k = 0; k < ep.values.size(); ++k)
            f << k << "," << fmt_num(ep.values(k)) << "," << fmt_num(ep.residuals(k)) << "\n";
    }
    if (!full) {
        const EdgeCensus c = classify_edge_states(ep, disk, p, a.chirality);
        auto f = run.open_csv("census.csv", {"energy", "j_raw", "j", "gamma_c", "rim_weight", "ambiguous"});
        for (const auto& e : c.edges)
            f << fmt_num(e.energy) << "," << fmt_num(e.j_raw) << "," << fmt_num(e.j) << "," << fmt_num(e.gamma_c)
              << "," << fmt_num(e.rim_weight) << "," << (e.ambiguous ? 1 : 0) << "\n";
        run.results()["bulk_onset"] = c.bulk_onset;
        run.results()["predicted_onset"] = c.predicted_onset;
        run.results()["edge_count"] = c.count;
        run.results()["j_range"] = {c.j_min, c.j_max};
        run.results()["gamma_c_range"] = {c.gamma_c_min, c.gamma_c_max};
        run.results()["ambiguous"] = c.ambiguous;
        run.results()["continuum_j_max"] = std::floor(p.lambda * std::sqrt(1 - p.gamma / 2) - 0.5) + 0.5;
    } else {
        const auto [m1, m2] = majorana_densities(ep.vectors.col(0), ep.vectors.col(1), disk);
        auto f = run.open_csv("majorana_density.csv", {"m", "n", "rho_1", "rho_2"});
        for (int i = 0; i < disk.size(); ++i) {
            const auto [m, n] = disk.sites()[static_cast<size_t>(i)];
            f << m << "," << n << "," << fmt_num(m1.density(i)) << "," << fmt_num(m2.density(i)) << "\n";
        }
        run.results()["zero_mode_energies"] = {ep.values(0), ep.values(1)};
        run.results()["majorana_peak_angles"] = {m1.peak_angle, m2.peak_angle};
        run.results()["majorana_rim_weights"] = {m1.rim_weight, m2.rim_weight};
    }
    run.inputs()["lattice"] = {{"u", p.u}, {"Delta", p.Delta}, {"eps_onsite", p.eps_onsite},
                               {"lambda", p.lambda}, {"E_Z", p.E_Z}, {"phi", p.phi}};
    if (!ep.converged) throw NumericsError("eigensolver did not reach the residual target");
}

void cmd_radial(Run& run, double gamma, double lambda, const std::vector<double>& js, int npts) {
    const RVec rho = radial_grid(npts);
    const RadialProfile asym = asymptotic_radial(gamma, lambda, rho);
    std::vector<ExactRadial> ex(js.size());
    cli::parallel_for(static_cast<int>(js.size()), run.workers(),
                      [&](int i) { ex[static_cast<size_t>(i)] = exact_radial(js[static_cast<size_t>(i)], gamma, lambda, rho); });
    run.mark("compute");
    std::vector<std::string> header{"rho", "asymptotic"};
    for (double j : js) header.push_back("j=" + fmt_num(j));
    auto f = run.open_csv("radial.csv", header);
    const double k = 1.0 / std::sqrt(4 * kPi);
    for (Eigen::Index i = 0; i < rho.size(); ++i) {
        f << fmt_num(rho(i)) << "," << fmt_num(k * asym.f(i));
        for (const auto& e : ex) f << "," << fmt_num(e.norm * e.f(i));
        f << "\n";
    }
    json dev = json::object();
    for (const auto& e : ex) dev[fmt_num(e.j)] = radial_deviation(e, asym);
    run.results()["deviation_rho_0.9_1"] = dev;
    run.results()["xi"] = asym.xi;
}

void cmd_params(Run& run, const PhysicalParams& p, double eps) {
    const DerivedParams d = derive_dimensionless(p, eps);
    auto f = run.open_csv("params.csv", {"quantity", "value", "unit"});
    auto row = [&](const char* q, double v, const char* u) {
        f << q << "," << fmt_num(v) << "," << u << "\n";
        run.results()[q] = v;
    };
    row("lambda", d.lambda, "1");
    row("gamma", d.gamma, "1");
    row("omega0", d.omega0_eV, "eV");
    row("omega_c", d.omega_c * 1e-6, "1e6 rad/s");
    row("B0", d.B0_T * 1e3, "mT");
    row("B_target", d.B_target_T * 1e3, "mT");
    row("window", d.window * 1e-6, "1e6 rad/s");
    row("nu_bound", d.nu_bound, "1");
    row("nu_min", d.nu_min, "1");
    row("spacing_coeff", d.spacing_coeff * 1e-6, "1e6 rad/s");
    row("width_budget", d.width_budget * 1e-6, "1e6 rad/s");
    std::cout << fmt::format("lambda        {:.6g}\ngamma         {:.6g}\nomega_c       {:.6g} 1e6 rad/s\n"
                             "B0            {:.6g} mT\nB(eps={})     {:.6g} mT\nwindow        {:.6g} 1e6 rad/s\n"
                             "nu_min        {}\nspacing       {:.6g}/nu^2 1e6 rad/s\nwidth budget  {:.6g} 1e6 rad/s\n",
                             d.lambda, d.gamma, d.omega_c * 1e-6, d.B0_T * 1e3, eps, d.B_target_T * 1e3,
                             d.window * 1e-6, d.nu_min, d.spacing_coeff * 1e-6, d.width_budget * 1e-6);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Majorana edge-mode simulation toolkit"};
    app.set_config("--config", "", "key = value configuration file");
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_option("--out", common.out, "output directory")->capture_default_str();
    app.add_option("--workers", common.workers, "worker threads (default: MZM_WORKERS or hardware)");

    std::string eps_s = "0:6:0.05", alpha_s = "0:12:0.02", j_s = "-15.5:9.5:1";
    double eps = 5, jmax = 48.5;
    int levels = 7, grid = 1024;

    auto* sp = app.add_subcommand("spectrum", "lowest-|E| levels of the J1 edge Hamiltonian vs eps");
    sp->add_option("--eps", eps_s, "eps range start:stop:step")->capture_default_str();
    sp->add_option("--jmax", jmax)->capture_default_str();
    sp->add_option("--levels", levels)->capture_default_str()->check(CLI::PositiveNumber);

    auto* zm = app.add_subcommand("zeromode", "zero-mode profile: diagonalized, theta-function and Gaussian");
    zm->add_option("--eps", eps)->capture_default_str();
    zm->add_option("--jmax", jmax)->capture_default_str();
    zm->add_option("--grid", grid)->capture_default_str()->check(CLI::PositiveNumber);

    auto* ev = app.add_subcommand("evolve", "overlap A0 after one field rotation vs alpha");
    ev->add_option("--eps", eps)->capture_default_str();
    ev->add_option("--jmax", jmax)->capture_default_str();
    ev->add_option("--alpha", alpha_s, "alpha range start:stop:step")->capture_default_str();

    auto* fl = app.add_subcommand("floquet", "quasi-energy spectrum vs alpha");
    fl->add_option("--eps", eps)->capture_default_str();
    fl->add_option("--jmax", jmax)->capture_default_str();
    fl->add_option("--alpha", alpha_s)->capture_default_str();

    auto* fi = app.add_subcommand("fidelity", "exact vs perturbative overlap");
    fi->add_option("--eps", eps)->capture_default_str();
    fi->add_option("--jmax", jmax)->capture_default_str();
    fi->add_option("--alpha", alpha_s)->capture_default_str();

    LatticeArgs la;
    auto* lt = app.add_subcommand("lattice", "square-lattice disk: mid-spectrum states, edge census, densities");
    lt->add_option("--R", la.R, "disk radius in lattice units")->capture_default_str();
    lt->add_option("--kF", la.kF)->capture_default_str();
    lt->add_option("--gamma", la.gamma)->capture_default_str();
    lt->add_option("--count", la.count, "states nearest zero")->capture_default_str()->check(CLI::PositiveNumber);
    lt->add_option("--mode", la.mode, "chiral or full")->capture_default_str()->check(CLI::IsMember({"chiral", "full"}));
    lt->add_option("--eps", la.eps, "Zeeman parameter for --mode full")->capture_default_str();
    lt->add_option("--phi", la.phi, "field angle for --mode full")->capture_default_str();
    lt->add_option("--chirality", la.chirality)->capture_default_str()->check(CLI::IsMember({-1, 1}));

    double gamma = 1.0 / 16, lambda = 50;
    int npts = 2000;
    auto* ra = app.add_subcommand("radial", "exact Bessel radial profiles vs the asymptotic profile");
    ra->add_option("--gamma", gamma)->capture_default_str();
    ra->add_option("--lambda", lambda)->capture_default_str();
    ra->add_option("--j", j_s, "j values, range or list")->capture_default_str();
    ra->add_option("--points", npts)->capture_default_str();

    PhysicalParams pp;
    double eps_target = 5;
    auto* pa = app.add_subcommand("params", "physical parameter table");
    pa->add_option("--gap-meV", pp.gap_meV)->capture_default_str();
    pa->add_option("--kF", pp.kF_inv_angstrom, "Fermi momentum in 1/Angstrom")->capture_default_str();
    pa->add_option("--R-um", pp.R_um)->capture_default_str();
    pa->add_option("--fermi-meV", pp.fermi_energy_meV)->capture_default_str();
    pa->add_option("--eps", eps_target)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        // help and version requests are not errors
        return code == 0 ? 0 : 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    Run run(sub->get_name(), common);
    for (const auto* opt : sub->get_options()) {
        if (opt->get_name() == "--help" || opt->get_name() == "-h") continue;
        const auto res = opt->results();
        run.inputs()[opt->get_name()] = res.empty() ? opt->get_default_str() : res.front();
    }
    try {
        if (sub == sp) {
            cmd_spectrum(run, cli::parse_range(eps_s), jmax, levels);
        } else if (sub == zm) {
            cmd_zeromode(run, eps, jmax, grid);
        } else if (sub == ev) {
            cmd_evolve(run, eps, jmax, cli::parse_range(alpha_s));
        } else if (sub == fl) {
            cmd_floquet(run, eps, jmax, cli::parse_range(alpha_s));
        } else if (sub == fi) {
            cmd_fidelity(run, eps, jmax, cli::parse_range(alpha_s));
        } else if (sub == lt) {
            cmd_lattice(run, la);
        } else if (sub == ra) {
            cmd_radial(run, gamma, lambda, cli::parse_range(j_s), npts);
        } else if (sub == pa) {
            cmd_params(run, pp, eps_target);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n\n" << sub->help();
        return 2;
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n\n" << sub->help();
        return 2;
    } catch (const std::exception& e) {
        run.fail(e.what());
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    run.finish();
    return 0;
}
