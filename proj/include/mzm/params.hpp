#pragma once

namespace mzm {

// SI conversion constants
namespace units {
inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double electron_volt = 1.602176634e-19;  // J
inline constexpr double mu_e = 9.2847647043e-24;        // J / T, electron magnetic moment magnitude
inline constexpr double angstrom = 1e-10;               // m
inline constexpr double micrometre = 1e-6;              // m
inline constexpr double meV = 1e-3 * electron_volt;     // J
}  // namespace units

struct PhysicalParams {
    double gap_meV = 0.6;
    double kF_inv_angstrom = 0.1;
    double R_um = 10.0;
    double fermi_energy_meV = 200.0;
    double mu_e = units::mu_e;

    void check() const;
};

struct DerivedParams {
    double lambda = 0.0;
    double gamma = 0.0;
    double omega0_J = 0.0;   // Delta / lambda
    double omega0_eV = 0.0;
    double omega_c = 0.0;    // omega0 / hbar, rad/s
    double B0_T = 0.0;       // 4 omega0 / mu_e
    double B_target_T = 0.0;  // 2 eps omega0 / mu_e
    double window = 0.0;     // omega_c / 4
    int nu_bound = 0;        // ceil(4 sqrt(4 eps))
    int nu_min = 0;          // nu_bound + 1
    double spacing_coeff = 0.0;  // sqrt(4 eps) omega_c; spacing ~ coeff / nu^2
    double width_budget = 0.0;   // spacing at nu_bound divided by 4
    double eps_target = 0.0;
};

DerivedParams derive_dimensionless(const PhysicalParams& p, double eps_target);

// Inverse map from (lambda, gamma, omega0 in eV) at fixed radius.
PhysicalParams physical_from_dimensionless(double lambda, double gamma, double omega0_eV, double R_um,
                                           double mu_e = units::mu_e);

}  // namespace mzm
