#include "mzm/params.hpp"

#include <cmath>
#include <fmt/format.h>
#include <stdexcept>

#include "mzm/dynamics.hpp"

namespace mzm {

void PhysicalParams::check() const {
    if (!(gap_meV > 0) || !(kF_inv_angstrom > 0) || !(R_um > 0) || !(fermi_energy_meV > 0) || !(mu_e > 0))
        throw std::invalid_argument("physical parameters must be positive");
}

DerivedParams derive_dimensionless(const PhysicalParams& p, double eps_target) {
    p.check();
    if (!(eps_target > 2))
        throw std::invalid_argument(fmt::format("eps_target = {} but a zero mode needs eps > 2", eps_target));
    DerivedParams d;
    d.eps_target = eps_target;
    d.lambda = (p.kF_inv_angstrom / units::angstrom) * (p.R_um * units::micrometre);
    d.gamma = p.gap_meV * p.gap_meV / (2 * p.fermi_energy_meV * p.fermi_energy_meV);
    d.omega0_J = p.gap_meV * units::meV / d.lambda;
    d.omega0_eV = d.omega0_J / units::electron_volt;
    d.omega_c = d.omega0_J / units::hbar;
    d.B0_T = 4 * d.omega0_J / p.mu_e;
    d.B_target_T = 2 * eps_target * d.omega0_J / p.mu_e;
    d.window = d.omega_c / 4;
    const NuBound nb = minimal_nu(eps_target);
    d.nu_bound = nb.bound;
    d.nu_min = nb.nu_min;
    d.spacing_coeff = std::sqrt(4 * eps_target) * d.omega_c;
    d.width_budget = d.spacing_coeff / (static_cast<double>(d.nu_bound) * d.nu_bound) / 4;
    return d;
}

PhysicalParams physical_from_dimensionless(double lambda, double gamma, double omega0_eV, double R_um,
                                           double mu_e) {
    PhysicalParams p;
    p.R_um = R_um;
    p.mu_e = mu_e;
    p.kF_inv_angstrom = lambda / (R_um * units::micrometre) * units::angstrom;
    p.gap_meV = omega0_eV * lambda * 1e3;
    p.fermi_energy_meV = p.gap_meV / std::sqrt(2 * gamma);
    return p;
}

}  // namespace mzm
