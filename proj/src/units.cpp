#include "casimir/units.hpp"

#include <cmath>
#include <stdexcept>

namespace casimir::units {

void LabParameters::validate() const
{
    if (!(separation > 0.0) || !std::isfinite(separation)) {
        throw std::invalid_argument("separation must be finite and > 0");
    }
    if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
        throw std::invalid_argument("temperature must be finite and >= 0");
    }
    if (!(plasma_frequency >= 0.0)) {
        throw std::invalid_argument("plasma frequency must be >= 0");
    }
}

double beta_from_temperature(double kelvin)
{
    if (kelvin == 0.0) {
        throw std::domain_error("zero temperature has no finite beta; use ThermalState::zero()");
    }
    if (!(kelvin > 0.0)) {
        throw std::invalid_argument("temperature must be >= 0");
    }
    return codata::hbar_c / (codata::boltzmann * kelvin);
}

double temperature_from_beta(double beta_meters)
{
    if (!(beta_meters > 0.0)) {
        throw std::invalid_argument("beta must be > 0");
    }
    return codata::hbar_c / (codata::boltzmann * beta_meters);
}

double to_si_energy_density(double value, double separation)
{
    if (!(separation > 0.0)) {
        throw std::invalid_argument("separation must be > 0");
    }
    const double a2 = separation * separation;
    return value * codata::hbar_c / (a2 * a2);
}

Dimensionless nondimensionalize(const LabParameters& lab)
{
    lab.validate();
    const double omega_pa = lab.plasma_frequency * lab.separation / codata::speed_of_light;
    if (lab.temperature == 0.0) {
        return {omega_pa, ThermalState::zero()};
    }
    return {omega_pa, ThermalState::finite(beta_from_temperature(lab.temperature) / lab.separation)};
}

LabParameters dimensionalize(const Dimensionless& values, double separation)
{
    LabParameters lab{separation, 0.0, values.omega_pa * codata::speed_of_light / separation};
    if (!values.thermal.is_zero()) {
        lab.temperature = temperature_from_beta(values.thermal.beta() * separation);
    }
    lab.validate();
    return lab;
}

}  // namespace casimir::units
