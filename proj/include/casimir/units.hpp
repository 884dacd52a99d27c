#pragma once

#include "casimir/stress.hpp"

namespace casimir::units {

/// CODATA 2018 exact/recommended values, SI.
namespace codata {
inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double speed_of_light = 299792458.0;  // m / s
inline constexpr double boltzmann = 1.380649e-23;      // J / K
inline constexpr double hbar_c = hbar * speed_of_light;  // J m
}  // namespace codata

struct LabParameters
{
    double separation;        ///< gap width a, meters, > 0
    double temperature;       ///< Kelvin, >= 0
    double plasma_frequency;  ///< rad / s, >= 0

    void validate() const;
};

struct Dimensionless
{
    double omega_pa;
    ThermalState thermal;  ///< zero when the lab temperature is 0 K
};

/// hbar c / (k_B T) in meters. Throws std::domain_error for T = 0 (use
/// ThermalState::zero()) and std::invalid_argument for T < 0.
double beta_from_temperature(double kelvin);

/// Inverse of beta_from_temperature.
double temperature_from_beta(double beta_meters);

/// a^-4 (natural units, hbar = c = 1) to J/m^3.
double to_si_energy_density(double value, double separation);

Dimensionless nondimensionalize(const LabParameters& lab);

/// Inverse of nondimensionalize for a given separation.
LabParameters dimensionalize(const Dimensionless& values, double separation);

}  // namespace casimir::units
