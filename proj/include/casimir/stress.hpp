#pragma once

#include "casimir/dielectric.hpp"
#include "casimir/quadrature.hpp"

#include <optional>

namespace casimir {

/// Position inside the vacuum gap, in units of the gap width (a = 1).
class Geometry
{
public:
    explicit Geometry(double z);

    double z() const { return z_; }
    /// Distance to the nearer wall.
    double wall_distance() const;
    /// Mirror image z -> a - z.
    Geometry mirrored() const { return Geometry(1.0 - z_); }
    /// True within 1e-3 a of either wall, where convergence is slow.
    bool near_wall() const;

private:
    double z_;
};

class ThermalState
{
public:
    static ThermalState zero() { return ThermalState(); }
    /// beta = 1/(k_B T) in units of a. Throws unless beta > 0 and finite.
    static ThermalState finite(double beta);

    bool is_zero() const { return !beta_.has_value(); }
    double beta() const;

private:
    ThermalState() = default;
    std::optional<double> beta_;
};

/// Diagonal of the renormalized stress tensor in units of a^-4.
struct StressDiagonal
{
    QuadratureResult t00;
    QuadratureResult txx;
    QuadratureResult tyy;
    QuadratureResult tzz;
    bool near_wall = false;

    bool converged() const { return t00.converged && txx.converged && tyy.converged && tzz.converged; }
};

/// Analytic constants: perfect-conductor stress tensor and blackbody terms.
struct ReferenceLimits
{
    double u_pc;        ///< -pi^2/720
    double txx_pc;      ///< +pi^2/720
    double tzz_pc;      ///< -pi^2/240
    double nec_x_pc;    ///< 0
    double nec_z_pc;    ///< -pi^2/180

    /// pi^2 / (15 beta^4)
    static double blackbody(double beta);
    /// pi^2 / (45 beta^4), the blackbody pressure
    static double blackbody_pressure(double beta);
};

ReferenceLimits reference_limits();

/// Zero-temperature <E^2> and <B^2> (the latter with r_s and r_p swapped).
QuadratureResult mean_sq_E(const Geometry& geom, const PlasmaModel& model, const Tolerance& tol = {});
QuadratureResult mean_sq_B(const Geometry& geom, const PlasmaModel& model, const Tolerance& tol = {});

/// Casimir part of the energy density: everything except the blackbody
/// term. Identical to energy_density at zero temperature.
QuadratureResult casimir_energy_density(const Geometry& geom, const PlasmaModel& model, const ThermalState& thermal,
                                        const Tolerance& tol = {});

/// T_00 = U. At finite temperature the blackbody term pi^2/(15 beta^4) is
/// included.
QuadratureResult energy_density(const Geometry& geom, const PlasmaModel& model, const ThermalState& thermal,
                                const Tolerance& tol = {});

/// T_zz. Independent of z: the integrand has no position dependence.
QuadratureResult pressure_zz(const Geometry& geom, const PlasmaModel& model, const ThermalState& thermal,
                             const Tolerance& tol = {});

/// T_xx = T_yy.
QuadratureResult pressure_xx(const Geometry& geom, const PlasmaModel& model, const ThermalState& thermal,
                             const Tolerance& tol = {});

StressDiagonal stress_tensor(const Geometry& geom, const PlasmaModel& model, const ThermalState& thermal,
                             const Tolerance& tol = {});

/// T_00 + T_xx evaluated as one integral in polar spectral variables (zero
/// temperature), or as a Matsubara sum (finite temperature; the single
/// kappa-integral form is used at z = a/2).
QuadratureResult nec_transverse(const Geometry& geom, const PlasmaModel& model, const ThermalState& thermal,
                                const Tolerance& tol = {});

/// T_00 + T_zz. Zero temperature: one polar-variable integral. Finite
/// temperature: sum of the thermal energy density and pressure.
QuadratureResult nec_longitudinal(const Geometry& geom, const PlasmaModel& model, const ThermalState& thermal,
                                  const Tolerance& tol = {});

struct NearWallAsymptote
{
    double energy_density;  ///< sqrt(2) omega_p / (64 pi z^3)
    double pressure_xx;     ///< sqrt(2) omega_p / (128 pi z^3)
};

/// Leading z^-3 behaviour near the wall at z = 0; use a - z for the far wall.
NearWallAsymptote near_wall_asymptote(double z, const PlasmaModel& model);

struct CriticalPoint
{
    double omega_pa;
    RootBracket bracket;  ///< in omega_p a (not log) units
};

/// Smallest omega_p a in [1, 1e5] at which the midpoint energy density
/// turns negative, or std::nullopt if it stays positive over the range.
std::optional<CriticalPoint> critical_omega_pa(const ThermalState& thermal, const Tolerance& tol = {},
                                               double rel_width = 1e-6);

inline constexpr double kCriticalSearchLo = 1.0;
inline constexpr double kCriticalSearchHi = 1e5;

}  // namespace casimir
