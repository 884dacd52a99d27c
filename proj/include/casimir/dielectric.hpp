#pragma once

#include <limits>

namespace casimir {

/// Plasma-model dielectric response. All frequencies are in units of 1/a.
///
/// omega_p = 0 is vacuum (no reflection); omega_p = +inf is the perfect
/// conductor, for which r_s = -1 and r_p = +1 exactly.
class PlasmaModel
{
public:
    explicit PlasmaModel(double omega_p);

    static PlasmaModel vacuum() { return PlasmaModel(0.0); }
    static PlasmaModel perfect_conductor()
    {
        return PlasmaModel(std::numeric_limits<double>::infinity());
    }

    double omega_p() const { return omega_p_; }
    bool is_vacuum() const { return omega_p_ == 0.0; }
    bool is_perfect_conductor() const;

private:
    double omega_p_;
};

/// Point (zeta, k) on the imaginary-frequency / transverse-wavenumber plane.
class SpectralPoint
{
public:
    SpectralPoint(double zeta, double k);

    double zeta() const { return zeta_; }
    double k() const { return k_; }
    /// sqrt(k^2 + zeta^2)
    double kappa() const { return kappa_; }
    /// sqrt(k^2 + zeta^2 + omega_p^2)
    double kappa1(const PlasmaModel& model) const;

private:
    double zeta_;
    double k_;
    double kappa_;
};

/// Polar form of a spectral point: zeta = u t, k = u sqrt(1 - t^2).
class AngularSpectralPoint
{
public:
    AngularSpectralPoint(double u, double t);

    double u() const { return u_; }
    double t() const { return t_; }
    SpectralPoint to_spectral() const;

private:
    double u_;
    double t_;
};

struct ReflectionCoefficients
{
    double r_s = 0.0;  ///< S polarization, in [-1, 0]
    double r_p = 0.0;  ///< P polarization, in [0, 1]
};

/// ReflectionCoefficients plus 1 - |r| for each polarization, computed
/// without cancellation. Needed where |r| -> 1 (small kappa, large omega_p).
struct ReflectionDetail
{
    ReflectionCoefficients r;
    double gap_s = 1.0;  ///< 1 - |r_s|
    double gap_p = 1.0;  ///< 1 - r_p
};

/// epsilon(i zeta) = 1 + omega_p^2 / zeta^2. Throws std::domain_error for
/// zeta <= 0 with omega_p > 0 (the pole) and for negative zeta.
double eps_imag(double zeta, const PlasmaModel& model);

/// S/P reflection coefficients at a spectral point. At zeta = 0 the plasma
/// limits r_p = 1 and r_s = (k - sqrt(k^2 + omega_p^2))/(k + ...) apply.
/// Throws std::domain_error at zeta = k = 0.
ReflectionCoefficients reflection(const SpectralPoint& point, const PlasmaModel& model);
ReflectionDetail reflection_detail(const SpectralPoint& point, const PlasmaModel& model);

/// Same coefficients evaluated directly in polar variables.
ReflectionCoefficients reflection_ut(const AngularSpectralPoint& point, const PlasmaModel& model);
ReflectionDetail reflection_ut_detail(const AngularSpectralPoint& point, const PlasmaModel& model);

/// d r_p / dt at fixed u. Never positive.
double d_rp_dt(const AngularSpectralPoint& point, const PlasmaModel& model);

/// r_p + r_s = r_p - |r_s| >= 0 in closed form (no cancellation).
double rp_plus_rs(const AngularSpectralPoint& point, const PlasmaModel& model);

}  // namespace casimir
