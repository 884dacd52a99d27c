#include "casimir/dielectric.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace casimir {

PlasmaModel::PlasmaModel(double omega_p) : omega_p_(omega_p)
{
    if (!(omega_p >= 0.0)) {
        throw std::invalid_argument("plasma frequency must be >= 0, got " + std::to_string(omega_p));
    }
}

bool PlasmaModel::is_perfect_conductor() const
{
    return std::isinf(omega_p_);
}

SpectralPoint::SpectralPoint(double zeta, double k) : zeta_(zeta), k_(k), kappa_(std::hypot(zeta, k))
{
    if (!(zeta >= 0.0) || !(k >= 0.0) || std::isinf(zeta) || std::isinf(k)) {
        throw std::domain_error("spectral point needs finite zeta >= 0 and k >= 0");
    }
}

double SpectralPoint::kappa1(const PlasmaModel& model) const
{
    return std::hypot(kappa_, model.omega_p());
}

AngularSpectralPoint::AngularSpectralPoint(double u, double t) : u_(u), t_(t)
{
    if (!(u >= 0.0) || std::isinf(u) || !(t >= 0.0 && t <= 1.0)) {
        throw std::domain_error("angular spectral point needs finite u >= 0 and t in [0, 1]");
    }
}

SpectralPoint AngularSpectralPoint::to_spectral() const
{
    // 1 - t^2 factored to keep k accurate near t = 1
    return SpectralPoint(u_ * t_, u_ * std::sqrt((1.0 - t_) * (1.0 + t_)));
}

double eps_imag(double zeta, const PlasmaModel& model)
{
    if (!(zeta >= 0.0)) {
        throw std::domain_error("eps_imag: zeta must be >= 0");
    }
    if (model.is_vacuum()) {
        return 1.0;
    }
    if (zeta == 0.0) {
        throw std::domain_error("eps_imag: zeta = 0 is a pole of the plasma model");
    }
    const double ratio = model.omega_p() / zeta;
    return 1.0 + ratio * ratio;
}

namespace {

ReflectionDetail limiting_detail(const PlasmaModel& model)
{
    if (model.is_vacuum()) {
        return {{0.0, 0.0}, 1.0, 1.0};
    }
    return {{-1.0, 1.0}, 0.0, 0.0};
}

}  // namespace

ReflectionDetail reflection_detail(const SpectralPoint& point, const PlasmaModel& model)
{
    const double kappa = point.kappa();
    if (kappa == 0.0) {
        throw std::domain_error("reflection: zeta = k = 0 is undefined");
    }
    if (model.is_vacuum() || model.is_perfect_conductor()) {
        return limiting_detail(model);
    }

    const double wp = model.omega_p();
    const double wp2 = wp * wp;
    const double zeta2 = point.zeta() * point.zeta();
    const double kappa1 = point.kappa1(model);
    const double sum = kappa + kappa1;

    ReflectionDetail out;
    // (kappa - kappa1)/(kappa + kappa1) with kappa1^2 - kappa^2 = omega_p^2
    const double q = wp / sum;
    out.r.r_s = -q * q;
    out.gap_s = 2.0 * kappa / sum;

    if (zeta2 == 0.0) {
        out.r.r_p = 1.0;
        out.gap_p = 0.0;
        return out;
    }
    // (kappa eps - kappa1)/(kappa eps + kappa1), numerator and denominator
    // multiplied by zeta^2; the numerator reduces to a sum of positive terms.
    const double den = kappa * (zeta2 + wp2) + kappa1 * zeta2;
    const double k = point.k();
    out.r.r_p = wp2 * (k * k + kappa * kappa1) / (sum * den);
    out.gap_p = 2.0 * kappa1 * zeta2 / den;
    return out;
}

ReflectionCoefficients reflection(const SpectralPoint& point, const PlasmaModel& model)
{
    return reflection_detail(point, model).r;
}

ReflectionDetail reflection_ut_detail(const AngularSpectralPoint& point, const PlasmaModel& model)
{
    const double u = point.u();
    if (!(u > 0.0)) {
        throw std::domain_error("reflection_ut: u must be > 0");
    }
    if (model.is_vacuum() || model.is_perfect_conductor()) {
        return limiting_detail(model);
    }

    const double t = point.t();
    const double t2 = t * t;
    const double wp = model.omega_p();
    const double wp2 = wp * wp;
    const double root = std::hypot(u, wp);
    const double sum = u + root;

    ReflectionDetail out;
    const double q = wp / sum;
    out.r.r_s = -q * q;
    out.gap_s = 2.0 * u / sum;

    const double den = u * u * t2 + wp2 + u * t2 * root;
    out.r.r_p = wp2 * (u * (1.0 - t) * (1.0 + t) + root) / (sum * den);
    out.gap_p = 2.0 * u * t2 * root / den;
    return out;
}

ReflectionCoefficients reflection_ut(const AngularSpectralPoint& point, const PlasmaModel& model)
{
    return reflection_ut_detail(point, model).r;
}

double d_rp_dt(const AngularSpectralPoint& point, const PlasmaModel& model)
{
    if (model.is_vacuum() || model.is_perfect_conductor()) {
        return 0.0;
    }
    const double u = point.u();
    const double t = point.t();
    const double wp = model.omega_p();
    const double root = std::hypot(u, wp);
    const double den = u * t * t * (u + root) + wp * wp;
    return -4.0 * u * wp * wp * t * root / (den * den);
}

double rp_plus_rs(const AngularSpectralPoint& point, const PlasmaModel& model)
{
    if (model.is_vacuum() || model.is_perfect_conductor()) {
        return 0.0;
    }
    const double u = point.u();
    const double t2 = point.t() * point.t();
    const double wp2 = model.omega_p() * model.omega_p();
    const double root = std::hypot(u, model.omega_p());
    const double one_minus_t2 = (1.0 - point.t()) * (1.0 + point.t());
    const double den = root * (2.0 * t2 * u * u + wp2) + 2.0 * t2 * u * u * u + u * wp2 * (t2 + 1.0);
    return 2.0 * wp2 * one_minus_t2 * u / den;
}

}  // namespace casimir
