#include "casimir/stress.hpp"

#include "spectral_kernel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace casimir {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;
constexpr double kNearWall = 1e-3;

}  // namespace

Geometry::Geometry(double z) : z_(z)
{
    if (!(z > 0.0 && z < 1.0)) {
        std::ostringstream os;
        os << "position must satisfy 0 < z/a < 1, got " << z;
        throw std::invalid_argument(os.str());
    }
}

double Geometry::wall_distance() const
{
    return std::min(z_, 1.0 - z_);
}

bool Geometry::near_wall() const
{
    return wall_distance() < kNearWall;
}

ThermalState ThermalState::finite(double beta)
{
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw std::invalid_argument("inverse temperature beta must be finite and > 0");
    }
    ThermalState s;
    s.beta_ = beta;
    return s;
}

double ThermalState::beta() const
{
    if (!beta_) {
        throw std::logic_error("zero-temperature state has no finite beta");
    }
    return *beta_;
}

double ReferenceLimits::blackbody(double beta)
{
    const double b2 = beta * beta;
    return kPi2 / (15.0 * b2 * b2);
}

double ReferenceLimits::blackbody_pressure(double beta)
{
    const double b2 = beta * beta;
    return kPi2 / (45.0 * b2 * b2);
}

ReferenceLimits reference_limits()
{
    return {-kPi2 / 720.0, kPi2 / 720.0, -kPi2 / 240.0, 0.0, -kPi2 / 180.0};
}

namespace {

// Integrands in (zeta, k). Each returns the bare integrand; the caller
// applies the prefactor.
enum class Field { energy, e_squared, b_squared, pressure_x, pressure_z, nec_x };

double prefactor(Field f)
{
    switch (f) {
    case Field::pressure_x:
        return -1.0 / (4.0 * kPi2);
    case Field::nec_x:
        return 1.0 / (4.0 * kPi2);
    default:
        return 1.0 / (2.0 * kPi2);
    }
}

bool depends_on_position(Field f)
{
    return f != Field::pressure_z;
}

double zeta_k_integrand(Field field, double zeta, double k, double wall, const PlasmaModel& model)
{
    const SpectralPoint point(zeta, k);
    const double kappa = point.kappa();
    if (detail::negligible(kappa, wall)) {
        return 0.0;
    }
    const detail::Channels c = detail::channels(reflection_detail(point, model), kappa);
    const double zeta2 = zeta * zeta;
    const double k2 = k * k;
    const double weight = k / kappa;

    switch (field) {
    case Field::pressure_z:
        return k * kappa * c.bulk();
    case Field::energy:
        return weight * (zeta2 * c.bulk() + k2 * c.local() * detail::profile(kappa, wall));
    case Field::e_squared:
        return weight * (zeta2 * c.bulk() +
                         (-zeta2 * c.local_s + (2.0 * k2 + zeta2) * c.local_p) * detail::profile(kappa, wall));
    case Field::b_squared:
        return weight * (zeta2 * c.bulk() +
                         (-zeta2 * c.local_p + (2.0 * k2 + zeta2) * c.local_s) * detail::profile(kappa, wall));
    case Field::pressure_x:
        return weight * k2 * (c.bulk() - c.local() * detail::profile(kappa, wall));
    case Field::nec_x:
        return weight * ((2.0 * zeta2 - k2) * c.bulk() + 3.0 * k2 * c.local() * detail::profile(kappa, wall));
    }
    return 0.0;
}

double decay_scale(Field field, const Geometry& geom)
{
    // e^{-2 kappa d} falls by 1/e at kappa = 1/(2 d)
    return depends_on_position(field) ? 0.5 / geom.wall_distance() : 0.5;
}

QuadratureResult zero_temperature(Field field, const Geometry& geom, const PlasmaModel& model,
                                  const Tolerance& tol)
{
    const double wall = depends_on_position(field) ? geom.wall_distance() : 0.5;
    const double scale = decay_scale(field, geom);
    const double pref = prefactor(field);
    Integrand2d f = [&](double zeta, double k) { return zeta_k_integrand(field, zeta, k, wall, model); };
    // abs_tol is in output units; the bare integral is 1/pref larger
    Tolerance t = tol;
    t.abs_tol = tol.abs_tol / std::abs(pref);
    return scaled(integrate_2d(f, Domain::semi_infinite(scale), Domain::semi_infinite(scale), t), pref);
}

// (1/beta) sum' g(zeta_n), g(zeta) = 2 pi * pref * int dk f(zeta, k)
QuadratureResult matsubara(Field field, const Geometry& geom, const PlasmaModel& model, double beta,
                           const Tolerance& tol)
{
    const double wall = depends_on_position(field) ? geom.wall_distance() : 0.5;
    const double scale = decay_scale(field, geom);
    const double weight = 2.0 * kPi * prefactor(field);
    Tolerance inner = tol.tightened(10.0);
    inner.abs_tol = inner.abs_tol * beta / std::abs(weight);
    NestedIntegrand term = [&](double zeta) {
        Integrand row = [&](double k) { return zeta_k_integrand(field, zeta, k, wall, model); };
        return scaled(integrate_semiinf(row, scale, inner), weight);
    };
    return matsubara_sum(term, beta, tol);
}

QuadratureResult evaluate(Field field, const Geometry& geom, const PlasmaModel& model, const ThermalState& thermal,
                          const Tolerance& tol)
{
    if (thermal.is_zero()) {
        return zero_temperature(field, geom, model, tol);
    }
    return matsubara(field, geom, model, thermal.beta(), tol);
}

}  // namespace

QuadratureResult mean_sq_E(const Geometry& geom, const PlasmaModel& model, const Tolerance& tol)
{
    return zero_temperature(Field::e_squared, geom, model, tol);
}

QuadratureResult mean_sq_B(const Geometry& geom, const PlasmaModel& model, const Tolerance& tol)
{
    return zero_temperature(Field::b_squared, geom, model, tol);
}

QuadratureResult casimir_energy_density(const Geometry& geom, const PlasmaModel& model, const ThermalState& thermal,
                                        const Tolerance& tol)
{
    return evaluate(Field::energy, geom, model, thermal, tol);
}

QuadratureResult energy_density(const Geometry& geom, const PlasmaModel& model, const ThermalState& thermal,
                                const Tolerance& tol)
{
    QuadratureResult u = casimir_energy_density(geom, model, thermal, tol);
    if (!thermal.is_zero()) {
        u = shifted(u, ReferenceLimits::blackbody(thermal.beta()));
    }
    return u;
}

QuadratureResult pressure_zz(const Geometry& geom, const PlasmaModel& model, const ThermalState& thermal,
                             const Tolerance& tol)
{
    QuadratureResult p = evaluate(Field::pressure_z, geom, model, thermal, tol);
    if (!thermal.is_zero()) {
        p = shifted(p, ReferenceLimits::blackbody_pressure(thermal.beta()));
    }
    return p;
}

QuadratureResult pressure_xx(const Geometry& geom, const PlasmaModel& model, const ThermalState& thermal,
                             const Tolerance& tol)
{
    QuadratureResult p = evaluate(Field::pressure_x, geom, model, thermal, tol);
    if (!thermal.is_zero()) {
        p = shifted(p, ReferenceLimits::blackbody_pressure(thermal.beta()));
    }
    return p;
}

StressDiagonal stress_tensor(const Geometry& geom, const PlasmaModel& model, const ThermalState& thermal,
                             const Tolerance& tol)
{
    StressDiagonal s;
    s.t00 = energy_density(geom, model, thermal, tol);
    s.txx = pressure_xx(geom, model, thermal, tol);
    s.tyy = s.txx;
    s.tzz = pressure_zz(geom, model, thermal, tol);
    s.near_wall = geom.near_wall();
    return s;
}

namespace {

enum class NullDirection { transverse, longitudinal };

// Integrand of T00 + T_kk in polar variables zeta = u t, k = u sqrt(1 - t^2).
double polar_integrand(NullDirection dir, double u, double t, double wall, const PlasmaModel& model)
{
    if (detail::negligible(u, wall)) {
        return 0.0;
    }
    const detail::Channels c = detail::channels(reflection_ut_detail(AngularSpectralPoint(u, t), model), u);
    const double t2 = t * t;
    const double one_minus_t2 = (1.0 - t) * (1.0 + t);
    const double u3 = u * u * u;
    const double local = c.local() * detail::profile(u, wall);
    if (dir == NullDirection::transverse) {
        return u3 * ((3.0 * t2 - 1.0) * c.bulk() + 3.0 * one_minus_t2 * local);
    }
    return u3 * ((1.0 + t2) * c.bulk() + one_minus_t2 * local);
}

QuadratureResult polar_zero_temperature(NullDirection dir, const Geometry& geom, const PlasmaModel& model,
                                        const Tolerance& tol)
{
    const double wall = geom.wall_distance();
    const double pref = dir == NullDirection::transverse ? 1.0 / (4.0 * kPi2) : 1.0 / (2.0 * kPi2);
    Tolerance t = tol;
    t.abs_tol = tol.abs_tol / pref;
    Integrand2d f = [&](double u, double tt) { return polar_integrand(dir, u, tt, wall, model); };
    return scaled(integrate_2d(f, Domain::semi_infinite(0.5 / wall), Domain::unit(), t), pref);
}

// Midpoint form: k -> kappa, integral over kappa in [zeta_n, inf).
double midpoint_nec_integrand(double zeta, double x, const PlasmaModel& model)
{
    const double kappa = zeta + x;
    if (detail::negligible(kappa, 0.5)) {
        return 0.0;
    }
    const double k = std::sqrt(x * (x + 2.0 * zeta));
    const SpectralPoint point(zeta, k);
    const detail::Channels c = detail::channels(reflection_detail(point, model), kappa);
    const double zeta2 = zeta * zeta;
    const double kappa2 = kappa * kappa;
    return (3.0 * zeta2 - kappa2) * c.bulk() + 3.0 * (kappa2 - zeta2) * c.local() * std::exp(-kappa);
}

QuadratureResult midpoint_nec_sum(const PlasmaModel& model, double beta, const Tolerance& tol)
{
    const double weight = 1.0 / (2.0 * kPi);
    Tolerance inner = tol.tightened(10.0);
    inner.abs_tol = inner.abs_tol * beta / weight;
    NestedIntegrand term = [&](double zeta) {
        Integrand row = [&](double x) { return midpoint_nec_integrand(zeta, x, model); };
        return scaled(integrate_semiinf(row, 1.0, inner), weight);
    };
    return matsubara_sum(term, beta, tol);
}

}  // namespace

QuadratureResult nec_transverse(const Geometry& geom, const PlasmaModel& model, const ThermalState& thermal,
                                const Tolerance& tol)
{
    if (thermal.is_zero()) {
        return polar_zero_temperature(NullDirection::transverse, geom, model, tol);
    }
    const double beta = thermal.beta();
    const double blackbody = 4.0 * kPi2 / (45.0 * beta * beta * beta * beta);
    if (geom.z() == 0.5) {
        return shifted(midpoint_nec_sum(model, beta, tol), blackbody);
    }
    return shifted(matsubara(Field::nec_x, geom, model, beta, tol), blackbody);
}

QuadratureResult nec_longitudinal(const Geometry& geom, const PlasmaModel& model, const ThermalState& thermal,
                                  const Tolerance& tol)
{
    if (thermal.is_zero()) {
        return polar_zero_temperature(NullDirection::longitudinal, geom, model, tol);
    }
    return energy_density(geom, model, thermal, tol) + pressure_zz(geom, model, thermal, tol);
}

NearWallAsymptote near_wall_asymptote(double z, const PlasmaModel& model)
{
    if (!(z > 0.0)) {
        throw std::invalid_argument("near_wall_asymptote: z must be > 0");
    }
    const double txx = std::numbers::sqrt2 * model.omega_p() / (128.0 * kPi * z * z * z);
    return {2.0 * txx, txx};
}

std::optional<CriticalPoint> critical_omega_pa(const ThermalState& thermal, const Tolerance& tol, double rel_width)
{
    const Geometry mid(0.5);
    auto midpoint_energy = [&](double omega_pa) {
        const QuadratureResult u = energy_density(mid, PlasmaModel(omega_pa), thermal, tol);
        if (!u.converged) {
            std::ostringstream os;
            os.precision(17);
            os << "midpoint energy density did not converge at omega_p a = " << omega_pa;
            if (!u.message.empty()) {
                os << ": " << u.message;
            }
            throw ConvergenceError(os.str());
        }
        return u.value;
    };

    // quarter-decade grid; the first + to - transition is refined
    constexpr int kPerDecade = 4;
    const double decades = std::log10(kCriticalSearchHi / kCriticalSearchLo);
    const int steps = static_cast<int>(std::lround(decades * kPerDecade));
    double prev_x = kCriticalSearchLo;
    double prev_u = midpoint_energy(prev_x);
    for (int i = 1; i <= steps; ++i) {
        const double x =
            i == steps ? kCriticalSearchHi : kCriticalSearchLo * std::pow(10.0, static_cast<double>(i) / kPerDecade);
        const double u = midpoint_energy(x);
        if (prev_u >= 0.0 && u < 0.0) {
            const auto b = bracket_root(midpoint_energy, prev_x, x, rel_width);
            if (!b) {
                throw std::logic_error("critical_omega_pa: bracket lost its sign change");
            }
            return CriticalPoint{b->root(), *b};
        }
        prev_x = x;
        prev_u = u;
    }
    return std::nullopt;
}

}  // namespace casimir
