#pragma once

#include "casimir/dielectric.hpp"

#include <cmath>

namespace casimir::detail {

/// Per-polarization building blocks of every stress integrand at one
/// spectral point (a = 1):
///   bulk_i  = r_i^2 / (r_i^2 - e^{2 kappa})      (position independent)
///   local_i = r_i / (1 - r_i^2 e^{-2 kappa})     (multiplies the z profile)
struct Channels
{
    double bulk_s = 0.0;
    double bulk_p = 0.0;
    double local_s = 0.0;
    double local_p = 0.0;

    double bulk() const { return bulk_s + bulk_p; }
    double local() const { return local_s + local_p; }
};

inline void fill_channel(double r, double gap, double kappa, double e2k, double& bulk, double& local)
{
    if (r == 0.0) {
        bulk = 0.0;
        local = 0.0;
        return;
    }
    // 1 - r^2 e^{-2 kappa} = -expm1(2 log|r| - 2 kappa), |r| = 1 - gap
    const double denom = -std::expm1(2.0 * std::log1p(-gap) - 2.0 * kappa);
    bulk = -r * r * e2k / denom;
    local = r / denom;
}

inline Channels channels(const ReflectionDetail& d, double kappa)
{
    Channels c;
    const double e2k = std::exp(-2.0 * kappa);
    fill_channel(d.r.r_s, d.gap_s, kappa, e2k, c.bulk_s, c.local_s);
    fill_channel(d.r.r_p, d.gap_p, kappa, e2k, c.bulk_p, c.local_p);
    return c;
}

/// e^{-kappa} cosh(kappa (2z - 1)) for z measured from the nearer wall.
inline double profile(double kappa, double wall_distance)
{
    return 0.5 * (std::exp(-2.0 * kappa * wall_distance) + std::exp(-2.0 * kappa * (1.0 - wall_distance)));
}

/// Past this the profile and e^{-2 kappa} both underflow.
inline bool negligible(double kappa, double wall_distance)
{
    return 2.0 * kappa * wall_distance > 745.0;
}

}  // namespace casimir::detail
