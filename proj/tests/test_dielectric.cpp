#include "casimir/dielectric.hpp"
#include "casimir/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

using namespace casimir;

namespace {

double rel_diff(double a, double b)
{
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace

TEST_CASE("plasma model construction")
{
    CHECK(PlasmaModel(0.0).is_vacuum());
    CHECK(PlasmaModel::perfect_conductor().is_perfect_conductor());
    CHECK_FALSE(PlasmaModel(1e8).is_perfect_conductor());
    CHECK_THROWS_AS(PlasmaModel(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(PlasmaModel(std::nan("")), std::invalid_argument);
}

TEST_CASE("spectral point invariants")
{
    const PlasmaModel m(7.0);
    const SpectralPoint p(3.0, 4.0);
    CHECK(p.kappa() == doctest::Approx(5.0));
    CHECK(p.kappa1(m) >= p.kappa());
    CHECK(p.kappa1(m) * p.kappa1(m) - p.kappa() * p.kappa() == doctest::Approx(49.0).epsilon(1e-14));
    CHECK_THROWS(SpectralPoint(-1.0, 1.0));

    const SpectralPoint q = AngularSpectralPoint(2.0, 0.6).to_spectral();
    CHECK(q.zeta() == doctest::Approx(1.2));
    CHECK(q.k() == doctest::Approx(1.6));
    CHECK(q.kappa() == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("eps_imag examples")
{
    CHECK(eps_imag(1.0, PlasmaModel(0.0)) == 1.0);
    CHECK(eps_imag(3.0, PlasmaModel(3.0)) == doctest::Approx(2.0));
    CHECK(eps_imag(4.0, PlasmaModel(3.0)) == doctest::Approx(25.0 / 16.0));
    CHECK_THROWS_AS(eps_imag(0.0, PlasmaModel(3.0)), std::domain_error);
    CHECK(eps_imag(0.5, PlasmaModel(1.0)) > 1.0);
}

TEST_CASE("reflection examples")
{
    const ReflectionCoefficients vac = reflection(SpectralPoint(1.3, 0.4), PlasmaModel(0.0));
    CHECK(vac.r_s == 0.0);
    CHECK(vac.r_p == 0.0);

    CHECK(reflection(SpectralPoint(3.0, 0.0), PlasmaModel(4.0)).r_s == doctest::Approx(-0.25).epsilon(1e-15));

    const ReflectionCoefficients normal = reflection(SpectralPoint(4.0, 0.0), PlasmaModel(3.0));
    CHECK(normal.r_s == doctest::Approx(-1.0 / 9.0).epsilon(1e-15));
    CHECK(normal.r_p == doctest::Approx(1.0 / 9.0).epsilon(1e-15));

    const ReflectionCoefficients pc = reflection(SpectralPoint(2.0, 1.0), PlasmaModel::perfect_conductor());
    CHECK(pc.r_s == -1.0);
    CHECK(pc.r_p == 1.0);
    const ReflectionCoefficients big = reflection(SpectralPoint(2.0, 1.0), PlasmaModel(1e9));
    CHECK(big.r_s == doctest::Approx(-1.0).epsilon(1e-8));
    CHECK(big.r_p == doctest::Approx(1.0).epsilon(1e-8));

    CHECK_THROWS_AS(reflection(SpectralPoint(0.0, 0.0), PlasmaModel(1.0)), std::domain_error);
}

TEST_CASE("static limit")
{
    const PlasmaModel m(5.0);
    const double k = 2.0;
    const ReflectionCoefficients r0 = reflection(SpectralPoint(0.0, k), m);
    const double root = std::sqrt(k * k + 25.0);
    CHECK(r0.r_p == 1.0);
    CHECK(r0.r_s == doctest::Approx((k - root) / (k + root)).epsilon(1e-15));
    const ReflectionCoefficients near = reflection(SpectralPoint(1e-9, k), m);
    CHECK(near.r_p == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(near.r_s == doctest::Approx(r0.r_s).epsilon(1e-12));
}

TEST_CASE("detail gaps are complements of the coefficients")
{
    const PlasmaModel m(2.5);
    for (double zeta : {0.01, 0.3, 2.0, 40.0}) {
        for (double k : {0.0, 0.5, 3.0}) {
            const ReflectionDetail d = reflection_detail(SpectralPoint(zeta, k), m);
            CHECK(d.gap_s == doctest::Approx(1.0 - std::abs(d.r.r_s)).epsilon(1e-13));
            CHECK(d.gap_p == doctest::Approx(1.0 - d.r.r_p).epsilon(1e-13));
        }
    }
    // Deep in the conducting regime 1 - |r| underflows in the naive form.
    const ReflectionDetail deep = reflection_detail(SpectralPoint(1e-6, 1e-6), PlasmaModel(1e6));
    CHECK(deep.gap_s > 0.0);
    CHECK(deep.gap_s == doctest::Approx(2.0 * std::sqrt(2.0) * 1e-12).epsilon(1e-6));
}

TEST_CASE("stable s coefficient for weak plasma")
{
    const PlasmaModel m(1e-9);
    const ReflectionCoefficients r = reflection(SpectralPoint(1.0, 0.0), m);
    CHECK(r.r_s == doctest::Approx(-0.25e-18).epsilon(1e-12));
    CHECK(r.r_p == doctest::Approx(0.25e-18).epsilon(1e-12));
}

TEST_CASE("polar-form examples")
{
    for (double u : {0.1, 1.0, 30.0}) {
        const ReflectionCoefficients r1 = reflection_ut(AngularSpectralPoint(u, 1.0), PlasmaModel(2.0));
        CHECK(r1.r_p == doctest::Approx(-r1.r_s).epsilon(1e-14));
        CHECK(reflection_ut(AngularSpectralPoint(u, 0.0), PlasmaModel(2.0)).r_p == 1.0);
    }
    for (double t : {0.0, 0.2, 0.7, 1.0}) {
        CHECK(reflection_ut(AngularSpectralPoint(3.0, t), PlasmaModel(4.0)).r_s == doctest::Approx(-0.25).epsilon(1e-15));
    }
    CHECK_THROWS(reflection_ut(AngularSpectralPoint(0.0, 0.5), PlasmaModel(1.0)));
    CHECK_THROWS(AngularSpectralPoint(1.0, 1.5));
}

TEST_CASE("randomized bounds and coordinate consistency")
{
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> log10_dist(-3.0, 4.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 4000; ++i) {
        const double zeta = std::pow(10.0, log10_dist(rng));
        const double k = std::pow(10.0, log10_dist(rng));
        const PlasmaModel m(std::pow(10.0, log10_dist(rng)));
        const ReflectionCoefficients r = reflection(SpectralPoint(zeta, k), m);
        CHECK(r.r_s <= 0.0);
        CHECK(r.r_s >= -1.0);
        CHECK(r.r_p >= 0.0);
        CHECK(r.r_p <= 1.0);
        CHECK(r.r_p >= std::abs(r.r_s));

        const double u = std::pow(10.0, log10_dist(rng));
        const double t = unit(rng);
        const AngularSpectralPoint a(u, t);
        const ReflectionCoefficients polar = reflection_ut(a, m);
        const ReflectionCoefficients mapped = reflection(a.to_spectral(), m);
        CHECK(rel_diff(polar.r_s, mapped.r_s) <= 1e-12);
        CHECK(rel_diff(polar.r_p, mapped.r_p) <= 1e-12);
        if (t > 0.0) {
            CHECK(d_rp_dt(a, m) <= 0.0);
        }
        CHECK(rp_plus_rs(a, m) >= 0.0);
    }
}

TEST_CASE("d_rp_dt")
{
    CHECK(d_rp_dt(AngularSpectralPoint(1.0, 0.5), PlasmaModel(0.0)) == 0.0);
    CHECK(d_rp_dt(AngularSpectralPoint(1.0, 0.0), PlasmaModel(1.0)) == 0.0);

    auto fd = [](double u, double t, const PlasmaModel& m) {
        const double h = 1e-5;
        return (reflection_ut(AngularSpectralPoint(u, t + h), m).r_p -
                reflection_ut(AngularSpectralPoint(u, t - h), m).r_p) /
               (2 * h);
    };
    const double analytic = d_rp_dt(AngularSpectralPoint(1.0, 0.5), PlasmaModel(1.0));
    CHECK(analytic < 0.0);
    CHECK(rel_diff(analytic, fd(1.0, 0.5, PlasmaModel(1.0))) <= 1e-6);
    for (double u : {0.2, 3.0, 50.0}) {
        for (double w : {0.5, 10.0}) {
            for (double t : {0.1, 0.5, 0.9}) {
                CHECK(rel_diff(d_rp_dt(AngularSpectralPoint(u, t), PlasmaModel(w)), fd(u, t, PlasmaModel(w))) <= 1e-6);
            }
        }
    }
}

TEST_CASE("rp_plus_rs")
{
    CHECK(rp_plus_rs(AngularSpectralPoint(2.0, 1.0), PlasmaModel(5.0)) == 0.0);
    CHECK(rp_plus_rs(AngularSpectralPoint(2.0, 0.3), PlasmaModel(0.0)) == 0.0);
    const AngularSpectralPoint a(2.0, 0.3);
    const ReflectionCoefficients r = reflection_ut(a, PlasmaModel(5.0));
    const double closed = rp_plus_rs(a, PlasmaModel(5.0));
    CHECK(closed > 0.0);
    CHECK(rel_diff(closed, r.r_p + r.r_s) <= 1e-12);
    for (double u : {0.01, 1.0, 100.0}) {
        for (double t : {0.0, 0.4, 0.99}) {
            const AngularSpectralPoint b(u, t);
            const ReflectionCoefficients rb = reflection_ut(b, PlasmaModel(3.0));
            // the direct sum itself loses digits to cancellation here
            CHECK(std::abs(rp_plus_rs(b, PlasmaModel(3.0)) - (rb.r_p + rb.r_s)) <= 1e-12 * (rb.r_p - rb.r_s));
        }
    }
}

TEST_CASE("high-frequency falloff is zeta^-2")
{
    const PlasmaModel m(1.0);
    const double k = 1.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = 41;
    for (int i = 0; i < n; ++i) {
        const double zeta = std::pow(10.0, 2.0 + 2.0 * i / (n - 1));
        const double x = std::log(zeta);
        const double y = std::log(std::abs(reflection(SpectralPoint(zeta, k), m).r_s));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope >= -2.1);
    CHECK(slope <= -1.9);
}

TEST_CASE("partial integration identity in t")
{
    Tolerance tol;
    tol.rel_tol = 1e-12;
    tol.abs_tol = 0.0;
    for (double u : {0.5, 1.0, 5.0}) {
        for (double w : {1.0, 10.0, 100.0}) {
            const PlasmaModel m(w);
            const double e2u = std::exp(2 * u);
            const double em2u = std::exp(-2 * u);
            const QuadratureResult lhs = integrate_unit(
                [&](double t) {
                    const double rp = reflection_ut(AngularSpectralPoint(u, t), m).r_p;
                    return (3 * t * t - 1) * rp * rp / (rp * rp - e2u);
                },
                tol);
            const QuadratureResult rhs = integrate_unit(
                [&](double t) {
                    const AngularSpectralPoint a(u, t);
                    const double rp = reflection_ut(a, m).r_p;
                    const double d = 1 - rp * rp * em2u;
                    return t * (1 - t * t) * 2 * rp / (d * d) * d_rp_dt(a, m);
                },
                tol);
            CAPTURE(u);
            CAPTURE(w);
            CHECK(rel_diff(lhs.value, -em2u * rhs.value) <= 1e-8);
        }
    }
}
