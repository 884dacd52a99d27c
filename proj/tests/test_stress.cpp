#include "casimir/stress.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace casimir;
using std::numbers::pi;

namespace {

double rel_diff(double a, double b)
{
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

// Fixed-grid double-exponential reference (tests/oracle/de_oracle.py),
// step h and h/2 agreeing to better than 1e-15.
struct OracleRow
{
    double omega_pa;
    double z;
    double t00, tzz, txx, e2, b2, nec_x, nec_z;
};

constexpr OracleRow kOracle[] = {
    {10.0, 0.25, 7.64023647317836896e-01, -2.63061104812039245e-02, 3.95164878899520455e-01,
     3.10620421341322839e+00, -1.57815691877755371e+00, 1.15918852621735735e+00, 7.37717536836632992e-01},
    {10.0, 0.5, 6.86378666756973510e-02, -2.63061104812039245e-02, 4.74719885784506412e-02,
     4.64930569642449332e-01, -3.27654836291054630e-01, 1.16109855254147992e-01, 4.23317561944934265e-02},
    {100.0, 0.25, 1.73363384383388164e-01, -3.90253172716150329e-02, 1.06194350827501643e-01,
     4.63056120657904202e+00, -4.28383443781226525e+00, 2.79557735210889780e-01, 1.34338067111773124e-01},
    {100.0, 0.5, -4.39021425508592008e-04, -3.90253172716150329e-02, 1.92931479230532207e-02,
     5.84947963122024128e-01, -5.85826005973041353e-01, 1.88541264975446293e-02, -3.94643386971236243e-02},
};

const ThermalState kZero = ThermalState::zero();

}  // namespace

TEST_CASE("geometry and thermal state")
{
    CHECK_THROWS_AS(Geometry(0.0), std::invalid_argument);
    CHECK_THROWS_AS(Geometry(1.0), std::invalid_argument);
    CHECK(Geometry(0.8).wall_distance() == doctest::Approx(0.2));
    CHECK(Geometry(0.3).mirrored().z() == doctest::Approx(0.7));
    CHECK(Geometry(5e-4).near_wall());
    CHECK(Geometry(1 - 5e-4).near_wall());
    CHECK_FALSE(Geometry(0.01).near_wall());
    CHECK(kZero.is_zero());
    CHECK(ThermalState::finite(2.0).beta() == 2.0);
    CHECK_THROWS(ThermalState::finite(0.0));
    CHECK_THROWS(ThermalState::finite(-1.0));
    CHECK_THROWS(kZero.beta());
}

TEST_CASE("oracle agreement")
{
    for (const OracleRow& row : kOracle) {
        CAPTURE(row.omega_pa);
        CAPTURE(row.z);
        const Geometry g(row.z);
        const PlasmaModel m(row.omega_pa);
        CHECK(rel_diff(energy_density(g, m, kZero).value, row.t00) <= 1e-6);
        CHECK(rel_diff(pressure_zz(g, m, kZero).value, row.tzz) <= 1e-6);
        CHECK(rel_diff(pressure_xx(g, m, kZero).value, row.txx) <= 1e-6);
        CHECK(rel_diff(mean_sq_E(g, m).value, row.e2) <= 1e-6);
        CHECK(rel_diff(mean_sq_B(g, m).value, row.b2) <= 1e-6);
        CHECK(rel_diff(nec_transverse(g, m, kZero).value, row.nec_x) <= 1e-6);
        CHECK(rel_diff(nec_longitudinal(g, m, kZero).value, row.nec_z) <= 1e-6);
    }
}

TEST_CASE("vacuum gives zero stress and pure blackbody")
{
    const Geometry g(0.3);
    const PlasmaModel vac = PlasmaModel::vacuum();
    const StressDiagonal s = stress_tensor(g, vac, kZero);
    CHECK(s.t00.value == 0.0);
    CHECK(s.txx.value == 0.0);
    CHECK(s.tyy.value == 0.0);
    CHECK(s.tzz.value == 0.0);
    CHECK(mean_sq_E(g, vac).value == 0.0);
    CHECK(mean_sq_B(g, vac).value == 0.0);
    CHECK(nec_longitudinal(g, vac, kZero).value == 0.0);

    const ThermalState hot = ThermalState::finite(1.0);
    CHECK(energy_density(g, vac, hot).value == pi * pi / 15);
    CHECK(casimir_energy_density(g, vac, hot).value == 0.0);
    const ThermalState warm = ThermalState::finite(2.0);
    CHECK(nec_transverse(Geometry(0.5), vac, warm).value == doctest::Approx(4 * pi * pi / (45 * 16)).epsilon(1e-14));
    CHECK(nec_transverse(g, vac, warm).value == doctest::Approx(4 * pi * pi / (45 * 16)).epsilon(1e-14));
}

TEST_CASE("perfect conductor")
{
    const ReferenceLimits lim = reference_limits();
    const Geometry mid(0.5);
    const PlasmaModel pc = PlasmaModel::perfect_conductor();
    const StressDiagonal s = stress_tensor(mid, pc, kZero);
    CHECK(s.t00.value == doctest::Approx(lim.u_pc).epsilon(1e-8));
    CHECK(s.txx.value == doctest::Approx(lim.txx_pc).epsilon(1e-8));
    CHECK(s.tzz.value == doctest::Approx(lim.tzz_pc).epsilon(1e-8));
    CHECK(std::abs(nec_transverse(mid, pc, kZero).value) <= 1e-10);
    CHECK(nec_longitudinal(mid, pc, kZero).value == doctest::Approx(lim.nec_z_pc).epsilon(1e-8));
    // flat profile
    CHECK(energy_density(Geometry(0.2), pc, kZero).value == doctest::Approx(lim.u_pc).epsilon(1e-8));
}

TEST_CASE("mirror symmetry and z-independent T_zz")
{
    const PlasmaModel m(30.0);
    for (double z : {0.1, 0.27, 0.4}) {
        const Geometry g(z);
        const Geometry h = g.mirrored();
        const StressDiagonal a = stress_tensor(g, m, kZero);
        const StressDiagonal b = stress_tensor(h, m, kZero);
        CHECK(std::abs(a.t00.value - b.t00.value) <= a.t00.error_estimate + b.t00.error_estimate);
        CHECK(std::abs(a.txx.value - b.txx.value) <= a.txx.error_estimate + b.txx.error_estimate);
        CHECK(a.tyy.value == a.txx.value);
        const QuadratureResult na = nec_transverse(g, m, kZero);
        const QuadratureResult nb = nec_transverse(h, m, kZero);
        CHECK(std::abs(na.value - nb.value) <= na.error_estimate + nb.error_estimate);
    }
    const double t1 = pressure_zz(Geometry(0.1), m, kZero).value;
    CHECK(pressure_zz(Geometry(0.5), m, kZero).value == t1);
    CHECK(pressure_zz(Geometry(0.9), m, kZero).value == t1);
    const ThermalState th = ThermalState::finite(3.0);
    const double t2 = pressure_zz(Geometry(0.1), m, th).value;
    CHECK(pressure_zz(Geometry(0.9), m, th).value == t2);
}

TEST_CASE("tracelessness and definitional identities")
{
    for (const ThermalState& th : {kZero, ThermalState::finite(2.0), ThermalState::finite(7.0)}) {
        for (double w : {0.5, 20.0, 300.0}) {
            for (double z : {0.15, 0.5}) {
                const StressDiagonal s = stress_tensor(Geometry(z), PlasmaModel(w), th);
                const double trace = s.t00.value - s.txx.value - s.tyy.value - s.tzz.value;
                const double err = s.t00.error_estimate + 2 * s.txx.error_estimate + s.tzz.error_estimate;
                CHECK(std::abs(trace) <= std::max(1e-10, 10 * err));
                CHECK(s.converged());
            }
        }
    }
    for (double z : {0.2, 0.5}) {
        const Geometry g(z);
        const PlasmaModel m(40.0);
        const QuadratureResult u = energy_density(g, m, kZero);
        const QuadratureResult e = mean_sq_E(g, m);
        const QuadratureResult b = mean_sq_B(g, m);
        CHECK(std::abs(u.value - 0.5 * (e.value + b.value)) <=
              std::max(1e-12, 10 * (u.error_estimate + e.error_estimate + b.error_estimate)));
        const QuadratureResult nz = nec_longitudinal(g, m, kZero);
        const QuadratureResult sum = u + pressure_zz(g, m, kZero);
        CHECK(std::abs(nz.value - sum.value) <= std::max(1e-12, 10 * (nz.error_estimate + sum.error_estimate)));
        const QuadratureResult nx = nec_transverse(g, m, kZero);
        const QuadratureResult sx = u + pressure_xx(g, m, kZero);
        CHECK(rel_diff(nx.value, sx.value) <= 1e-6);
    }
}

TEST_CASE("longitudinal pressure bounds")
{
    const double lo = reference_limits().tzz_pc;
    double previous = 0.0;
    for (double w : {0.01, 0.3, 3.0, 30.0, 300.0, 3000.0, 30000.0}) {
        const double tzz = pressure_zz(Geometry(0.5), PlasmaModel(w), kZero).value;
        CHECK(tzz <= 0.0);
        CHECK(tzz >= lo);
        CHECK(tzz < previous);
        previous = tzz;
    }
}

TEST_CASE("thermal midpoint general form agrees with the single-integral form")
{
    const PlasmaModel m(50.0);
    const ThermalState th = ThermalState::finite(4.0);
    const QuadratureResult mid = nec_transverse(Geometry(0.5), m, th);
    const QuadratureResult near_mid = nec_transverse(Geometry(0.5 - 1e-9), m, th);
    CHECK(rel_diff(mid.value, near_mid.value) <= 1e-6);
    const QuadratureResult sum = energy_density(Geometry(0.5), m, th) + pressure_xx(Geometry(0.5), m, th);
    CHECK(rel_diff(mid.value, sum.value) <= 1e-6);
}

TEST_CASE("temperature raises the midpoint energy and transverse NEC")
{
    const ThermalState th = ThermalState::finite(5.0);
    for (double w : {3.0, 30.0, 100.0, 1000.0}) {
        const Geometry mid(0.5);
        const PlasmaModel m(w);
        CHECK(energy_density(mid, m, th).value > energy_density(mid, m, kZero).value);
        CHECK(nec_transverse(mid, m, th).value > nec_transverse(mid, m, kZero).value);
    }
}

TEST_CASE("longitudinal NEC sign pattern")
{
    const PlasmaModel m(100.0);
    CHECK(nec_longitudinal(Geometry(0.5), m, kZero).value < 0.0);
    CHECK(nec_longitudinal(Geometry(0.05), m, kZero).value > 0.0);
    CHECK(nec_longitudinal(Geometry(0.95), m, kZero).value > 0.0);
}

TEST_CASE("near-wall asymptote")
{
    CHECK(near_wall_asymptote(0.01, PlasmaModel(0.0)).energy_density == 0.0);
    CHECK(near_wall_asymptote(0.01, PlasmaModel(0.0)).pressure_xx == 0.0);
    const NearWallAsymptote a = near_wall_asymptote(1e-3, PlasmaModel(100.0));
    CHECK(a.energy_density == 2 * a.pressure_xx);
    CHECK(a.pressure_xx == doctest::Approx(std::sqrt(2.0) * 100.0 / (128 * pi * 1e-9)));
    CHECK_THROWS(near_wall_asymptote(0.0, PlasmaModel(1.0)));

    const Geometry g(1e-3);
    const PlasmaModel m(100.0);
    const QuadratureResult txx = pressure_xx(g, m, kZero);
    CHECK(std::abs(txx.value / a.pressure_xx - 1) <= 0.15);
    const QuadratureResult u = energy_density(g, m, kZero);
    CHECK(u.value / txx.value == doctest::Approx(2.0).epsilon(0.1));
    CHECK_FALSE(stress_tensor(g, m, kZero).near_wall);
    CHECK(stress_tensor(Geometry(5e-4), m, kZero).near_wall);
}

TEST_CASE("reference limits")
{
    const ReferenceLimits lim = reference_limits();
    CHECK(lim.u_pc == doctest::Approx(-pi * pi / 720).epsilon(1e-15));
    CHECK(lim.txx_pc == doctest::Approx(pi * pi / 720).epsilon(1e-15));
    CHECK(lim.tzz_pc == doctest::Approx(-0.0411234).epsilon(1e-6));
    CHECK(lim.nec_x_pc == 0.0);
    CHECK(lim.nec_z_pc == doctest::Approx(-pi * pi / 180).epsilon(1e-15));
    CHECK(std::abs(-lim.u_pc + 2 * lim.txx_pc + lim.tzz_pc) <= 1e-17);
    CHECK(ReferenceLimits::blackbody(1.0) == doctest::Approx(0.657974).epsilon(1e-6));
    CHECK(ReferenceLimits::blackbody(2.0) == doctest::Approx(pi * pi / 240).epsilon(1e-15));
    CHECK(ReferenceLimits::blackbody_pressure(1.0) == doctest::Approx(pi * pi / 45).epsilon(1e-15));
}

TEST_CASE("critical plasma frequency")
{
    const auto zero = critical_omega_pa(kZero);
    REQUIRE(zero.has_value());
    CHECK(zero->omega_pa >= 80.0);
    CHECK(zero->omega_pa <= 120.0);
    CHECK(zero->bracket.width() <= 1e-6 * zero->omega_pa * 1.0000001);
    CHECK(energy_density(Geometry(0.5), PlasmaModel(zero->bracket.lo), kZero).value > 0.0);
    CHECK(energy_density(Geometry(0.5), PlasmaModel(zero->bracket.hi), kZero).value < 0.0);

    const auto warm = critical_omega_pa(ThermalState::finite(5.0));
    REQUIRE(warm.has_value());
    CHECK(warm->omega_pa > zero->omega_pa);

    CHECK_FALSE(critical_omega_pa(ThermalState::finite(2.5)).has_value());
}
