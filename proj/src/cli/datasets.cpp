#include "casimir/cli.hpp"
#include "casimir/stress.hpp"
#include "casimir/units.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

namespace casimir::cli {

namespace {

// Evaluates fn(0..n-1) on up to `jobs` threads; results come back in index
// order whatever the completion order.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, int jobs, Fn fn)
{
    std::vector<T> out(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                out[i] = fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), n);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

ThermalState thermal_of(const RunSpec& spec)
{
    if (spec.si && spec.kelvin) {
        if (*spec.kelvin == 0.0) {
            return ThermalState::zero();
        }
        return ThermalState::finite(units::beta_from_temperature(*spec.kelvin) / (spec.separation_um * 1e-6));
    }
    return spec.beta_over_a ? ThermalState::finite(*spec.beta_over_a) : ThermalState::zero();
}

PlasmaModel model_of(const RunSpec& spec, double omega_pa)
{
    return spec.perfect_conductor ? PlasmaModel::perfect_conductor() : PlasmaModel(omega_pa);
}

double unit_factor(const RunSpec& spec)
{
    return spec.si ? units::to_si_energy_density(1.0, spec.separation_um * 1e-6) : 1.0;
}

std::string status_of(bool converged, bool near_wall)
{
    if (!converged) {
        return "nonconverged";
    }
    return near_wall ? "near_wall" : "ok";
}

nlohmann::json references_of(const RunSpec& spec)
{
    const ReferenceLimits lim = reference_limits();
    const double f = unit_factor(spec);
    nlohmann::json r;
    r["U_pc"] = lim.u_pc * f;
    r["Txx_pc"] = lim.txx_pc * f;
    r["Tzz_pc"] = lim.tzz_pc * f;
    r["nec_x_pc"] = lim.nec_x_pc * f;
    r["nec_z_pc"] = lim.nec_z_pc * f;
    const ThermalState th = thermal_of(spec);
    r["blackbody"] = th.is_zero() ? nlohmann::json(nullptr) : nlohmann::json(ReferenceLimits::blackbody(th.beta()) * f);
    return r;
}

Dataset base_dataset(const RunSpec& spec)
{
    Dataset d;
    d.spec = spec.to_json();
    d.references = references_of(spec);
    return d;
}

void note_near_wall(Dataset& d, const RunSpec& spec, double z)
{
    std::ostringstream os;
    os << "z/a=" << format_number(z, 6) << " is within 1e-3 of a wall; convergence is slow";
    if (!spec.perfect_conductor) {
        const Geometry g(z);
        const NearWallAsymptote a = near_wall_asymptote(g.wall_distance(), PlasmaModel(spec.omega_pa.lo));
        const double f = unit_factor(spec);
        os << "; near-wall asymptote: U ~ " << format_number(a.energy_density * f, 8)
           << ", T_xx ~ " << format_number(a.pressure_xx * f, 8);
    }
    d.diagnostics.push_back(os.str());
}

struct ProfilePoint
{
    StressDiagonal stress;
    QuadratureResult nec_x;
    QuadratureResult nec_z;
};

}  // namespace

Dataset cmd_profile(const RunSpec& spec)
{
    spec.validate();
    Dataset d = base_dataset(spec);
    d.columns = {"z_over_a", "t00",     "txx",     "tyy",       "tzz",       "nec_x",
                 "nec_z",    "err_t00", "err_txx", "err_tyy", "err_tzz", "err_nec_x", "err_nec_z", "status"};
    const std::vector<double> zs = spec.samples(spec.z_over_a, false);
    const PlasmaModel model = model_of(spec, spec.omega_pa.lo);
    const ThermalState thermal = thermal_of(spec);
    const auto points = parallel_map<ProfilePoint>(zs.size(), spec.jobs, [&](std::size_t i) {
        const Geometry g(zs[i]);
        return ProfilePoint{stress_tensor(g, model, thermal, spec.tolerance),
                            nec_transverse(g, model, thermal, spec.tolerance),
                            nec_longitudinal(g, model, thermal, spec.tolerance)};
    });

    const double f = unit_factor(spec);
    for (std::size_t i = 0; i < zs.size(); ++i) {
        const ProfilePoint& p = points[i];
        const bool ok = p.stress.converged() && p.nec_x.converged && p.nec_z.converged;
        d.nonconverged |= !ok;
        if (p.stress.near_wall) {
            note_near_wall(d, spec, zs[i]);
        }
        d.rows.push_back({zs[i], p.stress.t00.value * f, p.stress.txx.value * f, p.stress.tyy.value * f,
                          p.stress.tzz.value * f, p.nec_x.value * f, p.nec_z.value * f,
                          p.stress.t00.error_estimate * f, p.stress.txx.error_estimate * f,
                          p.stress.tyy.error_estimate * f, p.stress.tzz.error_estimate * f,
                          p.nec_x.error_estimate * f, p.nec_z.error_estimate * f, status_of(ok, p.stress.near_wall)});
    }
    return d;
}

Dataset cmd_nec(const RunSpec& spec)
{
    spec.validate();
    Dataset d = base_dataset(spec);
    d.columns = {"z_over_a", "nec_x", "nec_z", "err_nec_x", "err_nec_z", "status"};
    const std::vector<double> zs = spec.samples(spec.z_over_a, false);
    const PlasmaModel model = model_of(spec, spec.omega_pa.lo);
    const ThermalState thermal = thermal_of(spec);
    using Pair = std::pair<QuadratureResult, QuadratureResult>;
    const auto points = parallel_map<Pair>(zs.size(), spec.jobs, [&](std::size_t i) {
        const Geometry g(zs[i]);
        return Pair{nec_transverse(g, model, thermal, spec.tolerance),
                    nec_longitudinal(g, model, thermal, spec.tolerance)};
    });

    const double f = unit_factor(spec);
    for (std::size_t i = 0; i < zs.size(); ++i) {
        const auto& [nx, nz] = points[i];
        const bool ok = nx.converged && nz.converged;
        const bool near = Geometry(zs[i]).near_wall();
        d.nonconverged |= !ok;
        if (near) {
            note_near_wall(d, spec, zs[i]);
        }
        d.rows.push_back({zs[i], nx.value * f, nz.value * f, nx.error_estimate * f, nz.error_estimate * f,
                          status_of(ok, near)});
    }
    return d;
}

Dataset cmd_sweep(const RunSpec& spec)
{
    spec.validate();
    Dataset d = base_dataset(spec);
    d.columns = {"omega_pa", spec.quantity, "err_" + spec.quantity, "status"};
    const std::vector<double> omegas = spec.samples(spec.omega_pa, true);
    const ThermalState thermal = thermal_of(spec);
    const Geometry g(spec.z_over_a.lo);
    const std::string& q = spec.quantity;
    const auto results = parallel_map<QuadratureResult>(omegas.size(), spec.jobs, [&](std::size_t i) {
        const PlasmaModel model = model_of(spec, omegas[i]);
        if (q == "t00") {
            return energy_density(g, model, thermal, spec.tolerance);
        }
        if (q == "txx" || q == "tyy") {
            return pressure_xx(g, model, thermal, spec.tolerance);
        }
        if (q == "tzz") {
            return pressure_zz(g, model, thermal, spec.tolerance);
        }
        if (q == "nec_x") {
            return nec_transverse(g, model, thermal, spec.tolerance);
        }
        return nec_longitudinal(g, model, thermal, spec.tolerance);
    });

    const double f = unit_factor(spec);
    if (g.near_wall()) {
        d.diagnostics.push_back("z/a=" + format_number(g.z(), 6) + " is within 1e-3 of a wall; convergence is slow");
    }
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        const QuadratureResult& r = results[i];
        d.nonconverged |= !r.converged;
        d.rows.push_back({omegas[i], r.value * f, r.error_estimate * f, status_of(r.converged, g.near_wall())});
    }
    return d;
}

Dataset cmd_limits(const RunSpec& spec)
{
    Dataset d;
    d.spec = spec.to_json();
    d.columns = {"quantity", "value"};
    d.significant_digits = 12;
    const ReferenceLimits lim = reference_limits();
    const double beta = spec.beta_over_a.value_or(1.0);
    d.rows = {
        {std::string("U_pc"), lim.u_pc},
        {std::string("Txx_pc"), lim.txx_pc},
        {std::string("Tyy_pc"), lim.txx_pc},
        {std::string("Tzz_pc"), lim.tzz_pc},
        {std::string("nec_x_pc"), lim.nec_x_pc},
        {std::string("nec_z_pc"), lim.nec_z_pc},
        {std::string("blackbody(beta=" + format_number(beta) + ")"), ReferenceLimits::blackbody(beta)},
        {std::string("blackbody_pressure(beta=" + format_number(beta) + ")"),
         ReferenceLimits::blackbody_pressure(beta)},
    };
    d.references = nlohmann::json::object();
    return d;
}

Dataset cmd_critical(const RunSpec& spec)
{
    spec.validate();
    Dataset d = base_dataset(spec);
    d.columns = {"beta_over_a", "omega_pa_critical", "bracket_lo", "bracket_hi", "bracket_width"};
    const ThermalState thermal = thermal_of(spec);
    const Cell beta_cell = thermal.is_zero() ? Cell{std::string("inf")} : Cell{thermal.beta()};
    try {
        const auto c = critical_omega_pa(thermal, spec.tolerance);
        if (c) {
            d.rows.push_back({beta_cell, c->omega_pa, c->bracket.lo, c->bracket.hi, c->bracket.width()});
        } else {
            const Cell none{std::string("none")};
            d.rows.push_back({beta_cell, none, none, none, none});
            d.diagnostics.push_back("midpoint energy density keeps one sign for omega_p a in [" +
                                    format_number(kCriticalSearchLo, 6) + ", " + format_number(kCriticalSearchHi, 6) + "]");
        }
    } catch (const ConvergenceError& e) {
        d.nonconverged = true;
        d.diagnostics.push_back(e.what());
        const Cell flag{std::string("nonconverged")};
        d.rows.push_back({beta_cell, flag, flag, flag, flag});
    }
    return d;
}

Dataset run_command(const RunSpec& spec)
{
    switch (spec.command) {
    case Command::profile:
        return cmd_profile(spec);
    case Command::sweep:
        return cmd_sweep(spec);
    case Command::nec:
        return cmd_nec(spec);
    case Command::limits:
        return cmd_limits(spec);
    case Command::critical:
        return cmd_critical(spec);
    }
    throw std::logic_error("unhandled command");
}

}  // namespace casimir::cli
