#include "casimir/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <unistd.h>

namespace casimir::cli {

namespace {

struct RawOptions
{
    std::string omega_pa = "100";
    std::string z = "0.5";
    std::string beta = "inf";
    int grid = 21;
    std::string format = "csv";
    std::string out;
    double rel_tol = Tolerance{}.rel_tol;
    int jobs = 1;
    bool si = false;
    double separation_um = 0.0;
    double kelvin = -1.0;
    bool emit_plot_script = false;
    std::string quantity = "t00";
    bool perfect_conductor = false;
    std::string config;
};

void add_options(CLI::App* sub, RawOptions& raw)
{
    sub->add_option("--omega-pa", raw.omega_pa, "plasma frequency times gap width: V or A:B");
    sub->add_option("--z", raw.z, "position z/a in (0,1): V or A:B");
    sub->add_option("--beta-over-a", raw.beta, "inverse temperature beta/a, or inf");
    sub->add_option("--grid", raw.grid, "points per range");
    sub->add_option("--format", raw.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", raw.out, "output file (default stdout)");
    sub->add_option("--rel-tol", raw.rel_tol, "relative quadrature tolerance");
    sub->add_option("--jobs", raw.jobs, "concurrent evaluations");
    sub->add_flag("--si", raw.si, "report J/m^3 using --separation-um and --kelvin");
    sub->add_option("--separation-um", raw.separation_um, "gap width in micrometres (with --si)");
    sub->add_option("--kelvin", raw.kelvin, "temperature in K (with --si); overrides --beta-over-a");
    sub->add_flag("--emit-plot-script", raw.emit_plot_script, "write <out>.plot.py next to the data");
    sub->add_option("--quantity", raw.quantity, "sweep column: t00 txx tyy tzz nec_x nec_z");
    sub->add_flag("--perfect-conductor", raw.perfect_conductor, "use r_s = -1, r_p = +1 (omega_p -> inf)");
    sub->add_option("--config", raw.config, "JSON file with defaults; flags on the command line win");
}

std::string json_text(const nlohmann::json& v)
{
    return v.is_string() ? v.get<std::string>() : v.dump();
}

// Fills every option that was not given on the command line from the
// config object. Keys are the long option names without dashes.
void apply_config(const CLI::App& sub, RawOptions& raw, const nlohmann::json& cfg)
{
    if (!cfg.is_object()) {
        throw std::invalid_argument("config file must hold a JSON object");
    }
    auto unset = [&](const char* flag) { return sub.count(flag) == 0; };
    for (const auto& [key, value] : cfg.items()) {
        const std::string flag = "--" + key;
        if (key == "omega-pa" && unset("--omega-pa")) {
            raw.omega_pa = json_text(value);
        } else if (key == "z" && unset("--z")) {
            raw.z = json_text(value);
        } else if (key == "beta-over-a" && unset("--beta-over-a")) {
            raw.beta = json_text(value);
        } else if (key == "grid" && unset("--grid")) {
            raw.grid = value.get<int>();
        } else if (key == "format" && unset("--format")) {
            raw.format = value.get<std::string>();
        } else if (key == "out" && unset("--out")) {
            raw.out = value.get<std::string>();
        } else if (key == "rel-tol" && unset("--rel-tol")) {
            raw.rel_tol = value.get<double>();
        } else if (key == "jobs" && unset("--jobs")) {
            raw.jobs = value.get<int>();
        } else if (key == "si" && unset("--si")) {
            raw.si = value.get<bool>();
        } else if (key == "separation-um" && unset("--separation-um")) {
            raw.separation_um = value.get<double>();
        } else if (key == "kelvin" && unset("--kelvin")) {
            raw.kelvin = value.get<double>();
        } else if (key == "emit-plot-script" && unset("--emit-plot-script")) {
            raw.emit_plot_script = value.get<bool>();
        } else if (key == "quantity" && unset("--quantity")) {
            raw.quantity = value.get<std::string>();
        } else if (key == "perfect-conductor" && unset("--perfect-conductor")) {
            raw.perfect_conductor = value.get<bool>();
        } else if (!sub.get_option_no_throw(flag)) {
            throw std::invalid_argument("unknown config key '" + key + "'");
        }
    }
}

RunSpec resolve(Command command, const RawOptions& raw)
{
    RunSpec spec;
    spec.command = command;
    spec.omega_pa = Range::parse(raw.omega_pa);
    spec.z_over_a = Range::parse(raw.z);
    spec.beta_over_a = parse_beta(raw.beta);
    spec.grid = raw.grid;
    spec.format = raw.format == "json" ? Format::json : Format::csv;
    spec.output_path = raw.out;
    spec.tolerance.rel_tol = raw.rel_tol;
    spec.jobs = raw.jobs;
    spec.si = raw.si;
    spec.separation_um = raw.separation_um;
    if (raw.kelvin >= 0.0) {
        spec.kelvin = raw.kelvin;
    } else if (raw.kelvin != -1.0) {
        throw std::invalid_argument("--kelvin must be >= 0");
    }
    spec.emit_plot_script = raw.emit_plot_script;
    spec.quantity = raw.quantity;
    spec.perfect_conductor = raw.perfect_conductor;
    spec.validate();
    return spec;
}

class Diagnostics
{
public:
    explicit Diagnostics(std::ostream& err)
        : err_(err), color_(&err == &std::cerr && std::getenv("NO_COLOR") == nullptr && ::isatty(2) == 1)
    {
    }

    void warning(const std::string& msg) { emit("warning", "\033[33m", msg); }
    void error(const std::string& msg) { emit("error", "\033[31m", msg); }

private:
    void emit(const char* tag, const char* ansi, const std::string& msg)
    {
        if (color_) {
            err_ << ansi << tag << ":\033[0m " << msg << '\n';
        } else {
            err_ << tag << ": " << msg << '\n';
        }
    }

    std::ostream& err_;
    bool color_;
};

void write_dataset(const Dataset& data, Format format, std::ostream& os)
{
    if (format == Format::json) {
        write_json(data, os);
    } else {
        write_csv(data, os);
    }
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    f << content;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Diagnostics diag(err);
    CLI::App app{"Renormalized electromagnetic stress tensor between plasma-model half-spaces", "casimir-stress"};
    app.require_subcommand(1);
    RawOptions raw;
    const std::vector<std::pair<Command, const char*>> commands = {
        {Command::profile, "stress components versus z/a at fixed omega_p a"},
        {Command::sweep, "one quantity versus omega_p a at fixed z/a"},
        {Command::nec, "null-energy-condition combinations versus z/a"},
        {Command::limits, "analytic perfect-conductor and blackbody constants"},
        {Command::critical, "omega_p a where the midpoint energy density turns negative"},
    };
    std::vector<std::pair<Command, CLI::App*>> subs;
    for (const auto& [cmd, help] : commands) {
        CLI::App* sub = app.add_subcommand(to_string(cmd), help);
        add_options(sub, raw);
        subs.emplace_back(cmd, sub);
    }

    std::vector<std::string> argv_store = args;
    argv_store.insert(argv_store.begin(), "casimir-stress");
    std::vector<char*> argv;
    for (std::string& a : argv_store) {
        argv.push_back(a.data());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    Command command = Command::profile;
    const CLI::App* chosen = nullptr;
    for (const auto& [cmd, sub] : subs) {
        if (sub->parsed()) {
            command = cmd;
            chosen = sub;
        }
    }

    RunSpec spec;
    try {
        if (!raw.config.empty()) {
            std::ifstream f(raw.config);
            if (!f) {
                throw std::invalid_argument("cannot read config file '" + raw.config + "'");
            }
            nlohmann::json cfg;
            try {
                cfg = nlohmann::json::parse(f);
            } catch (const nlohmann::json::exception& e) {
                throw std::invalid_argument("config file '" + raw.config + "': " + e.what());
            }
            apply_config(*chosen, raw, cfg);
        }
        spec = resolve(command, raw);
    } catch (const std::exception& e) {
        diag.error(e.what());
        return kExitUsage;
    }

    Dataset data;
    try {
        data = run_command(spec);
    } catch (const std::invalid_argument& e) {
        diag.error(e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        diag.error(std::string("numerical failure: ") + e.what());
        return kExitNonConvergence;
    }

    for (const std::string& d : data.diagnostics) {
        diag.warning(d);
    }

    try {
        if (spec.output_path.empty()) {
            write_dataset(data, spec.format, out);
        } else {
            std::ostringstream body;
            write_dataset(data, spec.format, body);
            write_file(spec.output_path, body.str());
            if (spec.format == Format::csv) {
                nlohmann::json meta;
                meta["spec"] = data.spec;
                meta["references"] = data.references;
                write_file(spec.output_path + ".meta.json", meta.dump(2) + "\n");
            }
            if (spec.emit_plot_script) {
                write_file(spec.output_path + ".plot.py", plot_script(data, spec, spec.output_path));
            }
        }
    } catch (const std::exception& e) {
        diag.error(e.what());
        return kExitUsage;
    }

    if (data.nonconverged) {
        diag.error("one or more points did not converge (rows flagged 'nonconverged')");
        return kExitNonConvergence;
    }
    return kExitOk;
}

}  // namespace casimir::cli
