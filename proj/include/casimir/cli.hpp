#pragma once

#include "casimir/quadrature.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace casimir::cli {

enum class Command { profile, sweep, nec, limits, critical };
enum class Format { csv, json };

std::string to_string(Command c);
Command parse_command(const std::string& name);

/// Either a single value or an inclusive range "A:B".
struct Range
{
    double lo = 0.0;
    double hi = 0.0;
    bool is_range = false;

    static Range single(double v) { return {v, v, false}; }
    /// Parses "V" or "A:B". Throws std::invalid_argument on malformed input
    /// or an empty range (B <= A).
    static Range parse(const std::string& text);
    std::string str() const;
};

/// Fully resolved command-line request.
struct RunSpec
{
    Command command = Command::profile;
    Range omega_pa = Range::single(100.0);
    Range z_over_a = Range::single(0.5);
    std::optional<double> beta_over_a;  ///< nullopt: zero temperature
    int grid = 21;
    Format format = Format::csv;
    std::string output_path;  ///< empty: stdout
    Tolerance tolerance;
    int jobs = 1;
    bool si = false;
    double separation_um = 0.0;
    std::optional<double> kelvin;
    bool emit_plot_script = false;
    std::string quantity = "t00";  ///< sweep column
    bool perfect_conductor = false;

    /// Throws std::invalid_argument describing the first problem found.
    void validate() const;
    nlohmann::json to_json() const;
    /// Values on the grid of `r`: linear for z, logarithmic for omega_p a.
    std::vector<double> samples(const Range& r, bool logarithmic) const;
};

/// Parses "inf" (zero temperature) or a positive number.
std::optional<double> parse_beta(const std::string& text);

using Cell = std::variant<double, std::string>;

struct Dataset
{
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    nlohmann::json spec;
    nlohmann::json references;
    bool nonconverged = false;
    std::vector<std::string> diagnostics;
    int significant_digits = 17;
};

Dataset cmd_profile(const RunSpec& spec);
Dataset cmd_sweep(const RunSpec& spec);
Dataset cmd_nec(const RunSpec& spec);
Dataset cmd_limits(const RunSpec& spec);
Dataset cmd_critical(const RunSpec& spec);
Dataset run_command(const RunSpec& spec);

/// 17 significant digits, shortest C-locale form.
std::string format_number(double v, int significant = 17);

void write_csv(const Dataset& data, std::ostream& os);
void write_json(const Dataset& data, std::ostream& os);
/// matplotlib script that reads `data_path` and redraws the figure.
std::string plot_script(const Dataset& data, const RunSpec& spec, const std::string& data_path);

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNonConvergence = 2;

/// Entry point shared by the executable and the tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace casimir::cli
