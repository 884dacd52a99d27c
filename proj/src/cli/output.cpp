#include "casimir/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <ostream>
#include <sstream>

namespace casimir::cli {

std::string format_number(double v, int significant)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, significant);
    return std::string(buf, res.ptr);
}

namespace {

std::string cell_text(const Cell& c, int significant)
{
    if (const double* v = std::get_if<double>(&c)) {
        return format_number(*v, significant);
    }
    return std::get<std::string>(c);
}

nlohmann::json cell_json(const Cell& c, int significant)
{
    if (const double* v = std::get_if<double>(&c)) {
        if (significant < 17) {
            return std::strtod(format_number(*v, significant).c_str(), nullptr);
        }
        return *v;
    }
    return std::get<std::string>(c);
}

}  // namespace

void write_csv(const Dataset& data, std::ostream& os)
{
    for (std::size_t i = 0; i < data.columns.size(); ++i) {
        os << (i ? "," : "") << data.columns[i];
    }
    os << '\n';
    for (const auto& row : data.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i ? "," : "") << cell_text(row[i], data.significant_digits);
        }
        os << '\n';
    }
}

void write_json(const Dataset& data, std::ostream& os)
{
    nlohmann::json j;
    j["spec"] = data.spec;
    j["columns"] = data.columns;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : data.rows) {
        nlohmann::json r = nlohmann::json::array();
        for (const Cell& c : row) {
            r.push_back(cell_json(c, data.significant_digits));
        }
        j["rows"].push_back(std::move(r));
    }
    j["references"] = data.references;
    os << j.dump(2) << '\n';
}

std::string plot_script(const Dataset& data, const RunSpec& spec, const std::string& data_path)
{
    std::ostringstream py;
    const bool log_x = spec.command == Command::sweep;
    py << "#!/usr/bin/env python3\n"
       << "# Regenerates the figure for a casimir-stress " << to_string(spec.command) << " run.\n"
       << "import csv\nimport json\nimport sys\n\n"
       << "import matplotlib\nmatplotlib.use(\"Agg\")\nimport matplotlib.pyplot as plt\n\n"
       << "DATA = " << nlohmann::json(data_path).dump() << "\n"
       << "REFERENCES = json.loads(" << nlohmann::json(data.references.dump()).dump() << ")\n\n"
       << "def load():\n"
       << "    if DATA.endswith(\".json\"):\n"
       << "        with open(DATA) as fh:\n"
       << "            doc = json.load(fh)\n"
       << "        return doc[\"columns\"], doc[\"rows\"]\n"
       << "    with open(DATA, newline=\"\") as fh:\n"
       << "        rows = list(csv.reader(fh))\n"
       << "    return rows[0], rows[1:]\n\n"
       << "def number(v):\n"
       << "    try:\n"
       << "        return float(v)\n"
       << "    except (TypeError, ValueError):\n"
       << "        return float(\"nan\")\n\n"
       << "columns, rows = load()\n"
       << "x = [number(r[0]) for r in rows]\n"
       << "fig, ax = plt.subplots()\n"
       << "for i, name in enumerate(columns[1:], start=1):\n"
       << "    if name.startswith(\"err_\") or name == \"status\":\n"
       << "        continue\n"
       << "    ax.plot(x, [number(r[i]) for r in rows], label=name)\n";
    if (spec.command == Command::sweep) {
        py << "ref = {\"t00\": \"U_pc\", \"txx\": \"Txx_pc\", \"tyy\": \"Txx_pc\", \"tzz\": \"Tzz_pc\",\n"
           << "       \"nec_x\": \"nec_x_pc\", \"nec_z\": \"nec_z_pc\"}.get(columns[1])\n"
           << "if ref and REFERENCES.get(ref) is not None:\n"
           << "    ax.axhline(REFERENCES[ref], color=\"k\", lw=0.8, label=\"perfect conductor\")\n";
    }
    if (log_x) {
        py << "ax.set_xscale(\"log\")\n";
    }
    py << "ax.axhline(0.0, color=\"0.6\", lw=0.5)\n"
       << "ax.set_xlabel(columns[0])\n"
       << "ax.legend()\n"
       << "out = sys.argv[1] if len(sys.argv) > 1 else DATA.rsplit(\".\", 1)[0] + \".png\"\n"
       << "fig.savefig(out, dpi=150)\n";
    return py.str();
}

}  // namespace casimir::cli
