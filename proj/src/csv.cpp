#include "tiltbend/csv.hpp"

#include <cstdio>

#include "tiltbend/errors.hpp"

namespace tiltbend {

const std::vector<CsvSchema>& csv_schema_registry() {
    static const std::vector<CsvSchema> registry = {
        {"graph_faces", 1, {"face", "jac", "theta_dot_nu", "f_y_value", "defect"}},
        {"sweep_cells",
         1,
         {"level",        "eps",          "faces",      "tilt",           "bending",
          "total",        "area",         "willmore_quarter",             "total_gauss",
          "graph_area",   "max_defect",   "defect_32_integral",           "pair_phi_star",
          "pair_phi_wedge", "pair_ratio", "excluded_faces",               "seed",
          "mesh_hash",    "config_hash"}},
        {"first_variation", 1, {"fn_id", "level", "res_1", "res_2", "res_3", "max_component"}},
        {"verify_residuals", 1, {"identity", "trials", "max_residual"}},
    };
    return registry;
}

const CsvSchema& csv_schema(const std::string& name) {
    for (const auto& s : csv_schema_registry())
        if (s.name == name) return s;
    throw ParseError("csv_schema: unregistered schema '" + name + "'");
}

CsvWriter::CsvWriter(std::ostream& os, const CsvSchema& schema) : os_(os), schema_(schema) {
    // schema check before any write: the schema must be the registered one
    const CsvSchema& reg = csv_schema(schema.name);
    if (reg.version != schema.version || reg.columns != schema.columns)
        throw ParseError("CsvWriter: schema '" + schema.name +
                         "' does not match the registered version");
    write_row(schema_.columns);
}

void CsvWriter::write_row(const std::vector<std::string>& cells) {
    if (cells.size() != schema_.columns.size())
        throw ParseError("CsvWriter: row width " + std::to_string(cells.size()) +
                         " does not match schema '" + schema_.name + "' (" +
                         std::to_string(schema_.columns.size()) + " columns)");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os_ << ',';
        const std::string& c = cells[i];
        const bool needs_quote = c.find_first_of(",\"\r\n") != std::string::npos;
        if (!needs_quote) {
            os_ << c;
            continue;
        }
        os_ << '"';
        for (char ch : c) {
            if (ch == '"') os_ << '"';
            os_ << ch;
        }
        os_ << '"';
    }
    os_ << '\n';
}

std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace tiltbend
