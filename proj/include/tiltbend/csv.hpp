#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tiltbend {

struct CsvSchema {
    std::string name;
    int version = 1;
    std::vector<std::string> columns;
};

/// Registered schemas, looked up by name; writing against an unregistered
/// name or with a mismatched column count throws ParseError. Registration
/// is fixed at startup so files stay comparable across runs.
const CsvSchema& csv_schema(const std::string& name);
const std::vector<CsvSchema>& csv_schema_registry();

/// RFC 4180 writer: header row first, one record per row, quoting applied
/// to cells containing comma, quote, or newline.
class CsvWriter {
  public:
    CsvWriter(std::ostream& os, const CsvSchema& schema);
    void write_row(const std::vector<std::string>& cells);

  private:
    std::ostream& os_;
    CsvSchema schema_;
};

/// Shortest round-trip double formatting used in every numeric artifact.
std::string fmt_g17(double v);

}  // namespace tiltbend
