#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace cdlab::csv {

// Comma-separated table with a leading "# key=value" comment block. Values
// are kept as strings so a write/read/write cycle is byte-identical.
struct Table {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

// Shortest representation that round-trips the double exactly.
std::string format_double(double v);
double parse_double(const std::string& s);

void write(std::ostream& out, const Table& table);
void write_file(const std::string& path, const Table& table);
Table read(std::istream& in);
Table read_file(const std::string& path);

}  // namespace cdlab::csv
