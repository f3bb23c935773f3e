#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oge {

// Shortest decimal representation that round-trips the exact double value.
std::string format_double(double v);

std::vector<std::string> split_csv_line(const std::string& line);

// A parsed CSV file: comment lines (leading '#') are collected separately,
// the first non-comment row is the header. No quoting support; the writers
// in this project never emit quoted fields.
struct CsvTable {
    std::vector<std::string> comments;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

double parse_double(const std::string& s);  // ConfigError on garbage
long parse_long(const std::string& s);

// FNV-1a 64-bit, used for config provenance hashes
std::uint64_t fnv1a64(const std::string& s);
std::string hex64(std::uint64_t v);

}
