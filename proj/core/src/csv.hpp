#pragma once

// Internal CSV helpers shared by the table loaders. Comma-separated, "."
// decimal separator, UTF-8, mandatory header; leading '#' lines are comments.

#include <fstream>
#include <string>
#include <vector>

namespace benchsel::csv {

std::vector<std::string> split_line(const std::string& line);

/// Reads all non-comment lines; the first is the header. Throws FormatError
/// when the file cannot be opened or has no header line.
struct File {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};
File read(const std::string& path);

/// strtod-based full-token parse; returns false on trailing garbage/empty.
bool parse_double(const std::string& token, double& out);
bool parse_int(const std::string& token, long& out);

}  // namespace benchsel::csv
