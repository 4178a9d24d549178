#include "csv.hpp"

#include <cerrno>
#include <cstdlib>

#include "benchsel/error.hpp"

namespace benchsel::csv {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string::size_type start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  if (!fields.empty() && !fields.back().empty() && fields.back().back() == '\r')
    fields.back().pop_back();
  return fields;
}

File read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open file: " + path);

  File file;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') continue;
    if (!have_header) {
      if (line.empty()) continue;
      file.header = split_line(line);
      have_header = true;
      continue;
    }
    if (line.empty()) continue;
    file.rows.push_back(split_line(line));
  }
  if (!have_header)
    throw FormatError("missing header row in " + path);
  return file;
}

bool parse_double(const std::string& token, double& out) {
  if (token.empty()) return false;
  errno = 0;
  char* end = nullptr;
  out = std::strtod(token.c_str(), &end);
  return end == token.c_str() + token.size() && errno != ERANGE;
}

bool parse_int(const std::string& token, long& out) {
  if (token.empty()) return false;
  errno = 0;
  char* end = nullptr;
  out = std::strtol(token.c_str(), &end, 10);
  return end == token.c_str() + token.size() && errno != ERANGE;
}

}  // namespace benchsel::csv
