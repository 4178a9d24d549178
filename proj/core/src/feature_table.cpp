#include "benchsel/feature_table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>

#include "benchsel/error.hpp"
#include "csv.hpp"

namespace benchsel {

namespace {

const std::vector<std::string> kKeyColumns = {"suite", "problem_id",
                                              "instance_id", "dimension"};

InstanceKey parse_key_fields(const std::vector<std::string>& fields,
                             std::size_t row, const std::string& path) {
  long problem = 0, instance = 0, dimension = 0;
  if (!csv::parse_int(fields[1], problem) ||
      !csv::parse_int(fields[2], instance) ||
      !csv::parse_int(fields[3], dimension))
    throw ParseError("non-integer key field in " + path + " at data row " +
                     std::to_string(row + 1));
  if (problem <= 0 || instance <= 0 || dimension <= 0)
    throw ParseError("non-positive key field in " + path + " at data row " +
                     std::to_string(row + 1));
  return InstanceKey{fields[0], static_cast<int>(problem),
                     static_cast<int>(instance), static_cast<int>(dimension)};
}

}  // namespace

FeatureTable::FeatureTable(std::vector<InstanceKey> keys,
                           std::vector<std::string> feature_names,
                           std::vector<double> values)
    : keys_(std::move(keys)),
      feature_names_(std::move(feature_names)),
      values_(std::move(values)) {
  if (values_.size() != keys_.size() * feature_names_.size())
    throw DomainError("feature table shape mismatch: " +
                      std::to_string(values_.size()) + " cells for " +
                      std::to_string(keys_.size()) + " x " +
                      std::to_string(feature_names_.size()));
  std::set<InstanceKey> seen;
  for (const auto& key : keys_)
    if (!seen.insert(key).second)
      throw IntegrityError("duplicate instance key: " + key.to_string());
  std::set<std::string> names(feature_names_.begin(), feature_names_.end());
  if (names.size() != feature_names_.size())
    throw IntegrityError("duplicate feature column name");
  for (double v : values_)
    if (!std::isfinite(v))
      throw DomainError("non-finite feature value in table");
}

std::size_t FeatureTable::row_index(const InstanceKey& key) const {
  for (std::size_t i = 0; i < keys_.size(); ++i)
    if (keys_[i] == key) return i;
  throw IntegrityError("instance key not in table: " + key.to_string());
}

bool FeatureTable::contains(const InstanceKey& key) const {
  return std::find(keys_.begin(), keys_.end(), key) != keys_.end();
}

std::size_t FeatureTable::column_index(const std::string& name) const {
  const auto it = std::find(feature_names_.begin(), feature_names_.end(), name);
  if (it == feature_names_.end())
    throw FormatError("no such feature column: " + name);
  return static_cast<std::size_t>(it - feature_names_.begin());
}

FeatureTable FeatureTable::drop_columns(
    const std::vector<std::string>& names) const {
  std::vector<bool> keep(cols(), true);
  for (const auto& name : names) keep[column_index(name)] = false;

  std::vector<std::string> kept_names;
  for (std::size_t j = 0; j < cols(); ++j)
    if (keep[j]) kept_names.push_back(feature_names_[j]);

  std::vector<double> kept_values;
  kept_values.reserve(rows() * kept_names.size());
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols(); ++j)
      if (keep[j]) kept_values.push_back(at(i, j));

  return FeatureTable(keys_, std::move(kept_names), std::move(kept_values));
}

FeatureTable FeatureTable::select_rows(
    const std::vector<InstanceKey>& subset) const {
  std::vector<double> values;
  values.reserve(subset.size() * cols());
  for (const auto& key : subset) {
    const auto r = row(row_index(key));
    values.insert(values.end(), r.begin(), r.end());
  }
  return FeatureTable(subset, feature_names_, std::move(values));
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

FeatureTable load_feature_table(const std::string& path,
                                const std::vector<std::string>& drop_columns) {
  const csv::File file = csv::read(path);
  if (file.header.size() < kKeyColumns.size())
    throw FormatError("feature file " + path + " needs at least the " +
                      std::to_string(kKeyColumns.size()) + " key columns");
  for (std::size_t j = 0; j < kKeyColumns.size(); ++j)
    if (file.header[j] != kKeyColumns[j])
      throw FormatError("feature file " + path + ": column " +
                        std::to_string(j + 1) + " must be '" + kKeyColumns[j] +
                        "', got '" + file.header[j] + "'");

  std::vector<std::string> all_names(file.header.begin() + kKeyColumns.size(),
                                     file.header.end());
  std::vector<bool> keep(all_names.size(), true);
  for (const auto& name : drop_columns) {
    const auto it = std::find(all_names.begin(), all_names.end(), name);
    if (it == all_names.end())
      throw FormatError("drop column not in header: " + name);
    keep[static_cast<std::size_t>(it - all_names.begin())] = false;
  }

  std::vector<std::string> names;
  for (std::size_t j = 0; j < all_names.size(); ++j)
    if (keep[j]) names.push_back(all_names[j]);

  std::vector<InstanceKey> keys;
  std::vector<double> values;
  values.reserve(file.rows.size() * names.size());
  for (std::size_t r = 0; r < file.rows.size(); ++r) {
    const auto& fields = file.rows[r];
    if (fields.size() != file.header.size())
      throw FormatError("row " + std::to_string(r + 1) + " in " + path +
                        " has " + std::to_string(fields.size()) +
                        " fields, header has " +
                        std::to_string(file.header.size()));
    keys.push_back(parse_key_fields(fields, r, path));
    for (std::size_t j = 0; j < all_names.size(); ++j) {
      if (!keep[j]) continue;
      double v = 0;
      const std::string& cell = fields[kKeyColumns.size() + j];
      if (!csv::parse_double(cell, v) || !std::isfinite(v))
        throw ParseError("non-numeric feature cell at data row " +
                         std::to_string(r + 1) + ", column '" + all_names[j] +
                         "' in " + path);
      values.push_back(v);
    }
  }
  return FeatureTable(std::move(keys), std::move(names), std::move(values));
}

void save_feature_table(const FeatureTable& table, const std::string& path,
                        const std::vector<std::string>& comments) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write file: " + path);
  for (const auto& comment : comments) out << "# " << comment << "\n";
  out << "suite,problem_id,instance_id,dimension";
  for (const auto& name : table.feature_names()) out << "," << name;
  out << "\n";
  for (std::size_t i = 0; i < table.rows(); ++i) {
    const auto& key = table.keys()[i];
    out << key.suite << "," << key.problem_id << "," << key.instance_id << ","
        << key.dimension;
    for (std::size_t j = 0; j < table.cols(); ++j)
      out << "," << format_double(table.at(i, j));
    out << "\n";
  }
}

FeatureTable median_aggregate(const std::vector<FeatureTable>& tables) {
  if (tables.empty()) throw AlignmentError("median_aggregate of zero tables");
  const FeatureTable& first = tables.front();
  for (const auto& t : tables) {
    if (t.keys() != first.keys())
      throw AlignmentError("median_aggregate: tables disagree on keys");
    if (t.feature_names() != first.feature_names())
      throw AlignmentError("median_aggregate: tables disagree on columns");
  }

  const std::size_t n = tables.size();
  std::vector<double> cell(n);
  std::vector<double> out(first.rows() * first.cols());
  for (std::size_t i = 0; i < first.rows(); ++i) {
    for (std::size_t j = 0; j < first.cols(); ++j) {
      for (std::size_t t = 0; t < n; ++t) cell[t] = tables[t].at(i, j);
      std::sort(cell.begin(), cell.end());
      const double median = (n % 2 == 1)
                                ? cell[n / 2]
                                : 0.5 * (cell[n / 2 - 1] + cell[n / 2]);
      out[i * first.cols() + j] = median;
    }
  }
  return FeatureTable(first.keys(), first.feature_names(), std::move(out));
}

}  // namespace benchsel
