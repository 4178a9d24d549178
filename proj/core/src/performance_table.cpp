#include "benchsel/performance_table.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "benchsel/error.hpp"
#include "benchsel/feature_table.hpp"
#include "csv.hpp"

namespace benchsel {

PerformanceTable::PerformanceTable(std::vector<RunObservation> records)
    : records_(std::move(records)) {
  std::sort(records_.begin(), records_.end(),
            [](const RunObservation& a, const RunObservation& b) {
              return std::tie(a.key, a.algorithm, a.run_index) <
                     std::tie(b.key, b.algorithm, b.run_index);
            });

  packed_values_.reserve(records_.size());
  std::size_t group_start = 0;
  for (std::size_t i = 0; i <= records_.size(); ++i) {
    const bool boundary =
        i == records_.size() ||
        records_[i].key != records_[group_start].key ||
        records_[i].algorithm != records_[group_start].algorithm;
    if (!boundary) continue;
    if (i > group_start) {
      const auto& head = records_[group_start];
      for (std::size_t r = group_start; r < i; ++r) {
        const int expected = static_cast<int>(r - group_start);
        if (records_[r].run_index != expected)
          throw IntegrityError(
              "run indices for (" + head.key.to_string() + ", " +
              head.algorithm + ") are not exactly {0.." +
              std::to_string(i - group_start - 1) + "}");
        packed_values_.push_back(records_[r].value);
      }
      index_[{head.key, head.algorithm}] = {group_start, i - group_start};
    }
    group_start = i;
  }
}

std::vector<std::string> PerformanceTable::algorithms() const {
  std::vector<std::string> names;
  for (const auto& [pair, span] : index_)
    if (names.empty() || names.back() != pair.second)
      names.push_back(pair.second);
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return names;
}

std::vector<InstanceKey> PerformanceTable::instances() const {
  std::vector<InstanceKey> keys;
  for (const auto& [pair, span] : index_)
    if (keys.empty() || keys.back() != pair.first) keys.push_back(pair.first);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

std::span<const double> PerformanceTable::runs(
    const InstanceKey& key, const std::string& algorithm) const {
  const auto it = index_.find({key, algorithm});
  if (it == index_.end())
    throw IntegrityError("no runs for (" + key.to_string() + ", " + algorithm +
                         ")");
  return {packed_values_.data() + it->second.first, it->second.second};
}

bool PerformanceTable::has(const InstanceKey& key,
                           const std::string& algorithm) const {
  return index_.contains({key, algorithm});
}

PerformanceTable load_performance_table(const std::string& path) {
  const csv::File file = csv::read(path);
  const std::vector<std::string> expected = {
      "suite", "problem_id", "instance_id", "dimension",
      "algorithm", "run", "value"};
  if (file.header != expected)
    throw FormatError("performance file " + path +
                      " must have header suite,problem_id,instance_id,"
                      "dimension,algorithm,run,value");

  std::vector<RunObservation> records;
  records.reserve(file.rows.size());
  for (std::size_t r = 0; r < file.rows.size(); ++r) {
    const auto& fields = file.rows[r];
    if (fields.size() != expected.size())
      throw FormatError("row " + std::to_string(r + 1) + " in " + path +
                        " has wrong field count");
    long problem = 0, instance = 0, dimension = 0, run = 0;
    double value = 0;
    if (!csv::parse_int(fields[1], problem) ||
        !csv::parse_int(fields[2], instance) ||
        !csv::parse_int(fields[3], dimension))
      throw ParseError("non-integer key field at data row " +
                       std::to_string(r + 1) + " in " + path);
    if (!csv::parse_int(fields[5], run))
      throw ParseError("non-integer run index at data row " +
                       std::to_string(r + 1) + " in " + path);
    if (run < 0)
      throw ParseError("negative run index at data row " +
                       std::to_string(r + 1) + " in " + path);
    if (!csv::parse_double(fields[6], value) || !std::isfinite(value))
      throw ParseError("non-numeric value at data row " +
                       std::to_string(r + 1) + " in " + path);
    records.push_back(RunObservation{
        InstanceKey{fields[0], static_cast<int>(problem),
                    static_cast<int>(instance), static_cast<int>(dimension)},
        fields[4], static_cast<int>(run), value});
  }
  return PerformanceTable(std::move(records));
}

void save_performance_table(const PerformanceTable& table,
                            const std::string& path,
                            const std::vector<std::string>& comments) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write file: " + path);
  for (const auto& comment : comments) out << "# " << comment << "\n";
  out << "suite,problem_id,instance_id,dimension,algorithm,run,value\n";
  for (const auto& rec : table.records()) {
    out << rec.key.suite << "," << rec.key.problem_id << ","
        << rec.key.instance_id << "," << rec.key.dimension << ","
        << rec.algorithm << "," << rec.run_index << ","
        << format_double(rec.value) << "\n";
  }
}

}  // namespace benchsel
