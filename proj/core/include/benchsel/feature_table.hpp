#pragma once

#include <span>
#include <string>
#include <vector>

#include "benchsel/instance_key.hpp"

namespace benchsel {

/// Instance-keyed dense matrix of landscape feature values, one row per
/// problem instance. Immutable after construction; cells are validated finite
/// (rows/columns with missing values must be dropped explicitly at load time,
/// never silently).
class FeatureTable {
 public:
  FeatureTable() = default;

  /// Validates: unique keys, |values| == |keys| * |feature_names|, all cells
  /// finite. Throws IntegrityError / DomainError otherwise.
  FeatureTable(std::vector<InstanceKey> keys,
               std::vector<std::string> feature_names,
               std::vector<double> values);

  std::size_t rows() const { return keys_.size(); }
  std::size_t cols() const { return feature_names_.size(); }

  const std::vector<InstanceKey>& keys() const { return keys_; }
  const std::vector<std::string>& feature_names() const {
    return feature_names_;
  }
  const std::vector<double>& values() const { return values_; }

  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * cols(), cols()};
  }
  double at(std::size_t i, std::size_t j) const {
    return values_[i * cols() + j];
  }

  /// Row index of a key; throws IntegrityError when absent.
  std::size_t row_index(const InstanceKey& key) const;
  bool contains(const InstanceKey& key) const;

  /// Column index by name; throws FormatError naming the column when absent.
  std::size_t column_index(const std::string& name) const;

  /// New table without the named columns; every name must exist.
  FeatureTable drop_columns(const std::vector<std::string>& names) const;

  /// New table restricted to the given keys, in the given order.
  FeatureTable select_rows(const std::vector<InstanceKey>& subset) const;

  bool operator==(const FeatureTable&) const = default;

 private:
  std::vector<InstanceKey> keys_;
  std::vector<std::string> feature_names_;
  std::vector<double> values_;  // row-major, rows() x cols()
};

/// Loads a feature CSV (header: suite,problem_id,instance_id,dimension,
/// <feature...>; leading '#' lines are ignored). Columns listed in
/// drop_columns are removed before cell parsing, so a column with missing
/// values can be ingested by dropping it. Row order is preserved.
FeatureTable load_feature_table(const std::string& path,
                                const std::vector<std::string>& drop_columns = {});

/// Writes the table in the exact format load_feature_table reads. Values are
/// rendered with 17 significant digits so save/load round-trips bit-exactly.
/// Optional comment lines (without leading '#') are emitted first.
void save_feature_table(const FeatureTable& table, const std::string& path,
                        const std::vector<std::string>& comments = {});

/// Per-cell median across repetition tables. All tables must share keys and
/// feature names in identical order; even counts take the mean of the two
/// central values. Permutation-invariant in the input order.
FeatureTable median_aggregate(const std::vector<FeatureTable>& tables);

/// Canonical decimal rendering used by all CSV writers (17 significant
/// digits; round-trips any finite double exactly).
std::string format_double(double v);

}  // namespace benchsel
