#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>

namespace benchsel {

/// Identity of one benchmark problem instance. The 4-tuple is unique within
/// any table; dimension is part of the key so mixed-dimension studies stay
/// representable even when a study fixes a single dimension.
struct InstanceKey {
  std::string suite;
  int problem_id = 0;
  int instance_id = 0;
  int dimension = 0;

  auto operator<=>(const InstanceKey&) const = default;

  /// Node-label rendering, e.g. "BBOB_16_5". Dimension is not rendered.
  std::string to_string() const {
    return suite + "_" + std::to_string(problem_id) + "_" +
           std::to_string(instance_id);
  }
};

struct InstanceKeyHash {
  std::size_t operator()(const InstanceKey& k) const {
    std::size_t h = std::hash<std::string>{}(k.suite);
    auto mix = [&h](std::size_t v) {
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    };
    mix(std::hash<int>{}(k.problem_id));
    mix(std::hash<int>{}(k.instance_id));
    mix(std::hash<int>{}(k.dimension));
    return h;
  }
};

}  // namespace benchsel
