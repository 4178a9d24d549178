#include "benchsel/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>

#include "benchsel/error.hpp"
#include "benchsel/parallel.hpp"

namespace benchsel {

SimilarityGraph::SimilarityGraph(
    std::vector<InstanceKey> nodes,
    std::vector<std::pair<std::size_t, std::size_t>> edges, double threshold)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), threshold_(threshold) {
  for (auto& [u, v] : edges_) {
    if (u == v) throw DomainError("similarity graph: self-loop");
    if (u > v) std::swap(u, v);
    if (v >= nodes_.size())
      throw DomainError("similarity graph: edge endpoint out of range");
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw DomainError("similarity graph: duplicate edge");

  std::vector<std::size_t> degree(nodes_.size(), 0);
  for (const auto& [u, v] : edges_) {
    ++degree[u];
    ++degree[v];
  }
  adjacency_start_.assign(nodes_.size() + 1, 0);
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    adjacency_start_[i + 1] = adjacency_start_[i] + degree[i];
  adjacency_.resize(2 * edges_.size());
  std::vector<std::size_t> cursor(adjacency_start_.begin(),
                                  adjacency_start_.end() - 1);
  for (const auto& [u, v] : edges_) {
    adjacency_[cursor[u]++] = v;
    adjacency_[cursor[v]++] = u;
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    std::sort(adjacency_.begin() + adjacency_start_[i],
              adjacency_.begin() + adjacency_start_[i + 1]);
}

std::span<const std::size_t> SimilarityGraph::neighbors(std::size_t i) const {
  return {adjacency_.data() + adjacency_start_[i],
          adjacency_start_[i + 1] - adjacency_start_[i]};
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw DomainError("cosine_similarity: length mismatch");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na <= 0.0 || nb <= 0.0)
    throw DomainError("cosine_similarity: zero-norm vector");
  const double r = dot / (std::sqrt(na) * std::sqrt(nb));
  // Snap rounding noise at the boundary so identical (and positively
  // proportional) vectors compare as exactly 1; threshold-1 graphs rely on
  // this. 1e-14 is far below any meaningful angular resolution here.
  if (r > 1.0 - 1e-14) return 1.0;
  if (r < -1.0 + 1e-14) return -1.0;
  return r;
}

namespace {

std::vector<double> effective_rows(const FeatureTable& table,
                                   const GraphOptions& options) {
  std::vector<double> values(table.values());
  if (options.rescale_columns && table.rows() > 0) {
    for (std::size_t j = 0; j < table.cols(); ++j) {
      double lo = table.at(0, j), hi = table.at(0, j);
      for (std::size_t i = 1; i < table.rows(); ++i) {
        lo = std::min(lo, table.at(i, j));
        hi = std::max(hi, table.at(i, j));
      }
      const double range = hi - lo;
      for (std::size_t i = 0; i < table.rows(); ++i) {
        double& cell = values[i * table.cols() + j];
        cell = range > 0.0 ? (cell - lo) / range : 0.0;
      }
    }
  }
  return values;
}

void check_nonzero_rows(const FeatureTable& table,
                        const std::vector<double>& values) {
  for (std::size_t i = 0; i < table.rows(); ++i) {
    double norm = 0.0;
    for (std::size_t j = 0; j < table.cols(); ++j) {
      const double v = values[i * table.cols() + j];
      norm += v * v;
    }
    if (norm <= 0.0)
      throw IntegrityError("zero-norm feature row for instance " +
                           table.keys()[i].to_string());
  }
}

}  // namespace

std::vector<double> similarity_matrix(const FeatureTable& table,
                                      const GraphOptions& options) {
  if (table.rows() < 1)
    throw DomainError("similarity_matrix: table has no rows");
  const std::size_t n = table.rows();
  const std::size_t d = table.cols();
  const std::vector<double> values = effective_rows(table, options);
  check_nonzero_rows(table, values);

  std::vector<double> sims(n * n, 1.0);
  parallel_for(n, [&](std::size_t i) {
    const std::span<const double> row_i(values.data() + i * d, d);
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::span<const double> row_j(values.data() + j * d, d);
      const double s = cosine_similarity(row_i, row_j);
      sims[i * n + j] = s;
      sims[j * n + i] = s;
    }
  });
  return sims;
}

SimilarityGraph build_graph(const FeatureTable& table, double threshold,
                            const GraphOptions& options) {
  const std::vector<double> sims = similarity_matrix(table, options);
  const std::size_t n = table.rows();
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (sims[i * n + j] >= threshold) edges.emplace_back(i, j);
  return SimilarityGraph(table.keys(), std::move(edges), threshold);
}

DegreeStatistics degree_statistics(const SimilarityGraph& graph) {
  DegreeStatistics out;
  const std::size_t n = graph.node_count();
  out.degrees.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.degrees[i] = graph.degree(i);
  if (n == 0) return out;

  out.min = *std::min_element(out.degrees.begin(), out.degrees.end());
  out.max = *std::max_element(out.degrees.begin(), out.degrees.end());
  double sum = 0.0;
  for (const std::size_t deg : out.degrees) sum += static_cast<double>(deg);
  out.mean = sum / static_cast<double>(n);

  std::vector<std::size_t> sorted(out.degrees);
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < n; ++i) {
    if (i + 1 < n && sorted[i + 1] == sorted[i]) continue;
    out.ecdf.emplace_back(sorted[i],
                          static_cast<double>(i + 1) / static_cast<double>(n));
  }
  return out;
}

std::vector<std::vector<std::size_t>> connected_components(
    const SimilarityGraph& graph) {
  const std::size_t n = graph.node_count();
  std::vector<std::vector<std::size_t>> components;
  std::vector<bool> seen(n, false);
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> component;
    std::vector<std::size_t> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      component.push_back(u);
      for (const std::size_t v : graph.neighbors(u)) {
        if (seen[v]) continue;
        seen[v] = true;
        stack.push_back(v);
      }
    }
    std::sort(component.begin(), component.end());
    components.push_back(std::move(component));
  }
  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) {
              if (a.size() != b.size()) return a.size() > b.size();
              return a.front() < b.front();
            });
  return components;
}

void save_graph(const SimilarityGraph& graph, const FeatureTable& table,
                const std::string& edge_path, const std::string& header_path,
                const GraphOptions& options,
                const std::vector<std::string>& config_lines) {
  const std::vector<double> sims = similarity_matrix(table, options);
  const std::size_t n = table.rows();

  std::ofstream edges(edge_path);
  if (!edges) throw FormatError("cannot write file: " + edge_path);
  for (const auto& line : config_lines) edges << "# " << line << "\n";
  for (const auto& [u, v] : graph.edges())
    edges << graph.nodes()[u].to_string() << " " << graph.nodes()[v].to_string()
          << " " << format_double(sims[u * n + v]) << "\n";

  nlohmann::json header;
  header["threshold"] = graph.threshold();
  header["node_count"] = graph.node_count();
  header["edge_count"] = graph.edge_count();
  header["rescale_columns"] = options.rescale_columns;
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& key : graph.nodes()) nodes.push_back(key.to_string());
  header["nodes"] = std::move(nodes);
  for (const auto& line : config_lines) header["config"].push_back(line);

  std::ofstream out(header_path);
  if (!out) throw FormatError("cannot write file: " + header_path);
  out << header.dump(2) << "\n";
}

}  // namespace benchsel
