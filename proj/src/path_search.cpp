#include "eonsim/path_search.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>
#include <utility>

namespace eonsim {

namespace {

void check_endpoints(const Network& net, int s, int d) {
  if (!net.contains_vertex(s) || !net.contains_vertex(d)) {
    throw std::invalid_argument("unknown vertex");
  }
  if (s == d) {
    throw std::invalid_argument("source and destination must differ");
  }
}

PathRecord make_record(std::vector<int> nodes, SlotBitmap bitmap, double length_km) {
  PathRecord record;
  record.hop_count = static_cast<int>(nodes.size()) - 1;
  record.nodes = std::move(nodes);
  record.bitmap = std::move(bitmap);
  record.length_km = length_km;
  return record;
}

struct Partial {
  std::vector<int> nodes;
  SlotBitmap bitmap;
  double length_km = 0.0;
};

// Shared frontier expansion for both candidate-path variants. `keep`
// decides whether an extended bitmap is still worth carrying.
template <typename Keep>
CandidateSearch search_candidates(const Network& net, int s, int d,
                                  std::size_t k, const SearchLimits& limits,
                                  Keep&& keep) {
  check_endpoints(net, s, d);
  if (k == 0) {
    throw std::invalid_argument("path budget k must be at least 1");
  }

  CandidateSearch out;
  std::vector<Partial> frontier;
  frontier.push_back(Partial{{s}, SlotBitmap::all_free(static_cast<std::size_t>(net.slot_count())), 0.0});

  while (!frontier.empty()) {
    std::vector<Partial> next;
    for (const Partial& partial : frontier) {
      const int u = partial.nodes.back();
      for (const auto& [v, edge_index] : net.neighbors(u)) {
        if (std::find(partial.nodes.begin(), partial.nodes.end(), v) !=
            partial.nodes.end()) {
          continue;
        }
        const Edge& edge = net.edge(static_cast<std::size_t>(edge_index));
        SlotBitmap extended = partial.bitmap;
        extended &= edge.bitmap;
        if (!keep(extended)) continue;

        std::vector<int> nodes = partial.nodes;
        nodes.push_back(v);
        const double length = partial.length_km + edge.length_km;
        if (v == d) {
          out.paths.push_back(make_record(std::move(nodes), std::move(extended), length));
          if (out.paths.size() == k) return out;
        } else {
          if (next.size() >= limits.max_frontier) {
            out.frontier_overflow = true;
            return out;
          }
          next.push_back(Partial{std::move(nodes), std::move(extended), length});
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace

CandidateSearch candidate_paths_all(const Network& net, int s, int d,
                                    std::size_t k, const SearchLimits& limits) {
  return search_candidates(net, s, d, k, limits,
                           [](const SlotBitmap& b) { return b.any_free(); });
}

CandidateSearch candidate_paths_feasible(const Network& net, int s, int d,
                                         std::size_t required_slots,
                                         std::size_t k,
                                         const SearchLimits& limits) {
  if (required_slots == 0) {
    throw std::invalid_argument("required slot count must be at least 1");
  }
  return search_candidates(net, s, d, k, limits, [required_slots](const SlotBitmap& b) {
    return b.is_feasible(required_slots);
  });
}

namespace {

double edge_weight(const Edge& edge, PathMetric metric) {
  return metric == PathMetric::Km ? edge.length_km : 1.0;
}

struct Label {
  double cost = 0.0;
  std::vector<int> nodes;
  double length_km = 0.0;
};

// cost first, then lexicographic node sequence; total order keeps Dijkstra
// deterministic when several paths tie on weight.
bool label_less(const Label& a, const Label& b) {
  if (a.cost != b.cost) return a.cost < b.cost;
  return a.nodes < b.nodes;
}

struct LabelGreater {
  bool operator()(const Label& a, const Label& b) const { return label_less(b, a); }
};

// Dijkstra with optional node/edge bans (used directly and as Yen's spur
// subroutine). Weights are non-negative, so the first settled label per
// vertex is final.
std::optional<Label> dijkstra(const Network& net, int s, int d, PathMetric metric,
                              const std::vector<bool>* banned_nodes,
                              const std::vector<bool>* banned_edges) {
  std::priority_queue<Label, std::vector<Label>, LabelGreater> queue;
  std::vector<bool> settled(static_cast<std::size_t>(net.vertex_count()), false);
  queue.push(Label{0.0, {s}, 0.0});

  while (!queue.empty()) {
    Label current = queue.top();
    queue.pop();
    const int u = current.nodes.back();
    if (u == d) return current;
    if (settled[static_cast<std::size_t>(u)]) continue;
    settled[static_cast<std::size_t>(u)] = true;

    for (const auto& [v, edge_index] : net.neighbors(u)) {
      if (settled[static_cast<std::size_t>(v)]) continue;
      if (banned_nodes && (*banned_nodes)[static_cast<std::size_t>(v)]) continue;
      if (banned_edges && (*banned_edges)[static_cast<std::size_t>(edge_index)]) continue;
      const Edge& edge = net.edge(static_cast<std::size_t>(edge_index));
      Label next;
      next.cost = current.cost + edge_weight(edge, metric);
      next.nodes = current.nodes;
      next.nodes.push_back(v);
      next.length_km = current.length_km + edge.length_km;
      queue.push(std::move(next));
    }
  }
  return std::nullopt;
}

PathRecord record_from_label(const Network& net, const Label& label) {
  SlotBitmap bitmap = SlotBitmap::all_free(static_cast<std::size_t>(net.slot_count()));
  for (std::size_t i = 0; i + 1 < label.nodes.size(); ++i) {
    bitmap &= net.edge_between(label.nodes[i], label.nodes[i + 1]).bitmap;
  }
  return make_record(label.nodes, std::move(bitmap), label.length_km);
}

}  // namespace

std::optional<PathRecord> shortest_path(const Network& net, int s, int d,
                                        PathMetric metric) {
  check_endpoints(net, s, d);
  const auto label = dijkstra(net, s, d, metric, nullptr, nullptr);
  if (!label) return std::nullopt;
  return record_from_label(net, *label);
}

std::vector<PathRecord> k_shortest_paths(const Network& net, int s, int d,
                                         std::size_t k, PathMetric metric) {
  check_endpoints(net, s, d);
  std::vector<PathRecord> result;
  if (k == 0) return result;

  std::vector<Label> accepted;
  const auto first = dijkstra(net, s, d, metric, nullptr, nullptr);
  if (!first) return result;
  accepted.push_back(*first);

  // Candidate deviations, cheapest first.
  std::vector<Label> candidates;

  while (accepted.size() < k) {
    const Label& previous = accepted.back();
    std::vector<bool> banned_nodes(static_cast<std::size_t>(net.vertex_count()), false);

    for (std::size_t spur_index = 0; spur_index + 1 < previous.nodes.size(); ++spur_index) {
      const int spur_node = previous.nodes[spur_index];
      const std::vector<int> root(previous.nodes.begin(),
                                  previous.nodes.begin() + static_cast<std::ptrdiff_t>(spur_index) + 1);

      std::vector<bool> banned_edges(net.edge_count(), false);
      for (const Label& path : accepted) {
        if (path.nodes.size() > spur_index + 1 &&
            std::equal(root.begin(), root.end(), path.nodes.begin())) {
          const int index = net.edge_index_between(path.nodes[spur_index],
                                                   path.nodes[spur_index + 1]);
          if (index >= 0) banned_edges[static_cast<std::size_t>(index)] = true;
        }
      }
      // Root nodes (minus the spur itself) must not reappear on the spur path.
      for (std::size_t i = 0; i < spur_index; ++i) {
        banned_nodes[static_cast<std::size_t>(previous.nodes[i])] = true;
      }

      const auto spur = dijkstra(net, spur_node, d, metric, &banned_nodes, &banned_edges);
      if (spur) {
        Label total;
        total.nodes = root;
        total.nodes.insert(total.nodes.end(), spur->nodes.begin() + 1, spur->nodes.end());
        double root_cost = 0.0;
        double root_km = 0.0;
        for (std::size_t i = 0; i + 1 < root.size(); ++i) {
          const Edge& edge = net.edge_between(root[i], root[i + 1]);
          root_cost += edge_weight(edge, metric);
          root_km += edge.length_km;
        }
        total.cost = root_cost + spur->cost;
        total.length_km = root_km + spur->length_km;

        const auto already_known = [&total](const Label& other) {
          return other.nodes == total.nodes;
        };
        if (std::none_of(accepted.begin(), accepted.end(), already_known) &&
            std::none_of(candidates.begin(), candidates.end(), already_known)) {
          candidates.push_back(std::move(total));
        }
      }

      std::fill(banned_nodes.begin(), banned_nodes.end(), false);
    }

    if (candidates.empty()) break;
    const auto best = std::min_element(candidates.begin(), candidates.end(), label_less);
    accepted.push_back(*best);
    candidates.erase(best);
  }

  result.reserve(accepted.size());
  for (const Label& label : accepted) {
    result.push_back(record_from_label(net, label));
  }
  return result;
}

}  // namespace eonsim
