#include "eonsim/rsa.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace eonsim {

std::string_view to_string(PolicyKind policy) {
  switch (policy) {
    case PolicyKind::SpKm: return "sp_km";
    case PolicyKind::SpHops: return "sp_hops";
    case PolicyKind::KspKm: return "ksp_km";
    case PolicyKind::Type1: return "type1";
    case PolicyKind::Type2: return "type2";
    case PolicyKind::Type3: return "type3";
  }
  return "unknown";
}

PolicyKind parse_policy(std::string_view name) {
  std::string canonical;
  canonical.reserve(name.size());
  for (char c : name) {
    canonical.push_back(c == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  for (PolicyKind policy : kAllPolicies) {
    if (canonical == to_string(policy)) return policy;
  }
  throw config_error("unknown policy: " + std::string(name));
}

int required_slots(double demanded_gbps, double grid_ghz, int modulation_bits,
                   double guard_band_ghz) {
  if (demanded_gbps <= 0.0) {
    throw std::invalid_argument("demanded bandwidth must be positive");
  }
  if (grid_ghz <= 0.0 || modulation_bits <= 0) {
    throw std::invalid_argument("grid size and modulation level must be positive");
  }
  if (guard_band_ghz < 0.0) {
    throw std::invalid_argument("guard band cannot be negative");
  }
  const double slot_gbps = grid_ghz * static_cast<double>(modulation_bits);
  const int data = static_cast<int>(std::ceil(demanded_gbps / slot_gbps - 1e-9));
  const int guard = static_cast<int>(std::ceil(guard_band_ghz / grid_ghz - 1e-9));
  return data + guard;
}

namespace {

void check_request(const Network& net, const LightpathRequest& request) {
  if (!net.contains_vertex(request.s) || !net.contains_vertex(request.d)) {
    throw std::invalid_argument("request endpoints unknown to the network");
  }
  if (request.s == request.d) {
    throw std::invalid_argument("request source equals destination");
  }
  if (request.required_slots < 1) {
    throw std::invalid_argument("request needs at least one slot");
  }
  if (request.k < 1) {
    throw std::invalid_argument("path budget k must be at least 1");
  }
}

std::optional<Assignment> assign_first_fit(const LightpathRequest& request,
                                           PathRecord path) {
  const auto range = path.bitmap.first_fit(static_cast<std::size_t>(request.required_slots));
  if (!range) return std::nullopt;
  return Assignment{request.id, std::move(path), *range};
}

void note_overflow(RouteStats* stats, const CandidateSearch& search) {
  if (stats && search.frontier_overflow) {
    ++stats->frontier_overflows;
  }
}

}  // namespace

std::optional<Assignment> route_type1(const Network& net,
                                      const LightpathRequest& request,
                                      const SearchLimits& limits, RouteStats* stats) {
  check_request(net, request);
  auto search = candidate_paths_all(net, request.s, request.d,
                                    static_cast<std::size_t>(request.k), limits);
  note_overflow(stats, search);
  if (search.frontier_overflow) return std::nullopt;
  const auto required = static_cast<std::size_t>(request.required_slots);
  for (PathRecord& path : search.paths) {
    if (path.bitmap.max_contiguous() >= required) {
      auto assignment = assign_first_fit(request, std::move(path));
      if (!assignment) {
        throw engine_violation("first fit failed on a path that passed the contiguity check");
      }
      return assignment;
    }
  }
  return std::nullopt;
}

std::optional<Assignment> route_type2(const Network& net,
                                      const LightpathRequest& request,
                                      const SearchLimits& limits, RouteStats* stats) {
  check_request(net, request);
  auto search = candidate_paths_feasible(net, request.s, request.d,
                                         static_cast<std::size_t>(request.required_slots),
                                         /*k=*/1, limits);
  note_overflow(stats, search);
  if (search.frontier_overflow || search.paths.empty()) return std::nullopt;
  auto assignment = assign_first_fit(request, std::move(search.paths.front()));
  if (!assignment) {
    throw engine_violation("feasibility-pruned path cannot host the request");
  }
  return assignment;
}

std::optional<Assignment> route_type3(const Network& net,
                                      const LightpathRequest& request,
                                      const SearchLimits& limits, RouteStats* stats) {
  check_request(net, request);
  auto search = candidate_paths_feasible(net, request.s, request.d,
                                         static_cast<std::size_t>(request.required_slots),
                                         static_cast<std::size_t>(request.k), limits);
  note_overflow(stats, search);
  if (search.frontier_overflow || search.paths.empty()) return std::nullopt;

  const auto better = [](const PathRecord& a, const PathRecord& b) {
    if (a.length_km != b.length_km) return a.length_km < b.length_km;
    if (a.hop_count != b.hop_count) return a.hop_count < b.hop_count;
    return a.nodes < b.nodes;
  };
  auto best = std::min_element(search.paths.begin(), search.paths.end(), better);
  auto assignment = assign_first_fit(request, std::move(*best));
  if (!assignment) {
    throw engine_violation("feasibility-pruned path cannot host the request");
  }
  return assignment;
}

std::optional<Assignment> route_baseline(const Network& net,
                                         const LightpathRequest& request,
                                         PolicyKind kind) {
  check_request(net, request);
  switch (kind) {
    case PolicyKind::SpKm:
    case PolicyKind::SpHops: {
      const PathMetric metric =
          kind == PolicyKind::SpKm ? PathMetric::Km : PathMetric::Hops;
      auto path = shortest_path(net, request.s, request.d, metric);
      if (!path) return std::nullopt;
      return assign_first_fit(request, std::move(*path));
    }
    case PolicyKind::KspKm: {
      auto paths = k_shortest_paths(net, request.s, request.d,
                                    static_cast<std::size_t>(request.k), PathMetric::Km);
      for (PathRecord& path : paths) {
        auto assignment = assign_first_fit(request, std::move(path));
        if (assignment) return assignment;
      }
      return std::nullopt;
    }
    default:
      throw std::invalid_argument("route_baseline expects a baseline policy");
  }
}

std::optional<Assignment> route(const Network& net, const LightpathRequest& request,
                                PolicyKind policy, const SearchLimits& limits,
                                RouteStats* stats) {
  switch (policy) {
    case PolicyKind::Type1: return route_type1(net, request, limits, stats);
    case PolicyKind::Type2: return route_type2(net, request, limits, stats);
    case PolicyKind::Type3: return route_type3(net, request, limits, stats);
    default: return route_baseline(net, request, policy);
  }
}

void commit(Network& net, const Assignment& assignment) {
  const auto& nodes = assignment.path.nodes;
  if (nodes.size() < 2) {
    throw engine_violation("assignment path has no edges");
  }
  // Validate everything before touching any bitmap, so a failed commit
  // leaves the network exactly as it was.
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const Edge& edge = net.edge_between(nodes[i], nodes[i + 1]);
    if (!edge.bitmap.range_free(assignment.range)) {
      throw engine_violation("commit overlap: slots not free on every path edge");
    }
  }
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    net.edge_between(nodes[i], nodes[i + 1]).bitmap.occupy(assignment.range);
  }
}

void release(Network& net, const Assignment& assignment) {
  const auto& nodes = assignment.path.nodes;
  if (nodes.size() < 2) {
    throw engine_violation("assignment path has no edges");
  }
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const Edge& edge = net.edge_between(nodes[i], nodes[i + 1]);
    if (assignment.range.end() > static_cast<std::size_t>(edge.real_slot_count)) {
      throw engine_violation("release reaches into zero padding");
    }
    if (!edge.bitmap.range_occupied(assignment.range)) {
      throw engine_violation("double release: slots already free on a path edge");
    }
  }
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    net.edge_between(nodes[i], nodes[i + 1]).bitmap.release(assignment.range);
  }
}

}  // namespace eonsim
