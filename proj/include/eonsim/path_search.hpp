#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "eonsim/topology.hpp"

namespace eonsim {

/// A simple path with the spectrum availability accumulated along it.
struct PathRecord {
  std::vector<int> nodes;  // ordered, no repeats, consecutive pairs adjacent
  SlotBitmap bitmap;       // AND of all constituent edge bitmaps
  int hop_count = 0;
  double length_km = 0.0;
};

enum class PathMetric { Km, Hops };

struct SearchLimits {
  // Partial paths kept per breadth-first level. The frontier can grow
  // exponentially on dense graphs; exceeding the cap aborts the search and
  // the request is blocked, with the overflow reported to the caller.
  std::size_t max_frontier = 1'000'000;
};

struct CandidateSearch {
  std::vector<PathRecord> paths;
  bool frontier_overflow = false;
};

/// Breadth-first candidate enumeration: partial paths grow one hop per
/// level, never revisit their own nodes, and die as soon as their
/// accumulated bitmap has no free slot at all. Returns the first `k` simple
/// s->d paths in discovery order (nondecreasing hop count), each carrying
/// its path bitmap; fewer when the search space is exhausted.
CandidateSearch candidate_paths_all(const Network& net, int s, int d,
                                    std::size_t k,
                                    const SearchLimits& limits = {});

/// Same expansion, but a partial path survives only while it still has
/// `required_slots` contiguous free slots, so every returned path can host
/// the request.
CandidateSearch candidate_paths_feasible(const Network& net, int s, int d,
                                         std::size_t required_slots,
                                         std::size_t k,
                                         const SearchLimits& limits = {});

/// Spectrum-blind minimum-weight simple path (Dijkstra). Ties break toward
/// the lexicographically smallest node sequence. nullopt when d is
/// unreachable. The returned record still carries the live path bitmap.
std::optional<PathRecord> shortest_path(const Network& net, int s, int d,
                                        PathMetric metric);

/// Up to k loopless paths in nondecreasing weight order (Yen's deviation
/// enumeration), spectrum-blind, ties broken lexicographically.
std::vector<PathRecord> k_shortest_paths(const Network& net, int s, int d,
                                         std::size_t k,
                                         PathMetric metric = PathMetric::Km);

}  // namespace eonsim
