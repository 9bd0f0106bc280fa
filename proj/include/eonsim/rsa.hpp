#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "eonsim/path_search.hpp"

namespace eonsim {

/// One lightpath demand. required_slots already includes the guard band.
struct LightpathRequest {
  std::int64_t id = 0;
  int s = 0;
  int d = 0;
  double demanded_gbps = 0.0;
  int required_slots = 0;
  int k = 10;
  double arrival_time = 0.0;
  double holding_time = 0.0;
};

/// A routed request: the chosen path plus the contiguous slot block that is
/// occupied on every edge of it. The unit of commit/release.
struct Assignment {
  std::int64_t request_id = 0;
  PathRecord path;
  SlotRange range;
};

enum class PolicyKind { SpKm, SpHops, KspKm, Type1, Type2, Type3 };

inline constexpr PolicyKind kAllPolicies[] = {
    PolicyKind::SpKm,  PolicyKind::SpHops, PolicyKind::KspKm,
    PolicyKind::Type1, PolicyKind::Type2,  PolicyKind::Type3,
};

std::string_view to_string(PolicyKind policy);

/// Parses "sp_km", "sp_hops", "ksp_km", "type1", "type2", "type3"
/// (case-insensitive, '-' treated as '_'). Throws config_error otherwise.
PolicyKind parse_policy(std::string_view name);

/// Contiguous slots a demand needs, guard band included:
///   ceil(demand / (grid * m)) + ceil(guard_band / grid)
/// with the convention that 1 Gbps consumes 1 GHz at m = 1.
int required_slots(double demanded_gbps, double grid_ghz, int modulation_bits,
                   double guard_band_ghz);

struct RouteStats {
  std::uint64_t frontier_overflows = 0;
};

/// Type I: enumerate up to k candidate paths whose bitmaps still have any
/// free slot, then pick the first one in discovery order that has
/// required_slots contiguous; first-fit on that path. nullopt = blocked.
std::optional<Assignment> route_type1(const Network& net,
                                      const LightpathRequest& request,
                                      const SearchLimits& limits = {},
                                      RouteStats* stats = nullptr);

/// Type II: single candidate path (k = 1) found under feasibility pruning;
/// the spectrum assignment can no longer fail after routing.
std::optional<Assignment> route_type2(const Network& net,
                                      const LightpathRequest& request,
                                      const SearchLimits& limits = {},
                                      RouteStats* stats = nullptr);

/// Type III: up to k feasibility-pruned candidates, then the shortest in km
/// among them (ties: fewer hops, then lexicographic node order).
std::optional<Assignment> route_type3(const Network& net,
                                      const LightpathRequest& request,
                                      const SearchLimits& limits = {},
                                      RouteStats* stats = nullptr);

/// Spectrum-blind baselines: route first (shortest path or k-shortest
/// paths), check slots afterwards. SP blocks when its one path cannot host
/// the request; k-SP takes the first feasible of its k distance-ordered
/// paths.
std::optional<Assignment> route_baseline(const Network& net,
                                         const LightpathRequest& request,
                                         PolicyKind kind);

/// Dispatch on policy.
std::optional<Assignment> route(const Network& net, const LightpathRequest& request,
                                PolicyKind policy, const SearchLimits& limits = {},
                                RouteStats* stats = nullptr);

/// Occupies the assignment's slot range on every edge of its path, all or
/// nothing. Throws engine_violation when any slot is already taken (overlap
/// means the routing step is buggy).
void commit(Network& net, const Assignment& assignment);

/// Frees the range on every edge. Throws engine_violation on double release
/// or when the range reaches into zero padding.
void release(Network& net, const Assignment& assignment);

}  // namespace eonsim
