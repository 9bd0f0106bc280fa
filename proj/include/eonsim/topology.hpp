#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "eonsim/slot_bitmap.hpp"

namespace eonsim {

inline constexpr double kDefaultGridGhz = 12.5;

/// Number of whole grid slots a bandwidth provides: floor(bandwidth / grid).
/// Throws config_error on non-positive input.
int slot_count(double usable_bandwidth_ghz, double grid_size_ghz);

/// Undirected fiber link between two vertices. The bitmap always has the
/// network-wide normalized length; slots at index >= real_slot_count are
/// dead padding and stay 0 forever.
struct Edge {
  int u = 0;
  int v = 0;
  double length_km = 0.0;
  double bandwidth_ghz = 0.0;
  int real_slot_count = 0;
  SlotBitmap bitmap;

  int other(int node) const { return node == u ? v : u; }
};

struct EdgeSpec {
  int u = 0;
  int v = 0;
  double length_km = 0.0;
  double bandwidth_ghz = 0.0;
};

/// Optical network graph: vertices 0..V-1, undirected edges with per-edge
/// spectrum bitmaps, normalized so every bitmap shares one length.
class Network {
 public:
  Network() = default;

  /// Builds and normalizes a network. Throws invariant_violation on
  /// self-loops, out-of-range endpoints or duplicate edges. Connectivity is
  /// only enforced by the file loader; synthetic graphs may be disconnected.
  Network(int vertex_count, const std::vector<EdgeSpec>& edges,
          double grid_ghz = kDefaultGridGhz);

  /// Loads the plain-text topology format:
  ///
  ///   # comment
  ///   nodes N
  ///   u v length_km bandwidth_ghz     (one line per edge)
  ///
  /// Throws load_error naming the offending line on malformed input,
  /// duplicate edges or a disconnected graph.
  static Network load(const std::filesystem::path& file);
  static Network parse(std::istream& in, std::string_view name,
                       double grid_ghz = kDefaultGridGhz);

  int vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }

  /// Normalized bitmap length S (max raw slot count over edges).
  int slot_count() const { return slot_count_; }

  double grid_ghz() const { return grid_ghz_; }

  const std::vector<Edge>& edges() const { return edges_; }
  Edge& edge(std::size_t index) { return edges_[index]; }
  const Edge& edge(std::size_t index) const { return edges_[index]; }

  /// Neighbors of u as (neighbor, edge index), ascending by neighbor.
  std::span<const std::pair<int, int>> neighbors(int u) const;

  /// Index of the edge joining u and v in either order, or -1.
  int edge_index_between(int u, int v) const;

  Edge& edge_between(int u, int v);
  const Edge& edge_between(int u, int v) const;

  /// Pads every edge bitmap with dead slots up to the largest raw slot
  /// count and records that as the network slot count. Idempotent.
  void normalize();

  double average_nodal_degree() const;

  bool connected() const;

  /// Frees every real slot on every edge; padding stays dead.
  void reset_spectrum();

  std::size_t total_real_slots() const;

  /// Real slots currently occupied across all edges (padding not counted).
  std::size_t occupied_real_slots() const;

  bool contains_vertex(int v) const { return v >= 0 && v < vertex_count_; }

 private:
  void add_edge(const EdgeSpec& spec);
  void rebuild_adjacency();

  int vertex_count_ = 0;
  int slot_count_ = 0;
  double grid_ghz_ = kDefaultGridGhz;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<int, int>>> adjacency_;
};

}  // namespace eonsim
