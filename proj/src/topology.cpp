#include "eonsim/topology.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

namespace eonsim {

int slot_count(double usable_bandwidth_ghz, double grid_size_ghz) {
  if (usable_bandwidth_ghz <= 0.0) {
    throw config_error("usable bandwidth must be positive");
  }
  if (grid_size_ghz <= 0.0) {
    throw config_error("grid size must be positive");
  }
  // The tiny epsilon keeps exact multiples of the grid from landing one
  // slot short after floating-point division.
  return static_cast<int>(std::floor(usable_bandwidth_ghz / grid_size_ghz + 1e-9));
}

Network::Network(int vertex_count, const std::vector<EdgeSpec>& edges,
                 double grid_ghz)
    : vertex_count_(vertex_count), grid_ghz_(grid_ghz) {
  if (vertex_count <= 0) {
    throw invariant_violation("network needs at least one vertex");
  }
  if (grid_ghz <= 0.0) {
    throw config_error("grid size must be positive");
  }
  edges_.reserve(edges.size());
  for (const EdgeSpec& spec : edges) {
    add_edge(spec);
  }
  rebuild_adjacency();
  normalize();
}

void Network::add_edge(const EdgeSpec& spec) {
  if (!contains_vertex(spec.u) || !contains_vertex(spec.v)) {
    throw invariant_violation("edge endpoint out of range");
  }
  if (spec.u == spec.v) {
    throw invariant_violation("self-loop edges are not allowed");
  }
  if (edge_index_between(spec.u, spec.v) >= 0) {
    throw invariant_violation("duplicate edge");
  }
  Edge edge;
  edge.u = spec.u;
  edge.v = spec.v;
  edge.length_km = spec.length_km;
  edge.bandwidth_ghz = spec.bandwidth_ghz;
  edge.real_slot_count = eonsim::slot_count(spec.bandwidth_ghz, grid_ghz_);
  edge.bitmap = SlotBitmap::all_free(static_cast<std::size_t>(edge.real_slot_count));
  edges_.push_back(std::move(edge));
}

void Network::rebuild_adjacency() {
  adjacency_.assign(static_cast<std::size_t>(vertex_count_), {});
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    adjacency_[static_cast<std::size_t>(e.u)].emplace_back(e.v, static_cast<int>(i));
    adjacency_[static_cast<std::size_t>(e.v)].emplace_back(e.u, static_cast<int>(i));
  }
  // Ascending neighbor order keeps every search deterministic.
  for (auto& list : adjacency_) {
    std::sort(list.begin(), list.end());
  }
}

std::span<const std::pair<int, int>> Network::neighbors(int u) const {
  if (!contains_vertex(u)) {
    throw invariant_violation("vertex out of range");
  }
  return adjacency_[static_cast<std::size_t>(u)];
}

int Network::edge_index_between(int u, int v) const {
  if (!contains_vertex(u) || !contains_vertex(v) ||
      adjacency_.size() != static_cast<std::size_t>(vertex_count_)) {
    // During construction the adjacency is not built yet; fall back to a scan.
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const Edge& e = edges_[i];
      if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) {
        return static_cast<int>(i);
      }
    }
    return -1;
  }
  for (const auto& [neighbor, index] : adjacency_[static_cast<std::size_t>(u)]) {
    if (neighbor == v) return index;
  }
  return -1;
}

Edge& Network::edge_between(int u, int v) {
  const int index = edge_index_between(u, v);
  if (index < 0) {
    throw invariant_violation("no edge between the given vertices");
  }
  return edges_[static_cast<std::size_t>(index)];
}

const Edge& Network::edge_between(int u, int v) const {
  const int index = edge_index_between(u, v);
  if (index < 0) {
    throw invariant_violation("no edge between the given vertices");
  }
  return edges_[static_cast<std::size_t>(index)];
}

void Network::normalize() {
  int max_slots = 0;
  for (const Edge& e : edges_) {
    max_slots = std::max(max_slots, e.real_slot_count);
  }
  slot_count_ = max_slots;
  for (Edge& e : edges_) {
    if (e.bitmap.size() < static_cast<std::size_t>(slot_count_)) {
      e.bitmap = e.bitmap.zero_padded(static_cast<std::size_t>(slot_count_));
    }
  }
}

double Network::average_nodal_degree() const {
  return 2.0 * static_cast<double>(edges_.size()) / static_cast<double>(vertex_count_);
}

bool Network::connected() const {
  if (vertex_count_ == 0) return false;
  std::vector<bool> seen(static_cast<std::size_t>(vertex_count_), false);
  std::vector<int> stack{0};
  seen[0] = true;
  int reached = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (const auto& [v, index] : adjacency_[static_cast<std::size_t>(u)]) {
      (void)index;
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = true;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == vertex_count_;
}

void Network::reset_spectrum() {
  for (Edge& e : edges_) {
    SlotBitmap fresh = SlotBitmap::all_free(static_cast<std::size_t>(e.real_slot_count));
    e.bitmap = fresh.zero_padded(static_cast<std::size_t>(slot_count_));
  }
}

std::size_t Network::total_real_slots() const {
  std::size_t total = 0;
  for (const Edge& e : edges_) {
    total += static_cast<std::size_t>(e.real_slot_count);
  }
  return total;
}

std::size_t Network::occupied_real_slots() const {
  std::size_t occupied = 0;
  for (const Edge& e : edges_) {
    // Padding is never free, so count_free() only sees real slots.
    occupied += static_cast<std::size_t>(e.real_slot_count) - e.bitmap.count_free();
  }
  return occupied;
}

namespace {

[[noreturn]] void fail_line(std::string_view name, int line, const std::string& what) {
  std::ostringstream msg;
  msg << name << ":" << line << ": " << what;
  throw load_error(msg.str());
}

}  // namespace

Network Network::parse(std::istream& in, std::string_view name, double grid_ghz) {
  std::string line;
  int line_number = 0;
  int vertex_count = -1;
  std::vector<EdgeSpec> specs;
  std::vector<int> edge_lines;

  while (std::getline(in, line)) {
    ++line_number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;  // blank or comment-only line

    if (vertex_count < 0) {
      int n = 0;
      if (first != "nodes" || !(fields >> n) || n <= 0) {
        fail_line(name, line_number, "expected header 'nodes N'");
      }
      vertex_count = n;
      continue;
    }

    EdgeSpec spec;
    std::istringstream edge_fields(line);
    if (!(edge_fields >> spec.u >> spec.v >> spec.length_km >> spec.bandwidth_ghz)) {
      fail_line(name, line_number, "expected 'u v length_km bandwidth_ghz'");
    }
    std::string extra;
    if (edge_fields >> extra) {
      fail_line(name, line_number, "trailing fields after edge definition");
    }
    if (spec.u < 0 || spec.u >= vertex_count || spec.v < 0 || spec.v >= vertex_count) {
      fail_line(name, line_number, "edge endpoint out of range");
    }
    if (spec.u == spec.v) {
      fail_line(name, line_number, "self-loop edge");
    }
    if (spec.bandwidth_ghz <= 0.0) {
      fail_line(name, line_number, "bandwidth must be positive");
    }
    if (spec.length_km < 0.0) {
      fail_line(name, line_number, "length must be non-negative");
    }
    for (const EdgeSpec& other : specs) {
      if ((other.u == spec.u && other.v == spec.v) ||
          (other.u == spec.v && other.v == spec.u)) {
        fail_line(name, line_number, "duplicate edge");
      }
    }
    specs.push_back(spec);
    edge_lines.push_back(line_number);
  }

  if (vertex_count < 0) {
    throw load_error(std::string(name) + ": missing 'nodes N' header");
  }

  Network net(vertex_count, specs, grid_ghz);
  if (!net.connected()) {
    throw load_error(std::string(name) + ": graph is not connected");
  }
  return net;
}

Network Network::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw load_error("cannot open topology file: " + file.string());
  }
  return parse(in, file.string());
}

}  // namespace eonsim
