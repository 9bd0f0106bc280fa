#pragma once

#include <string>
#include <vector>

#include "eonsim/topology.hpp"

namespace test_helpers {

// Network whose edges get one slot per unit of bandwidth (grid 1 GHz), so a
// bitmap string of length n pairs with bandwidth n.
inline eonsim::Network unit_grid_network(int vertices,
                                         const std::vector<eonsim::EdgeSpec>& edges) {
  return eonsim::Network(vertices, edges, /*grid_ghz=*/1.0);
}

// Overwrites an edge's spectrum with the given debug string (must already
// match the normalized length, padding included).
inline void set_bitmap(eonsim::Network& net, int u, int v, const std::string& bits) {
  net.edge_between(u, v).bitmap = eonsim::SlotBitmap::parse(bits);
}

// Chain A-B-C-D with per-edge bitmaps given as debug strings of possibly
// different raw lengths; bandwidths are derived from the raw lengths and the
// network is normalized, then the occupied patterns are applied.
inline eonsim::Network chain_with_bitmaps(const std::vector<std::string>& edge_bits) {
  const int vertices = static_cast<int>(edge_bits.size()) + 1;
  std::vector<eonsim::EdgeSpec> specs;
  std::size_t max_len = 0;
  for (std::size_t i = 0; i < edge_bits.size(); ++i) {
    specs.push_back({static_cast<int>(i), static_cast<int>(i) + 1, 1.0,
                     static_cast<double>(edge_bits[i].size())});
    max_len = std::max(max_len, edge_bits[i].size());
  }
  eonsim::Network net = unit_grid_network(vertices, specs);
  for (std::size_t i = 0; i < edge_bits.size(); ++i) {
    std::string padded = edge_bits[i];
    padded.resize(max_len, '0');
    set_bitmap(net, static_cast<int>(i), static_cast<int>(i) + 1, padded);
  }
  return net;
}

}  // namespace test_helpers
