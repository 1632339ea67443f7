#pragma once

#include <cstdint>
#include <vector>

#include "graphau/dataset.hpp"

namespace graphau {

// Chung-Lu style bipartite graph: node weights follow rank^(-1/(exponent-1))
// on both sides and edges are drawn by weight until `n_edges` distinct pairs
// exist (or the draw budget runs out).
std::vector<Edge> power_law_bipartite(std::size_t n_users, std::size_t n_items,
                                      std::size_t n_edges, double exponent, std::uint64_t seed);

struct CommunityConfig {
  std::size_t n_users = 2000;
  std::size_t n_items = 2000;
  std::size_t n_interactions = 20000;
  std::size_t communities = 2;
  // Each community is further split into tight clusters of users and items.
  std::size_t clusters_per_community = 10;
  // Probability mass of a draw landing in the user's own cluster, elsewhere
  // in the own community, or anywhere (noise). The remainder of 1 goes to
  // the community.
  double p_cluster = 0.6;
  double p_noise = 0.05;
  // Zipf exponent for item popularity within a group.
  double popularity_exponent = 0.8;
  std::uint64_t seed = 7;
};

// Implicit-feedback interactions with planted community structure. Users are
// "u<n>", items "i<n>"; community of a node is n % communities.
std::vector<RawInteraction> community_interactions(const CommunityConfig& config);

}  // namespace graphau
