#include "graphau/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

namespace graphau {

namespace {

std::vector<double> zipf_weights(std::size_t n, double exponent) {
  std::vector<double> w(n);
  for (std::size_t r = 0; r < n; ++r) w[r] = std::pow(static_cast<double>(r + 1), -exponent);
  return w;
}

}  // namespace

std::vector<Edge> power_law_bipartite(std::size_t n_users, std::size_t n_items,
                                      std::size_t n_edges, double exponent, std::uint64_t seed) {
  if (n_users == 0 || n_items == 0) throw std::invalid_argument("empty node set");
  if (exponent <= 1.0) throw std::invalid_argument("power-law exponent must exceed 1");
  if (n_edges > n_users * n_items) throw std::invalid_argument("more edges than node pairs");
  const double slope = 1.0 / (exponent - 1.0);
  const auto uw = zipf_weights(n_users, slope);
  const auto iw = zipf_weights(n_items, slope);
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> pick_user(uw.begin(), uw.end());
  std::discrete_distribution<std::size_t> pick_item(iw.begin(), iw.end());

  std::set<Edge> seen;
  std::vector<Edge> edges;
  edges.reserve(n_edges);
  const std::size_t budget = 50 * n_edges + 1000;
  for (std::size_t draw = 0; draw < budget && edges.size() < n_edges; ++draw) {
    const Edge e{static_cast<Index>(pick_user(rng)), static_cast<Index>(pick_item(rng))};
    if (seen.insert(e).second) edges.push_back(e);
  }
  return edges;
}

std::vector<RawInteraction> community_interactions(const CommunityConfig& c) {
  if (c.communities == 0 || c.clusters_per_community == 0) {
    throw std::invalid_argument("community counts must be positive");
  }
  const std::size_t groups = c.communities * c.clusters_per_community;
  if (c.n_users < groups || c.n_items < groups) throw std::invalid_argument("too few nodes per cluster");

  // Node n belongs to community n % communities and cluster
  // (n / communities) % clusters_per_community inside it.
  const auto group_of = [&](std::size_t n) {
    const std::size_t community = n % c.communities;
    const std::size_t cluster = (n / c.communities) % c.clusters_per_community;
    return community * c.clusters_per_community + cluster;
  };
  std::vector<std::vector<Index>> items_in_group(groups);
  for (std::size_t i = 0; i < c.n_items; ++i) items_in_group[group_of(i)].push_back(static_cast<Index>(i));

  std::mt19937_64 rng(c.seed);
  std::vector<std::discrete_distribution<std::size_t>> pick_in_group;
  for (const auto& g : items_in_group) {
    const auto w = zipf_weights(g.size(), c.popularity_exponent);
    pick_in_group.emplace_back(w.begin(), w.end());
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> any_item(0, c.n_items - 1);
  std::uniform_int_distribution<std::size_t> any_cluster(0, c.clusters_per_community - 1);
  std::uniform_int_distribution<std::size_t> any_user(0, c.n_users - 1);

  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::vector<RawInteraction> out;
  out.reserve(c.n_interactions);
  const auto draw_item = [&](std::size_t user) -> std::size_t {
    const double r = unit(rng);
    const std::size_t g = group_of(user);
    if (r < c.p_noise) return any_item(rng);
    std::size_t target = g;
    if (r >= c.p_noise + c.p_cluster) {
      target = (g / c.clusters_per_community) * c.clusters_per_community + any_cluster(rng);
    }
    return items_in_group[target][pick_in_group[target](rng)];
  };
  const auto add = [&](std::size_t u, std::size_t i) {
    if (!seen.emplace(u, i).second) return;
    out.push_back({"u" + std::to_string(u), "i" + std::to_string(i)});
  };

  // Every user and item gets at least one interaction so both vocabularies
  // are complete.
  for (std::size_t u = 0; u < c.n_users && out.size() < c.n_interactions; ++u) add(u, draw_item(u));
  for (std::size_t i = 0; i < c.n_items && out.size() < c.n_interactions; ++i) {
    const std::size_t g = group_of(i);
    std::size_t u = any_user(rng);
    for (int tries = 0; tries < 1000 && group_of(u) != g; ++tries) u = any_user(rng);
    add(u, i);
  }
  const std::size_t budget = 50 * c.n_interactions;
  for (std::size_t draw = 0; draw < budget && out.size() < c.n_interactions; ++draw) {
    const std::size_t u = any_user(rng);
    add(u, draw_item(u));
  }
  return out;
}

}  // namespace graphau
