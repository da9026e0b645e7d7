#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sfest/common.hpp"
#include "sfest/graph.hpp"
#include "sfest/metric.hpp"
#include "sfest/permutation.hpp"
#include "sfest/rgmis.hpp"
#include "sfest/steiner.hpp"

namespace sfest {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n), rank_(n, 0) {
    for (int i = 0; i < n; ++i) parent_[i] = i;
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (rank_[x] < rank_[y]) std::swap(x, y);
    parent_[y] = x;
    if (rank_[x] == rank_[y]) ++rank_[x];
    return true;
  }

  bool same(int x, int y) { return find(x) == find(y); }

 private:
  std::vector<int> parent_;
  std::vector<int> rank_;
};

/// Free-access view of a (possibly rescaled) metric; certification is not
/// query-budgeted. Scale is a numerator/denominator pair for the same
/// exact-rescaling reason as the counting oracle.
struct MetricView {
  const MetricInstance* inst;
  double num = 1.0;
  double den = 1.0;
  double operator()(int u, int v) const {
    double w = inst->weight(u, v);
    if (num == 1.0 && den == 1.0) return w;
    return w * num / den;
  }
};

/// Working-unit view of a preprocessed instance, exact at the minimum kept
/// pair.
inline MetricView scaled_view(const MetricInstance& inst, const PreprocessedInstance& pre) {
  return {&inst, 2.0, pre.min_kept};
}

struct WeightedEdge {
  int u = 0;
  int v = 0;
  double w = 0;
};

inline double edge_cost(const std::vector<WeightedEdge>& edges) {
  double c = 0;
  for (const auto& e : edges) c += e.w;
  return c;
}

/// Ball-collision graph over the given active terminals: local ids index
/// `active`, edge iff w < 2 tau.
inline Graph build_ball_graph(const MetricView& w, const std::vector<int>& active, double tau) {
  Graph g(static_cast<int>(active.size()));
  for (int i = 0; i < g.n(); ++i)
    for (int j = i + 1; j < g.n(); ++j)
      if (w(active[i], active[j]) < 2.0 * tau) g.add_edge(i, j);
  return g;
}

/// One threshold level's cluster structure: the MIS, each active terminal's
/// nearest MIS center, the clusters those centers induce, and the terminals
/// whose demand this level pays for (active here, inactive next level).
struct LevelDecomposition {
  int level = 0;
  double tau = 0;
  double tau_next = 0;
  std::vector<int> active;  // ascending terminal ids
  std::vector<int> mis;     // U_i in greedy order
  std::vector<int> center_of;  // indexed by vertex id; -1 when not active here
  std::vector<std::pair<int, std::vector<int>>> clusters;  // center -> members, ascending
  std::vector<int> targets;
};

inline LevelDecomposition level_decomposition(const MetricView& w,
                                              const std::vector<TerminalPair>& pairs, int level,
                                              double tau, double tau_next,
                                              const Permutation& pi_global) {
  LevelDecomposition dec;
  dec.level = level;
  dec.tau = tau;
  dec.tau_next = tau_next;
  dec.center_of.assign(pi_global.universe(), -1);

  for (const auto& p : pairs) {
    double d = w(p.s, p.t);
    if (d >= tau) {
      dec.active.push_back(p.s);
      dec.active.push_back(p.t);
      if (d < tau_next) {
        dec.targets.push_back(p.s);
        dec.targets.push_back(p.t);
      }
    }
  }
  std::sort(dec.active.begin(), dec.active.end());
  std::sort(dec.targets.begin(), dec.targets.end());
  if (dec.active.empty()) return dec;

  Graph ball = build_ball_graph(w, dec.active, tau);
  Permutation local_pi = pi_global.restricted_to(dec.active);
  std::vector<int> local_order;
  local_order.reserve(dec.active.size());
  for (int v : local_pi.order()) {
    auto it = std::lower_bound(dec.active.begin(), dec.active.end(), v);
    local_order.push_back(static_cast<int>(it - dec.active.begin()));
  }
  for (int local : rgmis_exact(ball, local_order)) dec.mis.push_back(dec.active[local]);

  for (int v : dec.active) {
    int best = -1;
    double best_d = 0;
    for (int u : dec.mis) {
      double d = w(v, u);
      if (best < 0 || d < best_d || (d == best_d && u < best)) {
        best = u;
        best_d = d;
      }
    }
    dec.center_of[v] = best;
  }
  std::vector<int> mis_sorted = dec.mis;
  std::sort(mis_sorted.begin(), mis_sorted.end());
  for (int u : mis_sorted) {
    std::vector<int> members;
    for (int v : dec.active)
      if (dec.center_of[v] == u) members.push_back(v);
    dec.clusters.emplace_back(u, std::move(members));
  }
  return dec;
}

/// Decompositions for every level, all derived from one global permutation
/// restricted per level.
inline std::vector<LevelDecomposition> level_decompositions(const MetricView& w,
                                                            const std::vector<TerminalPair>& pairs,
                                                            const std::vector<double>& taus,
                                                            const Permutation& pi_global) {
  std::vector<LevelDecomposition> out;
  for (int i = 0; i < static_cast<int>(taus.size()); ++i) {
    double tau_next = (i + 1 < static_cast<int>(taus.size())) ? taus[i + 1] : 2.0 * taus[i];
    out.push_back(level_decomposition(w, pairs, i, taus[i], tau_next, pi_global));
  }
  return out;
}

namespace detail {

inline WeightedEdge closest_pair_between(const MetricView& w, const std::vector<int>& a,
                                         const std::vector<int>& b) {
  WeightedEdge best{-1, -1, 0};
  for (int x : a)
    for (int y : b) {
      double d = w(x, y);
      if (best.u < 0 || d < best.w) best = {x, y, d};
    }
  return best;
}

inline const std::vector<int>& cluster_members(const LevelDecomposition& dec, int center) {
  for (const auto& [u, members] : dec.clusters)
    if (u == center) return members;
  throw InputError("cluster lookup for unknown center");
}

}  // namespace detail

namespace detail {

/// Minimum spanning tree over one cluster's members (every pairwise
/// distance is below 2 tau by the cluster radius bound, so each chosen edge
/// is too).
inline std::vector<WeightedEdge> cluster_mst(const MetricView& w, const std::vector<int>& members,
                                             int universe) {
  std::vector<WeightedEdge> all;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      all.push_back({members[i], members[j], w(members[i], members[j])});
  std::sort(all.begin(), all.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return a.w != b.w ? a.w < b.w : (a.u != b.u ? a.u < b.u : a.v < b.v);
  });
  UnionFind uf(universe);
  std::vector<WeightedEdge> tree;
  for (const auto& e : all)
    if (uf.unite(e.u, e.v)) tree.push_back(e);
  return tree;
}

}  // namespace detail

/// Builds F_0..F_L. F_{l+1} links level-l clusters whose members pick
/// next-level centers across cluster boundaries: one closest-pair edge per
/// spanning-forest edge of that supernode graph (union-find over edges in
/// ascending id order). When scaling leaves distinct-pair terminals closer
/// than 2, level-0 clusters are not singletons, so F_1 additionally carries
/// a minimum spanning tree of each such cluster to ground the induction.
inline std::vector<std::vector<WeightedEdge>> build_connectivity_forest(
    const std::vector<LevelDecomposition>& decs, const MetricView& w) {
  const int count = static_cast<int>(decs.size());
  if (count == 0) return {};
  for (int i = 0; i + 1 < count; ++i)
    if (decs[i].tau * 2.0 != decs[i + 1].tau)
      throw InputError("build_connectivity_forest: level thresholds must double");
  std::vector<std::vector<WeightedEdge>> f(count);

  for (const auto& [center, members] : decs[0].clusters) {
    if (members.size() <= 1) continue;
    if (count < 2)
      throw CertificationError("level-0 clusters need repair but there is no level 1");
    auto tree = detail::cluster_mst(w, members, static_cast<int>(decs[0].center_of.size()));
    f[1].insert(f[1].end(), tree.begin(), tree.end());
  }

  for (int l = 0; l + 1 < count; ++l) {
    const auto& cur = decs[l];
    const auto& nxt = decs[l + 1];
    std::vector<std::pair<int, int>> super_edges;
    for (int v : nxt.active) {
      int next_center = nxt.center_of[v];
      int u1 = cur.center_of[v];
      int u2 = cur.center_of[next_center];
      if (u1 < 0 || u2 < 0)
        throw InputError("build_connectivity_forest: next-level active vertex missing a cluster");
      if (u1 != u2) super_edges.emplace_back(std::min(u1, u2), std::max(u1, u2));
    }
    std::sort(super_edges.begin(), super_edges.end());
    super_edges.erase(std::unique(super_edges.begin(), super_edges.end()), super_edges.end());

    UnionFind uf(cur.center_of.size());
    for (const auto& [u1, u2] : super_edges) {
      if (!uf.unite(u1, u2)) continue;
      f[l + 1].push_back(detail::closest_pair_between(w, detail::cluster_members(cur, u1),
                                                      detail::cluster_members(cur, u2)));
    }
  }
  return f;
}

/// Builds J_i: supernode edges join clusters holding the two sides of a
/// target pair; each spanning-forest edge is realized by the closest
/// inter-cluster vertex pair. Fails loudly if the accumulated F does not
/// already connect every level-i cluster internally.
inline std::vector<WeightedEdge> build_target_links(const LevelDecomposition& dec,
                                                    const std::vector<WeightedEdge>& f_edges,
                                                    const MatchMap& match, const MetricView& w) {
  std::vector<WeightedEdge> j;
  if (dec.active.empty()) return j;

  UnionFind pre(dec.center_of.size());
  for (const auto& e : f_edges) pre.unite(e.u, e.v);
  for (const auto& [center, members] : dec.clusters)
    for (int v : members)
      if (!pre.same(v, center))
        throw CertificationError("cluster of " + std::to_string(center) + " at level " +
                                 std::to_string(dec.level) +
                                 " is not internally connected by F");

  std::vector<std::pair<int, int>> super_edges;
  for (int s : dec.targets) {
    int m = match.match_of(s);
    int u1 = dec.center_of[s];
    int u2 = dec.center_of[m];
    if (u2 < 0) throw CertificationError("target's match is not active at its level");
    if (u1 != u2) super_edges.emplace_back(std::min(u1, u2), std::max(u1, u2));
  }
  std::sort(super_edges.begin(), super_edges.end());
  super_edges.erase(std::unique(super_edges.begin(), super_edges.end()), super_edges.end());

  UnionFind uf(dec.center_of.size());
  for (const auto& [u1, u2] : super_edges) {
    if (!uf.unite(u1, u2)) continue;
    j.push_back(detail::closest_pair_between(w, detail::cluster_members(dec, u1),
                                             detail::cluster_members(dec, u2)));
  }
  return j;
}

/// Edge multiset F u J_0 u ... u J_L with the per-level ledger needed to
/// re-check the cost bounds.
struct Certificate {
  std::vector<double> taus;
  std::vector<int> mis_sizes;  // M_i
  std::vector<std::vector<WeightedEdge>> f_levels;
  std::vector<std::vector<WeightedEdge>> j_levels;
};

/// Drops edges that no kept pair's connectivity depends on, most expensive
/// first. The scaffolding construction connects whole clusters; after the
/// target links are in place only the pair-carrying skeleton has to stay.
inline void prune_certificate(Certificate& cert, int n, const std::vector<TerminalPair>& pairs) {
  struct Slot {
    bool in_j;
    int level;
    int index;
    double weight;
  };
  std::vector<Slot> slots;
  for (int l = 0; l < static_cast<int>(cert.f_levels.size()); ++l)
    for (int i = 0; i < static_cast<int>(cert.f_levels[l].size()); ++i)
      slots.push_back({false, l, i, cert.f_levels[l][i].w});
  for (int l = 0; l < static_cast<int>(cert.j_levels.size()); ++l)
    for (int i = 0; i < static_cast<int>(cert.j_levels[l].size()); ++i)
      slots.push_back({true, l, i, cert.j_levels[l][i].w});
  std::sort(slots.begin(), slots.end(), [](const Slot& a, const Slot& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    if (a.in_j != b.in_j) return a.in_j < b.in_j;
    if (a.level != b.level) return a.level < b.level;
    return a.index < b.index;
  });

  std::vector<std::vector<char>> keep_f(cert.f_levels.size()), keep_j(cert.j_levels.size());
  for (std::size_t l = 0; l < cert.f_levels.size(); ++l)
    keep_f[l].assign(cert.f_levels[l].size(), 1);
  for (std::size_t l = 0; l < cert.j_levels.size(); ++l)
    keep_j[l].assign(cert.j_levels[l].size(), 1);

  auto pairs_connected_without = [&](const Slot& skip) {
    UnionFind uf(n);
    for (std::size_t l = 0; l < cert.f_levels.size(); ++l)
      for (std::size_t i = 0; i < cert.f_levels[l].size(); ++i) {
        if (!keep_f[l][i]) continue;
        if (!skip.in_j && skip.level == static_cast<int>(l) && skip.index == static_cast<int>(i))
          continue;
        uf.unite(cert.f_levels[l][i].u, cert.f_levels[l][i].v);
      }
    for (std::size_t l = 0; l < cert.j_levels.size(); ++l)
      for (std::size_t i = 0; i < cert.j_levels[l].size(); ++i) {
        if (!keep_j[l][i]) continue;
        if (skip.in_j && skip.level == static_cast<int>(l) && skip.index == static_cast<int>(i))
          continue;
        uf.unite(cert.j_levels[l][i].u, cert.j_levels[l][i].v);
      }
    for (const auto& p : pairs)
      if (!uf.same(p.s, p.t)) return false;
    return true;
  };

  for (const auto& slot : slots) {
    if (!pairs_connected_without(slot)) continue;
    if (slot.in_j)
      keep_j[slot.level][slot.index] = 0;
    else
      keep_f[slot.level][slot.index] = 0;
  }

  auto compact = [](std::vector<std::vector<WeightedEdge>>& levels,
                    const std::vector<std::vector<char>>& keep) {
    for (std::size_t l = 0; l < levels.size(); ++l) {
      std::vector<WeightedEdge> kept;
      for (std::size_t i = 0; i < levels[l].size(); ++i)
        if (keep[l][i]) kept.push_back(levels[l][i]);
      levels[l] = std::move(kept);
    }
  };
  compact(cert.f_levels, keep_f);
  compact(cert.j_levels, keep_j);
}

inline Certificate build_certificate(const MetricView& w, const MatchMap& match,
                                     const std::vector<TerminalPair>& pairs,
                                     const std::vector<double>& taus,
                                     const Permutation& pi_global, bool prune = true) {
  auto decs = level_decompositions(w, pairs, taus, pi_global);
  Certificate cert;
  cert.taus = taus;
  for (const auto& dec : decs) cert.mis_sizes.push_back(static_cast<int>(dec.mis.size()));
  cert.f_levels = build_connectivity_forest(decs, w);
  std::vector<WeightedEdge> f_acc;
  for (const auto& fl : cert.f_levels) f_acc.insert(f_acc.end(), fl.begin(), fl.end());
  for (const auto& dec : decs) cert.j_levels.push_back(build_target_links(dec, f_acc, match, w));
  if (prune) prune_certificate(cert, static_cast<int>(pi_global.universe()), pairs);
  return cert;
}

struct CertCheck {
  std::string name;
  double lhs = 0;
  double rhs = 0;
  bool ok = false;
};

struct CertReport {
  std::vector<CertCheck> checks;
  std::vector<std::pair<TerminalPair, bool>> pair_connected;
  double total_cost = 0;
  double mis_tau_sum = 0;
  bool all_ok = true;
};

/// Recomputes every edge weight from the metric, checks the per-level cost
/// bounds (cost(F_{i+1}) <= 4 M_i tau_i, cost(J_i) <= 2 M_i tau_i, total
/// <= 6 sum M_i tau_i) and that every kept pair is connected in
/// G(V, F u J_0 u ... u J_L). Failures are report entries, not errors.
inline CertReport verify_certificate(const MetricView& w, int n,
                                     const std::vector<TerminalPair>& pairs,
                                     const Certificate& cert) {
  CertReport rep;
  const int count = static_cast<int>(cert.taus.size());
  auto add_check = [&](std::string name, double lhs, double rhs) {
    bool ok = lhs <= rhs;
    rep.checks.push_back({std::move(name), lhs, rhs, ok});
    rep.all_ok = rep.all_ok && ok;
  };

  for (int i = 0; i < count; ++i)
    rep.mis_tau_sum += cert.mis_sizes[i] * cert.taus[i];

  UnionFind uf(n);
  double total = 0;
  auto account = [&](const std::vector<WeightedEdge>& edges) {
    double c = 0;
    for (const auto& e : edges) {
      c += w(e.u, e.v);
      uf.unite(e.u, e.v);
    }
    total += c;
    return c;
  };

  if (count > 0) {
    double f0 = cert.f_levels.empty() ? 0.0 : edge_cost(cert.f_levels[0]);
    add_check("F_0 empty", f0, 0.0);
  }
  for (int i = 1; i < static_cast<int>(cert.f_levels.size()); ++i) {
    double c = account(cert.f_levels[i]);
    add_check("cost(F_" + std::to_string(i) + ") <= 4 M tau",
              c, 4.0 * cert.mis_sizes[i - 1] * cert.taus[i - 1]);
  }
  for (int i = 0; i < static_cast<int>(cert.j_levels.size()); ++i) {
    double c = account(cert.j_levels[i]);
    add_check("cost(J_" + std::to_string(i) + ") <= 2 M tau",
              c, 2.0 * cert.mis_sizes[i] * cert.taus[i]);
  }
  rep.total_cost = total;
  add_check("total <= 6 sum", total, 6.0 * rep.mis_tau_sum);

  for (const auto& p : pairs) {
    bool connected = uf.same(p.s, p.t);
    rep.pair_connected.emplace_back(p, connected);
    rep.all_ok = rep.all_ok && connected;
  }
  return rep;
}

/// Exact |RGMIS| of one level's ball graph under the given terminal order.
inline int exact_level_mis(const MetricView& w, const std::vector<int>& active, double tau,
                           const std::vector<int>& terminal_order) {
  if (active.empty()) return 0;
  Graph ball = build_ball_graph(w, active, tau);
  std::vector<int> local_order;
  local_order.reserve(terminal_order.size());
  for (int v : terminal_order) {
    auto it = std::lower_bound(active.begin(), active.end(), v);
    if (it == active.end() || *it != v) throw InputError("order vertex not active at this level");
    local_order.push_back(static_cast<int>(it - active.begin()));
  }
  return static_cast<int>(rgmis_exact(ball, local_order).size());
}

/// Sum of (exact level MIS size) * tau_i with one global permutation
/// restricted per level: the derandomized value the estimator approximates.
inline double exact_level_mis_sum(const MetricView& w, const std::vector<TerminalPair>& pairs,
                                  const std::vector<double>& taus, const Permutation& pi_global) {
  auto decs = level_decompositions(w, pairs, taus, pi_global);
  double sum = 0;
  for (const auto& dec : decs) sum += static_cast<double>(dec.mis.size()) * dec.tau;
  return sum;
}

}  // namespace sfest
