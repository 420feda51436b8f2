#pragma once

// Brute-force reference implementations used only by tests and debug checks.
// Deliberately naive and shares no algorithmic code with the main modules.

#include <deque>
#include <map>
#include <queue>
#include <vector>

#include "decprune/graph.hpp"
#include "decprune/rational.hpp"

namespace decprune::oracle {

enum class VolumeMeasure { kCurrent, kInitialD };

struct CutReport {
  std::vector<VertexId> best_cut;
  Rat conductance{1, 1};
  VolumeMeasure measure = VolumeMeasure::kInitialD;
  bool any_cut = false;
};

// Exact minimum conductance over all nontrivial cuts, 2^(n-1) enumeration.
// measure=kInitialD evaluates cuts over all vertices against frozen d and
// live crossing edges (the decremental definition); kCurrent restricts to
// live vertices and live degrees.
inline CutReport conductance_exact(const DecGraph& g, VolumeMeasure measure) {
  std::vector<VertexId> verts;
  for (VertexId v = 0; v < g.n; ++v)
    if (g.vertex_alive[v]) verts.push_back(v);
  int nn = (int)verts.size();
  require(nn <= 20, err::kOracleLimit, "conductance_exact limited to 20 vertices");
  CutReport rep;
  rep.measure = measure;
  if (nn < 2) return rep;

  std::vector<i64> vol(nn);
  i64 total_vol = 0;
  for (int i = 0; i < nn; ++i) {
    vol[i] = (measure == VolumeMeasure::kCurrent) ? g.cur_deg[verts[i]] : g.d[verts[i]];
    total_vol += vol[i];
  }
  std::vector<int> pos(g.n, -1);
  for (int i = 0; i < nn; ++i) pos[verts[i]] = i;

  for (unsigned long mask = 1; mask < (1ul << (nn - 1)); ++mask) {
    i64 side_vol = 0;
    for (int i = 0; i < nn; ++i)
      if (mask >> i & 1) side_vol += vol[i];
    i64 small = std::min(side_vol, total_vol - side_vol);
    if (small == 0) continue;
    i64 cut = 0;
    for (EdgeId e = 0; e < g.m0(); ++e) {
      if (!g.edges[e].alive) continue;
      int pu = pos[g.edges[e].u], pv = pos[g.edges[e].v];
      if (pu < 0 || pv < 0) continue;
      if (((mask >> pu) & 1) != ((mask >> pv) & 1)) cut++;
    }
    Rat cond(cut, small);
    if (!rep.any_cut || cond < rep.conductance) {
      rep.any_cut = true;
      rep.conductance = cond;
      rep.best_cut.clear();
      for (int i = 0; i < nn; ++i)
        if (mask >> i & 1) rep.best_cut.push_back(verts[i]);
    }
  }
  return rep;
}

// Exact max flow on an explicit directed arc list with per-vertex source and
// sink capacities, via shortest augmenting paths (Edmonds-Karp).
struct DirectedInstance {
  int n = 0;
  std::vector<std::pair<int, int>> arcs;  // tail, head
  std::vector<i64> cap;
  std::vector<i64> source;  // per-vertex supply
  std::vector<i64> sink;    // per-vertex absorption capacity
};

struct MaxFlowResult {
  i64 value = 0;
  std::vector<i64> flow;  // per arc
};

inline MaxFlowResult exact_max_flow(const DirectedInstance& in) {
  int n = in.n;
  int S = n, T = n + 1, N = n + 2;
  struct Arc {
    int to;
    i64 cap;
    int rev;
    int orig;  // index into in.arcs, -1 for virtual
  };
  std::vector<std::vector<Arc>> g(N);
  auto add = [&](int a, int b, i64 c, int orig) {
    g[a].push_back({b, c, (int)g[b].size(), orig});
    g[b].push_back({a, 0, (int)g[a].size() - 1, -1});
  };
  for (size_t i = 0; i < in.arcs.size(); ++i)
    add(in.arcs[i].first, in.arcs[i].second, in.cap[i], (int)i);
  for (int v = 0; v < n; ++v) {
    if (in.source[v] > 0) add(S, v, in.source[v], -1);
    if (in.sink[v] > 0) add(v, T, in.sink[v], -1);
  }
  MaxFlowResult res;
  res.flow.assign(in.arcs.size(), 0);
  while (true) {
    std::vector<std::pair<int, int>> pre(N, {-1, -1});
    std::deque<int> q{S};
    pre[S] = {S, 0};
    while (!q.empty() && pre[T].first < 0) {
      int u = q.front();
      q.pop_front();
      for (int i = 0; i < (int)g[u].size(); ++i) {
        if (g[u][i].cap > 0 && pre[g[u][i].to].first < 0) {
          pre[g[u][i].to] = {u, i};
          q.push_back(g[u][i].to);
        }
      }
    }
    if (pre[T].first < 0) break;
    i64 aug = INT64_MAX;
    for (int v = T; v != S;) {
      auto [u, i] = pre[v];
      aug = std::min(aug, g[u][i].cap);
      v = u;
    }
    for (int v = T; v != S;) {
      auto [u, i] = pre[v];
      g[u][i].cap -= aug;
      g[g[u][i].to][g[u][i].rev].cap += aug;
      v = u;
    }
    res.value += aug;
  }
  for (int u = 0; u < N; ++u)
    for (auto& a : g[u])
      if (a.orig >= 0) res.flow[a.orig] = in.cap[a.orig] - a.cap;
  return res;
}

// Reference rooted forest with explicit parent pointers and per-edge values;
// replays the DynForest API by walking paths. Host arcs are (tail, head).
class NaiveForest {
 public:
  NaiveForest(int n, const std::vector<std::pair<int, int>>& arcs, std::vector<i64>& flow)
      : n_(n), arcs_(arcs), flow_(flow), parent_(n, -1), in_edge_(n, -1) {}

  bool is_root(int v) const { return parent_[v] < 0; }

  void insert(int e) {
    auto [x, r] = arcs_[e];
    require(parent_[r] < 0, err::kRootedForest, "head already has an in-edge");
    require(find_root(x) != r, err::kRootedForest, "insert would create a cycle");
    parent_[r] = x;
    in_edge_[r] = e;
  }

  void erase(int e) {
    int h = arcs_[e].second;
    require(in_edge_[h] == e, err::kRootedForest, "delete of non-tree edge");
    parent_[h] = -1;
    in_edge_[h] = -1;
  }

  int find_root(int u) const {
    while (parent_[u] >= 0) u = parent_[u];
    return u;
  }

  // Min-value edge on root->u path, ties toward u.
  int find_min(int u) const {
    require(parent_[u] >= 0, err::kFindMinAtRoot, "find_min at a root");
    int best = -1;
    i64 bestval = 0;
    for (int v = u; parent_[v] >= 0; v = parent_[v]) {
      int e = in_edge_[v];
      if (best < 0 || flow_[e] < bestval) {
        best = e;
        bestval = flow_[e];
      }
    }
    return best;
  }

  void update_flow(int u, i64 delta) {
    for (int v = u; parent_[v] >= 0; v = parent_[v]) flow_[in_edge_[v]] += delta;
  }

  i64 read_current_flow(int e) const { return flow_[e]; }

 private:
  int n_;
  std::vector<std::pair<int, int>> arcs_;
  std::vector<i64>& flow_;
  std::vector<int> parent_, in_edge_;
};

// Bottleneck-cut inequality checked over all supersets A' of A (vertices) and
// B' of B (live edges), up to superset_budget enumerated pairs.
inline bool bottleneck_check(const DecGraph& g, const std::vector<VertexId>& C,
                             const std::vector<VertexId>& A, const std::vector<EdgeId>& B,
                             Rat gamma, i64 level_i, i64 lambda, Rat phi, i64 superset_budget) {
  std::vector<VertexId> extra_v;
  std::vector<char> inA(g.n, 0), inC(g.n, 0);
  for (VertexId v : A) inA[v] = 1;
  for (VertexId v : C) inC[v] = 1;
  for (VertexId v = 0; v < g.n; ++v)
    if (!inA[v]) extra_v.push_back(v);
  std::vector<EdgeId> extra_e;
  std::vector<char> inB(g.m0(), 0);
  for (EdgeId e : B) inB[e] = 1;
  for (EdgeId e = 0; e < g.m0(); ++e)
    if (g.edges[e].alive && !inB[e]) extra_e.push_back(e);

  require((i64)extra_v.size() < 20 && (i64)extra_e.size() < 20, err::kOracleLimit,
          "bottleneck_check instance too large");
  i64 pairs = (1ll << extra_v.size()) * (1ll << extra_e.size());
  require(pairs <= superset_budget, err::kOracleLimit, "superset budget exceeded");

  auto boundary_count = [&](const std::vector<char>& set) {
    i64 c = 0;
    for (EdgeId e = 0; e < g.m0(); ++e)
      if (g.edges[e].alive && set[g.edges[e].u] != set[g.edges[e].v]) c++;
    return c;
  };

  for (unsigned long vm = 0; vm < (1ul << extra_v.size()); ++vm) {
    std::vector<char> a2 = inA;
    for (size_t i = 0; i < extra_v.size(); ++i)
      if (vm >> i & 1) a2[extra_v[i]] = 1;
    std::vector<char> a2c = a2;  // A' union C
    for (VertexId v : C) a2c[v] = 1;
    i64 dAC = boundary_count(a2c);
    i64 dA = boundary_count(a2);
    for (unsigned long em = 0; em < (1ul << extra_e.size()); ++em) {
      std::vector<char> b2 = inB;
      for (size_t i = 0; i < extra_e.size(); ++i)
        if (em >> i & 1) b2[extra_e[i]] = 1;
      // Degree loss of C\A' inside G[V\A'] when B' is removed.
      i64 deg_loss = 0;
      i64 volC = 0;
      for (VertexId v = 0; v < g.n; ++v) {
        if (!inC[v] || a2[v]) continue;
        volC += g.d[v];
        for (EdgeId e : g.adj[v]) {
          if (!g.edges[e].alive || !b2[e]) continue;
          if (a2[g.other(e, v)]) continue;
          deg_loss++;
        }
      }
      Rat lhs = Rat(8) / phi * Rat(dAC - dA - deg_loss);
      Rat rhs = gamma - Rat(level_i, lambda) * Rat(volC);
      if (!(lhs <= rhs)) return false;
    }
  }
  return true;
}

}  // namespace decprune::oracle
