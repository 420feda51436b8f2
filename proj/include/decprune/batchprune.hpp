#pragma once

// Batch pruning meta-algorithm: processes per-level deletion batches B_i and
// forced-prune sets A_i, maintaining a level-indexed flow whose sinks grow by
// deg/lambda each level. Levels whose excess exceeds 2^{k-i}*sigma/phi emit a
// sparse-cut proposal S_i found by growing a residual BFS ball. Snapshots at
// every level entry let a rebuild re-run from any index deterministically.

#include <vector>

#include "decprune/certificate.hpp"
#include "decprune/config.hpp"
#include "decprune/flow.hpp"

namespace decprune {

struct PruneLevelSnapshot {
  DecGraph g;
  FlowState st;

  // The flow must read edge and vertex liveness from this snapshot's own
  // graph copy, so copies rebind the pointer.
  PruneLevelSnapshot() = default;
  PruneLevelSnapshot(const PruneLevelSnapshot& o) : g(o.g), st(o.st) { st.g = &g; }
  PruneLevelSnapshot& operator=(const PruneLevelSnapshot& o) {
    if (this != &o) {
      g = o.g;
      st = o.st;
      st.g = &g;
    }
    return *this;
  }
};

class BatchPruneSession {
 public:
  BatchPruneSession() = default;
  BatchPruneSession(const DecGraph& g0, const PruneConfig& cfg) : cfg_(cfg) {
    require(cfg.sigma % cfg.lambda == 0, err::kParamMismatch,
            "sigma must be a multiple of lambda for integral sink steps");
    PruneLevelSnapshot init;
    init.g = g0;
    init.st = FlowState(init.g, cfg.sigma);
    for (auto& c : init.st.cap) c = cfg_.cap_unit();
    snaps_.assign(cfg.lambda + 2, init);
    S_.assign(cfg.lambda + 1, {});
    last_excess_.assign(cfg.lambda + 1, 0);
  }

  const PruneConfig& config() const { return cfg_; }
  const std::vector<std::vector<VertexId>>& proposals() const { return S_; }
  const DecGraph& current() const { return snaps_[cfg_.lambda + 1].g; }
  const FlowState& flow() const { return snaps_[cfg_.lambda + 1].st; }
  const PruneLevelSnapshot& snapshot(int i) const { return snaps_[i]; }
  i64 level_excess(int i) const { return last_excess_[i]; }

  // Runs levels i..to (default lambda) from the level-(i-1) snapshot. B and A
  // are 1-indexed with size >= lambda+1. Returns the surviving vertex set.
  std::vector<VertexId> run_from(int i, const std::vector<std::vector<EdgeId>>& B,
                                 const std::vector<std::vector<VertexId>>& A, OpCounter& ops,
                                 int to = -1) {
    if (to < 0) to = cfg_.lambda;
    require(i >= 1 && i <= cfg_.lambda && to <= cfg_.lambda, err::kParamMismatch,
            "run_from: bad level index");
    for (int j = i; j <= to; ++j) {
      snaps_[j + 1] = snaps_[j];
      S_[j] = run_level(snaps_[j + 1], j, j < (int)B.size() ? B[j] : std::vector<EdgeId>{},
                        j < (int)A.size() ? A[j] : std::vector<VertexId>{}, ops);
    }
    return current().live_vertex_list();
  }

  // Adopts another session's state for levels >= i (worst-case swap path).
  void adopt_from(const BatchPruneSession& other, int i) {
    for (int j = i; j <= cfg_.lambda + 1; ++j) snaps_[j] = other.snaps_[j];
    for (int j = i; j <= cfg_.lambda; ++j) {
      S_[j] = other.S_[j];
      last_excess_[j] = other.last_excess_[j];
    }
  }

  // Single level body; public for the shadow runs of background jobs.
  std::vector<VertexId> run_level(PruneLevelSnapshot& w, int i, const std::vector<EdgeId>& B_i,
                                  const std::vector<VertexId>& A_i, OpCounter& ops) {
    DecGraph& g = w.g;
    FlowState& st = w.st;
    // Removed edges: everything in B_i still alive, plus all live edges
    // incident to A_i. Surviving endpoints gain 8/phi source per lost edge;
    // delta absorbs the net flow the removed edges carried.
    std::vector<char> in_A(g.n, 0);
    for (VertexId v : A_i)
      if (g.vertex_alive[v]) in_A[v] = 1;
    std::vector<char> dead_e(g.m0(), 0);
    std::vector<EdgeId> removed;
    for (EdgeId e : B_i) {
      if (!g.edges[e].alive || dead_e[e]) continue;
      dead_e[e] = 1;
      removed.push_back(e);
    }
    for (VertexId v = 0; v < g.n; ++v) {
      if (!in_A[v]) continue;
      for (EdgeId e : g.adj[v]) {
        if (!g.edges[e].alive || dead_e[e]) continue;
        dead_e[e] = 1;
        removed.push_back(e);
      }
    }
    apply_removals(g, st, removed, in_A, ops);
    std::vector<VertexId> kill;
    for (VertexId v = 0; v < g.n; ++v)
      if (in_A[v]) kill.push_back(v);
    if (!kill.empty()) g.remove_vertices(kill);
    for (VertexId v : kill) st.clear_vertex_demand(v);

    // Sink grows by deg/lambda (scaled: d * sigma/lambda) on survivors.
    for (VertexId v = 0; v < g.n; ++v) {
      ops.add();
      if (g.vertex_alive[v]) st.t[v] += g.d[v] * cfg_.sink_step();
    }

    dinitz_local(st, cfg_.h_rounds(), ops);

    std::vector<VertexId> S_i;
    i64 x1 = st.excess_total();
    i64 threshold = cfg_.excess_threshold(i);
    if (x1 > threshold) {
      S_i = find_sparse_level_cut(w, ops);
      std::vector<char> in_S(g.n, 0);
      for (VertexId v : S_i) in_S[v] = 1;
      std::vector<EdgeId> cut_edges;
      for (VertexId v : S_i)
        for (EdgeId e : g.adj[v]) {
          if (!g.edges[e].alive) continue;
          if (in_S[g.other(e, v)] && g.other(e, v) < v) continue;  // count once
          cut_edges.push_back(e);
        }
      apply_removals(g, st, cut_edges, in_S, ops);
      g.remove_vertices(S_i);
      for (VertexId v : S_i) st.clear_vertex_demand(v);
    }
    i64 x2 = st.excess_total();
    last_excess_[i] = x2;
    require(x2 <= threshold, err::kLevelExcess,
            "post-level excess " + std::to_string(x2) + " > " + std::to_string(threshold) +
                " at level " + std::to_string(i));
    return S_i;
  }

  // Residual BFS ball around the excess support, grown while the residual
  // out-cut stays dense relative to phi/(denom*lambda*log n) of volume+excess.
  std::vector<VertexId> find_sparse_level_cut(PruneLevelSnapshot& w, OpCounter& ops) const {
    DecGraph& g = w.g;
    FlowState& st = w.st;
    i64 x1 = st.excess_total();
    std::vector<char> in_S(g.n, 0);
    std::vector<VertexId> ball;
    for (VertexId v = 0; v < g.n; ++v)
      if (g.vertex_alive[v] && st.excess_at(v) > 0) {
        in_S[v] = 1;
        ball.push_back(v);
      }
    i64 denom = cfg_.sparsity_denom * cfg_.lambda * cfg_.log2n;
    i64 h = cfg_.h_rounds();
    for (i64 j = 0;; ++j) {
      require(j < h, err::kSparseCutRadius, "sparse-cut ball radius reached h");
      i64 cut = 0;
      std::vector<VertexId> frontier;
      std::vector<char> seen(g.n, 0);
      for (VertexId v : ball)
        for (EdgeId e : g.adj[v]) {
          ops.add();
          if (!g.edges[e].alive) continue;
          int a = 2 * e + (g.edges[e].u == v ? 0 : 1);
          VertexId wv = g.other(e, v);
          if (in_S[wv] || !g.vertex_alive[wv]) continue;
          if (st.residual(a) <= 0) continue;
          cut++;
          if (!seen[wv]) {
            seen[wv] = 1;
            frontier.push_back(wv);
          }
        }
      i64 vol = 0;
      for (VertexId v : ball) vol += g.d[v];
      // continue while cut >= phi/(denom) * (vol*sigma + x1) / sigma,
      // i.e. cut * den * denom * sigma >= num * (vol*sigma + x1)
      bool dense = mul_ge(cut * cfg_.phi.den, denom * cfg_.sigma,
                          cfg_.phi.num, vol * cfg_.sigma + x1);
      if (!dense) break;
      for (VertexId v : frontier) {
        in_S[v] = 1;
        ball.push_back(v);
      }
    }
    std::sort(ball.begin(), ball.end());
    return ball;
  }

 private:
  void apply_removals(DecGraph& g, FlowState& st, const std::vector<EdgeId>& removed,
                      const std::vector<char>& removed_v, OpCounter& ops) {
    i64 unit = cfg_.src_unit();
    for (EdgeId e : removed) {
      ops.add();
      st.drop_edge_flow_into_delta(e);
      for (VertexId v : {g.edges[e].u, g.edges[e].v})
        if (!removed_v[v] && g.vertex_alive[v]) st.s[v] += unit;
      if (g.edges[e].alive) g.delete_edge(e);
    }
  }

  PruneConfig cfg_;
  std::vector<PruneLevelSnapshot> snaps_;
  std::vector<std::vector<VertexId>> S_;
  std::vector<i64> last_excess_;
};

// Lost-degree expansion check on a session's surviving graph: the lost-degree
// sources route to 2*deg sinks with zero excess under 32/phi caps.
inline bool expansion_certificate_ok(const DecGraph& g_now, const std::vector<i64>& d0, Rat phi,
                                     i64 sigma, OpCounter& ops) {
  std::vector<char> in_A(g_now.n, 0);
  for (VertexId v = 0; v < g_now.n; ++v)
    if (!g_now.vertex_alive[v]) in_A[v] = 1;
  FlowState st = build_exp_cert_state(g_now, d0, in_A, phi, sigma);
  dinitz_local(st, g_now.n + 1, ops);
  std::vector<VertexId> A;
  for (VertexId v = 0; v < g_now.n; ++v)
    if (in_A[v]) A.push_back(v);
  return verify_exp_cert(g_now, d0, A, st, phi);
}

}  // namespace decprune
