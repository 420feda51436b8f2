#pragma once

// Integral flow model on the directed version of a DecGraph, plus the local
// blocking-flow routine and path-cycle decomposition. Each undirected edge e
// yields arcs 2e (u->v) and 2e+1 (v->u); residual capacity of an arc counts
// the unused capacity plus the flow on its partner.

#include <vector>

#include "decprune/graph.hpp"

namespace decprune {

struct OpCounter {
  i64 v = 0;
  void add(i64 x = 1) { v += x; }
};

inline int arc_tail_is_u(int arc) { return (arc & 1) == 0; }
inline EdgeId arc_edge(int arc) { return arc >> 1; }
inline int rev_arc(int arc) { return arc ^ 1; }

struct FlowState {
  const DecGraph* g = nullptr;
  std::vector<i64> cap, f;          // per arc
  std::vector<i64> s, t, delta;     // per vertex, scaled units
  std::vector<i64> bf;              // cached net out-flow per vertex
  i64 scale = 1;

  FlowState() = default;
  explicit FlowState(const DecGraph& graph, i64 sigma = 1) : g(&graph), scale(sigma) {
    cap.assign(2 * graph.m0(), 0);
    f.assign(2 * graph.m0(), 0);
    s.assign(graph.n, 0);
    t.assign(graph.n, 0);
    delta.assign(graph.n, 0);
    bf.assign(graph.n, 0);
  }

  VertexId tail(int arc) const {
    const auto& e = g->edges[arc_edge(arc)];
    return arc_tail_is_u(arc) ? e.u : e.v;
  }
  VertexId head(int arc) const {
    const auto& e = g->edges[arc_edge(arc)];
    return arc_tail_is_u(arc) ? e.v : e.u;
  }

  i64 residual(int arc) const { return cap[arc] - f[arc] + f[rev_arc(arc)]; }

  // Push amt along arc: cancel opposing flow first, then use capacity.
  void push(int arc, i64 amt) {
    i64 back = std::min(amt, f[rev_arc(arc)]);
    f[rev_arc(arc)] -= back;
    f[arc] += amt - back;
    bf[tail(arc)] += amt;
    bf[head(arc)] -= amt;
  }

  i64 src_cap(VertexId v) const {
    i64 d = s[v] + delta[v];
    return d > 0 ? d : 0;
  }
  i64 snk_cap(VertexId v) const {
    i64 d = s[v] + delta[v];
    return t[v] + (d < 0 ? -d : 0);
  }
  i64 excess_at(VertexId v) const {
    i64 x = src_cap(v) - bf[v] - snk_cap(v);
    return x > 0 ? x : 0;
  }
  i64 sink_slack(VertexId v) const {
    i64 avail = src_cap(v) - bf[v];
    if (avail < 0) avail = 0;
    i64 absorbed = std::min(avail, snk_cap(v));
    return snk_cap(v) - absorbed;
  }

  i64 excess_total() const {
    i64 x = 0;
    for (VertexId v = 0; v < g->n; ++v)
      if (g->vertex_alive[v]) x += excess_at(v);
    return x;
  }

  // Drops the flow carried by edge e, compensating surviving endpoints via
  // delta so s + delta - t - Bf is unchanged where it still matters.
  void drop_edge_flow_into_delta(EdgeId e) {
    int a = 2 * e;
    i64 net_u = f[a] - f[a + 1];  // net out of edges[e].u over e
    VertexId u = g->edges[e].u, v = g->edges[e].v;
    if (net_u != 0) {
      bf[u] -= net_u;
      bf[v] += net_u;
      if (g->vertex_alive[u]) delta[u] += net_u;
      if (g->vertex_alive[v]) delta[v] -= net_u;
    }
    f[a] = 0;
    f[a + 1] = 0;
  }

  void clear_vertex_demand(VertexId v) {
    s[v] = 0;
    t[v] = 0;
    delta[v] = 0;
  }

  void recompute_bf() {
    std::fill(bf.begin(), bf.end(), 0);
    for (int a = 0; a < (int)f.size(); ++a) {
      if (f[a] == 0) continue;
      bf[tail(a)] += f[a];
      bf[head(a)] -= f[a];
    }
  }
};

inline std::vector<i64> excess(const FlowState& st) {
  std::vector<i64> x(st.g->n, 0);
  for (VertexId v = 0; v < st.g->n; ++v)
    if (st.g->vertex_alive[v]) x[v] = st.excess_at(v);
  return x;
}

// Resumable local blocking-flow engine: h rounds of BFS level graph from the
// excess support plus a blocking flow per round, pausing on an op budget.
class DinitzEngine {
 public:
  // strict_balance enforces total source <= total sink; the pruning levels
  // run unbalanced by design (leftover excess is what triggers pruning).
  DinitzEngine(FlowState& st, i64 h, bool strict_balance = false) : st_(&st), h_(h) {
    const DecGraph& g = *st.g;
    i64 src_total = 0, snk_total = 0;
    for (VertexId v = 0; v < g.n; ++v) {
      if (!g.vertex_alive[v]) continue;
      src_total += st.src_cap(v);
      snk_total += st.snk_cap(v);
      if (st.excess_at(v) > 0) sources_.push_back(v);
    }
    require(!strict_balance || src_total <= snk_total, err::kDemandBalance,
            "total source exceeds total sink capacity");
    level_.assign(g.n, -1);
    mark_.assign(g.n, -1);
    it_.assign(g.n, 0);
    out_arcs_.resize(g.n);
    for (VertexId v = 0; v < g.n; ++v)
      for (EdgeId e : g.adj[v]) out_arcs_[v].push_back(2 * e + (g.edges[e].u == v ? 0 : 1));
    if (sources_.empty() || h_ <= 0) done_ = true;
  }

  bool done() const { return done_; }
  i64 rounds_run() const { return round_; }

  // Runs until completion or budget exhaustion; returns true when done.
  bool step(i64 budget, OpCounter& ops) {
    i64 start = ops.v;
    while (!done_ && ops.v - start < budget) {
      switch (phase_) {
        case Phase::kRoundStart: round_start(ops); break;
        case Phase::kBfs: bfs_step(budget - (ops.v - start), ops); break;
        case Phase::kDfs: dfs_step(budget - (ops.v - start), ops); break;
      }
    }
    return done_;
  }

  void run(OpCounter& ops) {
    while (!step(INT64_MAX, ops)) {
    }
  }

 private:
  enum class Phase { kRoundStart, kBfs, kDfs };

  int lvl(VertexId v) const { return mark_[v] == round_ ? level_[v] : -1; }
  void set_lvl(VertexId v, int l) {
    mark_[v] = (int)round_;
    level_[v] = l;
    it_[v] = 0;
  }

  void round_start(OpCounter& ops) {
    if (round_ >= h_) {
      done_ = true;
      return;
    }
    // Drop drained sources.
    std::vector<VertexId> live;
    for (VertexId v : sources_) {
      ops.add();
      if (st_->excess_at(v) > 0) live.push_back(v);
    }
    sources_ = live;
    if (sources_.empty()) {
      done_ = true;
      return;
    }
    queue_.clear();
    level_t_ = -1;
    for (VertexId v : sources_) {
      set_lvl(v, 0);
      queue_.push_back(v);
      if (st_->sink_slack(v) > 0) level_t_ = 1;
    }
    qpos_ = 0;
    phase_ = Phase::kBfs;
  }

  void bfs_step(i64 budget, OpCounter& ops) {
    i64 start = ops.v;
    while (qpos_ < queue_.size()) {
      if (ops.v - start >= budget) return;
      VertexId v = queue_[qpos_];
      if (level_t_ >= 0 && lvl(v) + 1 >= level_t_) {
        bfs_arc_ = 0;
        ++qpos_;
        continue;
      }
      bool advanced = false;
      while (bfs_arc_ < out_arcs_[v].size()) {
        if (ops.v - start >= budget) return;
        int a = out_arcs_[v][bfs_arc_++];
        ops.add();
        if (!st_->g->edges[arc_edge(a)].alive) continue;
        VertexId w = st_->head(a);
        if (!st_->g->vertex_alive[w] || lvl(w) >= 0) continue;
        if (st_->residual(a) <= 0) continue;
        set_lvl(w, lvl(v) + 1);
        queue_.push_back(w);
        if (st_->sink_slack(w) > 0 && (level_t_ < 0 || lvl(w) + 1 < level_t_))
          level_t_ = lvl(w) + 1;
        advanced = true;
        (void)advanced;
      }
      bfs_arc_ = 0;
      ++qpos_;
    }
    if (level_t_ < 0) {
      // No residual path from any excess vertex to remaining sink capacity.
      done_ = true;
      return;
    }
    src_idx_ = 0;
    path_.clear();
    phase_ = Phase::kDfs;
  }

  void dfs_step(i64 budget, OpCounter& ops) {
    i64 start = ops.v;
    while (src_idx_ < sources_.size()) {
      VertexId u = sources_[src_idx_];
      if (st_->excess_at(u) == 0 || lvl(u) != 0) {
        ++src_idx_;
        path_.clear();
        continue;
      }
      if (path_.empty()) path_.push_back(u);
      // Grow the path along level+1 residual arcs with current-arc pointers.
      while (true) {
        if (ops.v - start >= budget) return;
        VertexId v = path_.back();
        if (st_->sink_slack(v) > 0 && lvl(v) + 1 == level_t_ && v != u) {
          augment(u, ops);
          path_.clear();
          break;
        }
        if (st_->sink_slack(v) > 0 && v == u && level_t_ == 1) {
          // Source with its own slack at distance 0: absorb locally.
          augment(u, ops);
          path_.clear();
          break;
        }
        bool moved = false;
        while (it_[v] < out_arcs_[v].size()) {
          ops.add();
          int a = out_arcs_[v][it_[v]];
          if (st_->g->edges[arc_edge(a)].alive && st_->residual(a) > 0) {
            VertexId w = st_->head(a);
            if (st_->g->vertex_alive[w] && lvl(w) == lvl(v) + 1 && lvl(w) <= level_t_ - 1 &&
                !dead_end(w)) {
              path_arcs_.push_back(a);
              path_.push_back(w);
              moved = true;
              break;
            }
          }
          ++it_[v];
        }
        if (!moved) {
          // Dead end: retreat.
          set_dead(v);
          if (path_.size() == 1) {
            path_.clear();
            ++src_idx_;
            break;
          }
          path_.pop_back();
          path_arcs_.pop_back();
          ++it_[path_.back()];
        }
      }
    }
    ++round_;
    phase_ = Phase::kRoundStart;
  }

  bool dead_end(VertexId v) const { return dead_mark_.size() > (size_t)v && dead_mark_[v] == round_; }
  void set_dead(VertexId v) {
    if (dead_mark_.empty()) dead_mark_.assign(st_->g->n, -1);
    // Only mark as dead if the vertex has no remaining slack role.
    if (st_->sink_slack(v) == 0 || lvl(v) + 1 != level_t_) dead_mark_[v] = round_;
  }

  void augment(VertexId u, OpCounter& ops) {
    VertexId w = path_.back();
    i64 amt = std::min(st_->excess_at(u), st_->sink_slack(w));
    for (int a : path_arcs_) amt = std::min(amt, st_->residual(a));
    for (int a : path_arcs_) {
      st_->push(a, amt);
      ops.add();
    }
    if (path_arcs_.empty()) ops.add();
    // Saturated arcs force a fresh walk; keep it simple and restart from u.
    path_arcs_.clear();
  }

  FlowState* st_;
  i64 h_;
  i64 round_ = 0;
  bool done_ = false;
  Phase phase_ = Phase::kRoundStart;
  std::vector<VertexId> sources_;
  std::vector<int> level_, mark_, dead_mark_;
  std::vector<size_t> it_;
  std::vector<std::vector<int>> out_arcs_;
  std::vector<VertexId> queue_;
  size_t qpos_ = 0, bfs_arc_ = 0, src_idx_ = 0;
  int level_t_ = -1;
  std::vector<VertexId> path_;
  std::vector<int> path_arcs_;
};

// Local Dinitz: h rounds of blocking flow; afterwards no residual path of
// fewer than h edges runs from an excess vertex to remaining sink capacity.
inline void dinitz_local(FlowState& st, i64 h, OpCounter& ops, bool strict_balance = false) {
  DinitzEngine eng(st, h, strict_balance);
  eng.run(ops);
}

// Resumable path-cycle decomposition: cancels directed cycles in supp(f)
// until the support is acyclic. Net flow Bf is unchanged.
class CycleRemovalEngine {
 public:
  explicit CycleRemovalEngine(FlowState& st) : st_(&st) {
    int n = st.g->n;
    color_.assign(n, 0);
    stamp_.assign(n, -1);
    it_.assign(n, 0);
    out_arcs_.resize(n);
    for (VertexId v = 0; v < n; ++v)
      for (EdgeId e : st.g->adj[v])
        out_arcs_[v].push_back(2 * e + (st.g->edges[e].u == v ? 0 : 1));
  }

  bool done() const { return done_; }

  bool step(i64 budget, OpCounter& ops) {
    i64 start = ops.v;
    while (!done_ && ops.v - start < budget) {
      if (stack_.empty()) {
        while (root_ < st_->g->n) {
          ops.add();
          VertexId v = root_;
          if (col(v) == 0 && has_out_flow(v)) break;
          ++root_;
        }
        if (root_ >= st_->g->n) {
          done_ = true;
          return true;
        }
        push_vertex(root_);
      }
      VertexId v = stack_.back();
      bool moved = false;
      while (it_[v] < out_arcs_[v].size()) {
        ops.add();
        int a = out_arcs_[v][it_[v]];
        if (st_->f[a] > 0) {
          VertexId w = st_->head(a);
          if (col(w) == 1) {  // gray: found a cycle
            cancel_cycle(a, w, ops);
            moved = true;
            break;
          }
          if (col(w) == 0) {
            arc_stack_.push_back(a);
            push_vertex(w);
            moved = true;
            break;
          }
        }
        ++it_[v];
      }
      if (!moved) {
        set_col(v, 2);
        stack_.pop_back();
        if (!arc_stack_.empty()) {
          arc_stack_.pop_back();
          ++it_[stack_.back()];
        }
      }
    }
    return done_;
  }

  void run(OpCounter& ops) {
    while (!step(INT64_MAX, ops)) {
    }
  }

 private:
  int col(VertexId v) const { return stamp_[v] == epoch_ ? color_[v] : 0; }
  void set_col(VertexId v, int c) {
    stamp_[v] = epoch_;
    color_[v] = c;
  }
  void push_vertex(VertexId v) {
    set_col(v, 1);
    it_[v] = 0;
    stack_.push_back(v);
  }
  bool has_out_flow(VertexId v) const {
    for (int a : out_arcs_[v])
      if (st_->f[a] > 0) return true;
    return false;
  }

  void cancel_cycle(int closing_arc, VertexId w, OpCounter& ops) {
    // Cycle: suffix of arc_stack_ from w's position, plus closing_arc.
    std::vector<int> cyc{closing_arc};
    for (size_t i = stack_.size(); i-- > 0;) {
      if (stack_[i] == w) break;
      cyc.push_back(arc_stack_[i - 1]);
    }
    i64 amt = INT64_MAX;
    for (int a : cyc) amt = std::min(amt, st_->f[a]);
    for (int a : cyc) {
      st_->f[a] -= amt;
      st_->bf[st_->tail(a)] -= amt;
      st_->bf[st_->head(a)] += amt;
      ops.add();
    }
    // Restart the search; stamps reset in O(1).
    ++epoch_;
    stack_.clear();
    arc_stack_.clear();
    root_ = 0;
  }

  FlowState* st_;
  std::vector<int> color_, stamp_;
  std::vector<size_t> it_;
  std::vector<std::vector<int>> out_arcs_;
  std::vector<VertexId> stack_;
  std::vector<int> arc_stack_;
  int epoch_ = 0;
  VertexId root_ = 0;
  bool done_ = false;
};

inline void remove_cycles(FlowState& st, OpCounter& ops) {
  CycleRemovalEngine eng(st);
  eng.run(ops);
}

inline bool support_acyclic(const FlowState& st) {
  int n = st.g->n;
  std::vector<int> indeg(n, 0);
  std::vector<std::vector<int>> out(n);
  for (int a = 0; a < (int)st.f.size(); ++a) {
    if (st.f[a] == 0) continue;
    out[st.tail(a)].push_back(st.head(a));
    indeg[st.head(a)]++;
  }
  std::vector<VertexId> q;
  for (VertexId v = 0; v < n; ++v)
    if (indeg[v] == 0) q.push_back(v);
  size_t seen = 0;
  while (seen < q.size()) {
    VertexId v = q[seen++];
    for (VertexId w : out[v])
      if (--indeg[w] == 0) q.push_back(w);
  }
  return seen == (size_t)n;
}

}  // namespace decprune
