#pragma once

// Worst-case update driver. Rebuilds at levels <= k-2 are precomputed by
// background jobs: each job forks a shadow copy of the pruning session,
// re-runs its level ladder as the batches above it fill, and assembles the
// replacement certificate flows with chains of flow backtrackers. Every
// deletion advances the active jobs by a fixed token budget, so the rebuild
// cost is spread over the window before the level's batch fills; the swap
// itself adopts precomputed state in O(k) plus the top synchronous levels.

#include <deque>
#include <functional>
#include <memory>
#include <vector>

#include "decprune/amortized.hpp"

namespace decprune {

// Single-flow backtracking structure: routes (theta+1)*d out of S into 8*d
// sinks elsewhere under 400*theta/phi caps, then survives deletion batches
// by backtracking displaced units one at a time through a link-cut forest
// over the flow support. A source whose backtrack counter q crosses
// d(v)*sigma is reported for rerun; a later chain member re-covers it.
class FlowBacktracker {
 public:
  FlowBacktracker(const DecGraph& g, std::vector<VertexId> S, const PruneConfig& cfg, i64 theta)
      : cfg_(cfg), g_(g), S_(std::move(S)), theta_(theta) {
    cap_ = ceil_mul(Rat(400 * theta) / cfg.phi, cfg.sigma);
    arcs_.reserve(2 * g_.m0());
    for (EdgeId e = 0; e < g_.m0(); ++e) {
      arcs_.push_back({g_.edges[e].u, g_.edges[e].v});
      arcs_.push_back({g_.edges[e].v, g_.edges[e].u});
    }
    in_S_.assign(g_.n, 0);
    for (VertexId v : S_) in_S_[v] = 1;
    q_.assign(g_.n, 0);
    in_rerun_.assign(g_.n, 0);
  }

  FlowBacktracker(const FlowBacktracker&) = delete;
  FlowBacktracker& operator=(const FlowBacktracker&) = delete;

  bool ready() const { return stage_ == 3; }
  bool failed() const { return stage_ == 4; }
  i64 theta() const { return theta_; }
  i64 cap() const { return cap_; }
  const DecGraph& graph() const { return g_; }
  const std::vector<VertexId>& sources() const { return S_; }
  const std::vector<char>& rerun_mask() const { return in_rerun_; }
  i64 q(VertexId v) const { return q_[v]; }

  // Staged initialization: demand construction, resumable blocking flow,
  // resumable cycle removal, forest build. Returns true once ready or
  // failed; `failed` means the demand was not routable on this view.
  bool init_tick(i64 budget, OpCounter& ops) {
    switch (stage_) {
      case 0: {
        st_ = FlowState(g_, cfg_.sigma);
        for (auto& c : st_.cap) c = cap_;
        for (VertexId v = 0; v < g_.n; ++v) {
          if (!g_.vertex_alive[v]) continue;
          if (in_S_[v])
            st_.s[v] = (theta_ + 1) * g_.d[v] * cfg_.sigma;
          else
            st_.t[v] = 8 * g_.d[v] * cfg_.sigma;
        }
        din_ = std::make_unique<DinitzEngine>(st_, cfg_.cert_h);
        ops.add(g_.n);
        stage_ = 1;
        return false;
      }
      case 1: {
        if (!din_->step(budget, ops)) return false;
        din_.reset();
        if (st_.excess_total() != 0) {
          stage_ = 4;
          return true;
        }
        cyc_ = std::make_unique<CycleRemovalEngine>(st_);
        stage_ = 2;
        return false;
      }
      case 2: {
        if (!cyc_->step(budget, ops)) return false;
        cyc_.reset();
        in_E_.assign(2 * g_.m0(), 0);
        for (int a = 0; a < (int)st_.f.size(); ++a)
          if (st_.f[a] > 0) in_E_[a] = 1;
        D_ = std::make_unique<DynForest>(g_.n, arcs_, st_.f, nullptr);
        ops.add(g_.n);
        stage_ = 3;
        return true;
      }
      default:
        return true;
    }
  }

  // Applies a deletion batch: drains every affected edge (the listed edges
  // plus all live edges at U), deletes them, removes U. Returns the sources
  // newly marked for rerun.
  std::vector<VertexId> remove_batch(const std::vector<EdgeId>& P, const std::vector<VertexId>& U,
                                     OpCounter& ops) {
    require(ready(), err::kJobDeadline, "remove_batch before initialization finished");
    rerun_delta_.clear();
    std::vector<char> in_U(g_.n, 0);
    std::vector<VertexId> kill;
    for (VertexId v : U)
      if (v >= 0 && v < g_.n && g_.vertex_alive[v] && !in_U[v]) {
        in_U[v] = 1;
        kill.push_back(v);
      }
    std::vector<char> seen(g_.m0(), 0);
    std::vector<EdgeId> batch;
    for (EdgeId e : P)
      if (g_.edge_alive(e) && !seen[e]) {
        seen[e] = 1;
        batch.push_back(e);
      }
    for (VertexId v : kill)
      for (EdgeId e : g_.adj[v])
        if (g_.edge_alive(e) && !seen[e]) {
          seen[e] = 1;
          batch.push_back(e);
        }
    for (EdgeId e : batch) {
      drain_edge(e, ops);
      g_.delete_edge(e);
    }
    if (!kill.empty()) {
      g_.remove_vertices(kill);
      for (VertexId v : kill) st_.clear_vertex_demand(v);
      ops.add((i64)kill.size());
    }
    return rerun_delta_;
  }

  // Flow with tree-resident values flushed back into the array.
  std::vector<i64> flow_flushed() {
    std::vector<i64> out = st_.f;
    if (D_)
      for (VertexId v = 0; v < g_.n; ++v) {
        int a = D_->in_edge(v);
        if (a >= 0) out[a] = D_->read_current_flow(a);
      }
    return out;
  }

 private:
  void drain_edge(EdgeId e, OpCounter& ops) {
    for (i64 rep = 0; rep <= cap_ + 2; ++rep) {
      if (D_->read_current_flow(2 * e) == 0 && D_->read_current_flow(2 * e + 1) == 0) break;
      backtrack_step(e, ops);
    }
    require(D_->read_current_flow(2 * e) == 0 && D_->read_current_flow(2 * e + 1) == 0,
            err::kDrainStuck,
            "edge " + std::to_string(e) + " still carries backtracker flow after repeat budget");
    for (int a : {2 * e, 2 * e + 1})
      if (in_E_[a]) {
        if (D_->in_tree(a)) D_->erase(a);
        in_E_[a] = 0;
      }
  }

  void backtrack_step(EdgeId e, OpCounter& ops) {
    int arc = -1;
    for (int a : {2 * e, 2 * e + 1}) {
      if (!in_E_[a]) continue;
      if (D_->read_current_flow(a) > 0) {
        arc = a;
        break;
      }
      in_E_[a] = 0;
    }
    ops.add();
    if (arc < 0) return;
    VertexId v = arcs_[arc].second;
    if (!D_->is_root(v)) {
      int me = D_->find_min(v);
      if (D_->read_current_flow(me) == 0) {
        D_->erase(me);
        in_E_[me] = 0;
      }
      D_->update_flow(v, -1);
      ops.add();
    }
    VertexId r = D_->find_root(v);
    int cand = pick_in_arc(r, arc);
    if (cand >= 0) D_->insert(cand);
    if (in_S_[r]) bump_q(r, ops);
  }

  int pick_in_arc(VertexId r, int prefer) {
    if (arcs_[prefer].second == r && in_E_[prefer] && D_->read_current_flow(prefer) > 0)
      return prefer;
    for (EdgeId e : g_.adj[r]) {
      int a = 2 * e + (g_.edges[e].u == r ? 1 : 0);  // arc into r
      if (!in_E_[a]) continue;
      if (D_->read_current_flow(a) > 0) return a;
      in_E_[a] = 0;
    }
    return -1;
  }

  void bump_q(VertexId r, OpCounter& ops) {
    q_[r]++;
    ops.add();
    if (!in_rerun_[r] && q_[r] > g_.d[r] * cfg_.sigma) {
      in_rerun_[r] = 1;
      rerun_delta_.push_back(r);
    }
  }

  PruneConfig cfg_;
  DecGraph g_;
  std::vector<VertexId> S_;
  i64 theta_ = 1, cap_ = 1;
  std::vector<std::pair<int, int>> arcs_;
  std::vector<char> in_S_, in_rerun_, in_E_;
  std::vector<i64> q_;
  std::vector<VertexId> rerun_delta_;
  FlowState st_;
  std::unique_ptr<DinitzEngine> din_;
  std::unique_ptr<CycleRemovalEngine> cyc_;
  std::unique_ptr<DynForest> D_;
  int stage_ = 0;
};

// Chain of backtrackers holding one certificate layer together under
// deletion batches: each batch first spawns a member sourced at the rerun
// survivors accumulated so far, then replays the batch through every member.
// The layer flow is the sum of member flows. theta = 10(l*k+k)+l+1 at layer
// l, so the sum covers the layer's (10lk+l+1)*d demand net of the <= 8k*d a
// member chain can absorb at other sources. A layer whose members cannot be
// routed (too heavy for the remainder, or the view stopped expanding) is
// marked broken and folded into S_0 at the swap.
class WorstCaseFlow {
 public:
  WorstCaseFlow(DecGraph view, std::vector<VertexId> S, const PruneConfig& cfg, int layer)
      : cfg_(cfg), g_(std::move(view)), layer_(layer), S_orig_(std::move(S)) {
    theta_ = 10ll * ((i64)layer * cfg.k + cfg.k) + layer + 1;
    rerun_all_.assign(g_.n, 0);
  }

  WorstCaseFlow(const WorstCaseFlow&) = delete;
  WorstCaseFlow& operator=(const WorstCaseFlow&) = delete;

  int layer() const { return layer_; }
  i64 theta() const { return theta_; }
  bool broken() const { return broken_; }
  const DecGraph& view() const { return g_; }
  const std::vector<VertexId>& original_sources() const { return S_orig_; }
  size_t member_count() const { return members_.size(); }

  // Spawns the next chain member on the current view: the original sources
  // for the first one, the live rerun union afterwards. Cheap; the flow is
  // built through init ticks. Routability gate: (theta+1)*vol(S') must fit
  // in 8*vol(rest) or the whole layer is written off.
  void begin_member(OpCounter& ops) {
    if (broken_) return;
    std::vector<VertexId> S;
    if (!spawned_any_) {
      for (VertexId v : S_orig_)
        if (g_.vertex_alive[v]) S.push_back(v);
    } else {
      for (VertexId v = 0; v < g_.n; ++v)
        if (rerun_all_[v] && g_.vertex_alive[v]) S.push_back(v);
    }
    spawned_any_ = true;
    ops.add(g_.n);
    if (S.empty()) return;
    std::vector<char> in_s(g_.n, 0);
    for (VertexId v : S) in_s[v] = 1;
    i64 vol_s = 0, vol_rest = 0;
    for (VertexId v = 0; v < g_.n; ++v) {
      if (!g_.vertex_alive[v]) continue;
      (in_s[v] ? vol_s : vol_rest) += g_.d[v];
    }
    if ((theta_ + 1) * vol_s > 8 * vol_rest) {
      mark_broken();
      return;
    }
    members_.push_back(std::make_unique<FlowBacktracker>(g_, S, cfg_, theta_));
  }

  // Advances the pending member initialization; true when nothing pends.
  bool tick_init(i64 budget, OpCounter& ops) {
    if (broken_ || members_.empty()) return true;
    FlowBacktracker& m = *members_.back();
    if (m.ready()) return true;
    if (!m.init_tick(budget, ops)) return false;
    if (m.failed()) mark_broken();
    return true;
  }

  // Feeds a deletion batch to every member and mirrors it on the view.
  void apply_batch(const std::vector<EdgeId>& P, const std::vector<VertexId>& U, OpCounter& ops) {
    if (!broken_)
      for (auto& m : members_)
        for (VertexId v : m->remove_batch(P, U, ops)) rerun_all_[v] = 1;
    for (EdgeId e : P)
      if (g_.edge_alive(e)) g_.delete_edge(e);
    std::vector<VertexId> kill;
    for (VertexId v : U)
      if (v >= 0 && v < g_.n && g_.vertex_alive[v]) kill.push_back(v);
    if (!kill.empty()) g_.remove_vertices(kill);
    ops.add((i64)P.size() + (i64)U.size() + 1);
  }

  // Catch-up batch: everything dead or pruned in the live graph that the
  // view still considers alive.
  void sync_with(const DecGraph& now, const std::vector<char>& s0, OpCounter& ops) {
    std::vector<EdgeId> P;
    for (EdgeId e = 0; e < g_.m0(); ++e) {
      ops.add();
      if (g_.edge_alive(e) && !now.edge_alive(e)) P.push_back(e);
    }
    std::vector<VertexId> U;
    for (VertexId v = 0; v < g_.n; ++v) {
      if (!g_.vertex_alive[v]) continue;
      if (!now.vertex_alive[v] || s0[v]) U.push_back(v);
    }
    if (!P.empty() || !U.empty()) apply_batch(P, U, ops);
  }

  // Final member after the last batch; runs its initialization to the end.
  void finalize(OpCounter& ops) {
    if (broken_) return;
    begin_member(ops);
    while (!tick_init(INT64_MAX, ops)) {
    }
  }

  std::vector<i64> flow_sum() {
    std::vector<i64> sum(2 * g_.m0(), 0);
    for (auto& m : members_) {
      std::vector<i64> f = m->flow_flushed();
      for (size_t a = 0; a < f.size(); ++a) sum[a] += f[a];
    }
    return sum;
  }

 private:
  void mark_broken() {
    broken_ = true;
    members_.clear();
  }

  PruneConfig cfg_;
  DecGraph g_;
  int layer_ = 1;
  i64 theta_ = 1;
  std::vector<VertexId> S_orig_;
  std::vector<char> rerun_all_;
  std::vector<std::unique_ptr<FlowBacktracker>> members_;
  bool spawned_any_ = false;
  bool broken_ = false;
};

// Background rebuild at one level: a shadow fork of the pruning session plus
// one WorstCaseFlow per layer it will install, advanced through a FIFO work
// queue under a per-deletion token budget.
class RebuildJob {
 public:
  RebuildJob(int level, const BatchPruneSession& live, const BatchCertState& cert,
             const PruneConfig& cfg)
      : cfg_(cfg), level_(level), cert_(&cert), shadow_(live) {
    // Token budget: the rebuild estimate spread over the 2^{k-level-2}
    // deletions until the batch fills, times a safety factor.
    i64 window = (i64)1 << (cfg.k - level - 2);
    i64 k4 = (i64)cfg.k * cfg.k * cfg.k * cfg.k;
    i64 est = ceil_mul((Rat(1) / cfg.phi) * (Rat(1) / cfg.phi),
                       cfg.c_T * k4 * cfg.lambda * cfg.log2n * ((i64)1 << (cfg.k - level)) *
                           cfg.sigma);
    budget_per_tick_ = ((est + window - 1) / window) * cfg.job_safety;
    wcf_.resize(cfg.k + 1);
  }

  RebuildJob(const RebuildJob&) = delete;
  RebuildJob& operator=(const RebuildJob&) = delete;

  int level() const { return level_; }
  int cursor() const { return cursor_; }
  bool expects(int m) const { return cursor_ + 2 == m; }
  bool idle() const { return tasks_.empty(); }
  i64 budget_per_tick() const { return budget_per_tick_; }
  const BatchPruneSession& shadow() const { return shadow_; }
  BatchPruneSession& shadow_mut() { return shadow_; }
  WorstCaseFlow* wcf(int j) { return j < (int)wcf_.size() ? wcf_[j].get() : nullptr; }

  // Enqueues the level's own shadow run and the first certificate chain.
  // B0/A0 are the merged batch and prune sets the level will consume.
  void start(std::vector<EdgeId> B0, std::vector<VertexId> A0) {
    enqueue_level(level_, std::move(B0), std::move(A0));
    cursor_ = level_;
  }

  // B_m just became full with everything between level_+1 and m-1 already
  // full: run shadow level m-1 on (Bm, Am), feed the accumulated deletions
  // to the existing chains, start the chain for layer m-1.
  void on_batch_full(int m, std::vector<EdgeId> Bm, std::vector<VertexId> Am) {
    require(expects(m), err::kJobDeadline,
            "level-" + std::to_string(level_) + " job saw batch " + std::to_string(m) +
                " fill at cursor " + std::to_string(cursor_));
    require(idle(), err::kJobDeadline,
            "level-" + std::to_string(level_) + " job behind schedule at batch " +
                std::to_string(m) + " fill");
    for (int j = level_; j <= m - 2; ++j) enqueue_sync(j);
    enqueue_level(m - 1, std::move(Bm), std::move(Am));
    cursor_ = m - 1;
  }

  void tick(OpCounter& ops) {
    i64 start = ops.v;
    while (!tasks_.empty() && ops.v - start < budget_per_tick_) {
      if (tasks_.front()(budget_per_tick_ - (ops.v - start), ops)) tasks_.pop_front();
    }
  }

  void run_all(OpCounter& ops) {
    while (!tasks_.empty()) {
      if (tasks_.front()(INT64_MAX, ops)) tasks_.pop_front();
    }
  }

 private:
  // Shadow run of one level with the captured sets, then its chain: view,
  // spawn, resumable init.
  void enqueue_level(int j, std::vector<EdgeId> B, std::vector<VertexId> A) {
    tasks_.push_back([this, j, B = std::move(B), A = std::move(A)](i64, OpCounter& ops) {
      std::vector<std::vector<EdgeId>> Bv(j + 1);
      std::vector<std::vector<VertexId>> Av(j + 1);
      Bv[j] = B;
      Av[j] = A;
      shadow_.run_from(j, Bv, Av, ops, j);
      return true;
    });
    tasks_.push_back([this, j](i64, OpCounter& ops) {
      wcf_[j] = std::make_unique<WorstCaseFlow>(layer_view(j), shadow_.proposals()[j], cfg_, j);
      wcf_[j]->begin_member(ops);
      return true;
    });
    enqueue_init_ticks(j);
  }

  // Spawn-then-feed for one existing chain, per the batch order: the new
  // member is built on the pre-batch view, then the batch runs through the
  // whole chain (the catch-up diff against the live graph is the batch).
  void enqueue_sync(int j) {
    tasks_.push_back([this, j](i64, OpCounter& ops) {
      wcf_[j]->begin_member(ops);
      return true;
    });
    enqueue_init_ticks(j);
    tasks_.push_back([this, j](i64, OpCounter& ops) {
      wcf_[j]->sync_with(cert_->graph(), cert_->s0_mask(), ops);
      return true;
    });
  }

  void enqueue_init_ticks(int j) {
    tasks_.push_back([this, j](i64 budget, OpCounter& ops) {
      return wcf_[j]->tick_init(budget, ops);
    });
  }

  // G for layer j: the live graph minus S_0, the live layers below this
  // job's level, and the shadow layers level_..j-1.
  DecGraph layer_view(int j) const {
    DecGraph view = cert_->graph();
    std::vector<char> ex = cert_->s0_mask();
    for (int i = 1; i < level_; ++i)
      for (VertexId v : cert_->layer_S(i)) ex[v] = 1;
    for (int i = level_; i < j; ++i)
      for (VertexId v : shadow_.proposals()[i]) ex[v] = 1;
    std::vector<VertexId> kill;
    for (VertexId v = 0; v < view.n; ++v)
      if (ex[v] && view.vertex_alive[v]) kill.push_back(v);
    view.remove_vertices(kill);
    return view;
  }

  PruneConfig cfg_;
  int level_ = 1;
  const BatchCertState* cert_ = nullptr;
  BatchPruneSession shadow_;
  std::vector<std::unique_ptr<WorstCaseFlow>> wcf_;
  std::deque<std::function<bool(i64, OpCounter&)>> tasks_;
  int cursor_ = 0;
  i64 budget_per_tick_ = 1;
};

// Worst-case driver: inherits the drain/fold/certificate plumbing and
// replaces deep rebuilds with job swaps. Levels k-1..lambda stay synchronous.
class WorstCasePruner : public AmortizedPruner {
 public:
  WorstCasePruner(const DecGraph& g, const PruneConfig& cfg) : AmortizedPruner(g, cfg) {
    jobs_.resize(std::max(0, cfg.k - 1));  // slots 1..k-2
  }

  const RebuildJob* job(int level) const {
    return level >= 1 && level < (int)jobs_.size() ? jobs_[level].get() : nullptr;
  }

  PruneDelta process_deletion(EdgeId e) override {
    OpCounter ops;
    PruneDelta delta;
    require(cert_.graph().edge_alive(e), err::kDoubleDeletion, "deleting dead edge");

    drain(e, delta, ops);
    for (auto& j : jobs_)
      if (j) j->tick(ops);

    int idx = batch_.insert_deletion(e, prune_.proposals());
    delta.rebuild_level = idx;

    int l = std::min(idx, cfg_.k);
    for (int i = l; i <= cfg_.k; ++i)
      for (VertexId v : cert_.layer_S(i))
        require(cert_.in_s0(v), err::kFullDrain,
                "layer " + std::to_string(i) + " source " + std::to_string(v) +
                    " not pruned before rebuild");

    if (idx >= cfg_.k - 1) {
      prune_.run_from(idx, batch_.B, batch_.A, ops);
      auto Sp = cert_layer_sets();
      fold_oversized(l, Sp, delta);
      cert_.reinitialize(l, Sp, ops);
    } else {
      require(jobs_[idx] != nullptr, err::kJobDeadline,
              "no precomputed rebuild at level " + std::to_string(idx));
      swap_in(*jobs_[idx], idx, delta, ops);
      jobs_[idx].reset();
    }

    fill_event(idx, ops);

    if (cert_.graph().edge_alive(e)) {
      auto p = cert_.remove_edge(e, ops);
      delta.pruned.insert(delta.pruned.end(), p.begin(), p.end());
    }
    delta.op_count = ops.v;
    return delta;
  }

 private:
  void swap_in(RebuildJob& job, int idx, PruneDelta& delta, OpCounter& ops) {
    require(job.idle(), err::kJobDeadline,
            "level-" + std::to_string(idx) + " job behind schedule at its swap");
    require(job.cursor() == cfg_.k - 2, err::kJobDeadline,
            "level-" + std::to_string(idx) + " job swapped before reaching level k-2");

    // Pre-swap support: everything the swapped levels force out must already
    // be in S_0, so the graph the new state certifies is the live one.
    for (int j = idx; j < (int)batch_.A.size(); ++j)
      for (VertexId v : batch_.A[j])
        require(cert_.in_s0(v) || !cert_.graph().vertex_alive[v], err::kSwapSupport,
                "forced-prune vertex " + std::to_string(v) + " of level " + std::to_string(j) +
                    " alive outside S_0 at swap");

    // Last catch-up batch, then the final chain members (the triggering edge
    // is still alive here and is removed through the certificate afterwards).
    for (int j = idx; j <= cfg_.k - 2; ++j) {
      WorstCaseFlow* w = job.wcf(j);
      require(w != nullptr, err::kJobDeadline,
              "missing certificate chain for layer " + std::to_string(j));
      w->sync_with(cert_.graph(), cert_.s0_mask(), ops);
      w->finalize(ops);
    }

    // Top levels run synchronously on the shadow, then the live session
    // adopts the shadow wholesale from the swap level up.
    job.shadow_mut().run_from(cfg_.k - 1, batch_.B, batch_.A, ops);
    prune_.adopt_from(job.shadow(), idx);

    auto Sp = cert_layer_sets();
    for (int j = idx; j <= cfg_.k - 2; ++j)
      if (job.wcf(j)->broken())
        for (VertexId v : Sp[j])
          if (cert_.force_prune(v)) delta.pruned.push_back(v);
    fold_oversized(idx, Sp, delta);

    std::vector<std::vector<i64>> sums(cfg_.k + 1);
    std::vector<const std::vector<i64>*> pre(cfg_.k + 1, nullptr);
    for (int j = idx; j <= cfg_.k - 2; ++j) {
      WorstCaseFlow* w = job.wcf(j);
      if (w->broken()) continue;
      bool folded = true;
      for (VertexId v : Sp[j])
        if (!cert_.in_s0(v)) folded = false;
      if (folded) continue;
      sums[j] = w->flow_sum();
      pre[j] = &sums[j];
    }
    cert_.reinitialize(idx, Sp, ops, &pre);
  }

  // At most one batch can become full per deletion: the rebuilt level after
  // its merge. Advance every job whose ladder expects it, then start the job
  // for the level below it.
  void fill_event(int m, OpCounter& ops) {
    if (m >= cfg_.k || batch_.classify(m) != BatchFill::kFull) return;
    std::vector<VertexId> Am = merged_prune_set(m);
    for (int i = 1; i <= m - 2 && i <= cfg_.k - 2; ++i)
      if (jobs_[i] && jobs_[i]->expects(m)) jobs_[i]->on_batch_full(m, batch_.B[m], Am);
    int i = m - 1;
    if (i >= 1 && i <= cfg_.k - 2 && !jobs_[i] && batch_.classify(i) != BatchFill::kFull) {
      jobs_[i] = std::make_unique<RebuildJob>(i, prune_, cert_, cfg_);
      std::vector<EdgeId> B0 = batch_.B[i];
      B0.insert(B0.end(), batch_.B[m].begin(), batch_.B[m].end());
      std::vector<VertexId> A0 = merged_prune_set(i);
      std::vector<VertexId> up = merged_prune_set(m);
      A0.insert(A0.end(), up.begin(), up.end());
      dedup(B0);
      dedup(A0);
      jobs_[i]->start(std::move(B0), std::move(A0));
    }
    ops.add(cfg_.k);
  }

  // A_j plus the live level-j proposals, sorted and deduplicated.
  std::vector<VertexId> merged_prune_set(int j) const {
    std::vector<VertexId> out = batch_.A[j];
    const auto& props = prune_.proposals();
    if (j < (int)props.size()) out.insert(out.end(), props[j].begin(), props[j].end());
    dedup(out);
    return out;
  }

  template <typename T>
  static void dedup(std::vector<T>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }

  std::vector<std::unique_ptr<RebuildJob>> jobs_;
};

}  // namespace decprune
