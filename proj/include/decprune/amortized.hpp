#pragma once

// Delayed-pruning driver: per deletion, drain a quota of edges incident to
// each live layer source set, reshuffle batches, re-run batch pruning from
// the rebuild index, and reinitialize the affected certificate layers. The
// pruned set S_0 lives in the certificate state and only grows.

#include <vector>

#include "decprune/batchcert.hpp"
#include "decprune/batching.hpp"
#include "decprune/batchprune.hpp"
#include "decprune/oracle.hpp"

namespace decprune {

struct PruneDelta {
  std::vector<VertexId> pruned;
  i64 op_count = 0;
  int rebuild_level = -1;
};

class AmortizedPruner {
 public:
  AmortizedPruner(const DecGraph& g, const PruneConfig& cfg)
      : cfg_(cfg),
        prune_(g, cfg),
        batch_(cfg.k, cfg.lambda, cfg.deletion_budget),
        cert_(g, cfg) {
    if (cfg.debug_oracle) {
      auto rep = oracle::conductance_exact(g, oracle::VolumeMeasure::kInitialD);
      require(!rep.any_cut || rep.conductance >= cfg.phi, err::kParamMismatch,
              "claimed expansion above the true conductance");
    }
    OpCounter ops;
    prune_.run_from(1, {}, {}, ops);
  }

  virtual ~AmortizedPruner() = default;

  const PruneConfig& config() const { return cfg_; }
  const BatchCertState& cert() const { return cert_; }
  BatchCertState& cert_mut() { return cert_; }
  const BatchPruneSession& prune_session() const { return prune_; }
  const BatchState& batches() const { return batch_; }

  virtual PruneDelta process_deletion(EdgeId e) {
    OpCounter ops;
    PruneDelta delta;
    require(cert_.graph().edge_alive(e), err::kDoubleDeletion, "deleting dead edge");

    drain(e, delta, ops);

    int idx = batch_.insert_deletion(e, prune_.proposals());
    delta.rebuild_level = idx;

    // Full-drain: every layer the rebuild touches must already sit in S_0.
    int l = std::min(idx, cfg_.k);
    for (int i = l; i <= cfg_.k; ++i)
      for (VertexId v : cert_.layer_S(i))
        require(cert_.in_s0(v), err::kFullDrain,
                "layer " + std::to_string(i) + " source " + std::to_string(v) +
                    " not pruned before rebuild");

    prune_.run_from(idx, batch_.B, batch_.A, ops);
    auto Sp = cert_layer_sets();
    fold_oversized(l, Sp, delta);
    cert_.reinitialize(l, Sp, ops);

    if (cert_.graph().edge_alive(e)) {
      auto p = cert_.remove_edge(e, ops);
      delta.pruned.insert(delta.pruned.end(), p.begin(), p.end());
    }
    delta.op_count = ops.v;
    return delta;
  }

  // S'_i for the certificate: batchprune proposals, with everything at
  // levels >= k folded into S'_k.
  std::vector<std::vector<VertexId>> cert_layer_sets() const {
    std::vector<std::vector<VertexId>> Sp(cfg_.k + 1);
    const auto& props = prune_.proposals();
    for (int i = 1; i < cfg_.k && i < (int)props.size(); ++i) Sp[i] = props[i];
    for (int j = cfg_.k; j <= cfg_.lambda && j < (int)props.size(); ++j)
      Sp[cfg_.k].insert(Sp[cfg_.k].end(), props[j].begin(), props[j].end());
    std::sort(Sp[cfg_.k].begin(), Sp[cfg_.k].end());
    Sp[cfg_.k].erase(std::unique(Sp[cfg_.k].begin(), Sp[cfg_.k].end()), Sp[cfg_.k].end());
    return Sp;
  }

 protected:
  // A source set too heavy for the remainder cannot be backed by a flow, so
  // the delay is skipped and its vertices go straight into S_0.
  void fold_oversized(int l, const std::vector<std::vector<VertexId>>& Sp, PruneDelta& delta) {
    const DecGraph& g = cert_.graph();
    std::vector<char> in_any(g.n, 0);
    for (int i = 1; i <= cfg_.k; ++i)
      for (VertexId v : i >= l ? Sp[i] : cert_.layer_S(i)) in_any[v] = 1;
    i64 vol_rest = 0;
    for (VertexId v = 0; v < g.n; ++v)
      if (!in_any[v] && !cert_.in_s0(v) && g.vertex_alive[v]) vol_rest += g.d[v];
    for (int i = l; i <= cfg_.k; ++i) {
      i64 vol_s = 0;
      for (VertexId v : Sp[i])
        if (!cert_.in_s0(v)) vol_s += g.d[v];
      if (vol_s * cfg_.cert_vol_mult <= vol_rest) continue;
      for (VertexId v : Sp[i])
        if (cert_.force_prune(v)) delta.pruned.push_back(v);
    }
  }

  // Up to eta live edges per level, incident to the level's un-pruned
  // sources, both endpoints outside lower layers; ascending (vertex, edge).
  void drain(EdgeId skip, PruneDelta& delta, OpCounter& ops) {
    const DecGraph& g = cert_.graph();
    std::vector<char> lower(g.n, 0);
    for (VertexId v = 0; v < g.n; ++v) lower[v] = cert_.in_s0(v);
    for (int i = 1; i <= cfg_.k; ++i) {
      const auto& shat = cert_.layer_shat_mask(i);
      i64 quota = cfg_.eta;
      for (VertexId v = 0; v < g.n && quota > 0; ++v) {
        if (!shat[v] || lower[v]) continue;
        for (size_t ai = 0; ai < g.adj[v].size() && quota > 0; ++ai) {
          EdgeId e = g.adj[v][ai];
          if (!g.edge_alive(e) || e == skip) continue;
          VertexId w = g.other(e, v);
          if (lower[w]) continue;
          if (shat[w] && w < v) continue;  // already visited from w
          auto p = cert_.remove_edge(e, ops);
          delta.pruned.insert(delta.pruned.end(), p.begin(), p.end());
          --quota;
        }
      }
      for (VertexId v : cert_.layer_S(i)) lower[v] = 1;
    }
  }

  PruneConfig cfg_;
  BatchPruneSession prune_;
  BatchState batch_;
  BatchCertState cert_;
};

}  // namespace decprune
