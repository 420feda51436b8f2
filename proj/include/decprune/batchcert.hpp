#pragma once

// Layered flow-certificate maintenance. Each layer i holds an acyclic flow
// f_i routing (10ik+i+1)*d out of S_i-minus-pruned into (10k-1)*d sinks
// outside the layers, a link-cut forest over the flow support used to
// backtrack single units, and a counter q_i(v) of "erroneous source" events
// that prunes v into S_0 once it crosses (i+1)*d(v)*sigma.

#include <memory>
#include <vector>

#include "decprune/certificate.hpp"
#include "decprune/config.hpp"
#include "decprune/linkcut.hpp"

namespace decprune {

class BatchCertState {
 public:
  BatchCertState(const DecGraph& g, const PruneConfig& cfg) : cfg_(cfg), ghat_(g) {
    arcs_.reserve(2 * g.m0());
    for (EdgeId e = 0; e < g.m0(); ++e) {
      arcs_.push_back({g.edges[e].u, g.edges[e].v});
      arcs_.push_back({g.edges[e].v, g.edges[e].u});
    }
    in_s0_.assign(g.n, 0);
    layers_.resize(cfg.k + 1);
    for (int i = 1; i <= cfg.k; ++i) reset_layer(i, {}, nullptr);
  }

  BatchCertState(const BatchCertState&) = delete;
  BatchCertState& operator=(const BatchCertState&) = delete;

  const PruneConfig& config() const { return cfg_; }
  const DecGraph& graph() const { return ghat_; }
  bool in_s0(VertexId v) const { return in_s0_[v]; }
  const std::vector<char>& s0_mask() const { return in_s0_; }
  std::vector<VertexId> s0_list() const {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < ghat_.n; ++v)
      if (in_s0_[v]) out.push_back(v);
    return out;
  }
  const std::vector<VertexId>& layer_S(int i) const { return layers_[i].S; }
  const std::vector<char>& layer_shat_mask(int i) const { return layers_[i].in_shat; }
  std::vector<VertexId> shat_list(int i) const {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < ghat_.n; ++v)
      if (layers_[i].in_shat[v]) out.push_back(v);
    return out;
  }
  i64 layer_q(int i, VertexId v) const { return layers_[i].q[v]; }

  // Flow of layer i with tree-resident values flushed back into the array.
  std::vector<i64> layer_flow_flushed(int i) {
    Layer& L = layers_[i];
    std::vector<i64> out = L.f.f;
    if (L.D)
      for (VertexId v = 0; v < ghat_.n; ++v) {
        int a = L.D->in_edge(v);
        if (a >= 0) out[a] = L.D->read_current_flow(a);
      }
    return out;
  }

  struct LayerInit {
    std::vector<VertexId> S;
    std::vector<i64> flow;  // per arc, acyclic, precomputed
  };

  // Fresh flows for layers l..k via local blocking flow on the graph minus
  // all lower layers; zero excess is required (the max-flow claim). Layers
  // with a non-null entry in `pre` (indexed like Sp) adopt that flow instead
  // after cycle removal, support and demand checks.
  void reinitialize(int l, const std::vector<std::vector<VertexId>>& Sp, OpCounter& ops,
                    const std::vector<const std::vector<i64>*>* pre = nullptr) {
    check_reinit_preconditions(l, Sp);
    for (int i = l; i <= cfg_.k; ++i) {
      const std::vector<VertexId>& S = Sp[i];
      if (pre && i < (int)pre->size() && (*pre)[i]) {
        adopt_layer_flow(i, S, *(*pre)[i], ops);
        continue;
      }
      std::vector<char> excluded = excluded_below(l, Sp, i);
      DecGraph gview = ghat_;
      std::vector<VertexId> kill;
      for (VertexId v = 0; v < ghat_.n; ++v)
        if (excluded[v] && gview.vertex_alive[v]) kill.push_back(v);
      gview.remove_vertices(kill);
      ops.add((i64)ghat_.n + ghat_.m0());

      FlowState st(gview, cfg_.sigma);
      for (auto& c : st.cap) c = cfg_.cert_cap;
      std::vector<char> in_S(ghat_.n, 0);
      for (VertexId v : S) in_S[v] = 1;
      for (VertexId v = 0; v < ghat_.n; ++v) {
        if (!gview.vertex_alive[v]) continue;
        if (in_S[v] && !in_s0_[v])
          st.s[v] = cfg_.cert_source_mult(i) * ghat_.d[v] * cfg_.sigma;
        else if (!in_S[v])
          st.t[v] = cfg_.cert_sink_mult() * ghat_.d[v] * cfg_.sigma;
      }
      dinitz_local(st, cfg_.cert_h, ops);
      require(st.excess_total() == 0, err::kReinitExcess,
              "layer " + std::to_string(i) + " demand not routable");
      remove_cycles(st, ops);
      reset_layer(i, S, &st.f);
    }
  }

  // Adopts a precomputed layer flow (sum of backtracker members at a swap):
  // cancel cycles, then require live support outside S_0, per-arc caps, and
  // the full per-source demand before installing.
  void adopt_layer_flow(int i, const std::vector<VertexId>& S, const std::vector<i64>& flow,
                        OpCounter& ops) {
    FlowState st(ghat_, cfg_.sigma);
    for (auto& c : st.cap) c = cfg_.cert_cap;
    st.f = flow;
    st.recompute_bf();
    remove_cycles(st, ops);
    for (int a = 0; a < (int)st.f.size(); ++a) {
      if (st.f[a] == 0) continue;
      ops.add();
      EdgeId e = arc_edge(a);
      VertexId tl = st.tail(a), hd = st.head(a);
      require(ghat_.edge_alive(e) && !in_s0_[tl] && !in_s0_[hd] && ghat_.vertex_alive[tl] &&
                  ghat_.vertex_alive[hd],
              err::kSwapSupport, "adopted layer " + std::to_string(i) +
                                     " flow rides dead or pruned edge " + std::to_string(e));
      require(st.f[a] <= cfg_.cert_cap, err::kSwapSupport,
              "adopted layer " + std::to_string(i) + " overflows arc cap");
    }
    i64 want = cfg_.cert_source_mult(i) * cfg_.sigma;
    for (VertexId v : S) {
      ops.add();
      if (in_s0_[v]) continue;
      require(st.bf[v] >= want * ghat_.d[v], err::kSwapSupport,
              "adopted layer " + std::to_string(i) + " under-routes source " + std::to_string(v));
    }
    reset_layer(i, S, &st.f);
  }

  // Swap path: adopt precomputed acyclic flows (worst-case scheduler).
  void reinitialize_with_flows(int l, const std::vector<LayerInit>& inits, OpCounter& ops) {
    std::vector<std::vector<VertexId>> Sp(cfg_.k + 1);
    for (int i = l; i <= cfg_.k; ++i) Sp[i] = inits[i - l].S;
    check_reinit_preconditions(l, Sp);
    for (int i = l; i <= cfg_.k; ++i) {
      reset_layer(i, inits[i - l].S, &inits[i - l].flow);
      ops.add();
    }
  }

  // One unit of backtracking in layer i for edge e, following the cascade:
  // drop a zero-flow minimum edge above the head, decrement the root path,
  // then either relink the root or charge it as an erroneous source.
  void remove_flow(EdgeId e, int i, OpCounter& ops) {
    Layer& L = layers_[i];
    int arc = -1;
    for (int a : {2 * e, 2 * e + 1}) {
      if (!L.in_E[a]) continue;
      if (L.D->read_current_flow(a) > 0) {
        arc = a;
        break;
      }
      L.in_E[a] = 0;  // support shed a drained arc
    }
    ops.add();
    if (arc < 0) return;
    VertexId v = arcs_[arc].second;
    if (!L.D->is_root(v)) {
      int me = L.D->find_min(v);
      if (L.D->read_current_flow(me) == 0) {
        L.D->erase(me);
        L.in_E[me] = 0;
      }
      L.D->update_flow(v, -1);
      ops.add();
    }
    VertexId r = L.D->find_root(v);
    int cand = pick_in_arc(L, r, arc);
    if (cand >= 0) {
      L.D->insert(cand);
      if (L.in_S[r] && !in_s0_[r]) bump_q(i, r, ops);
    } else if (L.in_S[r]) {
      true_source_event(i, r, ops);
    }
  }

  // Drains e across all layers then deletes it from the graph; returns the
  // vertices newly pruned into S_0.
  std::vector<VertexId> remove_edge(EdgeId e, OpCounter& ops) {
    newly_pruned_.clear();
    for (int i = 1; i <= cfg_.k; ++i) {
      Layer& L = layers_[i];
      for (i64 rep = 0; rep < cfg_.cert_repeat; ++rep) {
        if (L.D->read_current_flow(2 * e) == 0 && L.D->read_current_flow(2 * e + 1) == 0) break;
        remove_flow(e, i, ops);
      }
      require(L.D->read_current_flow(2 * e) == 0 && L.D->read_current_flow(2 * e + 1) == 0,
              err::kDrainStuck, "edge " + std::to_string(e) + " still carries layer-" +
                                    std::to_string(i) + " flow after repeat budget");
      for (int a : {2 * e, 2 * e + 1})
        if (L.in_E[a]) {
          if (L.D->in_tree(a)) L.D->erase(a);
          L.in_E[a] = 0;
        }
    }
    if (ghat_.edge_alive(e)) ghat_.delete_edge(e);
    require((i64)newly_pruned_.size() <= cfg_.recourse_per_edge, err::kRecourseBudget,
            "remove_edge pruned " + std::to_string(newly_pruned_.size()) + " vertices");
    return newly_pruned_;
  }

  // The composed invariant certificate: (union of live layer sources, sum of
  // layer flows) measured on the graph minus S_0.
  FlowCertificate checkpoint_certificate(FlowState& scratch) {
    scratch = FlowState(ghat_, cfg_.sigma);
    FlowCertificate cert;
    for (int i = 1; i <= cfg_.k; ++i) {
      std::vector<i64> fi = layer_flow_flushed(i);
      for (size_t a = 0; a < fi.size(); ++a) scratch.f[a] += fi[a];
      for (VertexId v = 0; v < ghat_.n; ++v)
        if (layers_[i].in_shat[v]) cert.S.push_back(v);
    }
    scratch.recompute_bf();
    cert.f = &scratch;
    cert.gamma_source = Rat(10 * cfg_.k);
    cert.gamma_sink = Rat(10 * cfg_.k * cfg_.k);
    cert.c = Rat(cfg_.cert_cap * cfg_.k, cfg_.sigma);
    return cert;
  }

  // Immediate pruning: drop v into S_0 without the counter path. Used by the
  // drivers when a proposed source set is too heavy to back with a flow.
  bool force_prune(VertexId v) {
    if (in_s0_[v]) return false;
    in_s0_[v] = 1;
    for (int i = 1; i <= cfg_.k; ++i) layers_[i].in_shat[v] = 0;
    return true;
  }

  bool checkpoint_ok(ViolationReport* rep = nullptr) {
    FlowState scratch;
    FlowCertificate cert = checkpoint_certificate(scratch);
    return verify_certificate(ghat_, cert, rep, &in_s0_);
  }

 private:
  struct Layer {
    std::vector<VertexId> S;
    std::vector<char> in_S, in_shat;
    FlowState f;
    std::vector<char> in_E;
    std::unique_ptr<DynForest> D;
    std::vector<i64> q;
    std::vector<std::pair<int, size_t>> cursor;  // (lower layer j, adj position)
  };

  void check_reinit_preconditions(int l, const std::vector<std::vector<VertexId>>& Sp) {
    require(l >= 1 && l <= cfg_.k, err::kReinitPrecondition, "bad reinit level");
    require((int)Sp.size() >= cfg_.k + 1, err::kReinitPrecondition, "missing layer sets");
    for (int i = l; i <= cfg_.k; ++i)
      for (VertexId v : layers_[i].S)
        require(in_s0_[v], err::kReinitPrecondition,
                "old layer " + std::to_string(i) + " not fully pruned before reinit");
    // Volume sanity: each new source set must be small next to what remains.
    i64 vol_rest = 0;
    std::vector<char> in_any(ghat_.n, 0);
    for (int i = 1; i <= cfg_.k; ++i) {
      const auto& S = i >= l ? Sp[i] : layers_[i].S;
      for (VertexId v : S) in_any[v] = 1;
    }
    for (VertexId v = 0; v < ghat_.n; ++v)
      if (!in_any[v] && !in_s0_[v] && ghat_.vertex_alive[v]) vol_rest += ghat_.d[v];
    for (int i = l; i <= cfg_.k; ++i) {
      i64 vol_s = 0;
      for (VertexId v : Sp[i])
        if (!in_s0_[v]) vol_s += ghat_.d[v];
      require(vol_s * cfg_.cert_vol_mult <= vol_rest, err::kCertVolume,
              "layer " + std::to_string(i) + " source volume too large for remainder");
    }
  }

  std::vector<char> excluded_below(int l, const std::vector<std::vector<VertexId>>& Sp,
                                   int i) const {
    std::vector<char> ex = in_s0_;
    for (int j = 1; j < i; ++j) {
      const auto& S = j >= l ? Sp[j] : layers_[j].S;
      for (VertexId v : S) ex[v] = 1;
    }
    return ex;
  }

  void reset_layer(int i, const std::vector<VertexId>& S, const std::vector<i64>* flow) {
    Layer& L = layers_[i];
    L.S = S;
    L.in_S.assign(ghat_.n, 0);
    L.in_shat.assign(ghat_.n, 0);
    for (VertexId v : S) {
      L.in_S[v] = 1;
      if (!in_s0_[v]) L.in_shat[v] = 1;
    }
    L.f = FlowState(ghat_, cfg_.sigma);
    for (auto& c : L.f.cap) c = cfg_.cert_cap;
    if (flow) {
      L.f.f = *flow;
      L.f.recompute_bf();
    }
    L.in_E.assign(2 * ghat_.m0(), 0);
    for (int a = 0; a < (int)L.f.f.size(); ++a)
      if (L.f.f[a] > 0) L.in_E[a] = 1;
    L.D = std::make_unique<DynForest>(ghat_.n, arcs_, L.f.f, nullptr);
    L.q.assign(ghat_.n, 0);
    L.cursor.assign(ghat_.n, {1, 0});
  }

  // Deterministic in-arc choice at a root: the triggering arc first if it
  // points at r and still carries flow, then ascending EdgeId.
  int pick_in_arc(Layer& L, VertexId r, int prefer) {
    if (arcs_[prefer].second == r && L.in_E[prefer] && L.D->read_current_flow(prefer) > 0)
      return prefer;
    for (EdgeId e : ghat_.adj[r]) {
      int a = 2 * e + (ghat_.edges[e].u == r ? 1 : 0);  // arc into r
      if (!L.in_E[a]) continue;
      if (L.D->read_current_flow(a) > 0) return a;
      L.in_E[a] = 0;
    }
    return -1;
  }

  void true_source_event(int i, VertexId r, OpCounter& ops) {
    Layer& L = layers_[i];
    auto& cur = L.cursor[r];
    while (cur.first < i) {
      if (cur.second >= ghat_.adj[r].size()) {
        cur.first++;
        cur.second = 0;
        continue;
      }
      EdgeId e = ghat_.adj[r][cur.second];
      int a = 2 * e + (ghat_.edges[e].u == r ? 1 : 0);  // arc into r
      int j = cur.first;
      ops.add();
      Layer& Lj = layers_[j];
      if (!Lj.in_E[a]) {
        cur.second++;
        continue;
      }
      if (Lj.D->read_current_flow(a) > 0) {
        remove_flow(e, j, ops);  // drain lower-layer in-flow first
        return;
      }
      Lj.in_E[a] = 0;
      cur.second++;
      bump_q(i, r, ops);
      return;
    }
    bump_q(i, r, ops);
  }

  void bump_q(int i, VertexId r, OpCounter& ops) {
    Layer& L = layers_[i];
    L.q[r]++;
    ops.add();
    if (L.in_shat[r] && L.q[r] > (i64)(i + 1) * ghat_.d[r] * cfg_.sigma) {
      L.in_shat[r] = 0;
      in_s0_[r] = 1;
      newly_pruned_.push_back(r);
    }
  }

  PruneConfig cfg_;
  DecGraph ghat_;
  std::vector<std::pair<int, int>> arcs_;
  std::vector<char> in_s0_;
  std::vector<Layer> layers_;
  std::vector<VertexId> newly_pruned_;
};

}  // namespace decprune
