#pragma once

// Flow-certificate checking: the (S, f, gamma_source, gamma_sink, c) witness,
// its expansion implication, composition, and the batch-pruning expansion
// certificate (zero-excess routing of lost-degree sources to degree sinks).

#include <string>
#include <vector>

#include "decprune/flow.hpp"

namespace decprune {

struct FlowCertificate {
  std::vector<VertexId> S;
  const FlowState* f = nullptr;
  Rat gamma_source{0};
  Rat gamma_sink{0};
  Rat c{1};
};

struct ViolationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  void add(const std::string& v) { violations.push_back(v); }
};

// Def-5.2-style check. Vertices in exclude (if given) are treated as removed:
// f is restricted to arcs with both endpoints outside it, and no condition is
// imposed on them. Net out-flow is measured, matching the certificate proofs.
inline bool verify_certificate(const DecGraph& g, const FlowCertificate& cert,
                               ViolationReport* report = nullptr,
                               const std::vector<char>* exclude = nullptr) {
  ViolationReport local;
  ViolationReport& rep = report ? *report : local;
  const FlowState& st = *cert.f;
  i64 sigma = st.scale;
  std::vector<char> in_s(g.n, 0);
  for (VertexId v : cert.S) in_s[v] = 1;
  auto excluded = [&](VertexId v) { return exclude && (*exclude)[v]; };

  std::vector<i64> bf(g.n, 0);
  for (int a = 0; a < (int)st.f.size(); ++a) {
    if (st.f[a] == 0) continue;
    EdgeId e = arc_edge(a);
    VertexId tl = st.tail(a), hd = st.head(a);
    if (excluded(tl) || excluded(hd)) continue;
    if (!g.edges[e].alive) {
      rep.add("flow on dead edge " + std::to_string(e));
      continue;
    }
    if (st.f[a] < 0 || mul_gt(st.f[a], cert.c.den, cert.c.num, sigma))
      rep.add("capacity violation on arc " + std::to_string(a));
    bf[tl] += st.f[a];
    bf[hd] -= st.f[a];
  }
  for (VertexId v = 0; v < g.n; ++v) {
    if (excluded(v)) continue;
    if (in_s[v]) {
      // net out-flow >= gamma_source * d(v) * sigma
      if (!mul_ge(bf[v], cert.gamma_source.den, cert.gamma_source.num, g.d[v] * sigma))
        rep.add("source deficit at vertex " + std::to_string(v));
    } else {
      i64 absorbed = bf[v] < 0 ? -bf[v] : 0;
      if (mul_gt(absorbed, cert.gamma_sink.den, cert.gamma_sink.num, g.d[v] * sigma))
        rep.add("sink overflow at vertex " + std::to_string(v));
    }
  }
  return rep.ok();
}

// Expansion bound implied by a valid certificate whose complement is an
// alpha-expander: 1/(3(c + delta)).
inline Rat implied_expansion(const FlowCertificate& cert, Rat alpha, Rat delta) {
  require(delta >= Rat(1), err::kParamMismatch, "delta must be >= 1");
  require(cert.gamma_source >= cert.gamma_sink / delta, err::kParamMismatch,
          "gamma_source < gamma_sink/delta");
  require(cert.c >= Rat(3) / alpha, err::kParamMismatch, "c < 3/alpha");
  return Rat(1) / (Rat(3) * (cert.c + delta));
}

// Composition: cert2 lives on the graph with cert1.S removed and must route
// gamma_source + gamma_sink per unit degree. The sum holds its flow in `out`.
inline FlowCertificate compose(const FlowCertificate& c1, const FlowCertificate& c2,
                               FlowState& out) {
  require(c2.gamma_source == c1.gamma_source + c1.gamma_sink, err::kParamMismatch,
          "compose: cert2.gamma_source != cert1.gamma_source + cert1.gamma_sink");
  require(c1.f->scale == c2.f->scale, err::kParamMismatch, "compose: scale mismatch");
  out = *c1.f;
  for (size_t a = 0; a < out.f.size(); ++a) {
    out.f[a] += c2.f->f[a];
    out.cap[a] += c2.f->cap[a];
  }
  out.recompute_bf();
  FlowCertificate res;
  res.S = c1.S;
  std::vector<char> seen(out.g->n, 0);
  for (VertexId v : c1.S) seen[v] = 1;
  for (VertexId v : c2.S)
    if (!seen[v]) res.S.push_back(v);
  res.f = &out;
  res.gamma_source = c1.gamma_source;
  res.gamma_sink = c1.gamma_sink + c2.gamma_sink;
  res.c = c1.c + c2.c;
  return res;
}

// Demand construction for the batch-pruning expansion certificate: sources
// ceil(8*sigma/phi) per lost edge at surviving endpoints, sinks 2*d*sigma,
// caps ceil(32*sigma/phi). g0 carries initial degrees d; lost(v) counts
// initial edges at v that are missing from the surviving graph.
inline FlowState build_exp_cert_state(const DecGraph& g_now, const std::vector<i64>& d0,
                                      const std::vector<char>& in_A, Rat phi, i64 sigma) {
  FlowState st(g_now, sigma);
  i64 src_unit = ceil_mul(Rat(8) / phi, sigma);
  i64 cap_unit = ceil_mul(Rat(32) / phi, sigma);
  for (int a = 0; a < (int)st.cap.size(); ++a) st.cap[a] = cap_unit;
  for (VertexId v = 0; v < g_now.n; ++v) {
    if (in_A[v] || !g_now.vertex_alive[v]) continue;
    i64 live = 0;
    for (EdgeId e : g_now.adj[v]) {
      if (!g_now.edges[e].alive) continue;
      VertexId w = g_now.other(e, v);
      if (!in_A[w] && g_now.vertex_alive[w]) live++;
    }
    i64 lost = d0[v] - live;
    st.s[v] = src_unit * lost;
    st.t[v] = 2 * d0[v] * sigma;
  }
  return st;
}

// True iff f routes the lost-degree demands exactly (zero excess) and is
// feasible under the 32/phi caps.
inline bool verify_exp_cert(const DecGraph& g_now, const std::vector<i64>& d0,
                            const std::vector<VertexId>& A, const FlowState& f, Rat phi) {
  std::vector<char> in_A(g_now.n, 0);
  for (VertexId v : A) in_A[v] = 1;
  FlowState want = build_exp_cert_state(g_now, d0, in_A, phi, f.scale);
  want.f = f.f;
  want.recompute_bf();
  for (size_t a = 0; a < want.f.size(); ++a) {
    if (want.f[a] < 0 || want.f[a] > want.cap[a]) return false;
    if (want.f[a] > 0 && !g_now.edges[arc_edge((int)a)].alive) return false;
  }
  for (VertexId v = 0; v < g_now.n; ++v) {
    if (in_A[v] || !g_now.vertex_alive[v]) continue;
    if (want.excess_at(v) > 0) return false;
  }
  return true;
}

}  // namespace decprune
