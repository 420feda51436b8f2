// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion re-derives its claim against the independent
// oracles rather than trusting the library's own bookkeeping.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "decprune/harness.hpp"
#include "decprune/linkcut.hpp"

using namespace decprune;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;
};

std::vector<std::pair<int, int>> dense_arcs(int n) {
  std::vector<std::pair<int, int>> arcs;
  for (int x = 0; x < n; ++x)
    for (int r = 0; r < n; ++r) arcs.push_back({x, r});
  return arcs;
}

// 1. Ten randomized sequences of 1e5 forest ops on 64 vertices agree with
// the naive oracle on every query; total runtime under ten seconds.
Outcome criterion1() {
  Outcome out;
  auto start = std::chrono::steady_clock::now();
  const int n = 64;
  auto arcs = dense_arcs(n);
  std::mt19937_64 rng(101);
  for (int seq = 0; seq < 10 && out.ok; ++seq) {
    std::vector<i64> f_fast(arcs.size(), 0), f_ref(arcs.size(), 0);
    for (size_t i = 0; i < arcs.size(); ++i) f_fast[i] = f_ref[i] = (i64)(rng() % 100);
    DynForest fast(n, arcs, f_fast);
    oracle::NaiveForest ref(n, arcs, f_ref);
    std::vector<int> tree_arcs;
    for (int op = 0; op < 100000 && out.ok; ++op) {
      int kind = (int)(rng() % 6);
      int v = (int)(rng() % n);
      switch (kind) {
        case 0: {
          if (!ref.is_root(v)) break;
          int x = (int)(rng() % n);
          if (x == v || ref.find_root(x) == v) break;
          int a = x * n + v;
          fast.insert(a);
          ref.insert(a);
          tree_arcs.push_back(a);
          break;
        }
        case 1: {
          if (tree_arcs.empty()) break;
          size_t i = rng() % tree_arcs.size();
          int a = tree_arcs[i];
          fast.erase(a);
          ref.erase(a);
          tree_arcs[i] = tree_arcs.back();
          tree_arcs.pop_back();
          break;
        }
        case 2:
          if (fast.find_root(v) != ref.find_root(v)) {
            out.ok = false;
            out.note = "find_root mismatch";
          }
          break;
        case 3:
          if (!ref.is_root(v) && fast.find_min(v) != ref.find_min(v)) {
            out.ok = false;
            out.note = "find_min mismatch";
          }
          break;
        case 4: {
          i64 d = (i64)(rng() % 7) - 3;
          fast.update_flow(v, d);
          ref.update_flow(v, d);
          break;
        }
        case 5: {
          if (tree_arcs.empty()) break;
          int a = tree_arcs[rng() % tree_arcs.size()];
          if (fast.read_current_flow(a) != ref.read_current_flow(a)) {
            out.ok = false;
            out.note = "read_current_flow mismatch";
          }
          break;
        }
      }
    }
    for (int a : tree_arcs)
      if (fast.read_current_flow(a) != ref.read_current_flow(a)) {
        out.ok = false;
        out.note = "final flow mismatch";
      }
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream n2;
  n2 << "1e6 ops in " << secs << "s";
  if (secs >= 10.0) {
    out.ok = false;
    out.note = "too slow: " + n2.str();
  } else if (out.ok) {
    out.note = n2.str();
  }
  return out;
}

oracle::DirectedInstance mirror(const FlowState& st) {
  oracle::DirectedInstance in;
  const DecGraph& g = *st.g;
  in.n = g.n;
  for (EdgeId e = 0; e < g.m0(); ++e) {
    in.arcs.push_back({g.edges[e].u, g.edges[e].v});
    in.arcs.push_back({g.edges[e].v, g.edges[e].u});
  }
  in.cap = st.cap;
  in.source.resize(g.n);
  in.sink.resize(g.n);
  for (VertexId v = 0; v < g.n; ++v) {
    in.source[v] = st.src_cap(v);
    in.sink[v] = st.snk_cap(v);
  }
  return in;
}

i64 routed_value(const FlowState& st) {
  i64 v = 0;
  for (VertexId u = 0; u < st.g->n; ++u)
    if (st.g->vertex_alive[u]) v += st.src_cap(u) - st.excess_at(u);
  return v;
}

// 2. Blocking flow with h >= n matches the exact max-flow oracle on 200
// random small instances; layered source/sink demands drain to zero excess
// on 50 random small expanders.
Outcome criterion2() {
  Outcome out;
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200 && out.ok; ++trial) {
    int n = 3 + (int)(rng() % 8);
    std::vector<std::pair<VertexId, VertexId>> es;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng() % 3 != 0) es.push_back({u, v});
    if (es.empty()) es.push_back({0, 1});
    DecGraph g(es, n);
    FlowState st(g);
    for (auto& c : st.cap) c = 1 + (i64)(rng() % 5);
    st.s[0] = 1 + (i64)(rng() % 10);
    for (int v = 1; v < n; ++v) st.t[v] = rng() % 4;
    oracle::DirectedInstance inst = mirror(st);
    OpCounter ops;
    dinitz_local(st, n + 1, ops);
    if (routed_value(st) != oracle::exact_max_flow(inst).value) {
      out.ok = false;
      out.note = "max-flow value mismatch on trial " + std::to_string(trial);
    }
  }
  for (int trial = 0; trial < 50 && out.ok; ++trial) {
    DecGraph g = gen_random_regular(12, 6, 500 + trial);
    PruneConfig cfg = make_config(g.n, g.m0(), Rat(1, 4), true);
    int i = 1 + trial % cfg.k;
    VertexId s = (VertexId)(trial % g.n);
    FlowState st(g, cfg.sigma);
    for (auto& c : st.cap) c = cfg.cert_cap;
    for (VertexId v = 0; v < g.n; ++v) {
      if (v == s)
        st.s[v] = cfg.cert_source_mult(i) * g.d[v] * cfg.sigma;
      else
        st.t[v] = cfg.cert_sink_mult() * g.d[v] * cfg.sigma;
    }
    OpCounter ops;
    dinitz_local(st, g.n + 1, ops);
    if (st.excess_total() != 0) {
      out.ok = false;
      out.note = "layer demand left excess at layer " + std::to_string(i);
    }
  }
  return out;
}

// 3. Whenever a certificate verifies and the remainder is an alpha-expander
// with c >= 3/alpha, the whole graph's exact conductance meets the implied
// bound; 100 instances, zero counterexamples.
Outcome criterion3() {
  Outcome out;
  std::mt19937_64 rng(31);
  int accepted = 0, attempts = 0;
  while (accepted < 100 && attempts < 2000) {
    ++attempts;
    int n = 8 + (int)(rng() % 9);  // 8..16
    int deg = 3 + (int)(rng() % 3);
    if ((n * deg) % 2) ++n;
    DecGraph g = gen_random_regular(std::min(n, 16), deg, rng());
    VertexId s = (VertexId)(rng() % g.n);
    FlowState st(g);
    for (auto& c : st.cap) c = 1 << 20;
    st.s[s] = g.d[s];
    for (VertexId v = 0; v < g.n; ++v)
      if (v != s) st.t[v] = g.d[v];
    OpCounter ops;
    dinitz_local(st, g.n + 1, ops);
    if (st.excess_total() != 0) continue;

    DecGraph rest = g;
    rest.remove_vertices({s});
    auto rep = oracle::conductance_exact(rest, oracle::VolumeMeasure::kCurrent);
    if (!rep.any_cut || !(rep.conductance > Rat(0, 1))) continue;
    Rat alpha = rep.conductance;

    i64 fmax = 1;
    for (i64 f : st.f) fmax = std::max(fmax, f);
    Rat three_over_alpha = Rat(3) / alpha;
    i64 c_int = std::max<i64>(fmax, three_over_alpha.num / three_over_alpha.den + 1);

    FlowCertificate cert;
    cert.S = {s};
    cert.f = &st;
    cert.gamma_source = Rat(1);
    cert.gamma_sink = Rat(1);
    cert.c = Rat(c_int);
    if (!verify_certificate(g, cert)) continue;
    ++accepted;
    Rat bound = implied_expansion(cert, alpha, Rat(1));
    auto whole = oracle::conductance_exact(g, oracle::VolumeMeasure::kInitialD);
    if (!whole.any_cut || whole.conductance < bound) {
      out.ok = false;
      out.note = "conductance below the implied bound (attempt " + std::to_string(attempts) + ")";
      break;
    }
  }
  if (out.ok && accepted < 100) {
    out.ok = false;
    out.note = "only " + std::to_string(accepted) + " verifying instances found";
  }
  if (out.ok) out.note = std::to_string(accepted) + " instances, 0 counterexamples";
  return out;
}

// 4. After every batch-pruning run on small expanders: the lost-degree flow
// certificate verifies, the remainder's exact conductance stays above
// phi/10, and every level's excess is under 2^{k-i}*sigma/phi.
Outcome criterion4() {
  Outcome out;
  std::mt19937_64 rng(41);
  std::vector<DecGraph> graphs = {gen_complete(16), gen_hypercube(4),
                                  gen_random_regular(16, 6, 77)};
  std::vector<Rat> phis = {Rat(1, 2), Rat(1, 4), Rat(1, 4)};
  for (size_t gi = 0; gi < graphs.size() && out.ok; ++gi) {
    const DecGraph& g = graphs[gi];
    PruneConfig cfg = make_config(g.n, g.m0(), phis[gi], true);
    for (int run = 0; run < 5 && out.ok; ++run) {
      BatchPruneSession sess(g, cfg);
      std::vector<std::vector<EdgeId>> B(cfg.lambda + 1);
      int nb = run;  // 0..4 deleted edges, placed at random levels
      for (int b = 0; b < nb; ++b)
        B[1 + (int)(rng() % cfg.k)].push_back((EdgeId)(rng() % g.m0()));
      OpCounter ops;
      sess.run_from(1, B, {}, ops);
      if (!expansion_certificate_ok(sess.current(), g.d, cfg.phi, cfg.sigma, ops)) {
        out.ok = false;
        out.note = "lost-degree certificate failed";
        break;
      }
      auto rep = oracle::conductance_exact(sess.current(), oracle::VolumeMeasure::kInitialD);
      if (rep.any_cut && rep.conductance < cfg.phi / Rat(10)) {
        out.ok = false;
        out.note = "remainder conductance below phi/10";
        break;
      }
      for (int i = 1; i <= cfg.lambda; ++i)
        if (sess.level_excess(i) > cfg.excess_threshold(i)) {
          out.ok = false;
          out.note = "level " + std::to_string(i) + " excess over threshold";
        }
    }
  }
  return out;
}

// 5. Batching discipline over 1000-deletion runs: sizes always legal, the
// rebuild gap 2^{k-i-1} holds at every level, replay is byte-identical.
Outcome criterion5() {
  Outcome out;
  const int k = 11, lambda = 13;
  auto serialize = [](const BatchState& st) {
    std::ostringstream o;
    for (const auto& b : st.B) {
      for (EdgeId e : b) o << e << ",";
      o << ";";
    }
    for (const auto& a : st.A) {
      for (VertexId v : a) o << v << ",";
      o << ";";
    }
    return o.str();
  };
  auto run = [&](std::string* trace) {
    BatchState st(k, lambda, 1200);
    std::vector<i64> last_affect(k + 1, -1);
    for (i64 t = 0; t < 1000; ++t) {
      int i = st.insert_deletion((EdgeId)t, {});
      for (int lvl = i; lvl < k; ++lvl) {
        if (last_affect[lvl] >= 0 && t - last_affect[lvl] < ((i64)1 << (k - lvl - 1))) {
          out.ok = false;
          out.note = "rebuild gap violated at level " + std::to_string(lvl);
        }
        last_affect[lvl] = t;
      }
      for (int j = 1; j <= lambda; ++j) (void)st.classify(j);  // throws if illegal
      if (trace) *trace += serialize(st) + "\n";
    }
  };
  std::string t1, t2;
  run(&t1);
  run(&t2);
  if (out.ok && t1 != t2) {
    out.ok = false;
    out.note = "replay not byte-identical";
  }
  return out;
}

struct SuiteStats {
  i64 max_recourse = 0;
  i64 max_ops = 0;
  i64 deletions = 0;
  int swaps = 0;
};

// Shared driver for criteria 6 and 7: runs a pruner over the graph suite
// with a seeded random adversary, re-checking the per-step claims.
Outcome run_suite(bool worstcase, SuiteStats* stats) {
  Outcome out;
  struct Item {
    DecGraph g;
    Rat phi;
    i64 deletions;
  };
  std::vector<Item> suite;
  suite.push_back({gen_hypercube(4), Rat(1, 4), 12});
  suite.push_back({gen_hypercube(5), Rat(1, 8), 12});
  suite.push_back({gen_random_regular(32, 8, 7), Rat(1, 4), 12});
  std::mt19937_64 rng(61);
  for (auto& item : suite) {
    const DecGraph& g = item.g;
    PruneConfig cfg = make_config(g.n, g.m0(), item.phi, true);
    cfg.deletion_budget = std::max(cfg.deletion_budget, item.deletions);
    std::unique_ptr<AmortizedPruner> p;
    if (worstcase)
      p = std::make_unique<WorstCasePruner>(g, cfg);
    else
      p = std::make_unique<AmortizedPruner>(g, cfg);
    std::vector<char> s0_prev = p->cert().s0_mask();
    for (i64 t = 0; t < item.deletions; ++t) {
      std::vector<EdgeId> live;
      for (EdgeId e = 0; e < g.m0(); ++e)
        if (p->cert().graph().edge_alive(e)) live.push_back(e);
      if (live.empty()) break;
      EdgeId e = live[rng() % live.size()];

      // Pre-deletion layer and batch sets, for the swap set-equality check.
      std::vector<std::vector<VertexId>> pre_sets(cfg.lambda + 1);
      for (int i = 1; i <= cfg.k; ++i) pre_sets[i] = p->cert().layer_S(i);
      for (int i = 1; i <= cfg.lambda; ++i) {
        const auto& A = p->batches().A[i];
        const auto& S = p->prune_session().proposals()[i];
        pre_sets[i].insert(pre_sets[i].end(), A.begin(), A.end());
        pre_sets[i].insert(pre_sets[i].end(), S.begin(), S.end());
      }

      PruneDelta d = p->process_deletion(e);
      ++stats->deletions;
      stats->max_recourse = std::max(stats->max_recourse, (i64)d.pruned.size());
      stats->max_ops = std::max(stats->max_ops, d.op_count);
      if ((i64)d.pruned.size() > cfg.recourse_budget()) {
        out.ok = false;
        out.note = "recourse over budget";
        return out;
      }
      if (worstcase && d.op_count > cfg.op_budget()) {
        out.ok = false;
        out.note = "op count over budget";
        return out;
      }
      const auto& s0 = p->cert().s0_mask();
      for (VertexId v = 0; v < g.n; ++v)
        if (s0_prev[v] && !s0[v]) {
          out.ok = false;
          out.note = "S_0 shrank";
          return out;
        }
      s0_prev = s0;
      if (!p->cert_mut().checkpoint_ok()) {
        out.ok = false;
        out.note = "composed certificate failed at step " + std::to_string(t);
        return out;
      }
      if (worstcase && d.rebuild_level >= 1 && d.rebuild_level <= cfg.k - 2) {
        ++stats->swaps;
        // Every scheduled prune set at swapped levels must sit in S_0 now,
        // so the swapped-in view and the live remainder coincide.
        for (int j = d.rebuild_level; j <= cfg.lambda; ++j)
          for (VertexId v : pre_sets[j])
            if (!s0[v]) {
              out.ok = false;
              out.note = "swap set-equality failed at level " + std::to_string(j);
              return out;
            }
      }
      if (g.n <= 16) {
        DecGraph view = g;
        std::vector<VertexId> kill;
        for (VertexId v = 0; v < g.n; ++v)
          if (s0[v]) kill.push_back(v);
        view.remove_vertices(kill);
        for (EdgeId de = 0; de < g.m0(); ++de)
          if (!p->cert().graph().edge_alive(de) && view.edge_alive(de)) view.delete_edge(de);
        auto rep = oracle::conductance_exact(view, oracle::VolumeMeasure::kInitialD);
        if (rep.any_cut && rep.conductance < cfg.expansion_floor()) {
          out.ok = false;
          out.note = "remainder conductance under the configured floor";
          return out;
        }
      }
    }
  }
  return out;
}

Outcome criterion6() {
  SuiteStats st;
  Outcome out = run_suite(false, &st);
  if (out.ok)
    out.note = std::to_string(st.deletions) + " deletions, max recourse " +
               std::to_string(st.max_recourse);
  return out;
}

Outcome criterion7() {
  SuiteStats st;
  Outcome out = run_suite(true, &st);
  if (out.ok && st.swaps == 0) {
    out.ok = false;
    out.note = "no background swap was exercised";
  }
  if (out.ok)
    out.note = std::to_string(st.deletions) + " deletions, " + std::to_string(st.swaps) +
               " swaps, max op_count " + std::to_string(st.max_ops);
  return out;
}

// 8. Every single remove_edge call prunes at most the per-edge budget. The
// library asserts this internally on every call (recourse_budget error);
// here the bound is also re-checked directly on fresh instances.
Outcome criterion8() {
  Outcome out;
  DecGraph g = gen_hypercube(4);
  PruneConfig cfg = make_config(g.n, g.m0(), Rat(1, 4), true);
  cfg.deletion_budget = 16;
  AmortizedPruner p(g, cfg);
  OpCounter ops;
  i64 worst = 0;
  for (EdgeId e = 0; e < g.m0() && e < 16; ++e) {
    if (!p.cert().graph().edge_alive(e)) continue;
    auto pruned = p.cert_mut().remove_edge(e, ops);
    worst = std::max(worst, (i64)pruned.size());
    if ((i64)pruned.size() > cfg.recourse_per_edge) {
      out.ok = false;
      out.note = "remove_edge pruned over the per-edge budget";
      return out;
    }
  }
  out.note = "worst call pruned " + std::to_string(worst) + " of " +
             std::to_string(cfg.recourse_per_edge) + " allowed";
  return out;
}

// 9. Claiming expansion above a barbell's true conductance trips a named
// error for both pruners instead of running on.
Outcome criterion9() {
  Outcome out;
  DecGraph g = gen_barbell(10, 10, 1);
  PruneConfig cfg = make_config(g.n, g.m0(), Rat(1, 4), true);
  cfg.debug_oracle = true;
  for (int variant = 0; variant < 2 && out.ok; ++variant) {
    try {
      if (variant == 0)
        AmortizedPruner p(g, cfg);
      else
        WorstCasePruner p(g, cfg);
      out.ok = false;
      out.note = "false claim was accepted silently";
    } catch (const Error& e) {
      if (e.kind() != err::kParamMismatch) {
        out.ok = false;
        out.note = "unexpected error kind " + e.kind();
      }
    }
  }
  if (out.ok) out.note = "both pruners rejected the claim by name";
  return out;
}

}  // namespace

int main() {
  struct Entry {
    const char* label;
    std::function<Outcome()> fn;
  };
  std::vector<Entry> entries = {
      {"1 forest ops match the naive oracle", criterion1},
      {"2 blocking flow is exact and layer demands drain", criterion2},
      {"3 certificates imply true conductance", criterion3},
      {"4 batch pruning keeps the remainder expanding", criterion4},
      {"5 batching sizes, gaps, and replay", criterion5},
      {"6 amortized pruner budgets and certificates", criterion6},
      {"7 worst-case pruner op bound and swap equality", criterion7},
      {"8 per-edge recourse bound", criterion8},
      {"9 barbell negative control", criterion9},
  };
  int failures = 0;
  for (auto& e : entries) {
    Outcome out;
    try {
      out = e.fn();
    } catch (const Error& err) {
      out.ok = false;
      out.note = std::string("error [") + err.kind() + "] " + err.what();
    } catch (const std::exception& ex) {
      out.ok = false;
      out.note = ex.what();
    }
    std::cout << "criterion " << e.label << ": " << (out.ok ? "PASS" : "FAIL");
    if (!out.note.empty()) std::cout << " (" << out.note << ")";
    std::cout << "\n";
    if (!out.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
