#pragma once

// Deterministic instance generators for experiments and tests. All
// randomness flows from the explicit seed through one mt19937_64.

#include <random>
#include <vector>

#include "decprune/graph.hpp"

namespace decprune {

inline DecGraph gen_complete(int n) {
  std::vector<std::pair<VertexId, VertexId>> es;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) es.push_back({u, v});
  return DecGraph(es, n);
}

inline DecGraph gen_hypercube(int dim) {
  int n = 1 << dim;
  std::vector<std::pair<VertexId, VertexId>> es;
  for (int u = 0; u < n; ++u)
    for (int b = 0; b < dim; ++b)
      if (!(u >> b & 1)) es.push_back({u, u | (1 << b)});
  return DecGraph(es, n);
}

// Configuration model with rejection of self-loops (multi-edges kept).
inline DecGraph gen_random_regular(int n, int deg, std::uint64_t seed) {
  require((i64)n * deg % 2 == 0, err::kConstruction, "n*d must be even");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<int> stubs;
    for (int v = 0; v < n; ++v)
      for (int j = 0; j < deg; ++j) stubs.push_back(v);
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::vector<std::pair<VertexId, VertexId>> es;
    bool ok = true;
    for (size_t i = 0; i < stubs.size(); i += 2) {
      if (stubs[i] == stubs[i + 1]) {
        ok = false;
        break;
      }
      es.push_back({stubs[i], stubs[i + 1]});
    }
    if (ok) return DecGraph(es, n);
  }
  fail(err::kConstruction, "configuration model failed to avoid self-loops");
}

// Two cliques of sizes n1, n2 joined by `bridges` edges (negative control).
inline DecGraph gen_barbell(int n1, int n2, int bridges) {
  std::vector<std::pair<VertexId, VertexId>> es;
  for (int u = 0; u < n1; ++u)
    for (int v = u + 1; v < n1; ++v) es.push_back({u, v});
  for (int u = 0; u < n2; ++u)
    for (int v = u + 1; v < n2; ++v) es.push_back({n1 + u, n1 + v});
  for (int b = 0; b < bridges; ++b) es.push_back({b % n1, n1 + b % n2});
  return DecGraph(es, n1 + n2);
}

}  // namespace decprune
