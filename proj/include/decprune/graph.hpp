#pragma once

#include <algorithm>
#include <vector>

#include "decprune/errors.hpp"
#include "decprune/rational.hpp"

namespace decprune {

using VertexId = int;
using EdgeId = int;

// Decremental multigraph. EdgeIds are stable: deletion marks edges dead,
// nothing is compacted, so flows and trees can keep referring to ids.
// d is the degree vector of the graph at construction time and never changes;
// all volumes in the pruning algorithms are measured against it.
struct DecGraph {
  struct Edge {
    VertexId u = -1, v = -1;
    bool alive = false;
  };

  int n = 0;
  std::vector<Edge> edges;
  std::vector<std::vector<EdgeId>> adj;  // incident edge ids, dead ones included
  std::vector<i64> d;                    // frozen initial degrees
  std::vector<i64> cur_deg;
  std::vector<char> vertex_alive;
  i64 live_edges = 0;

  DecGraph() = default;
  DecGraph(const std::vector<std::pair<VertexId, VertexId>>& edge_list, int n_) : n(n_) {
    adj.assign(n, {});
    d.assign(n, 0);
    cur_deg.assign(n, 0);
    vertex_alive.assign(n, 1);
    edges.reserve(edge_list.size());
    for (auto [u, v] : edge_list) {
      require(u != v, err::kConstruction, "self-loop rejected");
      require(u >= 0 && v >= 0 && u < n && v < n, err::kConstruction, "endpoint out of range");
      EdgeId e = (EdgeId)edges.size();
      edges.push_back({u, v, true});
      adj[u].push_back(e);
      adj[v].push_back(e);
      d[u]++;
      d[v]++;
      cur_deg[u]++;
      cur_deg[v]++;
    }
    live_edges = (i64)edges.size();
  }

  int m0() const { return (int)edges.size(); }

  bool edge_alive(EdgeId e) const { return edges[e].alive; }

  VertexId other(EdgeId e, VertexId x) const { return edges[e].u == x ? edges[e].v : edges[e].u; }

  void delete_edge(EdgeId e) {
    require(e >= 0 && e < m0(), err::kConstruction, "edge id out of range");
    require(edges[e].alive, err::kDoubleDeletion, "edge " + std::to_string(e) + " already dead");
    edges[e].alive = false;
    cur_deg[edges[e].u]--;
    cur_deg[edges[e].v]--;
    live_edges--;
  }

  void remove_vertices(const std::vector<VertexId>& S) {
    for (VertexId v : S)
      require(v >= 0 && v < n && vertex_alive[v], err::kConstruction,
              "remove_vertices on dead or invalid vertex");
    for (VertexId v : S) {
      vertex_alive[v] = 0;
      for (EdgeId e : adj[v])
        if (edges[e].alive) delete_edge(e);
    }
  }

  i64 volume_d(const std::vector<VertexId>& S) const {
    i64 s = 0;
    for (VertexId v : S) s += d[v];
    return s;
  }

  template <typename Pred>
  i64 volume_d_if(Pred in) const {
    i64 s = 0;
    for (VertexId v = 0; v < n; ++v)
      if (in(v)) s += d[v];
    return s;
  }

  std::vector<EdgeId> boundary(const std::vector<VertexId>& S) const {
    std::vector<char> in(n, 0);
    for (VertexId v : S) in[v] = 1;
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < m0(); ++e)
      if (edges[e].alive && (in[edges[e].u] != in[edges[e].v])) out.push_back(e);
    return out;
  }

  i64 cut_count(const std::vector<VertexId>& S) const { return (i64)boundary(S).size(); }

  std::vector<VertexId> live_vertex_list() const {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < n; ++v)
      if (vertex_alive[v]) out.push_back(v);
    return out;
  }
};

}  // namespace decprune
