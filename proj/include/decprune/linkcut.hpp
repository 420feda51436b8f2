#pragma once

// Rooted-forest dynamic trees over the directed arcs of a static host graph.
// Splay-based with lazy path addition and a (min value, deepest witness)
// aggregate, so find_min breaks ties toward the query vertex. Arc flow values
// live in the caller's flow array; while an arc is a tree edge its current
// value is held at the arc's head node and written back on delete.

#include <vector>

#include "decprune/flow.hpp"

namespace decprune {

class DynForest {
 public:
  static constexpr i64 kInf = (i64)4e17;

  DynForest(int n, const std::vector<std::pair<int, int>>& arcs, std::vector<i64>& flow,
            OpCounter* ops = nullptr)
      : arcs_(arcs), flow_(&flow), ops_(ops), nd_(n) {
    for (int v = 0; v < n; ++v) {
      nd_[v].val = kInf;
      nd_[v].minv = kInf;
      nd_[v].min_node = v;
    }
    in_edge_.assign(n, -1);
  }

  bool is_root(int v) {
    return find_root(v) == v;
  }

  int in_edge(int v) const { return in_edge_[v]; }

  void insert(int arc) {
    auto [x, r] = arcs_[arc];
    require(in_edge_[r] < 0, err::kRootedForest,
            "insert: head already has an in-edge");
    require(find_root(x) != r, err::kRootedForest, "insert: would create a cycle");
    access(x);
    access(r);
    nd_[r].p = x;  // path-parent link; r stays a splay root
    nd_[r].val = (*flow_)[arc];
    pull(r);
    in_edge_[r] = arc;
    count();
  }

  void erase(int arc) {
    int h = arcs_[arc].second;
    require(in_edge_[h] == arc, err::kRootedForest, "delete of non-tree edge");
    access(h);
    (*flow_)[arc] = nd_[h].val;
    int lc = nd_[h].ch[0];
    if (lc >= 0) {
      nd_[h].ch[0] = -1;
      nd_[lc].p = -1;
    }
    nd_[h].val = kInf;
    pull(h);
    in_edge_[h] = -1;
    count();
  }

  int find_root(int u) {
    access(u);
    int v = u;
    while (nd_[v].ch[0] >= 0) {
      push(v);
      v = nd_[v].ch[0];
      count();
    }
    splay(v);
    return v;
  }

  // Min-flow arc on the root->u path, ties toward u.
  int find_min(int u) {
    access(u);
    require(nd_[u].minv < kInf / 2, err::kFindMinAtRoot, "find_min at a root");
    int w = nd_[u].min_node;
    splay(w);
    return in_edge_[w];
  }

  // Adds delta to the flow of every arc on the root->u path.
  void update_flow(int u, i64 delta) {
    access(u);
    apply_add(u, delta);
    count();
  }

  i64 read_current_flow(int arc) {
    int h = arcs_[arc].second;
    if (in_edge_[h] == arc) {
      access(h);
      return nd_[h].val;
    }
    return (*flow_)[arc];
  }

  bool in_tree(int arc) const { return in_edge_[arcs_[arc].second] == arc; }

 private:
  struct Node {
    int p = -1, ch[2] = {-1, -1};
    i64 val = kInf, minv = kInf, add = 0;
    int min_node = -1;
  };

  void count() {
    if (ops_) ops_->add();
  }

  bool is_splay_root(int x) const {
    int p = nd_[x].p;
    return p < 0 || (nd_[p].ch[0] != x && nd_[p].ch[1] != x);
  }

  void apply_add(int x, i64 a) {
    nd_[x].val += a;
    nd_[x].minv += a;
    nd_[x].add += a;
  }

  void push(int x) {
    if (nd_[x].add != 0) {
      for (int c : nd_[x].ch)
        if (c >= 0) apply_add(c, nd_[x].add);
      nd_[x].add = 0;
    }
  }

  // In-order is path order (left = closer to the represented root); the
  // aggregate prefers the right subtree on equality so ties resolve deepest.
  void pull(int x) {
    nd_[x].minv = nd_[x].val;
    nd_[x].min_node = x;
    int l = nd_[x].ch[0], r = nd_[x].ch[1];
    if (r >= 0) {
      i64 rm = nd_[r].minv + nd_[x].add;
      if (rm <= nd_[x].minv) {
        nd_[x].minv = rm;
        nd_[x].min_node = nd_[r].min_node;
      }
    }
    if (l >= 0) {
      i64 lm = nd_[l].minv + nd_[x].add;
      if (lm < nd_[x].minv) {
        nd_[x].minv = lm;
        nd_[x].min_node = nd_[l].min_node;
      }
    }
  }

  void rotate(int x) {
    int p = nd_[x].p, g = nd_[p].p;
    int dir = nd_[p].ch[1] == x;
    push(p);
    push(x);
    nd_[p].ch[dir] = nd_[x].ch[!dir];
    if (nd_[x].ch[!dir] >= 0) nd_[nd_[x].ch[!dir]].p = p;
    nd_[x].ch[!dir] = p;
    bool proot = is_splay_root(p);
    nd_[p].p = x;
    nd_[x].p = g;
    if (!proot) nd_[g].ch[nd_[g].ch[1] == p] = x;
    pull(p);
    pull(x);
    count();
  }

  void splay(int x) {
    // Push pending tags from the splay root down to x first.
    {
      static thread_local std::vector<int> chain;
      chain.clear();
      int v = x;
      chain.push_back(v);
      while (!is_splay_root(v)) {
        v = nd_[v].p;
        chain.push_back(v);
      }
      for (size_t i = chain.size(); i-- > 0;) push(chain[i]);
    }
    while (!is_splay_root(x)) {
      int p = nd_[x].p;
      if (!is_splay_root(p)) {
        int g = nd_[p].p;
        if ((nd_[g].ch[1] == p) == (nd_[p].ch[1] == x))
          rotate(p);
        else
          rotate(x);
      }
      rotate(x);
    }
  }

  void access(int u) {
    splay(u);
    if (nd_[u].ch[1] >= 0) {
      push(u);
      nd_[nd_[u].ch[1]].p = u;  // becomes a path-parent pointer
      nd_[u].ch[1] = -1;
      pull(u);
    }
    while (nd_[u].p >= 0) {
      int w = nd_[u].p;
      splay(w);
      if (nd_[w].ch[1] >= 0) {
        push(w);
        nd_[nd_[w].ch[1]].p = w;
      }
      nd_[w].ch[1] = u;
      pull(w);
      splay(u);
      count();
    }
  }

  std::vector<std::pair<int, int>> arcs_;
  std::vector<i64>* flow_;
  OpCounter* ops_;
  std::vector<Node> nd_;
  std::vector<int> in_edge_;
};

}  // namespace decprune
