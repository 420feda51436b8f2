#include "doctest.h"

#include <random>

#include "decprune/linkcut.hpp"
#include "decprune/oracle.hpp"

using namespace decprune;

namespace {

// Dense arc universe on n vertices: arc id = x * n + r for x != r.
std::vector<std::pair<int, int>> dense_arcs(int n) {
  std::vector<std::pair<int, int>> arcs;
  for (int x = 0; x < n; ++x)
    for (int r = 0; r < n; ++r) arcs.push_back({x, r});
  return arcs;
}

}  // namespace

TEST_CASE("fresh forest") {
  auto arcs = dense_arcs(4);
  std::vector<i64> flow(arcs.size(), 7);
  DynForest t(4, arcs, flow);
  CHECK(t.find_root(2) == 2);
  CHECK(t.read_current_flow(1) == 7);
}

TEST_CASE("insert delete basics") {
  auto arcs = dense_arcs(4);
  std::vector<i64> flow(arcs.size(), 0);
  DynForest t(4, arcs, flow);
  t.insert(0 * 4 + 1);  // a=0 -> b=1
  t.insert(1 * 4 + 2);  // b=1 -> c=2
  CHECK(t.find_root(2) == 0);
  CHECK_THROWS_AS(t.insert(2 * 4 + 1), Error);  // two in-edges at 1
  CHECK_THROWS_AS(t.insert(2 * 4 + 0), Error);  // cycle 0->1->2->0
  t.erase(0 * 4 + 1);
  CHECK(t.find_root(1) == 1);
  CHECK(t.find_root(2) == 1);
}

TEST_CASE("path update and min with tie toward the query vertex") {
  auto arcs = dense_arcs(4);
  std::vector<i64> flow(arcs.size(), 0);
  int ab = 0 * 4 + 1, bc = 1 * 4 + 2;
  flow[ab] = 5;
  flow[bc] = 3;
  DynForest t(4, arcs, flow);
  t.insert(ab);
  t.insert(bc);
  t.update_flow(2, -1);
  CHECK(t.read_current_flow(ab) == 4);
  CHECK(t.read_current_flow(bc) == 2);
  CHECK(t.find_min(2) == bc);
  // Equal values: the edge closest to the query vertex wins.
  t.update_flow(2, 0);
  t.erase(ab);
  t.erase(bc);
  flow[ab] = 2;
  flow[bc] = 2;
  t.insert(ab);
  t.insert(bc);
  CHECK(t.find_min(2) == bc);
  CHECK_THROWS_AS(t.find_min(0), Error);
}

TEST_CASE("update then inverse update restores flows") {
  auto arcs = dense_arcs(5);
  std::vector<i64> flow(arcs.size(), 0);
  DynForest t(5, arcs, flow);
  t.insert(0 * 5 + 1);
  t.insert(1 * 5 + 2);
  t.insert(2 * 5 + 3);
  t.update_flow(3, 9);
  t.update_flow(3, -9);
  for (int v : {1, 2, 3}) {
    int e = t.in_edge(v);
    CHECK(t.read_current_flow(e) == 0);
  }
}

TEST_CASE("randomized equivalence with the naive forest") {
  const int n = 64;
  auto arcs = dense_arcs(n);
  std::mt19937_64 rng(23);
  for (int seq = 0; seq < 3; ++seq) {
    std::vector<i64> f_fast(arcs.size(), 0), f_ref(arcs.size(), 0);
    for (size_t i = 0; i < arcs.size(); ++i) f_fast[i] = f_ref[i] = (i64)(rng() % 100);
    DynForest fast(n, arcs, f_fast);
    oracle::NaiveForest ref(n, arcs, f_ref);
    std::vector<int> tree_arcs;
    for (int op = 0; op < 20000; ++op) {
      int kind = (int)(rng() % 6);
      int v = (int)(rng() % n);
      switch (kind) {
        case 0: {  // insert a valid arc
          if (!ref.is_root(v)) break;
          int x = (int)(rng() % n);
          if (x == v || ref.find_root(x) == v) break;
          int a = x * n + v;
          fast.insert(a);
          ref.insert(a);
          tree_arcs.push_back(a);
          break;
        }
        case 1: {  // erase a random tree arc
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
          REQUIRE(fast.find_root(v) == ref.find_root(v));
          break;
        case 3: {
          if (ref.is_root(v)) break;
          REQUIRE(fast.find_min(v) == ref.find_min(v));
          break;
        }
        case 4: {
          i64 d = (i64)(rng() % 7) - 3;
          fast.update_flow(v, d);
          ref.update_flow(v, d);
          break;
        }
        case 5: {
          if (tree_arcs.empty()) break;
          int a = tree_arcs[rng() % tree_arcs.size()];
          REQUIRE(fast.read_current_flow(a) == ref.read_current_flow(a));
          break;
        }
      }
    }
    // Final state: every tree arc agrees.
    for (int a : tree_arcs) REQUIRE(fast.read_current_flow(a) == ref.read_current_flow(a));
  }
}
