#pragma once

// Deletion batching: per-level batches B_i of legal sizes {0, 2^{k-i-1},
// 2^{k-i}}, cascading reshuffles, and the forced-prune accumulation A_i that
// keeps pruning monotone across rebuilds.

#include <vector>

#include "decprune/config.hpp"
#include "decprune/graph.hpp"

namespace decprune {

enum class BatchFill { kEmpty, kHalfFull, kFull };

struct BatchState {
  int k = 1, lambda = 1;
  std::vector<std::vector<EdgeId>> B;    // 1..lambda used
  std::vector<std::vector<VertexId>> A;  // 1..lambda used
  i64 deletions_processed = 0;
  i64 deletion_budget = 0;

  BatchState() = default;
  BatchState(int k_, int lambda_, i64 budget) : k(k_), lambda(lambda_), deletion_budget(budget) {
    B.assign(lambda + 2, {});
    A.assign(lambda + 2, {});
  }

  BatchFill classify(int i) const {
    i64 sz = (i64)B[i].size();
    if (sz == 0) return BatchFill::kEmpty;
    if (i <= k && sz == full_size(i) / 2 && full_size(i) >= 2) return BatchFill::kHalfFull;
    if (i <= k && sz == full_size(i)) return BatchFill::kFull;
    fail(err::kBatchSize, "batch " + std::to_string(i) + " has illegal size " + std::to_string(sz));
  }

  i64 full_size(int i) const { return i <= k ? (i64)1 << (k - i) : 0; }

  // Processes one deletion: appends e to B_k, picks the rebuild index
  // i = largest index < k with B_i empty or half-full, merges, and shifts
  // everything above down one slot. S holds the most recent per-level
  // proposals (1-indexed); the A-reshuffle consumes them.
  int insert_deletion(EdgeId e, const std::vector<std::vector<VertexId>>& S) {
    require(deletions_processed < deletion_budget, err::kBudgetExhausted,
            "deletion budget " + std::to_string(deletion_budget) + " exhausted");
    ++deletions_processed;
    B[k].push_back(e);
    int i = -1;
    for (int j = k - 1; j >= 1; --j) {
      BatchFill f = classify(j);
      if (f == BatchFill::kEmpty || f == BatchFill::kHalfFull) {
        i = j;
        break;
      }
    }
    require(i >= 1, err::kBatchSize, "no empty or half-full batch below k");
    auto s_at = [&](int j) {
      return j < (int)S.size() ? S[j] : std::vector<VertexId>{};
    };
    // B_i <- B_i u B_{i+1}; A_i <- S_i u A_i u S_{i+1} u A_{i+1}
    append(B[i], B[i + 1]);
    append(A[i], s_at(i));
    append(A[i], s_at(i + 1));
    append(A[i], A[i + 1]);
    dedup(A[i]);
    for (int j = i + 1; j <= lambda; ++j) {
      B[j] = B[j + 1];
      A[j] = A[j + 1];
      append(A[j], s_at(j + 1));
      dedup(A[j]);
    }
    B[lambda + 1].clear();
    A[lambda + 1].clear();
    check_sizes();
    return i;
  }

  void check_sizes() const {
    for (int j = 1; j <= k; ++j) (void)classify(j);
    for (int j = k; j <= lambda; ++j)
      require(B[j].empty(), err::kBatchSize, "batch at level >= k not empty after processing");
  }

 private:
  template <typename T>
  static void append(std::vector<T>& a, const std::vector<T>& b) {
    a.insert(a.end(), b.begin(), b.end());
  }
  template <typename T>
  static void dedup(std::vector<T>& a) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
};

}  // namespace decprune
