#pragma once

#include <stdexcept>
#include <string>

namespace decprune {

// All precondition/invariant failures are thrown as named errors so drivers
// and tests can assert on the specific guarantee that broke.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

namespace err {
inline constexpr const char* kConstruction = "construction";
inline constexpr const char* kDoubleDeletion = "double_deletion";
inline constexpr const char* kRootedForest = "rooted_forest_violation";
inline constexpr const char* kFindMinAtRoot = "find_min_at_root";
inline constexpr const char* kDemandBalance = "demand_balance";
inline constexpr const char* kSparseCutRadius = "sparse_cut_radius";
inline constexpr const char* kLevelExcess = "level_excess_bound";
inline constexpr const char* kBatchSize = "batch_size_corruption";
inline constexpr const char* kBudgetExhausted = "deletion_budget_exhausted";
inline constexpr const char* kReinitExcess = "reinit_nonzero_excess";
inline constexpr const char* kReinitPrecondition = "reinit_precondition";
inline constexpr const char* kCertVolume = "cert_volume_precondition";
inline constexpr const char* kFullDrain = "full_drain_violation";
inline constexpr const char* kRecourseBudget = "recourse_budget";
inline constexpr const char* kJobDeadline = "job_deadline_missed";
inline constexpr const char* kSwapSupport = "swap_support_mismatch";
inline constexpr const char* kParamMismatch = "parameter_mismatch";
inline constexpr const char* kOracleLimit = "oracle_size_limit";
inline constexpr const char* kDrainStuck = "edge_flow_not_drained";
inline constexpr const char* kIo = "io";
}  // namespace err

[[noreturn]] inline void fail(const char* kind, const std::string& msg) {
  throw Error(kind, msg);
}

inline void require(bool ok, const char* kind, const std::string& msg) {
  if (!ok) fail(kind, msg);
}

}  // namespace decprune
