#pragma once

// Constant presets. "paper" uses the source constants (astronomic by design,
// only exercisable asymptotically); "desk" scales them so every branch runs
// at n <= 64 while keeping the inequalities the proofs need. The preset is
// data: every consumer reads these fields, nothing is hard-coded.

#include <algorithm>

#include "decprune/rational.hpp"

namespace decprune {

struct PruneConfig {
  Rat phi{1, 4};
  int n0 = 0;
  i64 m_init = 0;
  int k = 1;
  int lambda = 1;
  i64 sigma = 1;
  i64 log2n = 1, loglog2n = 1, log2m = 1;

  // batchprune
  i64 dinitz_C = 100000000;  // round-count constant
  i64 sparsity_denom = 1000000;
  i64 c_vol = 6400;

  // batchcert
  i64 cert_cap = 1;     // per-arc cap for layer flows, scaled units
  i64 cert_repeat = 1;  // remove_flow budget per layer per edge removal
  i64 cert_h = 1;       // blocking-flow rounds for reinitialization
  i64 cert_vol_mult = 1;  // layer source volume must be <= remainder / this
  i64 recourse_per_edge = 1;

  // drivers
  i64 eta = 1;  // per-level drain rate per deletion
  i64 deletion_budget = 1;
  i64 c_R = 8, c_exp = 1, c_W = 512, c_T = 64;
  i64 job_safety = 2;
  bool debug_oracle = false;

  i64 src_unit() const { return ceil_mul(Rat(8) / phi, sigma); }
  i64 cap_unit() const { return ceil_mul(Rat(8) / phi, sigma); }
  i64 sink_step() const { return sigma / lambda; }  // the (1/lambda)*deg increment

  i64 h_rounds() const {
    return ceil_mul(Rat(1) / phi, dinitz_C * lambda * log2n * loglog2n);
  }
  // 2^{k-i} * sigma / phi, exact for i > k too (2^{k-i} fractional there).
  i64 excess_threshold(int i) const {
    if (i <= k) return ceil_mul(Rat(1) / phi, ((i64)1 << (k - i)) * sigma);
    return ceil_mul(Rat(1, (i64)1 << (i - k)) / phi, sigma);
  }
  i64 cert_source_mult(int i) const { return 10ll * i * k + i + 1; }
  i64 cert_sink_mult() const { return 10ll * k - 1; }

  // Per-update op budget (worst-case driver) and per-deletion recourse budget.
  i64 recourse_budget() const {
    i64 k4 = (i64)k * k * k * k;
    return ceil_mul((Rat(1) / phi) * (Rat(1) / phi), c_R * k4 * lambda * log2n * sigma);
  }
  i64 op_budget() const {
    i64 k4 = (i64)k * k * k * k;
    return ceil_mul((Rat(1) / phi) * (Rat(1) / phi), c_W * k4 * lambda * log2n * sigma);
  }
  Rat expansion_floor() const {
    i64 l4 = log2m * log2m * log2m * log2m;
    return phi / Rat(c_exp * l4);
  }
};

inline PruneConfig make_config(int n, i64 m, Rat phi, bool desk) {
  PruneConfig c;
  c.phi = phi;
  c.n0 = n;
  c.m_init = m;
  c.k = (int)std::max<i64>(1, ceil_log2(m));
  i64 log_phi_inv = ceil_log2((phi.den + phi.num - 1) / phi.num);
  c.lambda = c.k + (int)log_phi_inv + 1;
  c.sigma = c.lambda;
  c.log2n = log2_floor1(n);
  c.loglog2n = log2_floor1(c.log2n);
  c.log2m = log2_floor1(m);

  i64 k3 = (i64)c.k * c.k * c.k;
  if (desk) {
    c.dinitz_C = 4;
    c.sparsity_denom = 4;
    // 1/1000 of the paper cap, floored at the routability bound the
    // zero-excess argument needs (cap * phi/10 >= 4 * max source multiplier).
    i64 paper_cap = ceil_mul(Rat(1) / phi, 8000 * k3 * c.sigma);
    i64 floor_cap = ceil_mul(Rat(1) / phi, 40 * c.cert_source_mult(c.k) * c.sigma);
    // A swapped-in flow is a sum of up to k backtracker members, each capped
    // at 400*theta/phi with theta <= 10(k^2+k)+k+1; the checkpoint bound
    // cert_cap*k/sigma must cover that sum.
    i64 theta_max = 10ll * ((i64)c.k * c.k + c.k) + c.k + 1;
    i64 chain_cap = ceil_mul(Rat(1) / phi, 400 * theta_max * c.sigma) * c.k;
    c.cert_cap = std::max({paper_cap / 1000, floor_cap, chain_cap});
    c.eta = ceil_mul(Rat(1) / phi, 4 * c.lambda * c.log2n);
    // Budget denominator 1: phi * 2^(k-1) deletions, floor 1.
    Rat b = phi * Rat((i64)1 << (c.k - 1));
    c.deletion_budget = std::max<i64>(1, b.num / b.den);
  } else {
    c.dinitz_C = 100000000;
    c.sparsity_denom = 1000000;
    c.cert_cap = ceil_mul(Rat(1) / phi, 8000 * k3 * c.sigma);
    c.eta = ceil_mul(Rat(1) / phi, 1000000ll * c.lambda * c.log2n);
    i64 log6 = 1;
    for (int i = 0; i < 6; ++i) log6 *= c.log2n;
    Rat b = phi * Rat((i64)1 << (c.k - 1), 10000000ll * log6);
    c.deletion_budget = b.num / b.den;
  }
  c.cert_repeat = c.cert_cap;
  c.cert_h = ceil_mul(Rat(1) / phi, 200 * c.log2n);
  // Routability needs vol(S_i) * (10k^2+k+1) <= (10k-1) * vol(rest); 2k keeps
  // that with slack at small n, 20k is the source constant.
  c.cert_vol_mult = desk ? 2ll * c.k : 20ll * c.k;
  c.recourse_per_edge = desk ? c.cert_cap * c.k : ceil_mul(Rat(1) / phi, 8000 * k3 * c.k * c.sigma);
  return c;
}

}  // namespace decprune
