// Log-domain dynamic programs for the directed-polymer partition functions.
//
// Original convention (path counting):
//   Z_n = sum over paths of e^{-beta H}, Z_0 = Z_1 = 1, and the renewal
//   recursion over the last stretch position k:
//     Z_n = sum_{0<=k<n} Z_k exp((beta/2)(W_(k,n] - Omega_(k,n]^2)),
//   with W_(k,n] = sum_{k<i<=n} omega_i^2 (= n-k for unit charges).
// Bar convention (random-walk expectation):
//   Zbar_n = E[exp(-beta sum_x Omega_n(x)^2)], Zbar_0 = 2, related by
//     Zbar_n = 2^{1-n} exp(-beta sum_i omega_i^2) Z_n^{2 beta}.
// All tables are natural logs; everything is O(n^2) with streaming
// log-sum-exp.
#pragma once

#include <vector>

#include "qcp/charges.hpp"

namespace qcp {

enum class Convention { original, bar };

// log Z_k (original convention) for k = 0..n. beta < 0 rejected.
std::vector<double> prefix_log_partition(const ChargeSequence& cs, double beta);

// log Z_(i,n] (partition of the shifted suffix) for i = 0..n, by the backward
// first-renewal recursion U_i = sum_{i<l<=n} exp((beta/2)(W-Omega^2)) U_l.
std::vector<double> suffix_log_partition(const ChargeSequence& cs, double beta);

struct PartitionTables {
    double beta = 0.0;  // original-convention inverse temperature
    std::vector<double> prefix_logz;  // k = 0..n
    std::vector<double> suffix_logz;  // i = 0..n
};

PartitionTables make_tables(const ChargeSequence& cs, double beta);

// log Zbar_k (bar convention) for k = 0..n by the direct bar-side recursion
//   Zbar_n = sum_{0<=k<n} Zbar_k 2^{k-n} exp(-beta Omega_(k,n]^2).
std::vector<double> bar_prefix_log_partition(const ChargeSequence& cs, double beta_bar);

// log Zbar_n via the convention bridge (original DP at 2 beta_bar);
// n = 0 gives log 2, beta_bar = 0 gives exactly 0 (Zbar_n = 1).
double log_partition_bar(const ChargeSequence& cs, double beta_bar);

// log Zbar_k^{beta,+} for k = 0..n: all-(+1) charges through the bar pipeline
// (the weakly-self-avoiding-walk partition function).
std::vector<double> wsaw_log_partition(double beta_bar, int n);

}  // namespace qcp
