// Exhaustive-enumeration oracles over the 2^{n-1} directed paths. These share
// no code with the DP kernels; tests and selfchecks compare the two routes.
#pragma once

#include <functional>
#include <vector>

#include "qcp/charges.hpp"
#include "qcp/partition.hpp"

namespace qcp {

// View of one enumerated path. steps[i] = Delta S_i in {0,1} for i = 1..n-1
// (index 0 unused; S_1 = 1 is fixed); sites[i] = S_{i+1} for i = 0..n-1.
struct PathView {
    const std::vector<int>& steps;
    const std::vector<int>& sites;
};

// Exact log Z_n (original) or log Zbar_n (bar) by direct summation over all
// paths. n <= 20 enforced.
double oracle_log_partition(const ChargeSequence& cs, double beta, Convention conv);

// Gibbs-weighted average of `observable` under the original-convention
// polymer measure at inverse temperature beta. n <= 20 enforced.
double oracle_expectation(const ChargeSequence& cs, double beta,
                          const std::function<double(const PathView&)>& observable);

}  // namespace qcp
