// Exact joint law of the last renewal index i in the +block and the first
// renewal index n+j in the -block for the di-block charge sequence
// (+1 x n, -1 x n), plus the collapse tail/marginal bounds and the bond-
// probability corollary check.
#pragma once

#include <vector>

#include "qcp/charges.hpp"

namespace qcp {

struct DiblockJoint {
    int half_n = 0;
    double beta_bar = 0.0;
    // log_weight[i][j] = log Zbar_{2n}(i(n)=i, j(n)=j), 0 <= i < n, 0 <= j <= n
    std::vector<std::vector<double>> log_weight;
    double log_norm = 0.0;  // log Zbar_{2n} from the DP on the di-block charges
    double prob(int i, int j) const;
};

// Factorized weights: the outer blocks are single-site (all-plus) chains and
// the middle block (i, n+j] is one renewal stretch of net charge n-i-j... the
// residual charge i+j-n enters the site energy directly.
DiblockJoint diblock_joint(int half_n, double beta_bar);

// P(|i(n) + j(n) - n| >= M) from the joint law.
double diblock_tail(const DiblockJoint& joint, int M);

// Marginal bound report: max over i of P(i(n)=i) / [C^i/(1-S)], and the same
// for j; both must be <= 1 when beta_bar > beta0.
struct DiblockMarginalCheck {
    double max_ratio_i = 0.0;
    double max_ratio_j = 0.0;
};
DiblockMarginalCheck diblock_marginal_check(const DiblockJoint& joint);

// Corollary check: bond probabilities of the di-block sequence at
// pair-interaction temperature 2*beta_bar against C^{i /\ (2n-i)}/[(1-S)(1-C)].
struct DiblockBondCheck {
    bool all_hold = false;
    double max_ratio = 0.0;  // max over bonds of p_i / bound_i
};
DiblockBondCheck diblock_bond_check(int half_n, double beta_bar);

}  // namespace qcp
