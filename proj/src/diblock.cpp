#include "qcp/diblock.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qcp/free_energy.hpp"
#include "qcp/logspace.hpp"
#include "qcp/observables.hpp"
#include "qcp/partition.hpp"

namespace qcp {

namespace {
constexpr double log2_c = std::numbers::ln2;
}

double DiblockJoint::prob(int i, int j) const {
    return std::exp(log_weight.at(i).at(j) - log_norm);
}

DiblockJoint diblock_joint(int half_n, double beta_bar) {
    if (half_n < 1) throw std::invalid_argument("diblock_joint: half_n >= 1 required");
    if (!(beta_bar > 0.0)) throw std::invalid_argument("diblock_joint: beta_bar > 0 required");
    const int n = half_n;
    DiblockJoint out;
    out.half_n = n;
    out.beta_bar = beta_bar;
    // single-site-chain partition values Zbar^+_0..Zbar^+_n (all-plus charges)
    const std::vector<double> wsaw = wsaw_log_partition(beta_bar, n);
    out.log_weight.assign(n, std::vector<double>(n + 1, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= n; ++j) {
            const double mid = static_cast<double>(i + j - n);  // residual block charge
            out.log_weight[i][j] =
                wsaw[i] + (i - j - n - 1) * log2_c - beta_bar * mid * mid + wsaw[n - j];
        }
    out.log_norm = log_partition_bar(make_diblock(n), beta_bar);
    return out;
}

double diblock_tail(const DiblockJoint& joint, int M) {
    if (M < 1) throw std::invalid_argument("diblock_tail: M >= 1 required");
    const int n = joint.half_n;
    LogAcc acc;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= n; ++j)
            if (std::abs(i + j - n) >= M) acc.add(joint.log_weight[i][j]);
    const double v = acc.value();
    return v == neg_inf ? 0.0 : std::exp(v - joint.log_norm);
}

DiblockMarginalCheck diblock_marginal_check(const DiblockJoint& joint) {
    const int n = joint.half_n;
    const double s = s_of_beta(joint.beta_bar);
    const double c = 2.0 * std::exp(-wsaw_fe(joint.beta_bar));
    DiblockMarginalCheck out;
    for (int i = 0; i < n; ++i) {
        LogAcc acc;
        for (int j = 0; j <= n; ++j) acc.add(joint.log_weight[i][j]);
        const double p = std::exp(acc.value() - joint.log_norm);
        const double bound = std::pow(c, i) / (1.0 - s);
        out.max_ratio_i = std::max(out.max_ratio_i, p / bound);
    }
    for (int j = 0; j <= n; ++j) {
        LogAcc acc;
        for (int i = 0; i < n; ++i) acc.add(joint.log_weight[i][j]);
        const double p = std::exp(acc.value() - joint.log_norm);
        const double bound = std::pow(c, n - j) / (1.0 - s);
        out.max_ratio_j = std::max(out.max_ratio_j, p / bound);
    }
    return out;
}

DiblockBondCheck diblock_bond_check(int half_n, double beta_bar) {
    if (!(beta_bar > beta0()))
        throw std::invalid_argument("diblock_bond_check: beta_bar > beta0 required");
    const int n = half_n;
    const double s = s_of_beta(beta_bar);
    const double c = 2.0 * std::exp(-wsaw_fe(beta_bar));
    // pair-interaction convention runs at twice the site-energy temperature
    const BondProfile prof = bond_profile(make_diblock(n), 2.0 * beta_bar);
    DiblockBondCheck out;
    out.all_hold = true;
    for (int i = 1; i < 2 * n; ++i) {
        const int depth = std::min(i, 2 * n - i);
        const double bound = std::pow(c, depth) / ((1.0 - s) * (1.0 - c));
        const double ratio = prof.p[i - 1] / bound;
        out.max_ratio = std::max(out.max_ratio, ratio);
        if (ratio > 1.0) out.all_hold = false;
    }
    return out;
}

}  // namespace qcp
