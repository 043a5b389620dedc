// Polymer-measure observables: per-bond stretch probabilities p_{i,n}, their
// empirical CDF, the high-temperature slope series, the uniform positive
// lower bound on p_{i,n}, and mean/variance of the site-charge energy.
#pragma once

#include <vector>

#include "qcp/charges.hpp"

namespace qcp {

// p[k] = p_{k+1,n} = probability that bond k+1 is stretched (Delta S = 1),
// for k = 0 .. n-2; beta is in the pair-interaction convention.
struct BondProfile {
    double beta = 0.0;
    std::vector<double> p;
};

// Computed from the renewal factorization Z_n(Delta S_i = 1) = Z_i * Z_(i,n],
// i.e. one prefix and one suffix table; O(n^2) total.
BondProfile bond_profile(const ChargeSequence& cs, double beta);

// (1/(n-1)) * #{ i : p_i <= p }; right-continuous in p.
double empirical_cdf(const BondProfile& profile, double p);

// The geometric series sum_{0<u<=i<v<=n} omega_u omega_v 2^{u-v}, which sets
// the first-order behaviour of p_{i,n} - 1/2 as beta -> 0.  1 <= i < n.
double high_temp_slope(const ChargeSequence& cs, int i);

// Charge-independent lower bound on min_i p_{i,n}, positive for
// beta < log((1+sqrt 5)/2); returns 0 at or beyond that threshold.
double dgh2_bound(double beta);

struct EnergyMoments {
    double mean = 0.0;
    double variance = 0.0;
};

// Mean and variance of sum_x Omega_n(x)^2 under the site-energy polymer
// measure at beta_bar, by propagating (log Z, Z'/Z, Z''/Z) through the
// renewal recursion.
EnergyMoments energy_mean_var(const ChargeSequence& cs, double beta_bar);

}  // namespace qcp
