// Simple-random-walk charged polymer in dimension d: site-energy Hamiltonian
// Hbar = sum_x Omega(x)^2 over visited sites, exact enumeration at desk
// scale, the range inequality Hbar * R_n >= Omega_n^2, the elementary lower
// bound on log Zbar, the ballisticity condition, and self-normalized
// importance sampling for larger n.
#pragma once

#include <cstdint>
#include <vector>

#include "qcp/charges.hpp"

namespace qcp {

// A path is a list of n signed axis step codes: +1,-1 move along axis 1,
// +2,-2 along axis 2, ... codes in {±1..±d}.
struct UndirectedStats {
    double hbar = 0.0;    // sum_x Omega(x)^2 over sites of S_1..S_n
    int range = 0;        // R_n = #distinct sites among S_1..S_n
    int once_visited = 0; // #sites visited exactly once
    long long end_e1 = 0; // S_n . e1
};

UndirectedStats undirected_path_stats(const std::vector<int>& steps, int d,
                                      const ChargeSequence& cs);
double undirected_hamiltonian(const std::vector<int>& steps, int d, const ChargeSequence& cs);

struct UndirectedEnumeration {
    double log_zbar = 0.0;          // log E_SRW[e^{-beta Hbar}]
    double prob_small_range = 0.0;  // P(R_n <= c n) under the polymer measure
    double mean_speed_given_pos = 0.0;  // E[S_n.e1/n | S_n.e1 > 0]
    double min_range_energy_margin = 0.0;  // min over paths of Hbar R_n - Omega_n^2
    double min_once_margin = 0.0;   // d=1: min of once_visited - (2 R_n - n)
    double elementary_lb = 0.0;     // -n log(2d) - beta sum omega_i^2
    // log Zbar - elementary_lb, formed before the common -n log(2d) shift so
    // the straight-path term makes it exactly >= 0 in floating point
    double eq2_margin = 0.0;
};

// Exact sum over all (2d)^n paths; requires (2d)^n <= 2e7.
UndirectedEnumeration enumerate_undirected(const ChargeSequence& cs, double beta, int d,
                                           double c = 0.5);

struct BallisticCondition {
    bool holds = false;
    double margin = 0.0;  // m(delta)^2 - m'(delta) - log(2)/beta
};

// Sufficient drift condition for ballistic behaviour of the tilted charge
// law: gaussian m(d)=d, m'(d)=1; binary m(d)=tanh d, m'(d)=1-tanh^2 d.
BallisticCondition ballistic_condition(double delta, double beta, ChargeDist dist);

struct UndirectedMcResult {
    double prob_small_range = 0.0;
    double prob_small_range_stderr = 0.0;
    double once_fraction_mean = 0.0;  // polymer-weighted mean once-visited fraction
    double ess = 0.0;                 // effective sample size of the weights
    bool reliable = false;            // ess >= 10
    double range_ineq_ok = 0.0;       // fraction of paths with Hbar R >= Omega_n^2
    double once_ineq_ok = 0.0;        // d=1: fraction with once/n >= 2R/n - 1
};

// Importance sampling from the uniform SRW with weights e^{-beta Hbar};
// charges are one tilted-gaussian draw (delta = 0 gives standard gaussian).
// Deterministic for fixed seed, independent of thread count.
UndirectedMcResult mc_undirected(int n, double beta, double delta, int d, int samples,
                                 std::uint64_t seed, double c1 = 0.5, int threads = 1);

}  // namespace qcp
