// Free-energy estimation and analytic bounds: finite-volume quenched free
// energy (single sequence, Monte Carlo average, exact small-n average), the
// annealed free energy by root-finding on a renewal series, the single-site
// (weakly self-avoiding) free energy and its critical point beta0, the
// variational lower bound, and the small analytic lemmas used by the
// expansion checks (word-law moments, cubic root, fourth moment,
// high-temperature coefficient).
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qcp/charges.hpp"

namespace qcp {

// ------- quenched free energy (site-energy convention, per monomer) -------

// (1/n) log Zbar_n(omega, beta_bar).
double finite_fe(const ChargeSequence& cs, double beta_bar);

struct McFeResult {
    double mean = 0.0;
    double std_error = 0.0;
    // mean over samples of |Omega_n|/n, used by the per-sequence lower bound
    // fe >= -log 2 - beta * |Omega_n|/n.
    double mean_abs_end_charge = 0.0;
};

// Mean/standard error of finite_fe over m independent charge draws.
// Deterministic for fixed seed, independent of thread count.
McFeResult mc_quenched_fe(int n, double beta_bar, int samples, std::uint64_t seed,
                          ChargeDist dist, int threads = 1);

// Exact average of finite_fe over all 2^n sign sequences (n <= 12).
double exact_avg_fe(int n, double beta_bar);

// ------- annealed free energy -------

enum class AnnealedDist { binary, gaussian };

// g_beta(l) = E[exp(-beta Omega_l^2)] for one block of length l.
double g_beta(int ell, double beta, AnnealedDist dist);

// Fbar_ann(beta) = -sup{ f >= 0 : sum_l (e^f/2)^l g_beta(l) < 1 }.
double annealed_fe(double beta, AnnealedDist dist);

// E[Zbar_n] two ways: the renewal recursion behind annealed_fe, and (binary,
// n <= 12) the exhaustive average of Zbar_n over sign sequences.
double mean_zbar_renewal(int n, double beta, AnnealedDist dist);
double mean_zbar_exhaustive(int n, double beta);

// ------- single-site chain (all-plus charges) -------

// Fbar_plus(beta): unique f with sum_{t>=1} exp((f - log 2) t - beta t^2) = 1.
double wsaw_fe(double beta);
// S(beta) = sum_{t>=1} exp(-beta t^2).
double s_of_beta(double beta);
// Root of S(beta) = 1; the chain localizes for beta above this value.
double beta0();

// ------- variational lower bound -------

// eta(u) = (1/4)[(2-e^u)log(2-e^u) + (2-e^{-u})log(2-e^{-u})], 0 <= u <= log 2.
double eta(double u);

// -beta + max_{u in [0, log 2]} [beta sinh(u)/(1+sinh(u)/2)
//                                - (u/2) sinh(u) - eta(u)].
double variational_lb(double beta);

// ------- word-law moments -------

// Exhaustive vs closed-form expectations under the stopped word law with
// parameter u: conditional stopping weights e^{u w_k w_{k+1}}/2 per step.
struct QuIdentity {
    double computed = 0.0;
    double closed_form = 0.0;
};
struct QuWordMoments {
    QuIdentity beyond;  // E[Phi(w_i w_{i+1}); L > i]
    QuIdentity at;      // E[Phi(w_i w_{i+1}); L = i]
    QuIdentity pair;    // E[w_i w_j; L >= j]
};
// phi maps {-1,+1} -> real; 1 <= i < j <= 12; 0 <= u <= log 2.
QuWordMoments qu_word_moments(double u, const std::function<double(int)>& phi, int i, int j);

// Marginal P(L = ell) = (1 - cosh(u)/2)^{ell-1} cosh(u)/2 (mean 2/cosh u).
double qu_marginal(double u, int ell);

// ------- expansion lemmas -------

// Root near 1/2 of P(z) = 2z^3 + (u1-5)z^2 + (u2+4)z - 1, by Newton from 1/2;
// for u1+u2 > 0 the root's uniqueness in (-inf, 1) is verified by sign checks.
double cubic_root_z0(double u1, double u2);

// Checks that the closed-form series value and the cubic sign condition agree
// at (c1, c2, z): series < 1 iff P(z) < 0 (with boundary equality).
bool ann_series_to_cubic(double c1, double c2, double z);

// E[Omega_l^4] = 3 l^2 - 2 l for sign charges.
long long fourth_moment(int ell);

// Finite-n high-temperature coefficient c_n = (2/n) sum_{d=1}^{n-1}
// (n-d) (2^{-d} - 4^{-d}); c_n -> 4/3.
double high_temp_coeff(int n);

}  // namespace qcp
