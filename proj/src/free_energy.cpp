#include "qcp/free_energy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qcp/parallel.hpp"
#include "qcp/partition.hpp"
#include "qcp/rng.hpp"

namespace qcp {

namespace {
constexpr double log2_c = std::numbers::ln2;
}

// ------- quenched free energy -------

double finite_fe(const ChargeSequence& cs, double beta_bar) {
    return log_partition_bar(cs, beta_bar) / cs.n();
}

McFeResult mc_quenched_fe(int n, double beta_bar, int samples, std::uint64_t seed,
                          ChargeDist dist, int threads) {
    if (n < 1) throw std::invalid_argument("mc_quenched_fe: n >= 1 required");
    if (samples < 2) throw std::invalid_argument("mc_quenched_fe: samples >= 2 required");
    if (dist != ChargeDist::binary && dist != ChargeDist::gaussian)
        throw std::invalid_argument("mc_quenched_fe: binary or gaussian charges required");
    std::vector<double> fe(samples), absq(samples);
    parallel_for(samples, threads, [&](std::size_t i) {
        const std::uint64_t si = substream_seed(seed, i);
        const ChargeSequence cs =
            dist == ChargeDist::binary ? make_binary(n, si) : make_gaussian(n, si);
        fe[i] = finite_fe(cs, beta_bar);
        absq[i] = std::abs(cs.interval_charge(0, n)) / n;
    });
    const MeanStderr ms = welford(fe);
    McFeResult out;
    out.mean = ms.mean;
    out.std_error = ms.std_error;
    out.mean_abs_end_charge = welford(absq).mean;
    return out;
}

double exact_avg_fe(int n, double beta_bar) {
    if (n < 1 || n > 12) throw std::invalid_argument("exact_avg_fe: 1 <= n <= 12 required");
    std::vector<double> omega(n);
    double total = 0.0;
    const std::uint64_t count = 1ULL << n;
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        for (int i = 0; i < n; ++i) omega[i] = (mask >> i) & 1 ? 1.0 : -1.0;
        total += finite_fe(make_from_values(omega), beta_bar);
    }
    return total / static_cast<double>(count);
}

// ------- annealed free energy -------

double g_beta(int ell, double beta, AnnealedDist dist) {
    if (ell < 1) throw std::invalid_argument("g_beta: ell >= 1 required");
    if (!(beta >= 0.0)) throw std::invalid_argument("g_beta: beta >= 0 required");
    if (dist == AnnealedDist::gaussian) return 1.0 / std::sqrt(1.0 + 2.0 * beta * ell);
    const double lgn = std::lgamma(ell + 1.0);
    double g = 0.0;
    for (int k = 0; k <= ell; ++k) {
        const double lbinom = lgn - std::lgamma(k + 1.0) - std::lgamma(ell - k + 1.0);
        const double q = 2.0 * k - ell;
        g += std::exp(lbinom - ell * log2_c - beta * q * q);
    }
    return g;
}

namespace {

// Partial evaluation of h(f) = sum_l (e^f/2)^l g_beta(l), stopped as soon as
// the comparison against 1 is settled: either the partial sum exceeds 1 or
// the geometric tail bound (g <= 1) pushes the remainder below 1e-12.
bool series_below_one(double f, double beta, AnnealedDist dist) {
    const double x = std::exp(f) / 2.0;
    double partial = 0.0, xl = 1.0;
    for (int ell = 1; ell <= 20'000'000; ++ell) {
        xl *= x;
        partial += xl * g_beta(ell, beta, dist);
        if (partial > 1.0) return false;
        if (xl * x / (1.0 - x) < 1e-12) return true;
    }
    throw std::runtime_error("annealed series: truncation bound not reached");
}

}  // namespace

double annealed_fe(double beta, AnnealedDist dist) {
    if (!(beta >= 0.0)) throw std::invalid_argument("annealed_fe: beta >= 0 required");
    if (beta == 0.0) return 0.0;  // h(f) = 1 exactly at f = 0
    double lo = 0.0, hi = log2_c - 1e-12;  // h(lo) < 1; the series diverges at log 2
    if (series_below_one(hi, beta, dist)) return -hi;
    for (int it = 0; it < 100 && hi - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        (series_below_one(mid, beta, dist) ? lo : hi) = mid;
    }
    return -lo;  // lower bracket: the returned value is an upper bound
}

double mean_zbar_renewal(int n, double beta, AnnealedDist dist) {
    if (n < 0) throw std::invalid_argument("mean_zbar_renewal: n >= 0 required");
    std::vector<double> t(n + 1, 0.0);
    t[0] = 1.0;
    for (int m = 1; m <= n; ++m)
        for (int ell = 1; ell <= m; ++ell)
            t[m] += g_beta(ell, beta, dist) * std::ldexp(t[m - ell], -ell);
    return 2.0 * t[n];
}

double mean_zbar_exhaustive(int n, double beta) {
    if (n < 1 || n > 12)
        throw std::invalid_argument("mean_zbar_exhaustive: 1 <= n <= 12 required");
    std::vector<double> omega(n);
    double total = 0.0;
    const std::uint64_t count = 1ULL << n;
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        for (int i = 0; i < n; ++i) omega[i] = (mask >> i) & 1 ? 1.0 : -1.0;
        total += std::exp(log_partition_bar(make_from_values(omega), beta));
    }
    return total / static_cast<double>(count);
}

// ------- single-site chain -------

namespace {

double site_series(double f, double beta) {
    // sum_{t>=1} exp((f - log 2) t - beta t^2); the quadratic term cuts the
    // sum off past its peak at t* = (f - log 2)/(2 beta)
    const double a = f - log2_c;
    const int tmax =
        static_cast<int>(std::ceil(std::max(a, 0.0) / beta + std::sqrt(60.0 / beta))) + 10;
    double s = 0.0;
    for (int t = 1; t <= tmax; ++t) s += std::exp(a * t - beta * t * t);
    return s;
}

}  // namespace

double wsaw_fe(double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("wsaw_fe: beta > 0 required");
    double lo = 0.0;  // site_series(0) < sum 2^{-t} = 1
    double hi = 1.0;
    int guard = 0;
    while (site_series(hi, beta) <= 1.0) {
        hi *= 2.0;
        if (++guard > 200) throw std::runtime_error("wsaw_fe: bracket expansion failed");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        (site_series(mid, beta) < 1.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double s_of_beta(double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("s_of_beta: beta > 0 required");
    const int tmax = static_cast<int>(std::ceil(std::sqrt(50.0 / beta))) + 1;
    double s = 0.0;
    for (int t = tmax; t >= 1; --t) s += std::exp(-beta * t * t);
    return s;
}

double beta0() {
    static const double b0 = [] {
        double lo = 0.05, hi = 2.0;  // S(0.05) > 1 > S(2)
        for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
            const double mid = 0.5 * (lo + hi);
            (s_of_beta(mid) > 1.0 ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }();
    return b0;
}

// ------- variational lower bound -------

namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

double eta(double u) {
    if (!(u >= 0.0) || u > log2_c) throw std::invalid_argument("eta: 0 <= u <= log 2 required");
    // 2 - e^u can land an ulp below 0 at u = log 2; clamp before x log x
    const double a = std::max(0.0, 2.0 - std::exp(u));
    const double b = std::max(0.0, 2.0 - std::exp(-u));
    return 0.25 * (xlogx(a) + xlogx(b));
}

double variational_lb(double beta) {
    if (!(beta >= 0.0)) throw std::invalid_argument("variational_lb: beta >= 0 required");
    const auto objective = [beta](double u) {
        const double sh = std::sinh(u);
        return beta * sh / (1.0 + 0.5 * sh) - 0.5 * u * sh - eta(u);
    };
    const int grid = 10'000;
    double best_u = 0.0, best = objective(0.0);
    for (int j = 1; j <= grid; ++j) {
        const double u = j == grid ? log2_c : log2_c * (static_cast<double>(j) / grid);
        const double v = objective(u);
        if (v > best) {
            best = v;
            best_u = u;
        }
    }
    // golden-section refinement around the best grid point
    const double h = log2_c / grid;
    double a = std::max(0.0, best_u - h), b = std::min(log2_c, best_u + h);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    double fc = objective(c), fd = objective(d);
    for (int it = 0; it < 80; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = objective(d);
        }
    }
    best = std::max(best, std::max(fc, fd));
    return -beta + best;
}

// ------- word-law moments -------

QuWordMoments qu_word_moments(double u, const std::function<double(int)>& phi, int i, int j) {
    if (!(u >= 0.0) || u > log2_c)
        throw std::invalid_argument("qu_word_moments: 0 <= u <= log 2 required");
    if (i < 1 || i >= j || j > 12)
        throw std::invalid_argument("qu_word_moments: 1 <= i < j <= 12 required");
    const int m = j + 1;  // charges w_1..w_{j+1} enter the events up to L >= j
    QuWordMoments out;
    for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
        const auto w = [&](int k) { return (mask >> (k - 1)) & 1 ? 1 : -1; };  // w_k
        const double weight = std::ldexp(1.0, -m);
        // survival factors: P(L > k | w) multiplies (1 - e^{u w_k w_{k+1}}/2) per step
        double survive = 1.0;
        for (int k = 1; k < i; ++k) survive *= 1.0 - std::exp(u * w(k) * w(k + 1)) / 2.0;
        const double stop_i = std::exp(u * w(i) * w(i + 1)) / 2.0;
        out.beyond.computed += weight * phi(w(i) * w(i + 1)) * survive * (1.0 - stop_i);
        out.at.computed += weight * phi(w(i) * w(i + 1)) * survive * stop_i;
        double survive_j = survive;
        for (int k = i; k < j; ++k) survive_j *= 1.0 - std::exp(u * w(k) * w(k + 1)) / 2.0;
        out.pair.computed += weight * w(i) * w(j) * survive_j;
    }
    const double c = 1.0 - std::cosh(u) / 2.0;
    double ci = 1.0;
    for (int k = 1; k < i; ++k) ci *= c;
    out.beyond.closed_form =
        ci * (phi(-1) * (2.0 - std::exp(-u)) + phi(1) * (2.0 - std::exp(u))) / 4.0;
    out.at.closed_form = ci * (phi(-1) * std::exp(-u) + phi(1) * std::exp(u)) / 4.0;
    double pair_rhs = ci;
    for (int k = i; k < j; ++k) pair_rhs *= -std::sinh(u) / 2.0;
    out.pair.closed_form = pair_rhs;
    return out;
}

double qu_marginal(double u, int ell) {
    if (ell < 1) throw std::invalid_argument("qu_marginal: ell >= 1 required");
    double p = std::cosh(u) / 2.0;
    for (int k = 1; k < ell; ++k) p *= 1.0 - std::cosh(u) / 2.0;
    return p;
}

// ------- expansion lemmas -------

namespace {

double cubic(double u1, double u2, double z) {
    return 2.0 * z * z * z + (u1 - 5.0) * z * z + (u2 + 4.0) * z - 1.0;
}

}  // namespace

double cubic_root_z0(double u1, double u2) {
    double z = 0.5;
    bool converged = false;
    for (int it = 0; it < 50; ++it) {
        const double p = cubic(u1, u2, z);
        const double dp = 6.0 * z * z + 2.0 * (u1 - 5.0) * z + (u2 + 4.0);
        const double dz = p / dp;
        z -= dz;
        if (std::abs(dz) < 1e-14) {
            converged = true;
            break;
        }
    }
    if (!converged) throw std::runtime_error("cubic_root_z0: Newton did not converge");
    if (u1 + u2 > 0.0) {
        // uniqueness in (-inf, 1): no root below -4 for small u, so a single
        // sign change on [-4, 1] settles it
        int changes = 0;
        double prev = cubic(u1, u2, -4.0);
        for (int k = 1; k <= 500; ++k) {
            const double cur = cubic(u1, u2, -4.0 + 5.0 * k / 500.0);
            if ((prev < 0.0 && cur > 0.0) || (prev > 0.0 && cur < 0.0)) ++changes;
            if (cur != 0.0) prev = cur;
        }
        if (changes != 1) throw std::runtime_error("cubic_root_z0: root not unique in (-inf, 1)");
    }
    return z;
}

bool ann_series_to_cubic(double c1, double c2, double z) {
    if (!(std::abs(z) < 1.0)) throw std::invalid_argument("ann_series_to_cubic: |z| < 1 required");
    const double om = 1.0 - z;
    const double series =
        z / om + (c1 + c2) * z / (om * om) + 2.0 * c2 * z * z / (om * om * om);
    const double p = cubic(c2 - c1, c1 + c2, z);
    if (series < 1.0) return p < 0.0;
    if (series > 1.0) return p > 0.0;
    return p == 0.0;
}

long long fourth_moment(int ell) {
    if (ell < 1) throw std::invalid_argument("fourth_moment: ell >= 1 required");
    const long long l = ell;
    return 3 * l * l - 2 * l;
}

double high_temp_coeff(int n) {
    if (n < 2) throw std::invalid_argument("high_temp_coeff: n >= 2 required");
    double s = 0.0;
    for (int d = 1; d < n; ++d)
        s += (n - d) * (std::ldexp(1.0, -d) - std::ldexp(1.0, -2 * d));
    return 2.0 * s / n;
}

}  // namespace qcp
