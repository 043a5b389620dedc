#include "qcp/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qcp/partition.hpp"

namespace qcp {

namespace {
constexpr double log2_c = std::numbers::ln2;
}

BondProfile bond_profile(const ChargeSequence& cs, double beta) {
    const int n = cs.n();
    if (n < 2) throw std::invalid_argument("bond_profile: n >= 2 required");
    if (!(beta >= 0.0)) throw std::invalid_argument("bond_profile: beta >= 0 required");
    BondProfile out;
    out.beta = beta;
    out.p.assign(n - 1, 0.5);
    if (beta == 0.0) return out;  // uniform step measure, exactly 1/2 each
    const std::vector<double> pre = prefix_log_partition(cs, beta);
    const std::vector<double> suf = suffix_log_partition(cs, beta);
    for (int i = 1; i < n; ++i) {
        const double p = std::exp(pre[i] + suf[i] - pre[n]);
        out.p[i - 1] = std::clamp(p, 0.0, 1.0);
    }
    return out;
}

double empirical_cdf(const BondProfile& profile, double p) {
    if (profile.p.empty()) throw std::invalid_argument("empirical_cdf: empty profile");
    std::size_t count = 0;
    for (double pi : profile.p)
        if (pi <= p) ++count;
    return static_cast<double>(count) / static_cast<double>(profile.p.size());
}

double high_temp_slope(const ChargeSequence& cs, int i) {
    const int n = cs.n();
    if (i < 1 || i >= n) throw std::invalid_argument("high_temp_slope: 1 <= i < n required");
    // sum_{u<=i<v} omega_u omega_v 2^{u-v} = A * B with
    // A = sum_{u<=i} omega_u 2^{u-i},  B = sum_{v>i} omega_v 2^{i-v}.
    double a = 0.0;
    for (int u = 1; u <= i; ++u) a = 0.5 * a + cs.omega[u - 1];
    double b = 0.0;
    for (int v = n; v > i; --v) b = 0.5 * (b + cs.omega[v - 1]);
    return a * b;
}

double dgh2_bound(double beta) {
    if (!(beta >= 0.0)) throw std::invalid_argument("dgh2_bound: beta >= 0 required");
    static const double threshold = std::log((1.0 + std::sqrt(5.0)) / 2.0);
    if (beta >= threshold) return 0.0;  // the geometric factor reaches 1 here
    const double r = std::exp(beta) / (1.0 + std::exp(-beta));  // < 1 below threshold
    const double a = (std::exp(beta / 2.0) + r) / (1.0 - r);
    return 1.0 / (1.0 + a);
}

EnergyMoments energy_mean_var(const ChargeSequence& cs, double beta_bar) {
    if (!(beta_bar >= 0.0)) throw std::invalid_argument("energy_mean_var: beta_bar >= 0 required");
    const int n = cs.n();
    // Renewal recursion for Zbar with the first two log-derivatives carried
    // as scaled moments: a[m] = E[Q_m], b[m] = E[Q_m^2] where Q_m is the
    // accumulated sum_x Omega(x)^2 on a chain of length m.
    std::vector<double> logz(n + 1), a(n + 1, 0.0), b(n + 1, 0.0);
    logz[0] = log2_c;  // two half-line choices off the origin
    std::vector<double> t(n), w(n);
    for (int m = 1; m <= n; ++m) {
        double tmax = -1e300;
        for (int k = 0; k < m; ++k) {
            const double q = cs.interval_charge(k, m);
            t[k] = logz[k] + (k - m) * log2_c - beta_bar * q * q;
            tmax = std::max(tmax, t[k]);
        }
        double s = 0.0, sa = 0.0, sb = 0.0;
        for (int k = 0; k < m; ++k) {
            const double q = cs.interval_charge(k, m);
            const double q2 = q * q;
            const double wk = std::exp(t[k] - tmax);
            s += wk;
            sa += wk * (a[k] + q2);
            sb += wk * (b[k] + 2.0 * q2 * a[k] + q2 * q2);
        }
        logz[m] = tmax + std::log(s);
        a[m] = sa / s;
        b[m] = sb / s;
    }
    EnergyMoments out;
    out.mean = a[n];
    out.variance = std::max(0.0, b[n] - a[n] * a[n]);
    return out;
}

}  // namespace qcp
