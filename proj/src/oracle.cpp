#include "qcp/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qcp/logspace.hpp"

namespace qcp {

namespace {

constexpr double log2_c = std::numbers::ln2;

// DFS over all 2^{n-1} paths with incremental pair energy
// H = sum_{i<j} omega_i omega_j 1{s_i = s_j}; visit(H) runs at each leaf.
// sum_x Omega(x)^2 = sum_i omega_i^2 + 2H recovers the bar exponent.
class Enumerator {
  public:
    Enumerator(const ChargeSequence& cs) : cs_(cs), n_(cs.n()) {
        if (n_ < 1 || n_ > 20)
            throw std::invalid_argument("oracle enumeration: 1 <= n <= 20 required");
        site_charge_.assign(n_ + 2, 0.0);
        steps_.assign(n_, 0);
        sites_.assign(n_, 0);
    }

    template <typename Visit>
    void run(Visit&& visit) {
        // monomer 1 sits at site S_1 = 1
        sites_[0] = 1;
        site_charge_[1] = cs_.omega[0];
        descend(2, 1, 0.0, visit);
        site_charge_[1] = 0.0;
    }

    const std::vector<int>& steps() const { return steps_; }
    const std::vector<int>& sites() const { return sites_; }

  private:
    template <typename Visit>
    void descend(int i, int cur_site, double h, Visit&& visit) {
        if (i > n_) {
            visit(h);
            return;
        }
        const double w = cs_.omega[i - 1];
        for (int step = 0; step <= 1; ++step) {
            const int s = cur_site + step;
            steps_[i - 1] = step;
            sites_[i - 1] = s;
            const double dh = w * site_charge_[s];
            site_charge_[s] += w;
            descend(i + 1, s, h + dh, visit);
            site_charge_[s] -= w;
        }
    }

    const ChargeSequence& cs_;
    int n_;
    std::vector<double> site_charge_;
    std::vector<int> steps_;
    std::vector<int> sites_;
};

}  // namespace

double oracle_log_partition(const ChargeSequence& cs, double beta, Convention conv) {
    if (beta < 0.0) throw std::invalid_argument("oracle_log_partition: beta >= 0 required");
    Enumerator en(cs);
    const int n = cs.n();
    LogAcc acc;
    if (conv == Convention::original) {
        en.run([&](double h) { acc.add(-beta * h); });
        return acc.value();
    }
    // bar: Zbar = 2^{1-n} sum over paths of exp(-beta sum_x Omega(x)^2)
    const double sumsq = cs.interval_sumsq(0, n);
    en.run([&](double h) { acc.add(-beta * (sumsq + 2.0 * h)); });
    return (1 - n) * log2_c + acc.value();
}

double oracle_expectation(const ChargeSequence& cs, double beta,
                          const std::function<double(const PathView&)>& observable) {
    if (beta < 0.0) throw std::invalid_argument("oracle_expectation: beta >= 0 required");
    Enumerator en(cs);
    // pass 1: max log-weight so the second pass cannot overflow
    double max_lw = neg_inf;
    en.run([&](double h) { max_lw = std::max(max_lw, -beta * h); });
    double sum_w = 0.0, sum_wf = 0.0;
    en.run([&](double h) {
        const double w = std::exp(-beta * h - max_lw);
        sum_w += w;
        sum_wf += w * observable(PathView{en.steps(), en.sites()});
    });
    return sum_wf / sum_w;
}

}  // namespace qcp
