#include "qcp/undirected.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qcp/logspace.hpp"
#include "qcp/parallel.hpp"
#include "qcp/rng.hpp"

namespace qcp {

namespace {

// Flat occupancy grid over [-n, n]^d with incremental bookkeeping of the
// site-energy sum, the range, and the once-visited count.
class Grid {
  public:
    Grid(int n, int d) : n_(n), d_(d), side_(2 * n + 1) {
        std::size_t cells = 1;
        for (int k = 0; k < d; ++k) cells *= side_;
        charge_.assign(cells, 0.0);
        count_.assign(cells, 0);
        pos_.assign(d, 0);
    }

    std::size_t index() const {
        std::size_t idx = 0;
        for (int k = 0; k < d_; ++k) idx = idx * side_ + static_cast<std::size_t>(pos_[k] + n_);
        return idx;
    }

    // move along the step code, drop charge w there; returns the cell index
    std::size_t occupy(int code, double w) {
        const int axis = std::abs(code) - 1;
        pos_[axis] += code > 0 ? 1 : -1;
        const std::size_t idx = index();
        sumsq_ += 2.0 * charge_[idx] * w + w * w;
        charge_[idx] += w;
        const int c = ++count_[idx];
        if (c == 1) {
            ++range_;
            ++once_;
        } else if (c == 2) {
            --once_;
        }
        return idx;
    }

    void vacate(int code, double w, std::size_t idx) {
        const int c = count_[idx]--;
        if (c == 1) {
            --range_;
            --once_;
        } else if (c == 2) {
            ++once_;
        }
        charge_[idx] -= w;
        sumsq_ -= 2.0 * charge_[idx] * w + w * w;
        const int axis = std::abs(code) - 1;
        pos_[axis] -= code > 0 ? 1 : -1;
    }

    double sumsq() const { return sumsq_; }
    int range() const { return range_; }
    int once() const { return once_; }
    long long e1() const { return pos_[0]; }

  private:
    int n_, d_, side_;
    std::vector<double> charge_;
    std::vector<int> count_;
    std::vector<long long> pos_;
    double sumsq_ = 0.0;
    int range_ = 0;
    int once_ = 0;
};

void check_dims(int n, int d) {
    if (n < 1) throw std::invalid_argument("undirected: n >= 1 required");
    if (d < 1 || d > 4) throw std::invalid_argument("undirected: 1 <= d <= 4 required");
}

}  // namespace

UndirectedStats undirected_path_stats(const std::vector<int>& steps, int d,
                                      const ChargeSequence& cs) {
    const int n = static_cast<int>(steps.size());
    check_dims(n, d);
    if (cs.n() < n) throw std::invalid_argument("undirected: |omega| >= n required");
    Grid grid(n, d);
    for (int i = 0; i < n; ++i) {
        const int code = steps[i];
        if (code == 0 || std::abs(code) > d)
            throw std::invalid_argument("undirected: step code out of range");
        grid.occupy(code, cs.omega[i]);
    }
    UndirectedStats out;
    out.hbar = grid.sumsq();
    out.range = grid.range();
    out.once_visited = grid.once();
    out.end_e1 = grid.e1();
    return out;
}

double undirected_hamiltonian(const std::vector<int>& steps, int d, const ChargeSequence& cs) {
    return undirected_path_stats(steps, d, cs).hbar;
}

namespace {

template <typename Visit>
void enumerate_paths(Grid& grid, const ChargeSequence& cs, int i, int n, int d, Visit&& visit) {
    if (i == n) {
        visit(grid);
        return;
    }
    const double w = cs.omega[i];
    for (int axis = 1; axis <= d; ++axis)
        for (int sign = 0; sign < 2; ++sign) {
            const int code = sign ? -axis : axis;
            const std::size_t idx = grid.occupy(code, w);
            enumerate_paths(grid, cs, i + 1, n, d, visit);
            grid.vacate(code, w, idx);
        }
}

}  // namespace

UndirectedEnumeration enumerate_undirected(const ChargeSequence& cs, double beta, int d,
                                           double c) {
    const int n = cs.n();
    check_dims(n, d);
    if (!(beta >= 0.0)) throw std::invalid_argument("enumerate_undirected: beta >= 0 required");
    double size = 1.0;
    for (int i = 0; i < n; ++i) size *= 2.0 * d;
    if (size > 2e7)
        throw std::invalid_argument("enumerate_undirected: (2d)^n <= 2e7 required");

    const double omega_n = cs.interval_charge(0, n);
    const double omega_n_sq = omega_n * omega_n;
    const double range_cut = c * n;
    Grid grid(n, d);
    LogAcc total, small_range, speed_num, speed_den;
    double min_margin = 1e300, min_once = 1e300;
    enumerate_paths(grid, cs, 0, n, d, [&](const Grid& g) {
        const double lw = -beta * g.sumsq();
        total.add(lw);
        if (g.range() <= range_cut) small_range.add(lw);
        if (g.e1() > 0) {
            speed_den.add(lw);
            speed_num.add(lw + std::log(static_cast<double>(g.e1()) / n));
        }
        min_margin = std::min(min_margin, g.sumsq() * g.range() - omega_n_sq);
        if (d == 1) min_once = std::min(min_once, static_cast<double>(g.once() - (2 * g.range() - n)));
    });

    UndirectedEnumeration out;
    const double log_total = total.value();
    out.log_zbar = beta == 0.0 ? 0.0 : log_total - n * std::log(2.0 * d);
    out.prob_small_range =
        small_range.value() == neg_inf ? 0.0 : std::exp(small_range.value() - log_total);
    out.mean_speed_given_pos =
        speed_den.value() == neg_inf ? 0.0 : std::exp(speed_num.value() - speed_den.value());
    out.min_range_energy_margin = min_margin;
    out.min_once_margin = d == 1 ? min_once : 0.0;
    out.elementary_lb = -n * std::log(2.0 * d) - beta * cs.interval_sumsq(0, n);
    out.eq2_margin = log_total - (-beta * cs.interval_sumsq(0, n));
    return out;
}

BallisticCondition ballistic_condition(double delta, double beta, ChargeDist dist) {
    if (!(delta > 0.0) || !(beta > 0.0))
        throw std::invalid_argument("ballistic_condition: delta, beta > 0 required");
    double m, mp;
    switch (dist) {
        case ChargeDist::binary:
        case ChargeDist::tilted_binary:
            m = std::tanh(delta);
            mp = 1.0 - m * m;
            break;
        case ChargeDist::gaussian:
        case ChargeDist::tilted_gaussian:
            m = delta;
            mp = 1.0;
            break;
        default:
            throw std::invalid_argument("ballistic_condition: binary or gaussian law required");
    }
    BallisticCondition out;
    out.margin = m * m - mp - std::numbers::ln2 / beta;
    out.holds = out.margin > 0.0;
    return out;
}

UndirectedMcResult mc_undirected(int n, double beta, double delta, int d, int samples,
                                 std::uint64_t seed, double c1, int threads) {
    check_dims(n, d);
    if (samples < 100) throw std::invalid_argument("mc_undirected: samples >= 100 required");
    if (!(beta >= 0.0)) throw std::invalid_argument("mc_undirected: beta >= 0 required");
    const ChargeSequence cs =
        make_tilted(n, delta, substream_seed(seed, 0), ChargeDist::gaussian);
    const double omega_n = cs.interval_charge(0, n);
    const double omega_n_sq = omega_n * omega_n;

    struct Draw {
        double logw;
        bool small_range;
        double once_fraction;
        bool range_ineq_ok;
        bool once_ineq_ok;
    };
    std::vector<Draw> draws(samples);
    parallel_for(samples, threads, [&](std::size_t s) {
        Rng rng(substream_seed(seed, s + 1));
        Grid grid(n, d);
        for (int i = 0; i < n; ++i) {
            const int dir = static_cast<int>(rng.raw() % (2ull * d));
            const int code = dir < d ? dir + 1 : -(dir - d + 1);
            grid.occupy(code, cs.omega[i]);
        }
        Draw& out = draws[s];
        out.logw = -beta * grid.sumsq();
        out.small_range = grid.range() <= c1 * n;
        out.once_fraction = static_cast<double>(grid.once()) / n;
        out.range_ineq_ok = grid.sumsq() * grid.range() >= omega_n_sq;
        out.once_ineq_ok = d != 1 || grid.once() >= 2 * grid.range() - n;
    });

    // index-ordered self-normalized reduction; weights are exponentiated
    // against their maximum to avoid underflow
    double max_lw = draws[0].logw;
    for (const Draw& dr : draws) max_lw = std::max(max_lw, dr.logw);
    double sw = 0.0, sw2 = 0.0, s_small = 0.0, s_once = 0.0;
    double n_range_ok = 0.0, n_once_ok = 0.0;
    for (const Draw& dr : draws) {
        const double w = std::exp(dr.logw - max_lw);
        sw += w;
        sw2 += w * w;
        if (dr.small_range) s_small += w;
        s_once += w * dr.once_fraction;
        if (dr.range_ineq_ok) n_range_ok += 1.0;
        if (dr.once_ineq_ok) n_once_ok += 1.0;
    }
    UndirectedMcResult out;
    out.prob_small_range = s_small / sw;
    // delta-method standard error of the self-normalized ratio estimator
    double var_num = 0.0;
    for (const Draw& dr : draws) {
        const double w = std::exp(dr.logw - max_lw);
        const double dev = (dr.small_range ? 1.0 : 0.0) - out.prob_small_range;
        var_num += w * w * dev * dev;
    }
    out.prob_small_range_stderr = std::sqrt(var_num) / sw;
    out.once_fraction_mean = s_once / sw;
    out.ess = sw * sw / sw2;
    out.reliable = out.ess >= 10.0;
    out.range_ineq_ok = n_range_ok / samples;
    out.once_ineq_ok = n_once_ok / samples;
    return out;
}

}  // namespace qcp
