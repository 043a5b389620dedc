#include "qcp/charges.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "qcp/rng.hpp"

namespace qcp {

const char* to_string(ChargeDist dist) {
    switch (dist) {
        case ChargeDist::binary: return "binary";
        case ChargeDist::gaussian: return "gaussian";
        case ChargeDist::diblock: return "diblock";
        case ChargeDist::tilted_binary: return "tilted_binary";
        case ChargeDist::tilted_gaussian: return "tilted_gaussian";
    }
    return "?";
}

ChargeDist charge_dist_from_string(const std::string& name) {
    if (name == "binary") return ChargeDist::binary;
    if (name == "gaussian") return ChargeDist::gaussian;
    if (name == "diblock") return ChargeDist::diblock;
    if (name == "tilted_binary") return ChargeDist::tilted_binary;
    if (name == "tilted_gaussian") return ChargeDist::tilted_gaussian;
    throw std::invalid_argument("unknown charge distribution: " + name);
}

namespace {

void finalize_prefixes(ChargeSequence& cs) {
    const int n = cs.n();
    cs.prefix.assign(n + 1, 0.0);
    cs.prefix_sq.assign(n + 1, 0.0);
    if (cs.integer_valued) cs.iprefix.assign(n + 1, 0);
    for (int i = 0; i < n; ++i) {
        cs.prefix[i + 1] = cs.prefix[i] + cs.omega[i];
        cs.prefix_sq[i + 1] = cs.prefix_sq[i] + cs.omega[i] * cs.omega[i];
        if (cs.integer_valued)
            cs.iprefix[i + 1] = cs.iprefix[i] + static_cast<long long>(cs.omega[i]);
    }
    if (cs.integer_valued)  // keep the float prefixes exact too
        for (int k = 0; k <= n; ++k) cs.prefix[k] = static_cast<double>(cs.iprefix[k]);
}

void check_interval(const ChargeSequence& cs, int a, int b) {
    if (a < 0 || b < a || b > cs.n())
        throw std::out_of_range("interval_charge: need 0 <= a <= b <= n");
}

}  // namespace

double ChargeSequence::interval_charge(int a, int b) const {
    check_interval(*this, a, b);
    if (integer_valued) return static_cast<double>(iprefix[b] - iprefix[a]);
    return prefix[b] - prefix[a];
}

long long ChargeSequence::interval_charge_int(int a, int b) const {
    check_interval(*this, a, b);
    if (!integer_valued) throw std::logic_error("interval_charge_int: charges not integer");
    return iprefix[b] - iprefix[a];
}

double ChargeSequence::interval_sumsq(int a, int b) const {
    check_interval(*this, a, b);
    if (integer_valued) return static_cast<double>(b - a);  // unit charges only
    return prefix_sq[b] - prefix_sq[a];
}

ChargeSequence make_binary(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("make_binary: n >= 1 required");
    ChargeSequence cs;
    cs.dist = ChargeDist::binary;
    cs.integer_valued = true;
    cs.seed = seed;
    cs.omega.resize(n);
    Rng rng(seed);
    for (int i = 0; i < n; ++i) cs.omega[i] = static_cast<double>(rng.pm_one());
    finalize_prefixes(cs);
    return cs;
}

ChargeSequence make_gaussian(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("make_gaussian: n >= 1 required");
    ChargeSequence cs;
    cs.dist = ChargeDist::gaussian;
    cs.seed = seed;
    cs.omega.resize(n);
    Rng rng(seed);
    for (int i = 0; i < n; ++i) cs.omega[i] = rng.normal();
    finalize_prefixes(cs);
    return cs;
}

ChargeSequence make_diblock(int half_n) {
    if (half_n < 1) throw std::invalid_argument("make_diblock: half_n >= 1 required");
    ChargeSequence cs;
    cs.dist = ChargeDist::diblock;
    cs.integer_valued = true;
    cs.omega.resize(2 * half_n);
    for (int i = 0; i < half_n; ++i) cs.omega[i] = 1.0;
    for (int i = half_n; i < 2 * half_n; ++i) cs.omega[i] = -1.0;
    finalize_prefixes(cs);
    return cs;
}

ChargeSequence make_tilted(int n, double delta, std::uint64_t seed, ChargeDist base) {
    if (n < 1) throw std::invalid_argument("make_tilted: n >= 1 required");
    if (delta < 0.0) throw std::invalid_argument("make_tilted: delta >= 0 required");
    ChargeSequence cs;
    cs.seed = seed;
    cs.delta = delta;
    cs.omega.resize(n);
    Rng rng(seed);
    if (base == ChargeDist::binary) {
        cs.dist = ChargeDist::tilted_binary;
        cs.integer_valued = true;
        const double p_plus = std::exp(delta) / (std::exp(delta) + std::exp(-delta));
        for (int i = 0; i < n; ++i) cs.omega[i] = static_cast<double>(rng.pm_one_biased(p_plus));
    } else if (base == ChargeDist::gaussian) {
        cs.dist = ChargeDist::tilted_gaussian;
        for (int i = 0; i < n; ++i) cs.omega[i] = rng.normal() + delta;
    } else {
        throw std::invalid_argument("make_tilted: base must be binary or gaussian");
    }
    finalize_prefixes(cs);
    return cs;
}

ChargeSequence make_from_values(std::vector<double> omega) {
    if (omega.empty()) throw std::invalid_argument("make_from_values: n >= 1 required");
    ChargeSequence cs;
    cs.omega = std::move(omega);
    bool all_sign = true;
    for (double w : cs.omega)
        if (w != 1.0 && w != -1.0) all_sign = false;
    cs.integer_valued = all_sign;  // the integer fast paths assume unit charges
    cs.dist = all_sign ? ChargeDist::binary : ChargeDist::gaussian;
    finalize_prefixes(cs);
    return cs;
}

ChargeSequence subsequence(const ChargeSequence& cs, int a, int b) {
    check_interval(cs, a, b);
    if (b == a) throw std::invalid_argument("subsequence: empty slice");
    ChargeSequence out;
    out.dist = cs.dist;
    out.integer_valued = cs.integer_valued;
    out.delta = cs.delta;
    out.omega.assign(cs.omega.begin() + a, cs.omega.begin() + b);
    finalize_prefixes(out);
    return out;
}

void write_charges(std::ostream& out, const ChargeSequence& cs) {
    out << "# dist=" << to_string(cs.dist) << " n=" << cs.n() << " seed=";
    if (cs.seed)
        out << *cs.seed;
    else
        out << "-";
    out << "\n";
    char buf[40];
    for (const double w : cs.omega) {
        std::snprintf(buf, sizeof buf, "%.17g", w);
        out << buf << "\n";
    }
}

}  // namespace qcp
