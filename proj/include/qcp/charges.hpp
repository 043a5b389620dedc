// Charge sequences omega_1..omega_n and their interval sums
// Omega_(a,b] = sum_{a<i<=b} omega_i. Binary/di-block prefix sums are kept as
// exact integers so squared interval charges inside Boltzmann exponents carry
// no cancellation noise.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qcp {

enum class ChargeDist { binary, gaussian, diblock, tilted_binary, tilted_gaussian };

const char* to_string(ChargeDist dist);
ChargeDist charge_dist_from_string(const std::string& name);

struct ChargeSequence {
    ChargeDist dist = ChargeDist::binary;
    std::vector<double> omega;        // omega_1..omega_n at indices 0..n-1
    std::vector<double> prefix;       // prefix[k] = Omega_(0,k], size n+1
    std::vector<double> prefix_sq;    // prefix_sq[k] = sum_{i<=k} omega_i^2
    std::vector<long long> iprefix;   // exact prefix sums; empty unless integer_valued
    bool integer_valued = false;
    std::optional<std::uint64_t> seed;
    double delta = 0.0;               // tilt parameter, 0 for untilted laws

    int n() const { return static_cast<int>(omega.size()); }

    // Omega_(a,b], 0 <= a <= b <= n; throws std::out_of_range otherwise.
    double interval_charge(int a, int b) const;
    long long interval_charge_int(int a, int b) const;  // pre: integer_valued
    // sum_{a<i<=b} omega_i^2 (equals b-a for unit charges)
    double interval_sumsq(int a, int b) const;
};

ChargeSequence make_binary(int n, std::uint64_t seed);
ChargeSequence make_gaussian(int n, std::uint64_t seed);
// +1 block of length half_n then -1 block of length half_n; deterministic,
// neutral total charge, Omega_(i,half_n+j] = half_n - i - j.
ChargeSequence make_diblock(int half_n);
// delta-exponentially-tilted i.i.d. marginals: binary P(+1)=e^d/(e^d+e^-d),
// gaussian N(delta, 1). base must be binary or gaussian.
ChargeSequence make_tilted(int n, double delta, std::uint64_t seed, ChargeDist base);
// wrap explicit charge values (tests, exhaustive averages)
ChargeSequence make_from_values(std::vector<double> omega);

// shifted slice theta^a omega restricted to (a, b]; keeps integer-valuedness
ChargeSequence subsequence(const ChargeSequence& cs, int a, int b);

// dump format: header "# dist=<tag> n=<n> seed=<seed>", then one charge per line
void write_charges(std::ostream& out, const ChargeSequence& cs);

}  // namespace qcp
