// Seedable, splittable randomness. Parallel Monte Carlo draws replica k from
// substream_seed(master, k), so results are reproducible for any worker count.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace qcp {

// splitmix64 step (Steele, Lea, Flood); also our seed hash.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent-looking 64-bit seed for substream `index` of `master`.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ splitmix64(index + 0x714cee59a3b7b3adULL));
}

// mt19937_64 wrapped with explicit, platform-stable draws: uniforms from the
// top 53 bits, normals by Box-Muller (std::normal_distribution is not
// bit-stable across standard libraries).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform01() {  // in [0, 1)
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 == 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double two_pi = 6.283185307179586476925286766559;
        spare_ = r * std::sin(two_pi * u2);
        have_spare_ = true;
        return r * std::cos(two_pi * u2);
    }

    // fair +-1
    int pm_one() { return (gen_() >> 63) ? 1 : -1; }

    // +-1 with P(+1) = p_plus
    int pm_one_biased(double p_plus) { return uniform01() < p_plus ? 1 : -1; }

    std::uint64_t raw() { return gen_(); }

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace qcp
