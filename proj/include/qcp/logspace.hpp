// Log-domain arithmetic. All partition-function values live as natural logs
// (-inf encodes zero) and are only exponentiated at output boundaries, e.g.
// when forming probabilities from log-weight differences.
#pragma once

#include <cmath>
#include <limits>

namespace qcp {

inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();

// log(e^a + e^b) without leaving the log domain.
inline double log_add(double a, double b) {
    if (a < b) std::swap(a, b);
    if (b == neg_inf) return a;
    return a + std::log1p(std::exp(b - a));
}

// Streaming log-sum-exp with running max extraction: value() = M + log1p(rest)
// where rest accumulates exp(t - M) over the non-maximal terms. Terms more
// than `drop` below the running max contribute < e^drop each and are skipped;
// with <= a few thousand terms that is far below every tolerance in use.
class LogAcc {
  public:
    void add(double t) {
        if (t == neg_inf) return;
        if (t > max_) {
            if (max_ != neg_inf) rest_ = (rest_ + 1.0) * std::exp(max_ - t);
            max_ = t;
        } else {
            const double d = t - max_;
            if (d > drop) rest_ += std::exp(d);
        }
    }
    double value() const {
        if (max_ == neg_inf) return neg_inf;
        return max_ + std::log1p(rest_);
    }

  private:
    static constexpr double drop = -60.0;  // e^-60 ~ 8.8e-27
    double max_ = neg_inf;
    double rest_ = 0.0;
};

}  // namespace qcp
