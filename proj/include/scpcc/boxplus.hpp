// Check-node LLR combining (box-plus) in exact and min-sum form.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace scpcc {

/// LLR sign convention used throughout: positive means the symbol is 0.
/// Magnitudes above kDefaultLlrCap are treated as "perfectly known".
inline constexpr double kDefaultLlrCap = 300.0;

enum class BoxplusMode {
    Exact,   ///< ln((1 + e^{a+b}) / (e^a + e^b)), numerically stable
    Approx,  ///< sign(a) * sign(b) * min(|a|, |b|)
};

/// Exact box-plus of two LLRs. Handles +/-infinity as identities of the
/// check-node operation; 0 annihilates.
inline double boxplus_exact(double a, double b) {
    if (std::isinf(a)) return a > 0 ? b : -b;
    if (std::isinf(b)) return b > 0 ? a : -a;
    const double sign = (std::signbit(a) == std::signbit(b)) ? 1.0 : -1.0;
    const double m = std::min(std::abs(a), std::abs(b));
    // min-sum plus the two correction terms, each bounded by ln 2
    return sign * m + std::log1p(std::exp(-std::abs(a + b))) -
           std::log1p(std::exp(-std::abs(a - b)));
}

/// Min-sum approximation: comparisons and signum only.
inline double boxplus_approx(double a, double b) {
    if (std::isinf(a)) return a > 0 ? b : -b;
    if (std::isinf(b)) return b > 0 ? a : -a;
    const double sign = (std::signbit(a) == std::signbit(b)) ? 1.0 : -1.0;
    return sign * std::min(std::abs(a), std::abs(b));
}

inline double boxplus(double a, double b, BoxplusMode mode) {
    return mode == BoxplusMode::Exact ? boxplus_exact(a, b) : boxplus_approx(a, b);
}

/// Clamp an LLR to [-cap, cap]; maps non-finite input to +/-cap.
inline double clamp_llr(double v, double cap = kDefaultLlrCap) {
    if (std::isnan(v)) return 0.0;
    return std::clamp(v, -cap, cap);
}

}  // namespace scpcc
