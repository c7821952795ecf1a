// BPSK over AWGN and conversion to scaled channel LLRs.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "scpcc/csoc.hpp"

namespace scpcc {

/// One SNR operating point.  Eb/N0 is converted through the transmitted
/// code rate so that coded comparisons at equal Eb/N0 are energy-fair;
/// symbols have unit energy, hence sigma^2 = 1/(2 Es/N0).
struct SnrPoint {
    double eb_n0_db = 0.0;
    double rate = 1.0;

    double es_n0() const { return rate * std::pow(10.0, eb_n0_db / 10.0); }
    double noise_variance() const { return 1.0 / (2.0 * es_n0()); }
    double noise_sigma() const { return std::sqrt(noise_variance()); }
    /// LLR scale of the reliability equation: Lambda = 4 (Es/N0) y = 2y/sigma^2.
    double llr_scale() const { return 4.0 * es_n0(); }
};

/// BPSK map: bit 0 -> +1, bit 1 -> -1.
inline double bpsk(std::uint8_t bit) { return bit ? -1.0 : 1.0; }

/// Transmits bits over the AWGN channel, appending soft outputs to `out`.
template <typename Rng>
void transmit(const Bits& bits, const SnrPoint& snr, Rng& rng, std::vector<double>& out) {
    std::normal_distribution<double> noise(0.0, snr.noise_sigma());
    out.reserve(out.size() + bits.size());
    for (std::uint8_t b : bits) out.push_back(bpsk(b) + noise(rng));
}

template <typename Rng>
std::vector<double> transmit(const Bits& bits, const SnrPoint& snr, Rng& rng) {
    std::vector<double> out;
    transmit(bits, snr, rng, out);
    return out;
}

/// Scaled channel LLR of a received value; equals the exact BPSK LLR
/// 2y/sigma^2.  Positive means bit 0; y = 0 is an erasure that hard-decides
/// as bit 0 downstream.
inline double to_llr(double y, const SnrPoint& snr) { return snr.llr_scale() * y; }

inline void to_llr(const std::vector<double>& y, const SnrPoint& snr, std::vector<double>& out) {
    out.resize(y.size());
    const double scale = snr.llr_scale();
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = scale * y[i];
}

}  // namespace scpcc
