// APP threshold decoding of one CSOC block.
//
// For every information error symbol, the J orthogonal checks are weighted
// by box-plus combining the reliabilities of their other participants; the
// symbol is flipped when the signed check sum plus its own reliability drops
// below zero, and the flip is fed back into every syndrome it touches.  The
// signed check sum is the extrinsic information exchanged between the two
// component decoders of the turbo scheme.
//
// All reliabilities live on error symbols: positive means "the hard decision
// is right".  A priori values from the complementary decoder simply add to
// the channel magnitude, so hard decisions themselves never change between
// iterations; only the confidence attached to them does.

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "scpcc/boxplus.hpp"
#include "scpcc/csoc.hpp"

namespace scpcc {

/// Soft values for one block: k information streams plus the parity stream,
/// all in channel LLR units (sign encodes the hard decision, positive = 0).
struct LlrBlock {
    int streams = 0;
    std::size_t length = 0;
    std::vector<double> info;    ///< streams x length, row-major
    std::vector<double> parity;  ///< length

    double& info_at(int stream, std::size_t t) { return info[stream * length + t]; }
    double info_at(int stream, std::size_t t) const { return info[stream * length + t]; }
};

/// A priori / extrinsic LLRs on the information error symbols; zero means
/// "no information".
struct AprioriBlock {
    int streams = 0;
    std::size_t length = 0;
    std::vector<double> values;  ///< streams x length, row-major

    static AprioriBlock zeros(int streams, std::size_t length) {
        return AprioriBlock{streams, length,
                            std::vector<double>(streams * length, 0.0)};
    }
};

using ExtrinsicBlock = AprioriBlock;

struct DecodeOutput {
    int streams = 0;
    std::size_t length = 0;
    Bits hard_info;               ///< corrected estimates u-hat, streams x length
    Bits error_flags;             ///< e-hat, streams x length
    std::vector<double> extrinsic;  ///< signed check sums at decision time
    long flips = 0;               ///< number of e-hat = 1 decisions
};

/// Error-symbol reliability of Eq.-style form: channel magnitude plus any
/// a priori information (channel values arrive pre-scaled by 4 Es/N0).
inline double reliability(double channel_llr_magnitude, double apriori) {
    return channel_llr_magnitude + apriori;
}

/// One-block threshold decoder.  Holds the expanded check sets and scratch
/// buffers so repeated calls do not allocate; instances are independent and
/// a single call is sequential in time (feedback forbids time-parallelism).
class ThresholdDecoder {
  public:
    explicit ThresholdDecoder(const CsocCode& code, double llr_cap = kDefaultLlrCap)
        : code_(code), llr_cap_(llr_cap) {
        const CheckSet set = build_check_sets(code);
        k_ = code.k;
        j_ = set.check_count;
        check_offsets_.reserve(k_ * j_);
        part_begin_.reserve(k_ * j_ + 1);
        part_begin_.push_back(0);
        for (int i = 0; i < k_; ++i) {
            for (const Check& check : set.per_stream[i]) {
                check_offsets_.push_back(check.syndrome_offset);
                for (const auto& p : check.participants) {
                    part_stream_.push_back(p.stream);
                    part_offset_.push_back(p.offset);
                }
                part_begin_.push_back(static_cast<int>(part_stream_.size()));
            }
        }
    }

    const CsocCode& code() const { return code_; }
    double llr_cap() const { return llr_cap_; }

    /// Sequential pass over the block: at each time unit the k stream
    /// decisions are computed from the same pre-decision syndrome state and
    /// applied together.  The block must cover at least one constraint
    /// length (length >= m+1).
    DecodeOutput decode(const LlrBlock& channel, const AprioriBlock& apriori,
                        BoxplusMode mode) {
        const std::size_t n = channel.length;
        if (channel.streams != k_ || apriori.streams != k_)
            throw std::invalid_argument("decode: stream count mismatch");
        if (apriori.length != n || channel.parity.size() != n ||
            channel.info.size() != static_cast<std::size_t>(k_) * n)
            throw std::invalid_argument("decode: block length mismatch");
        if (n < static_cast<std::size_t>(code_.m) + 1)
            throw std::invalid_argument("decode: block shorter than one constraint length");

        // Reliabilities and hard decisions; a zero LLR hard-decides as 0.
        rel_.resize(static_cast<std::size_t>(k_ + 1) * n);
        hard_.assign(static_cast<std::size_t>(k_) * n, 0);
        for (int i = 0; i < k_; ++i) {
            for (std::size_t t = 0; t < n; ++t) {
                const double llr = channel.info[i * n + t];
                hard_[i * n + t] = llr < 0.0 ? 1 : 0;
                rel_[i * n + t] =
                    clamp_llr(reliability(std::abs(clamp_llr(llr, llr_cap_)),
                                          apriori.values[i * n + t]),
                              llr_cap_);
            }
        }
        for (std::size_t t = 0; t < n; ++t)
            rel_[k_ * n + t] = std::abs(clamp_llr(channel.parity[t], llr_cap_));

        // Syndromes from the hard decisions (re-encode and add parity).
        syndrome_.assign(n, 0);
        for (int i = 0; i < k_; ++i)
            for (int tap : code_.generators[i])
                for (std::size_t l = static_cast<std::size_t>(tap); l < n; ++l)
                    syndrome_[l] ^= hard_[i * n + l - tap];
        for (std::size_t t = 0; t < n; ++t)
            syndrome_[t] ^= channel.parity[t] < 0.0 ? 1 : 0;

        DecodeOutput out;
        out.streams = k_;
        out.length = n;
        out.hard_info.resize(static_cast<std::size_t>(k_) * n);
        out.error_flags.assign(static_cast<std::size_t>(k_) * n, 0);
        out.extrinsic.assign(static_cast<std::size_t>(k_) * n, 0.0);

        flip_now_.resize(k_);
        for (std::size_t l = 0; l < n; ++l) {
            for (int i = 0; i < k_; ++i) {
                const double lam_ext = extrinsic_at(l, i, n, mode);
                out.extrinsic[i * n + l] = lam_ext;
                // Threshold rule: flip iff the total drops strictly below 0.
                flip_now_[i] = lam_ext + rel_[i * n + l] < 0.0 ? 1 : 0;
            }
            for (int i = 0; i < k_; ++i) {
                const std::uint8_t flip = flip_now_[i];
                out.error_flags[i * n + l] = flip;
                out.hard_info[i * n + l] = hard_[i * n + l] ^ flip;
                if (flip) {
                    ++out.flips;
                    for (int tap : code_.generators[i]) {
                        const std::size_t s = l + static_cast<std::size_t>(tap);
                        if (s < n) syndrome_[s] ^= 1;
                    }
                }
            }
        }
        return out;
    }

  private:
    double extrinsic_at(std::size_t l, int i, std::size_t n, BoxplusMode mode) const {
        double lam_ext = 0.0;
        const int base = i * j_;
        for (int j = 0; j < j_; ++j) {
            const std::size_t s = l + static_cast<std::size_t>(check_offsets_[base + j]);
            if (s >= n) continue;  // check unavailable at the block tail
            double w = 0.0;
            bool first = true;
            for (int p = part_begin_[base + j]; p < part_begin_[base + j + 1]; ++p) {
                const double r = rel_[part_stream_[p] * n + l + part_offset_[p]];
                if (first) {
                    w = r;
                    first = false;
                } else {
                    w = boxplus(w, r, mode);
                }
            }
            lam_ext += syndrome_[s] ? -w : w;
        }
        return lam_ext;
    }

    CsocCode code_;
    double llr_cap_;
    int k_ = 0;
    int j_ = 0;
    // Check sets flattened for the inner loop: per (stream, check) the
    // syndrome offset and a CSR-style participant list.
    std::vector<int> check_offsets_;
    std::vector<int> part_begin_;
    std::vector<int> part_stream_;
    std::vector<int> part_offset_;
    // scratch
    std::vector<double> rel_;
    Bits hard_;
    Bits syndrome_;
    Bits flip_now_;
};

/// One-shot convenience wrapper around ThresholdDecoder.
inline DecodeOutput decode_block(const CsocCode& code, const LlrBlock& channel,
                                 const AprioriBlock& apriori, BoxplusMode mode,
                                 double llr_cap = kDefaultLlrCap) {
    ThresholdDecoder decoder(code, llr_cap);
    return decoder.decode(channel, apriori, mode);
}

}  // namespace scpcc
