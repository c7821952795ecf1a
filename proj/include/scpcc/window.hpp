// Sliding-window iterative threshold decoding of SC-PCC frames.
//
// The window covers w coupled blocks starting at the target.  One vertical
// iteration runs component decoder 1 and then decoder 2 on the same coupled
// time, exchanging extrinsic information through the per-source-bit stores;
// one horizontal iteration sweeps the window forward and then backward with
// I_V vertical iterations per visited block.  After I_H horizontal
// iterations the target's decisions are shifted out and the window advances,
// for a total of I_w = 2 w I_V I_H vertical iterations per window position.

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "scpcc/channel.hpp"
#include "scpcc/codec.hpp"
#include "scpcc/coupling.hpp"
#include "scpcc/threshold.hpp"

namespace scpcc {

/// Soft received frame in channel-LLR units.
struct ReceivedFrame {
    std::vector<double> systematic;  ///< L*T, per source bit
    std::vector<std::vector<double>> parity1;  ///< L+m_sc blocks
    std::vector<std::vector<double>> parity2;
};

/// Latest extrinsic LLR per source information bit from each component
/// decoder; the medium of all cross-time information exchange.  Values are
/// clamped and each scatter replaces the previous message.
struct ExtrinsicStore {
    std::vector<double> decoder1;  ///< written via the plain path
    std::vector<double> decoder2;  ///< written via the permuted path

    void reset(std::size_t source_bits) {
        decoder1.assign(source_bits, 0.0);
        decoder2.assign(source_bits, 0.0);
    }
};

struct DecodeReport {
    long long vertical_iterations = 0;
    int window_positions = 0;
    std::vector<long long> verticals_per_position;
    std::vector<long> flips_per_coupled_time;  ///< e-hat = 1 feedback events
    long long total_flips = 0;

    /// Optional schedule trace (debug): one entry per component decode.
    struct TraceEvent {
        int window_position;
        int coupled_time;
        int decoder;          ///< 1 or 2
        double apriori_sum;   ///< fingerprint of the gathered a priori input
    };
    std::vector<TraceEvent> trace;

    nlohmann::json to_json() const {
        return nlohmann::json{{"vertical_iterations", vertical_iterations},
                              {"window_positions", window_positions},
                              {"verticals_per_position", verticals_per_position},
                              {"flips_per_coupled_time", flips_per_coupled_time},
                              {"total_flips", total_flips}};
    }
};

class WindowDecoder {
  public:
    explicit WindowDecoder(const ScPccParams& params)
        : params_(params),
          map_(params.block_size, params.coupling_memory, params.frame_blocks,
               params.make_interleaver()),
          decoder_(params.code, params.llr_cap) {
        params_.validate();
        // Last coupled time each source bit appears in, on either path; a
        // bit is decided when that block is shifted out of the window.
        bits_by_last_time_.resize(map_.coupled_blocks());
        for (std::size_t bit = 0; bit < map_.source_bits(); ++bit) {
            const int last = std::max(map_.coord(bit, CouplingPath::Plain).time,
                                      map_.coord(bit, CouplingPath::Permuted).time);
            bits_by_last_time_[last].push_back(bit);
        }
    }

    const CouplingMap& map() const { return map_; }
    const ScPccParams& params() const { return params_; }
    const ExtrinsicStore& extrinsic() const { return store_; }
    ExtrinsicStore& extrinsic() { return store_; }

    void enable_trace(bool on) { trace_enabled_ = on; }

    /// Binds the decoder to a received frame and clears all iteration state.
    void start(const ReceivedFrame& received) {
        if (received.systematic.size() != map_.source_bits() ||
            received.parity1.size() != static_cast<std::size_t>(map_.coupled_blocks()) ||
            received.parity2.size() != static_cast<std::size_t>(map_.coupled_blocks()))
            throw std::invalid_argument("window: received frame dimensions mismatch");
        const std::size_t plen = static_cast<std::size_t>(params_.parity_block_length());
        for (const auto& p : received.parity1)
            if (p.size() != plen) throw std::invalid_argument("window: parity1 length mismatch");
        for (const auto& p : received.parity2)
            if (p.size() != plen) throw std::invalid_argument("window: parity2 length mismatch");
        received_ = &received;
        store_.reset(map_.source_bits());
        report_ = DecodeReport{};
        report_.flips_per_coupled_time.assign(map_.coupled_blocks(), 0);
        window_position_ = 0;
    }

    /// One turbo cycle on coupled time tau: decoder 1 (plain path, parity 1)
    /// followed by decoder 2 (permuted path, parity 2), each a single
    /// threshold pass, exchanging extrinsic information through the store.
    void vertical_iteration(int tau) {
        require_started();
        if (tau < 0 || tau >= map_.coupled_blocks())
            throw std::out_of_range("window: coupled time out of range");
        component_decode(tau, /*decoder1=*/true);
        component_decode(tau, /*decoder1=*/false);
        ++report_.vertical_iterations;
    }

    /// Forward then backward sweep over the window starting at `target`,
    /// I_V vertical iterations per visited block.  Blocks clipped at the
    /// frame edge are counted as visited with virtual, perfectly known
    /// content and cost no work.
    void horizontal_iteration(int target) {
        require_started();
        const int w = params_.window_size;
        for (int step = 0; step < w; ++step) visit(target + step);
        for (int step = w - 1; step >= 0; --step) visit(target + step);
    }

    /// Full-frame decode: one window position per coupled time, I_H
    /// horizontal iterations each, then the target block's bits are decided
    /// and the window advances.
    Bits decode(const ReceivedFrame& received) {
        start(received);
        Bits decisions(map_.source_bits(), 0);
        for (int target = 0; target < map_.coupled_blocks(); ++target) {
            const long long before = report_.vertical_iterations;
            for (int h = 0; h < params_.horizontal_iterations; ++h) horizontal_iteration(target);
            report_.verticals_per_position.push_back(report_.vertical_iterations - before);
            ++report_.window_positions;
            emit_target(target, decisions);
            ++window_position_;
        }
        received_ = nullptr;
        return decisions;
    }

    const DecodeReport& report() const { return report_; }

  private:
    void require_started() const {
        if (!received_) throw std::logic_error("window: decoder not bound to a frame");
    }

    void visit(int tau) {
        if (tau >= 0 && tau < map_.coupled_blocks()) {
            for (int v = 0; v < params_.vertical_iterations; ++v) vertical_iteration(tau);
        } else {
            // Virtual visit beyond the frame: known content, no work.
            report_.vertical_iterations += params_.vertical_iterations;
        }
    }

    void component_decode(int tau, bool decoder1) {
        const CouplingPath path = decoder1 ? CouplingPath::Plain : CouplingPath::Permuted;
        const auto& other = decoder1 ? store_.decoder2 : store_.decoder1;
        const auto& parity = decoder1 ? received_->parity1[tau] : received_->parity2[tau];

        map_.gather(received_->systematic, path, tau, gather_ch_);
        map_.gather(other, path, tau, gather_ap_);

        const int k = params_.code.k;
        const std::size_t n = static_cast<std::size_t>(params_.stream_length());
        const int sub_blocks = params_.coupling_memory + 1;
        const int sub_block_size = params_.block_size / sub_blocks;
        block_.streams = k;
        block_.length = n;
        block_.info.assign(static_cast<std::size_t>(k) * n, params_.llr_cap);
        block_.parity = parity;
        apriori_.streams = k;
        apriori_.length = n;
        apriori_.values.assign(static_cast<std::size_t>(k) * n, 0.0);
        double apriori_sum = 0.0;
        for (int p = 0; p < params_.block_size; ++p) {
            const auto c = detail::stream_coord(p, k, sub_blocks, sub_block_size);
            block_.info[c.stream * n + c.time] = clamp_llr(gather_ch_[p], params_.llr_cap);
            const double ap = params_.extrinsic_scale * clamp_llr(gather_ap_[p], params_.llr_cap);
            apriori_.values[c.stream * n + c.time] = ap;
            apriori_sum += ap;
        }

        DecodeOutput out = decoder_.decode(block_, apriori_, params_.boxplus_mode);
        report_.flips_per_coupled_time[tau] += out.flips;
        report_.total_flips += out.flips;

        scatter_buf_.resize(params_.block_size);
        for (int p = 0; p < params_.block_size; ++p) {
            const auto c = detail::stream_coord(p, k, sub_blocks, sub_block_size);
            scatter_buf_[p] = clamp_llr(out.extrinsic[c.stream * n + c.time], params_.llr_cap);
        }
        map_.scatter(decoder1 ? store_.decoder1 : store_.decoder2, path, tau, scatter_buf_);

        if (trace_enabled_)
            report_.trace.push_back({window_position_, tau, decoder1 ? 1 : 2, apriori_sum});
    }

    /// Combined decision for every source bit whose last sub-block leaves
    /// the decoder at this target: flip the channel hard decision when the
    /// error-symbol total |channel| + E1 + E2 goes negative; an exact zero
    /// keeps the hard decision, and a zero channel LLR hard-decides as 0.
    void emit_target(int target, Bits& decisions) {
        for (std::size_t bit : bits_by_last_time_[target]) {
            const double ch = clamp_llr(received_->systematic[bit], params_.llr_cap);
            const std::uint8_t hard = ch < 0.0 ? 1 : 0;
            const double total = std::abs(ch) + store_.decoder1[bit] + store_.decoder2[bit];
            decisions[bit] = hard ^ (total < 0.0 ? 1 : 0);
        }
    }

    ScPccParams params_;
    CouplingMap map_;
    ThresholdDecoder decoder_;
    std::vector<std::vector<std::size_t>> bits_by_last_time_;

    const ReceivedFrame* received_ = nullptr;
    ExtrinsicStore store_;
    DecodeReport report_;
    int window_position_ = 0;
    bool trace_enabled_ = false;

    // scratch
    std::vector<double> gather_ch_, gather_ap_, scatter_buf_;
    LlrBlock block_;
    AprioriBlock apriori_;
};

/// Convenience wrapper: decode one frame and return (decisions, report).
inline std::pair<Bits, DecodeReport> decode_frame(const ScPccParams& params,
                                                  const ReceivedFrame& received) {
    WindowDecoder decoder(params);
    Bits decisions = decoder.decode(received);
    return {std::move(decisions), decoder.report()};
}

}  // namespace scpcc
