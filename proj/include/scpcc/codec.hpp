// SC-PCC frame encoder and rate accounting.
//
// Each coupled source block is demultiplexed round-robin into the k encoder
// input streams, terminated with nu = k(m+1) zeros (in terminate-blocks
// mode), and fed to two identical CSOC encoders; encoder 2 sees the
// permuted coupling path.  The systematic output is the original source
// block, transmitted only for real times t < L, while parity is transmitted
// for all L+m_sc coupled times since edge parity still protects real bits.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "scpcc/boxplus.hpp"
#include "scpcc/coupling.hpp"
#include "scpcc/csoc.hpp"
#include "scpcc/seeding.hpp"

namespace scpcc {

enum class TerminationMode { TerminateBlocks, Unterminated };
enum class RateConvention { Formula, Transmitted };

/// Full codec configuration for one SC-PCC.
struct ScPccParams {
    CsocCode code;
    int block_size = 0;        ///< T, information bits per source block
    int coupling_memory = 0;   ///< m_sc
    int frame_blocks = 1;      ///< L, source blocks per frame
    std::uint64_t interleaver_seed = 0;
    bool identity_interleaver = false;
    int window_size = 1;       ///< w >= m_sc + 1
    int vertical_iterations = 1;    ///< I_V
    int horizontal_iterations = 1;  ///< I_H
    BoxplusMode boxplus_mode = BoxplusMode::Approx;
    double extrinsic_scale = 1.0;
    double llr_cap = kDefaultLlrCap;
    TerminationMode termination = TerminationMode::TerminateBlocks;

    int streams_per_encoder() const { return code.k; }
    /// Encoder input/parity stream length per coupled block.
    int stream_length() const {
        const int base = block_size / code.k;
        return termination == TerminationMode::TerminateBlocks ? base + code.m + 1 : base;
    }
    int parity_block_length() const { return stream_length(); }
    int coupled_blocks() const { return frame_blocks + coupling_memory; }
    std::size_t source_bits() const {
        return static_cast<std::size_t>(frame_blocks) * block_size;
    }

    void validate() const {
        check_structure(code);
        const ValidityReport rep = validate_self_orthogonality(code);
        if (!rep.valid)
            throw std::invalid_argument("params: component code is not self-orthogonal (" +
                                        rep.detail + ")");
        if (block_size < 1) throw std::invalid_argument("params: T must be >= 1");
        if (coupling_memory < 0) throw std::invalid_argument("params: m_sc must be >= 0");
        if (block_size % (coupling_memory + 1) != 0)
            throw std::invalid_argument("params: T must be a multiple of m_sc + 1");
        if (block_size % code.k != 0)
            throw std::invalid_argument("params: T must be a multiple of k (round-robin streams)");
        if (frame_blocks < 1) throw std::invalid_argument("params: L must be >= 1");
        if (window_size < coupling_memory + 1)
            throw std::invalid_argument("params: window must satisfy w >= m_sc + 1");
        if (vertical_iterations < 1 || horizontal_iterations < 1)
            throw std::invalid_argument("params: iteration counts must be >= 1");
        if (extrinsic_scale <= 0.0)
            throw std::invalid_argument("params: extrinsic scale must be positive");
        if (llr_cap <= 0.0) throw std::invalid_argument("params: llr cap must be positive");
    }

    Interleaver make_interleaver() const {
        return identity_interleaver ? Interleaver::identity(block_size)
                                    : Interleaver::random(block_size, interleaver_seed);
    }
};

/// Encoded frame: L systematic blocks and L+m_sc parity block pairs.
struct CodedFrame {
    int block_size = 0;
    int parity_length = 0;
    std::vector<Bits> systematic;  ///< L blocks of T bits (the source itself)
    std::vector<Bits> parity1;     ///< L+m_sc blocks from encoder 1
    std::vector<Bits> parity2;     ///< L+m_sc blocks from encoder 2

    std::size_t transmitted_bits() const {
        std::size_t n = 0;
        for (const auto& b : systematic) n += b.size();
        for (const auto& b : parity1) n += b.size();
        for (const auto& b : parity2) n += b.size();
        return n;
    }
};

namespace detail {

/// Encoder stream coordinate of coupled-block position p.
///
/// The coupled block lays its m_sc+1 sub-blocks out contiguously, but the
/// encoder must see them time-multiplexed: sub-blocks alternate bit by bit
/// along encoder time, so every syndrome (span m) checks symbols of all
/// sub-blocks and parity genuinely couples them.  Serializing the sub-block
/// buffers round-robin and then dealing bits round-robin onto the k streams
/// achieves that; with m_sc = 0 it reduces to plain bit j -> stream j mod k.
struct StreamCoord {
    int stream;
    int time;
};

inline StreamCoord stream_coord(int position, int k, int sub_blocks, int sub_block_size) {
    const int serial = (position % sub_block_size) * sub_blocks + position / sub_block_size;
    return {serial % k, serial / k};
}

inline void demux_streams(const Bits& block, int k, int sub_blocks, int stream_length,
                          BitStreams& streams) {
    streams.assign(k, Bits(stream_length, 0));
    const int sub_block_size = static_cast<int>(block.size()) / sub_blocks;
    for (int p = 0; p < static_cast<int>(block.size()); ++p) {
        const StreamCoord c = stream_coord(p, k, sub_blocks, sub_block_size);
        streams[c.stream][c.time] = block[p];
    }
}

}  // namespace detail

/// Encodes one frame of L x T source bits.  `source` is flattened row-major
/// (block t occupies [t*T, (t+1)*T)).
inline CodedFrame encode_frame(const ScPccParams& params, const Bits& source,
                               const CouplingMap& map) {
    params.validate();
    if (source.size() != params.source_bits())
        throw std::invalid_argument("encode_frame: source size must be L*T");

    CodedFrame frame;
    frame.block_size = params.block_size;
    frame.parity_length = params.parity_block_length();
    frame.systematic.resize(params.frame_blocks);
    for (int t = 0; t < params.frame_blocks; ++t)
        frame.systematic[t] = Bits(source.begin() + static_cast<std::size_t>(t) * params.block_size,
                                   source.begin() + static_cast<std::size_t>(t + 1) * params.block_size);

    Bits coupled;
    BitStreams streams;
    for (int tau = 0; tau < params.coupled_blocks(); ++tau) {
        for (CouplingPath path : {CouplingPath::Plain, CouplingPath::Permuted}) {
            map.gather(source, path, tau, coupled);
            detail::demux_streams(coupled, params.code.k, params.coupling_memory + 1,
                                  params.stream_length(), streams);
            Bits parity = encode_block(params.code, streams);
            (path == CouplingPath::Plain ? frame.parity1 : frame.parity2).push_back(std::move(parity));
        }
    }
    return frame;
}

inline CodedFrame encode_frame(const ScPccParams& params, const Bits& source) {
    CouplingMap map(params.block_size, params.coupling_memory, params.frame_blocks,
                    params.make_interleaver());
    return encode_frame(params, source, map);
}

/// Per-block code rate.  The formula convention charges the full nu = k(m+1)
/// termination input; the transmitted convention charges only the 2(m+1)
/// parity bits emitted while flushing each encoder, since the termination
/// zeros themselves are known and never sent.  The two coincide at k = 2.
inline double code_rate(int k, int m, int block_size, TerminationMode termination,
                        RateConvention convention) {
    const double t = block_size;
    const double parity = 2.0 * t / k;
    if (termination == TerminationMode::Unterminated) return t / (t + parity);
    if (convention == RateConvention::Formula) return t / (t + parity + k * (m + 1));
    return t / (t + parity + 2.0 * (m + 1));
}

inline double code_rate(const ScPccParams& params,
                        RateConvention convention = RateConvention::Transmitted) {
    return code_rate(params.code.k, params.code.m, params.block_size, params.termination,
                     convention);
}

// ---------------------------------------------------------------------------
// Configuration (de)serialization.

inline void to_json(nlohmann::json& j, const ScPccParams& p) {
    j = nlohmann::json{
        {"code", code_to_json(p.code)},
        {"T", p.block_size},
        {"m_sc", p.coupling_memory},
        {"L", p.frame_blocks},
        {"interleaver_seed", p.interleaver_seed},
        {"identity_interleaver", p.identity_interleaver},
        {"w", p.window_size},
        {"I_V", p.vertical_iterations},
        {"I_H", p.horizontal_iterations},
        {"boxplus", p.boxplus_mode == BoxplusMode::Exact ? "exact" : "approx"},
        {"extrinsic_scale", p.extrinsic_scale},
        {"llr_cap", p.llr_cap},
        {"termination",
         p.termination == TerminationMode::TerminateBlocks ? "terminate-blocks" : "unterminated"},
    };
}

inline void from_json(const nlohmann::json& j, ScPccParams& p) {
    p.code = code_from_json(j.at("code"));
    p.block_size = j.at("T").get<int>();
    p.coupling_memory = j.at("m_sc").get<int>();
    p.frame_blocks = j.at("L").get<int>();
    p.interleaver_seed = j.value("interleaver_seed", std::uint64_t{0});
    p.identity_interleaver = j.value("identity_interleaver", false);
    p.window_size = j.at("w").get<int>();
    p.vertical_iterations = j.value("I_V", 1);
    p.horizontal_iterations = j.value("I_H", 1);
    const std::string mode = j.value("boxplus", "approx");
    if (mode != "exact" && mode != "approx")
        throw std::invalid_argument("params: boxplus must be 'exact' or 'approx'");
    p.boxplus_mode = mode == "exact" ? BoxplusMode::Exact : BoxplusMode::Approx;
    p.extrinsic_scale = j.value("extrinsic_scale", 1.0);
    p.llr_cap = j.value("llr_cap", kDefaultLlrCap);
    const std::string term = j.value("termination", "terminate-blocks");
    if (term != "terminate-blocks" && term != "unterminated")
        throw std::invalid_argument("params: termination must be 'terminate-blocks' or 'unterminated'");
    p.termination = term == "terminate-blocks" ? TerminationMode::TerminateBlocks
                                               : TerminationMode::Unterminated;
}

/// Stable content hash of the resolved parameters (canonical JSON bytes).
inline std::uint64_t params_hash(const ScPccParams& params) {
    nlohmann::json j = params;
    return fnv1a64(j.dump());
}

}  // namespace scpcc
