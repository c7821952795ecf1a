// Monte Carlo BER/FER sweeps with reproducible seeding, early stopping,
// persistence, and resume.
//
// Every frame is identified by (master seed, SNR index, frame index) and is
// simulated from its own generator, so results are bit-identical regardless
// of execution order or thread count.  Frames run in fixed-size batches and
// stopping conditions are evaluated only at batch boundaries, which keeps
// the frame count itself deterministic under parallelism.

#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "scpcc/channel.hpp"
#include "scpcc/codec.hpp"
#include "scpcc/seeding.hpp"
#include "scpcc/window.hpp"

namespace scpcc {

struct SimConfig {
    ScPccParams params;
    std::vector<double> ebno_db;
    long max_frames = 100000;
    long min_bit_errors = 100;
    long min_frames = 1;
    std::uint64_t master_seed = 1;
    std::string output_path;
    int threads = 1;
    bool record_timing = false;  ///< off by default so result files are byte-reproducible

    void validate() const {
        params.validate();
        if (ebno_db.empty()) throw std::invalid_argument("sim: SNR list must be non-empty");
        if (max_frames < 1 || min_bit_errors < 1 || min_frames < 1)
            throw std::invalid_argument("sim: limits must be positive");
        if (threads < 1) throw std::invalid_argument("sim: threads must be >= 1");
    }
};

/// Accumulated counts for one SNR point.
struct BerStats {
    double ebno_db = 0.0;
    long frames = 0;
    long long bits = 0;
    long long bit_errors = 0;
    long frame_errors = 0;
    std::uint64_t seed = 0;
    double elapsed_s = 0.0;

    double ber() const { return bits ? static_cast<double>(bit_errors) / bits : 0.0; }
    double fer() const { return frames ? static_cast<double>(frame_errors) / frames : 0.0; }
};

/// Content hash identifying the random process: codec parameters, SNR grid,
/// and master seed.  Stopping limits, thread count, and output paths are
/// excluded so a run may be extended (resumed) with larger limits.
inline std::uint64_t config_hash(const SimConfig& config) {
    nlohmann::json j;
    j["params"] = config.params;
    j["ebno_db"] = config.ebno_db;
    j["seed"] = config.master_seed;
    return fnv1a64(j.dump());
}

inline void to_json(nlohmann::json& j, const SimConfig& c) {
    j = nlohmann::json{{"params", c.params},
                       {"ebno_db", c.ebno_db},
                       {"max_frames", c.max_frames},
                       {"min_bit_errors", c.min_bit_errors},
                       {"min_frames", c.min_frames},
                       {"seed", c.master_seed},
                       {"threads", c.threads}};
}

inline void from_json(const nlohmann::json& j, SimConfig& c) {
    c.params = j.at("params").get<ScPccParams>();
    c.ebno_db = j.at("ebno_db").get<std::vector<double>>();
    c.max_frames = j.value("max_frames", 100000L);
    c.min_bit_errors = j.value("min_bit_errors", 100L);
    c.min_frames = j.value("min_frames", 1L);
    c.master_seed = j.value("seed", std::uint64_t{1});
    c.threads = j.value("threads", 1);
}

namespace detail {

inline Bits random_source_bits(std::size_t count, std::mt19937_64& rng) {
    Bits bits(count);
    std::uint64_t word = 0;
    int avail = 0;
    for (auto& b : bits) {
        if (avail == 0) {
            word = rng();
            avail = 64;
        }
        b = static_cast<std::uint8_t>(word & 1u);
        word >>= 1;
        --avail;
    }
    return bits;
}

}  // namespace detail

/// Simulates one frame end to end; returns (bit errors, frame error).
/// The transmit order is fixed: all systematic bits in source order, then
/// parity 1 and parity 2 per coupled time.
inline std::pair<long long, bool> simulate_frame(const ScPccParams& params,
                                                 const CouplingMap& map,
                                                 WindowDecoder& decoder, const SnrPoint& snr,
                                                 std::uint64_t frame_seed) {
    std::mt19937_64 rng(frame_seed);
    const Bits source = detail::random_source_bits(params.source_bits(), rng);
    const CodedFrame coded = encode_frame(params, source, map);

    std::normal_distribution<double> noise(0.0, snr.noise_sigma());
    const double scale = snr.llr_scale();
    ReceivedFrame received;
    received.systematic.resize(source.size());
    for (std::size_t i = 0; i < source.size(); ++i)
        received.systematic[i] = scale * (bpsk(source[i]) + noise(rng));
    received.parity1.resize(coded.parity1.size());
    received.parity2.resize(coded.parity2.size());
    for (std::size_t tau = 0; tau < coded.parity1.size(); ++tau) {
        auto soften = [&](const Bits& bits, std::vector<double>& out) {
            out.resize(bits.size());
            for (std::size_t i = 0; i < bits.size(); ++i)
                out[i] = scale * (bpsk(bits[i]) + noise(rng));
        };
        soften(coded.parity1[tau], received.parity1[tau]);
        soften(coded.parity2[tau], received.parity2[tau]);
    }

    const Bits decisions = decoder.decode(received);
    long long errors = 0;
    for (std::size_t i = 0; i < source.size(); ++i) errors += decisions[i] != source[i];
    return {errors, errors != 0};
}

/// CSV persistence: header `ebno_db,frames,bits,bit_errors,frame_errors,
/// ber,fer,seed,elapsed_s`, one row per SNR point.
inline void write_results_csv(const std::vector<BerStats>& stats, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write results file: " + path);
    out << "ebno_db,frames,bits,bit_errors,frame_errors,ber,fer,seed,elapsed_s\n";
    char line[256];
    for (const auto& s : stats) {
        std::snprintf(line, sizeof(line), "%.6g,%ld,%lld,%lld,%ld,%.6e,%.6e,%llu,%.3f\n",
                      s.ebno_db, s.frames, s.bits, s.bit_errors, s.frame_errors, s.ber(),
                      s.fer(), static_cast<unsigned long long>(s.seed), s.elapsed_s);
        out << line;
    }
}

inline std::vector<BerStats> read_results_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open results file: " + path);
    std::string header;
    std::getline(in, header);
    std::vector<BerStats> stats;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        BerStats s;
        double ber, fer;
        unsigned long long seed;
        if (std::sscanf(line.c_str(), "%lg,%ld,%lld,%lld,%ld,%lg,%lg,%llu,%lg", &s.ebno_db,
                        &s.frames, &s.bits, &s.bit_errors, &s.frame_errors, &ber, &fer, &seed,
                        &s.elapsed_s) != 9)
            throw std::runtime_error("malformed results row: " + line);
        s.seed = seed;
        stats.push_back(s);
    }
    return stats;
}

/// Writes the resolved configuration next to the results with its content
/// hash; the echo is itself a loadable config file.
inline void write_config_echo(const SimConfig& config, const std::string& csv_path) {
    nlohmann::json j = config;
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(config_hash(config)));
    j["config_hash"] = hash;
    std::ofstream out(csv_path + ".config.json");
    if (!out) throw std::runtime_error("cannot write config echo for: " + csv_path);
    out << j.dump(2) << "\n";
}

using ProgressFn = void (*)(const BerStats&);

/// Runs the sweep, optionally on top of previously accumulated stats (the
/// resume path).  Early stopping per SNR point: at least min_frames, then
/// stop at min_bit_errors or max_frames, evaluated at batch boundaries.
inline std::vector<BerStats> run_sweep(const SimConfig& config,
                                       std::vector<BerStats> existing = {},
                                       ProgressFn progress = nullptr) {
    config.validate();
    if (!existing.empty() && existing.size() != config.ebno_db.size())
        throw std::invalid_argument("sweep: existing results do not match the SNR grid");

    const double rate = code_rate(config.params, RateConvention::Transmitted);
    CouplingMap map(config.params.block_size, config.params.coupling_memory,
                    config.params.frame_blocks, config.params.make_interleaver());

    std::vector<BerStats> results(config.ebno_db.size());
    for (std::size_t si = 0; si < config.ebno_db.size(); ++si) {
        if (!existing.empty()) results[si] = existing[si];
        results[si].ebno_db = config.ebno_db[si];
        results[si].seed = config.master_seed;
    }

    for (std::size_t si = 0; si < config.ebno_db.size(); ++si) {
        BerStats& point = results[si];
        const SnrPoint snr{config.ebno_db[si], rate};
        const double elapsed_base = point.elapsed_s;
        const auto t0 = std::chrono::steady_clock::now();
        constexpr long kBatch = 32;

        while (true) {
            const bool have_floor = point.frames >= config.min_frames;
            if (point.frames >= config.max_frames) break;
            if (have_floor && point.bit_errors >= config.min_bit_errors) break;
            const long batch =
                std::min<long>(kBatch, config.max_frames - point.frames);

            std::mutex merge_mutex;
            std::atomic<long> next{0};
            auto worker = [&]() {
                WindowDecoder decoder(config.params);
                long long errors = 0;
                long frame_errors = 0;
                long done = 0;
                for (long b = next.fetch_add(1); b < batch; b = next.fetch_add(1)) {
                    const long frame_index = point.frames + b;
                    const std::uint64_t frame_seed =
                        mix_seed(config.master_seed, si, static_cast<std::uint64_t>(frame_index));
                    auto [bit_errors, frame_error] =
                        simulate_frame(config.params, map, decoder, snr, frame_seed);
                    errors += bit_errors;
                    frame_errors += frame_error;
                    ++done;
                }
                std::lock_guard<std::mutex> lock(merge_mutex);
                point.bit_errors += errors;
                point.frame_errors += frame_errors;
                point.frames += done;
                point.bits += static_cast<long long>(done) * config.params.source_bits();
            };

            if (config.threads <= 1) {
                worker();
            } else {
                std::vector<std::thread> pool;
                for (int t = 0; t < config.threads; ++t) pool.emplace_back(worker);
                for (auto& t : pool) t.join();
            }

            if (config.record_timing) {
                point.elapsed_s = elapsed_base +
                                  std::chrono::duration<double>(
                                      std::chrono::steady_clock::now() - t0)
                                      .count();
            }
            if (!config.output_path.empty()) {
                write_results_csv(results, config.output_path);
                write_config_echo(config, config.output_path);
            }
        }
        if (progress) progress(point);
    }
    return results;
}

/// Resume: merges new frames on top of existing results recorded under the
/// same config hash.  The stored hash must match; altered codec parameters,
/// SNR grids, or seeds are refused.
inline std::vector<BerStats> resume(const SimConfig& config, const std::string& csv_path,
                                    ProgressFn progress = nullptr) {
    std::ifstream echo_in(csv_path + ".config.json");
    if (!echo_in) throw std::runtime_error("resume: missing config echo for " + csv_path);
    nlohmann::json echo;
    echo_in >> echo;
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(config_hash(config)));
    if (echo.value("config_hash", "") != hash)
        throw std::runtime_error("resume: config hash mismatch; refusing to merge");
    std::vector<BerStats> existing = read_results_csv(csv_path);
    return run_sweep(config, std::move(existing), progress);
}

/// Uncoded BPSK reference measurement; BER should match Q(sqrt(2 Eb/N0)).
inline BerStats measure_uncoded_ber(double ebno_db, long long bit_count, std::uint64_t seed) {
    const SnrPoint snr{ebno_db, 1.0};
    std::mt19937_64 rng(mix_seed(seed, 0xbb5cULL));
    std::normal_distribution<double> noise(0.0, snr.noise_sigma());
    BerStats stats;
    stats.ebno_db = ebno_db;
    stats.seed = seed;
    stats.bits = bit_count;
    stats.frames = 1;
    for (long long i = 0; i < bit_count; ++i) {
        const std::uint8_t bit = static_cast<std::uint8_t>(rng() & 1u);
        const double y = bpsk(bit) + noise(rng);
        const std::uint8_t decided = y < 0.0 ? 1 : 0;
        stats.bit_errors += decided != bit;
    }
    stats.frame_errors = stats.bit_errors ? 1 : 0;
    return stats;
}

}  // namespace scpcc
