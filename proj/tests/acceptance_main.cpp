// Acceptance suite: one pass/fail line per criterion.
//
// Each criterion is self-contained and pinned to its stated tolerance; the
// simulation-based ones use fixed master seeds, so their outcomes are
// reproducible bit for bit.  Exit code is the number of failed criteria.
// --extended additionally runs the deep coupling-gain check (hours).

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "scpcc/scpcc.hpp"

using namespace scpcc;

namespace {

int worker_threads() {
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::clamp(hw, 1u, 8u));
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --- criterion 1 -----------------------------------------------------------

Outcome self_orthogonality_and_mutations() {
    const auto t0 = std::chrono::steady_clock::now();
    const CsocCode code = rate_half_component_code();
    if (!validate_self_orthogonality(code).valid)
        return {false, "the shipped (3,2,13) code failed validation"};

    // independent repeated-difference detector
    auto has_repeat = [](const CsocCode& c) {
        std::multiset<int> diffs;
        for (const auto& taps : c.generators)
            for (std::size_t b = 1; b < taps.size(); ++b)
                for (std::size_t a = 0; a < b; ++a) diffs.insert(taps[b] - taps[a]);
        for (int d : diffs)
            if (diffs.count(d) > 1) return true;
        return false;
    };

    std::mt19937_64 rng(2024);
    int rejected = 0, tried = 0;
    while (rejected < 50 && tried < 100000) {
        ++tried;
        CsocCode mutated = code;
        auto& taps = mutated.generators[rng() % 2];
        const std::size_t index = rng() % taps.size();
        const int new_tap = static_cast<int>(rng() % 14);
        if (std::find(taps.begin(), taps.end(), new_tap) != taps.end()) continue;
        taps[index] = new_tap;
        std::sort(taps.begin(), taps.end());
        mutated.m = std::max(mutated.generators[0].back(), mutated.generators[1].back());
        if (!has_repeat(mutated)) continue;  // mutation happened to stay orthogonal
        if (validate_self_orthogonality(mutated).valid)
            return {false, "validator accepted a mutation with a repeated difference"};
        ++rejected;
    }
    const double elapsed = seconds_since(t0);
    if (rejected < 50) return {false, "could not generate 50 repeated-difference mutations"};
    if (elapsed >= 1.0) return {false, "exceeded the 1 s budget"};
    std::ostringstream ss;
    ss << "50 mutations rejected in " << elapsed << " s";
    return {true, ss.str()};
}

// --- criterion 2 -----------------------------------------------------------

Outcome guaranteed_correction() {
    const auto t0 = std::chrono::steady_clock::now();
    const CsocCode code = rate_half_component_code();
    const std::size_t n = code.m + 1;

    // positions involved in the orthogonal set on e_0^{(0)}: stream/parity
    // symbols of the J checks, plus the target symbol itself
    std::vector<std::pair<int, int>> positions = {{0, 0}};
    for (int d : code.generators[0]) {
        for (int alpha = 0; alpha < code.k; ++alpha)
            for (int b : code.generators[alpha]) {
                const int offset = d - b;
                if (offset < 0 || (alpha == 0 && offset == 0)) continue;
                if (std::find(positions.begin(), positions.end(),
                              std::make_pair(alpha, offset)) == positions.end())
                    positions.emplace_back(alpha, offset);
            }
        positions.emplace_back(code.k, d);
    }

    ThresholdDecoder decoder(code);
    const AprioriBlock apriori = AprioriBlock::zeros(code.k, n);
    long patterns = 0;
    auto run_pattern = [&](const std::vector<int>& chosen) {
        LlrBlock block;
        block.streams = code.k;
        block.length = n;
        block.info.assign(code.k * n, 1.0);  // equal reliabilities
        block.parity.assign(n, 1.0);
        bool target_in_error = false;
        for (int index : chosen) {
            const auto [stream, time] = positions[index];
            if (stream == code.k)
                block.parity[time] = -1.0;
            else
                block.info[stream * n + time] = -1.0;
            if (stream == 0 && time == 0) target_in_error = true;
        }
        const DecodeOutput out = decoder.decode(block, apriori, BoxplusMode::Approx);
        ++patterns;
        return out.error_flags[0] == static_cast<std::uint8_t>(target_in_error);
    };

    const int p = static_cast<int>(positions.size());
    if (!run_pattern({})) return {false, "weight-0 pattern misdecoded"};
    for (int a = 0; a < p; ++a) {
        if (!run_pattern({a})) return {false, "a weight-1 pattern misdecoded e_0^(0)"};
        for (int b = a + 1; b < p; ++b)
            if (!run_pattern({a, b})) return {false, "a weight-2 pattern misdecoded e_0^(0)"};
    }
    const double elapsed = seconds_since(t0);
    if (elapsed >= 10.0) return {false, "exceeded the 10 s budget"};
    std::ostringstream ss;
    ss << patterns << " patterns over " << p << " symbols decode correctly in " << elapsed
       << " s";
    return {true, ss.str()};
}

// --- criterion 3 -----------------------------------------------------------

Outcome extrinsic_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    const CsocCode code = rate_half_component_code();
    const std::size_t n = code.m + 1;
    std::mt19937_64 rng(7);
    std::normal_distribution<double> noise(0.0, 1.0);
    ThresholdDecoder decoder(code);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        LlrBlock block;
        block.streams = code.k;
        block.length = n;
        block.info.resize(code.k * n);
        block.parity.resize(n);
        for (auto& v : block.info) v = 4.0 * (1.0 + noise(rng));
        for (auto& v : block.parity) v = 4.0 * (1.0 + noise(rng));
        AprioriBlock apriori = AprioriBlock::zeros(code.k, n);
        for (auto& v : apriori.values) v = 0.7 * noise(rng);

        const DecodeOutput out = decoder.decode(block, apriori, BoxplusMode::Exact);
        const auto expected = oracle::enumerate_decode(code, block, apriori);
        for (std::size_t i = 0; i < out.extrinsic.size(); ++i)
            worst = std::max(worst, std::abs(out.extrinsic[i] - expected.extrinsic[i]));
        if (out.error_flags != expected.error_flags)
            return {false, "decision mismatch against the enumeration oracle"};
    }
    const double elapsed = seconds_since(t0);
    if (worst > 1e-9) {
        std::ostringstream ss;
        ss << "max extrinsic deviation " << worst << " exceeds 1e-9";
        return {false, ss.str()};
    }
    if (elapsed >= 60.0) return {false, "exceeded the 1 min budget"};
    std::ostringstream ss;
    ss << "100 draws, max deviation " << worst;
    return {true, ss.str()};
}

// --- criterion 4 -----------------------------------------------------------

Outcome schedule_accounting() {
    ScPccParams p;
    p.code = rate_half_component_code();
    p.block_size = 24;
    p.coupling_memory = 1;
    p.frame_blocks = 4;
    p.interleaver_seed = 3;
    p.window_size = 3;
    p.vertical_iterations = 1;
    p.horizontal_iterations = 4;
    std::mt19937_64 rng(4);
    const Bits source = oracle::random_bits(p.source_bits(), rng);
    const CodedFrame frame = encode_frame(p, source);
    const auto rx = oracle::noiseless_received(p, source, frame);
    const auto [decisions, report] = decode_frame(p, rx);
    for (long long v : report.verticals_per_position)
        if (v != 24) return {false, "a window position deviated from I_w = 24"};
    if (report.vertical_iterations != 24LL * p.coupled_blocks())
        return {false, "frame total deviated from (L+m_sc) * 24"};
    std::ostringstream ss;
    ss << "2wI_VI_H = 24 vertical iterations at each of " << report.window_positions
       << " window positions";
    return {true, ss.str()};
}

// --- criterion 5 -----------------------------------------------------------

Outcome rate_accounting() {
    const double high =
        code_rate(8, 136, 1000, TerminationMode::TerminateBlocks, RateConvention::Transmitted);
    const double half =
        code_rate(2, 13, 1200, TerminationMode::TerminateBlocks, RateConvention::Formula);
    std::ostringstream ss;
    ss << "k=8,m=136,T=1000 -> " << high << "; k=2,m=13,T=1200 -> " << half;
    if (std::abs(high - 0.656) > 0.001) return {false, ss.str() + " (0.656 missed)"};
    if (std::abs(half - 0.4942) > 0.0001) return {false, ss.str() + " (0.4942 missed)"};
    return {true, ss.str()};
}

// --- criteria 6 and 7 ------------------------------------------------------

BerStats measure_point(const ScPccParams& params, double ebno_db, long min_bit_errors,
                       long max_frames, std::uint64_t seed) {
    SimConfig config;
    config.params = params;
    config.ebno_db = {ebno_db};
    config.min_bit_errors = min_bit_errors;
    config.max_frames = max_frames;
    config.min_frames = 8;
    config.master_seed = seed;
    config.threads = worker_threads();
    return run_sweep(config).front();
}

/// Walks a 0.25 dB grid upward until the target BER is bracketed, then
/// log-interpolates the crossing.
std::optional<double> crossing_db(const ScPccParams& params, double target_ber,
                                  double db_start, double db_stop, long min_bit_errors,
                                  long max_frames, std::uint64_t seed, std::string& log) {
    double prev_db = 0.0, prev_ber = 0.0;
    bool have_prev = false;
    for (double db = db_start; db <= db_stop + 1e-9; db += 0.25) {
        const BerStats point = measure_point(params, db, min_bit_errors, max_frames, seed);
        const double ber = point.ber();
        {
            std::ostringstream ss;
            ss << " " << db << ":" << ber;
            log += ss.str();
        }
        if (ber < target_ber) {
            if (!have_prev || prev_ber <= target_ber) return std::nullopt;
            const double x = (std::log10(prev_ber) - std::log10(target_ber)) /
                             (std::log10(prev_ber) - std::log10(ber));
            return prev_db + 0.25 * x;
        }
        prev_db = db;
        prev_ber = ber;
        have_prev = true;
    }
    return std::nullopt;
}

Outcome coupling_gain(double target_ber, const std::string& sc_name,
                      const std::string& pcc_name, double expected_gap, double tolerance,
                      long min_bit_errors) {
    const auto presets = expand_preset("fig4");
    const ScPccParams* sc = nullptr;
    const ScPccParams* pcc = nullptr;
    for (const auto& entry : presets) {
        if (entry.name == sc_name) sc = &entry.params;
        if (entry.name == pcc_name) pcc = &entry.params;
    }
    if (!sc || !pcc) return {false, "preset lookup failed"};

    std::string log_sc, log_pcc;
    const auto sc_cross =
        crossing_db(*sc, target_ber, 2.0, 6.0, min_bit_errors, 4000, 1, log_sc);
    const auto pcc_cross =
        crossing_db(*pcc, target_ber, 2.0, 6.0, min_bit_errors, 20000, 1, log_pcc);
    if (!sc_cross) return {false, "SC-PCC curve never bracketed the target BER;" + log_sc};
    if (!pcc_cross) return {false, "PCC curve never bracketed the target BER;" + log_pcc};
    const double gap = *pcc_cross - *sc_cross;
    std::ostringstream ss;
    ss << pcc_name << " crosses at " << *pcc_cross << " dB, " << sc_name << " at " << *sc_cross
       << " dB: gap " << gap << " dB (want " << expected_gap << " +/- " << tolerance << ")";
    return {std::abs(gap - expected_gap) <= tolerance, ss.str()};
}

Outcome coupling_gain_fig4() {
    return coupling_gain(1e-3, "fig4-scpcc-t400", "fig4-pcc-t1200", 0.7, 0.25, 200);
}

Outcome window_size_ordering() {
    ScPccParams p;
    p.code = rate_half_component_code();
    p.block_size = 1000;
    p.coupling_memory = 1;
    p.frame_blocks = 16;
    p.interleaver_seed = 7;
    p.vertical_iterations = 1;
    p.horizontal_iterations = 4;
    p.extrinsic_scale = 0.75;
    const double ebno_db = 2.25;

    p.window_size = 2;
    const BerStats narrow = measure_point(p, ebno_db, 150, 3000, 5);
    p.window_size = 4;
    const BerStats wide = measure_point(p, ebno_db, 150, 3000, 5);
    std::ostringstream ss;
    ss << "at " << ebno_db << " dB: BER(w=2) = " << narrow.ber() << " (" << narrow.bit_errors
       << " errors), BER(w=4) = " << wide.ber() << " (" << wide.bit_errors << " errors)";
    if (narrow.bit_errors < 100 || wide.bit_errors < 100)
        return {false, ss.str() + " (insufficient errors)"};
    return {narrow.ber() > wide.ber(), ss.str()};
}

// --- criterion 8 -----------------------------------------------------------

Outcome noiseless_round_trips() {
    std::vector<PresetEntry> entries;
    for (const auto& e : expand_preset("fig4")) entries.push_back(e);
    for (const auto& e : expand_preset("fig5")) entries.push_back(e);
    const auto high_rate = search_csoc(8, 4, 500, 42);
    if (!high_rate) return {false, "no k=8, J=4 component code found for fig6"};
    for (const auto& e : expand_preset("fig6", &*high_rate)) entries.push_back(e);

    for (const auto& entry : entries) {
        const CouplingMap map(entry.params.block_size, entry.params.coupling_memory,
                              entry.params.frame_blocks, entry.params.make_interleaver());
        std::atomic<long> failures{0};
        std::atomic<int> next{0};
        auto worker = [&]() {
            WindowDecoder decoder(entry.params);
            for (int f = next.fetch_add(1); f < 100; f = next.fetch_add(1)) {
                std::mt19937_64 rng(mix_seed(0xacce97, fnv1a64(entry.name), f));
                const Bits source = oracle::random_bits(entry.params.source_bits(), rng);
                const CodedFrame frame = encode_frame(entry.params, source, map);
                const auto rx = oracle::noiseless_received(entry.params, source, frame);
                if (decoder.decode(rx) != source) failures.fetch_add(1);
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < worker_threads(); ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        if (failures.load() != 0) {
            std::ostringstream ss;
            ss << entry.name << ": " << failures.load() << "/100 frames failed";
            return {false, ss.str()};
        }
    }
    std::ostringstream ss;
    ss << entries.size() << " presets x 100 noiseless frames, zero bit errors";
    return {true, ss.str()};
}

// --- criterion 9 -----------------------------------------------------------

Outcome boxplus_properties() {
    const double inf = std::numeric_limits<double>::infinity();
    for (double a : {-9.0, -1.0, 0.5, 3.75, 200.0}) {
        if (boxplus_exact(a, inf) != a || boxplus_approx(a, inf) != a)
            return {false, "identity law failed"};
        if (boxplus_exact(a, 0.0) != 0.0 || boxplus_approx(a, 0.0) != 0.0)
            return {false, "annihilator law failed"};
    }
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> dist(-40.0, 40.0);
    constexpr double ln2 = 0.6931471805599453;
    double worst = 0.0;
    for (long i = 0; i < 1000000; ++i) {
        const double a = dist(rng), b = dist(rng);
        const double exact = boxplus_exact(a, b);
        const double approx = boxplus_approx(a, b);
        worst = std::max(worst, std::abs(exact - approx));
        if (worst > ln2 + 1e-12) return {false, "|exact - approx| exceeded ln 2"};
        if (exact != 0.0 && approx != 0.0 && std::signbit(exact) != std::signbit(approx))
            return {false, "sign mismatch between exact and approx"};
    }
    std::ostringstream ss;
    ss << "laws exact; 1e6 pairs sign-true, max |delta| = " << worst << " <= ln 2";
    return {true, ss.str()};
}

// --- criterion 10 ----------------------------------------------------------

Outcome analysis_formulas() {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        const int k = 1 + static_cast<int>(rng() % 3);
        const int j = 1 + static_cast<int>(rng() % 4);
        const auto code = search_csoc(k, j, 120, rng());
        if (!code) return {false, "search failed while generating parameter sets"};
        ScPccParams p;
        p.code = *code;
        p.coupling_memory = static_cast<int>(rng() % 4);
        p.block_size = static_cast<int>(1 + rng() % 50) * k * (p.coupling_memory + 1);
        p.frame_blocks = 1 + static_cast<int>(rng() % 5);
        p.window_size = p.coupling_memory + 1 + static_cast<int>(rng() % 4);
        p.vertical_iterations = 1 + static_cast<int>(rng() % 3);
        p.horizontal_iterations = 1 + static_cast<int>(rng() % 4);

        const long long t = p.block_size;
        const long long nu = static_cast<long long>(k) * (p.code.m + 1);
        const long long taps = static_cast<long long>(k) * j;
        const LatencyReport lat = latency(p);
        const MemoryReport mem = memory(p);
        const ComplexityReport comp = computation(p, ComplexityMode::Exact);
        const bool ok =
            lat.decode_latency_symbols == static_cast<long long>(p.window_size) * t &&
            lat.minimum_latency_symbols == (p.coupling_memory + 1) * t &&
            lat.recommended_window == 2 * (p.coupling_memory + 1) &&
            mem.encoder_elements == t * (p.coupling_memory + 1) + 2 * nu &&
            mem.decoder_elements == (p.coupling_memory == 0
                                         ? t + 8 * nu
                                         : t * (p.window_size + 1) + 8 * nu) &&
            comp.multiplications == static_cast<double>(t * (k + 1)) &&
            comp.additions == static_cast<double>(t * (k + 2 * taps + 1)) &&
            comp.boxplus_ops == static_cast<double>(t * taps) &&
            comp.total == static_cast<double>(t * (2 * k + 3 * taps + 2)) &&
            comp.window_factor ==
                2LL * p.window_size * p.vertical_iterations * p.horizontal_iterations &&
            comp.total_per_window_position ==
                comp.total * static_cast<double>(comp.window_factor);
        if (!ok) return {false, "a report deviated from the hand-evaluated expressions"};
    }
    return {true, "20 random parameter sets match exactly (integer arithmetic)"};
}

// --- criterion 11 ----------------------------------------------------------

Outcome simulate_determinism() {
#ifndef SCPCC_CLI_PATH
    return {false, "CLI path not configured"};
#else
    const std::string cli = SCPCC_CLI_PATH;
    const char* config = R"({
      "params": {"code": {"k":2,"m":13,"J":4,"generators":[[0,3,4,12],[0,2,7,13]]},
                 "T": 56, "m_sc": 1, "L": 3, "interleaver_seed": 21, "w": 2,
                 "I_V": 1, "I_H": 2},
      "ebno_db": [1.5, 3.0], "max_frames": 48, "min_bit_errors": 1000000,
      "min_frames": 1, "seed": 77
    })";
    std::ofstream("acceptance_det_config.json") << config;
    auto run_once = [&](const std::string& out, int threads) {
        std::remove(out.c_str());
        const std::string cmd = cli + " simulate --config acceptance_det_config.json --out " +
                                out + " --threads " + std::to_string(threads) +
                                " > /dev/null 2>&1";
        return std::system(cmd.c_str()) == 0;
    };
    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const bool ok = run_once("acceptance_det_1.csv", 1) &&
                    run_once("acceptance_det_8.csv", 8) &&
                    run_once("acceptance_det_1b.csv", 1);
    const std::string a = slurp("acceptance_det_1.csv");
    const std::string b = slurp("acceptance_det_8.csv");
    const std::string c = slurp("acceptance_det_1b.csv");
    for (const char* f : {"acceptance_det_config.json", "acceptance_det_1.csv",
                          "acceptance_det_8.csv", "acceptance_det_1b.csv",
                          "acceptance_det_1.csv.config.json", "acceptance_det_8.csv.config.json",
                          "acceptance_det_1b.csv.config.json"})
        std::remove(f);
    if (!ok) return {false, "a simulate run failed"};
    if (a.empty() || a != b || a != c)
        return {false, "CSV outputs differ across runs/thread counts"};
    return {true, "three runs (threads 1, 8, 1) byte-identical"};
#endif
}

// --- optional extended check ------------------------------------------------

Outcome coupling_gain_extended() {
    return coupling_gain(1e-4, "fig4-scpcc-t1000", "fig4-pcc-t3000", 0.8, 0.25, 200);
}

struct Criterion {
    int number;
    const char* name;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    bool extended = false;
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--extended") == 0) extended = true;
        else if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
        else {
            std::fprintf(stderr, "usage: %s [--criterion N] [--extended]\n", argv[0]);
            return 2;
        }
    }

    std::vector<Criterion> criteria = {
        {1, "self-orthogonality validation and mutation rejection", self_orthogonality_and_mutations},
        {2, "guaranteed correction of weight <= 2 error patterns", guaranteed_correction},
        {3, "extrinsic information against exhaustive enumeration", extrinsic_oracle},
        {4, "window schedule accounting (I_w = 2wI_VI_H = 24)", schedule_accounting},
        {5, "code rate accounting", rate_accounting},
        {6, "coupling gain at BER 1e-3 (scaled figure-4 pair)", coupling_gain_fig4},
        {7, "window-size ordering BER(w=2) > BER(w=4)", window_size_ordering},
        {8, "noiseless round-trip over all presets", noiseless_round_trips},
        {9, "box-plus laws and min-sum bound", boxplus_properties},
        {10, "analysis formulas on random parameter sets", analysis_formulas},
        {11, "byte-identical simulate runs across thread counts", simulate_determinism},
    };
    if (extended)
        criteria.push_back({12, "extended coupling gain at BER 1e-4 (T=1000/3000)",
                            coupling_gain_extended});

    int failures = 0;
    for (const auto& criterion : criteria) {
        if (only != 0 && criterion.number != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = criterion.run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] criterion %2d: %s (%s; %.1f s)\n", outcome.pass ? "PASS" : "FAIL",
                    criterion.number, criterion.name, outcome.detail.c_str(),
                    seconds_since(t0));
        std::fflush(stdout);
        failures += !outcome.pass;
    }
    if (failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criteria FAILED\n", failures);
    return failures;
}
