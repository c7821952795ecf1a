// Convolutional self-orthogonal codes: definition, validation, systematic
// encoding, syndrome formation, orthogonal check sets, and code search.
//
// A (k+1, k, m) systematic feedforward code is described by k generator tap
// sets; generator i has taps at the nonzero positions of g_i = (g_{i,0}, ...,
// g_{i,m}).  Self-orthogonality holds iff all positive pairwise differences
// of tap positions are distinct within each generator and disjoint across
// generators; the J syndromes checking an error symbol then share no other
// symbol, which is what makes one-shot threshold decisions work.

#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "scpcc/seeding.hpp"

namespace scpcc {

using Bits = std::vector<std::uint8_t>;
using BitStreams = std::vector<Bits>;

struct CsocCode {
    int k = 0;                             ///< information streams
    int m = 0;                             ///< code memory (largest tap)
    std::vector<std::vector<int>> generators;  ///< k sorted tap sets in [0, m]

    int check_count() const { return generators.empty() ? 0 : static_cast<int>(generators[0].size()); }
    int termination_length() const { return k * (m + 1); }  ///< nu = k(m+1)
};

/// Throws std::invalid_argument on malformed structure (unsorted taps,
/// duplicates, out-of-range, non-uniform J, m not attained).  Structural
/// failures are deliberately distinct from "not self-orthogonal".
inline void check_structure(const CsocCode& code) {
    if (code.k < 1) throw std::invalid_argument("csoc: k must be >= 1");
    if (code.m < 0) throw std::invalid_argument("csoc: m must be >= 0");
    if (static_cast<int>(code.generators.size()) != code.k)
        throw std::invalid_argument("csoc: expected k generator tap sets");
    int max_tap = -1;
    std::size_t j = 0;
    for (const auto& taps : code.generators) {
        if (taps.empty()) throw std::invalid_argument("csoc: empty tap set");
        if (j == 0) j = taps.size();
        if (taps.size() != j) throw std::invalid_argument("csoc: tap sets must share a uniform J");
        for (std::size_t i = 0; i < taps.size(); ++i) {
            if (taps[i] < 0 || taps[i] > code.m)
                throw std::invalid_argument("csoc: tap out of range [0, m]");
            if (i > 0 && taps[i] <= taps[i - 1])
                throw std::invalid_argument("csoc: taps must be strictly increasing");
        }
        max_tap = std::max(max_tap, taps.back());
    }
    if (max_tap != code.m)
        throw std::invalid_argument("csoc: no generator attains a tap at m (m is not tight)");
}

struct ValidityReport {
    bool valid = false;
    /// First repeated positive tap difference found, if any: generator/tap
    /// pairs (hi, lo) on both sides of the collision.
    struct Violation {
        int difference = 0;
        int gen_a = 0, tap_a_hi = 0, tap_a_lo = 0;
        int gen_b = 0, tap_b_hi = 0, tap_b_lo = 0;
    };
    std::optional<Violation> violation;
    std::string detail;
};

/// Difference-set self-orthogonality test.  Scans generators in order and
/// reports the first colliding pair of tap differences.
inline ValidityReport validate_self_orthogonality(const CsocCode& code) {
    check_structure(code);
    struct Owner {
        int gen, hi, lo;
    };
    std::vector<std::optional<Owner>> seen(static_cast<std::size_t>(code.m) + 1);
    ValidityReport report;
    for (int g = 0; g < code.k; ++g) {
        const auto& taps = code.generators[g];
        for (std::size_t b = 1; b < taps.size(); ++b) {
            for (std::size_t a = 0; a < b; ++a) {
                const int diff = taps[b] - taps[a];
                if (seen[diff]) {
                    const Owner& o = *seen[diff];
                    report.valid = false;
                    report.violation = ValidityReport::Violation{diff, o.gen, o.hi, o.lo,
                                                                 g, taps[b], taps[a]};
                    std::ostringstream msg;
                    msg << "difference " << diff << " repeats: g" << o.gen << "(" << o.hi
                        << "-" << o.lo << ") and g" << g << "(" << taps[b] << "-" << taps[a] << ")";
                    report.detail = msg.str();
                    return report;
                }
                seen[diff] = Owner{g, taps[b], taps[a]};
            }
        }
    }
    report.valid = true;
    report.detail = "self-orthogonal";
    return report;
}

/// Systematic parity of k equal-length input streams; inputs before time 0
/// are taken as zero, so a terminated block must carry its flush zeros
/// explicitly.
inline Bits encode_block(const CsocCode& code, const BitStreams& info) {
    check_structure(code);
    if (static_cast<int>(info.size()) != code.k)
        throw std::invalid_argument("encode_block: expected k streams");
    const std::size_t n = info.empty() ? 0 : info[0].size();
    for (const auto& s : info)
        if (s.size() != n) throw std::invalid_argument("encode_block: stream length mismatch");
    Bits parity(n, 0);
    for (int i = 0; i < code.k; ++i) {
        const auto& stream = info[i];
        for (int tap : code.generators[i]) {
            for (std::size_t l = static_cast<std::size_t>(tap); l < n; ++l)
                parity[l] ^= stream[l - tap];
        }
    }
    return parity;
}

/// Syndromes from hard decisions: re-encode the information symbols and add
/// the received parity.  A pure function of the channel error pattern.
inline Bits form_syndromes(const CsocCode& code, const BitStreams& hard_info,
                           const Bits& hard_parity) {
    Bits syndromes = encode_block(code, hard_info);
    if (syndromes.size() != hard_parity.size())
        throw std::invalid_argument("form_syndromes: parity length mismatch");
    for (std::size_t l = 0; l < syndromes.size(); ++l) syndromes[l] ^= hard_parity[l];
    return syndromes;
}

/// One orthogonal check: the syndrome at relative time `syndrome_offset`
/// and every other error symbol it involves at non-negative relative time.
/// Stream index k denotes the parity stream.
struct Check {
    int syndrome_offset = 0;
    struct Participant {
        int stream = 0;
        int offset = 0;
    };
    std::vector<Participant> participants;
};

struct CheckSet {
    int k = 0;
    int check_count = 0;
    std::vector<std::vector<Check>> per_stream;  ///< k entries of J checks each
};

/// Expands the J orthogonal checks on each information error symbol.  The
/// decoding horizon is one constraint length: participants at negative
/// relative offsets lie behind the current symbol and are handled by
/// syndrome feedback, not by reliability weighting.
inline CheckSet build_check_sets(const CsocCode& code) {
    const ValidityReport report = validate_self_orthogonality(code);
    if (!report.valid)
        throw std::invalid_argument("build_check_sets: code is not self-orthogonal (" +
                                    report.detail + ")");
    CheckSet set;
    set.k = code.k;
    set.check_count = code.check_count();
    set.per_stream.resize(code.k);
    for (int i = 0; i < code.k; ++i) {
        for (int d : code.generators[i]) {
            Check check;
            check.syndrome_offset = d;
            for (int alpha = 0; alpha < code.k; ++alpha) {
                for (int b : code.generators[alpha]) {
                    const int offset = d - b;
                    if (offset < 0) continue;
                    if (alpha == i && offset == 0) continue;  // the symbol under decision
                    check.participants.push_back({alpha, offset});
                }
            }
            check.participants.push_back({code.k, d});  // parity error symbol
            set.per_stream[i].push_back(std::move(check));
        }
    }
    return set;
}

/// Greedy/backtracking difference-set search for a uniform-J CSOC with
/// m <= max_m.  Deterministic given the seed: attempt 0 is a plain
/// smallest-feasible-tap descent with backtracking; later attempts randomly
/// thin the candidate order to escape dead regions.  Returns std::nullopt
/// when the budget is exhausted.
inline std::optional<CsocCode> search_csoc(int k, int j_checks, int max_m,
                                           std::uint64_t seed = 0) {
    if (k < 1 || j_checks < 1 || max_m < 0) return std::nullopt;

    struct Dfs {
        int k, j_checks, max_m;
        std::vector<std::vector<int>> gens;
        std::vector<char> used;  // difference -> taken
        long long budget = 0;
        std::mt19937_64 rng;
        double skip_prob = 0.0;

        bool feasible(const std::vector<int>& taps, int c) const {
            for (int t : taps)
                if (used[c - t]) return false;
            return true;
        }
        void mark(const std::vector<int>& taps, int c, char v) {
            for (int t : taps) used[c - t] = v;
        }
        bool extend(int gen) {
            if (gen == k) return true;
            auto& taps = gens[gen];
            if (taps.empty()) taps.push_back(0);  // anchor; differences are shift-invariant
            if (static_cast<int>(taps.size()) == j_checks) return extend(gen + 1);
            for (int c = taps.back() + 1; c <= max_m; ++c) {
                if (--budget < 0) return false;
                if (!feasible(taps, c)) continue;
                if (skip_prob > 0.0 &&
                    std::uniform_real_distribution<double>(0.0, 1.0)(rng) < skip_prob)
                    continue;
                mark(taps, c, 1);
                taps.push_back(c);
                if (extend(gen)) return true;
                taps.pop_back();
                mark(taps, c, 0);
                if (budget < 0) return false;
            }
            if (static_cast<int>(taps.size()) == 1) taps.clear();
            return false;
        }
    };

    constexpr int kAttempts = 48;
    constexpr long long kBudget = 400'000;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        Dfs dfs{k, j_checks, max_m, {}, {}, kBudget,
                std::mt19937_64(mix_seed(seed, 0x5eacc0deULL, attempt)),
                attempt == 0 ? 0.0 : 0.25};
        dfs.gens.resize(k);
        dfs.used.assign(static_cast<std::size_t>(max_m) + 1, 0);
        if (!dfs.extend(0)) continue;
        CsocCode code;
        code.k = k;
        code.generators = dfs.gens;
        code.m = 0;
        for (const auto& taps : code.generators) code.m = std::max(code.m, taps.back());
        check_structure(code);
        return code;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Code description files: JSON with either tap arrays or bit-strings
// ("1001100000001", leftmost digit = g_{i,0}).

inline std::vector<int> parse_generator_bitstring(const std::string& bits, int m) {
    std::vector<int> taps;
    if (bits.empty() || static_cast<int>(bits.size()) > m + 1)
        throw std::invalid_argument("csoc: generator bit-string length must be in [1, m+1]");
    for (std::size_t pos = 0; pos < bits.size(); ++pos) {
        if (bits[pos] == '1')
            taps.push_back(static_cast<int>(pos));
        else if (bits[pos] != '0')
            throw std::invalid_argument("csoc: generator bit-string must contain only 0/1");
    }
    return taps;
}

inline CsocCode code_from_json(const nlohmann::json& j) {
    CsocCode code;
    code.k = j.at("k").get<int>();
    code.m = j.at("m").get<int>();
    for (const auto& gen : j.at("generators")) {
        if (gen.is_string())
            code.generators.push_back(parse_generator_bitstring(gen.get<std::string>(), code.m));
        else
            code.generators.push_back(gen.get<std::vector<int>>());
    }
    check_structure(code);
    if (j.contains("J") && j.at("J").get<int>() != code.check_count())
        throw std::invalid_argument("csoc: declared J does not match generator tap counts");
    return code;
}

inline nlohmann::json code_to_json(const CsocCode& code) {
    return nlohmann::json{
        {"k", code.k}, {"m", code.m}, {"J", code.check_count()}, {"generators", code.generators}};
}

inline CsocCode load_code_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open code file: " + path);
    nlohmann::json j;
    in >> j;
    return code_from_json(j);
}

inline void save_code_file(const CsocCode& code, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write code file: " + path);
    out << code_to_json(code).dump(2) << "\n";
}

}  // namespace scpcc
