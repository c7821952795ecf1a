// Closed-form latency, memory, and computation calculators.
//
// The computation counts depend on the non-zero generator tap count.  The
// exact mode substitutes the true count N = kJ; the empirical mode evaluates
// the published estimate nu/(1.5 k (k-1)), which is undefined at k = 1 and
// directs callers to exact mode there.

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "scpcc/codec.hpp"

namespace scpcc {

enum class ComplexityMode { Exact, Empirical };

struct LatencyReport {
    long long decode_latency_symbols = 0;   ///< Delta_d = w T
    long long minimum_latency_symbols = 0;  ///< (m_sc + 1) T, structural floor
    int recommended_window = 0;             ///< w_d = 2 (m_sc + 1)
};

struct MemoryReport {
    long long encoder_elements = 0;
    long long decoder_elements = 0;
};

struct ComplexityReport {
    ComplexityMode mode = ComplexityMode::Exact;
    double nonzero_taps = 0.0;      ///< nu*gamma substitute: kJ (exact) or nu/(1.5k(k-1))
    double multiplications = 0.0;   ///< per T decoded bits, one component decoder
    double additions = 0.0;
    double boxplus_ops = 0.0;
    double total = 0.0;             ///< mul + add + boxplus
    long long window_factor = 0;    ///< I_w = 2 w I_V I_H
    double total_per_window_position = 0.0;
    int parallelism = 0;            ///< k decisions per time unit are independent

    nlohmann::json to_json() const {
        return nlohmann::json{
            {"mode", mode == ComplexityMode::Exact ? "exact" : "empirical"},
            {"nonzero_taps", nonzero_taps},
            {"multiplications", multiplications},
            {"additions", additions},
            {"boxplus", boxplus_ops},
            {"total", total},
            {"window_factor", window_factor},
            {"total_per_window_position", total_per_window_position},
            {"parallelism", parallelism}};
    }
};

inline LatencyReport latency(const ScPccParams& params) {
    LatencyReport r;
    r.decode_latency_symbols =
        static_cast<long long>(params.window_size) * params.block_size;
    r.minimum_latency_symbols =
        static_cast<long long>(params.coupling_memory + 1) * params.block_size;
    r.recommended_window = 2 * (params.coupling_memory + 1);
    return r;
}

/// Memory element counts.  m_sc = 0 is a PCC, which needs no coupling buffer
/// and no window: the PCC-specific decoder figure T + 8 nu is reported there
/// instead of the window formula evaluated at w = 1.
inline MemoryReport memory(const ScPccParams& params) {
    MemoryReport r;
    const long long t = params.block_size;
    const long long nu = params.code.termination_length();
    const bool pcc = params.coupling_memory == 0;
    r.encoder_elements = t * (params.coupling_memory + 1) + 2 * nu;
    r.decoder_elements = pcc ? t + 8 * nu : t * (params.window_size + 1) + 8 * nu;
    return r;
}

inline ComplexityReport computation(const ScPccParams& params,
                                    ComplexityMode mode = ComplexityMode::Exact) {
    const int k = params.code.k;
    const double t = params.block_size;
    ComplexityReport r;
    r.mode = mode;
    if (mode == ComplexityMode::Exact) {
        r.nonzero_taps = static_cast<double>(k) * params.code.check_count();
    } else {
        if (k == 1)
            throw std::domain_error(
                "computation: the empirical tap-count estimate divides by zero at k = 1; "
                "use exact mode");
        const double nu = params.code.termination_length();
        r.nonzero_taps = nu / (1.5 * k * (k - 1));
    }
    r.multiplications = t * (k + 1);
    r.additions = t * (k + 2.0 * r.nonzero_taps + 1);
    r.boxplus_ops = t * r.nonzero_taps;
    r.total = t * (2.0 * k + 3.0 * r.nonzero_taps + 2);
    r.window_factor = 2LL * params.window_size * params.vertical_iterations *
                      params.horizontal_iterations;
    r.total_per_window_position = r.total * static_cast<double>(r.window_factor);
    r.parallelism = k;
    return r;
}

}  // namespace scpcc
