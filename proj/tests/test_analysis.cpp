#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "scpcc/analysis.hpp"
#include "scpcc/presets.hpp"

using namespace scpcc;

namespace {

ScPccParams params_with(int block_size, int coupling_memory, int window) {
    ScPccParams p;
    p.code = rate_half_component_code();
    p.block_size = block_size;
    p.coupling_memory = coupling_memory;
    p.frame_blocks = 4;
    p.window_size = window;
    p.vertical_iterations = 1;
    p.horizontal_iterations = 4;
    return p;
}

}  // namespace

TEST_CASE("latency figures", "[analysis]") {
    // w = 3, T = 400 -> 1200 received symbols before decoding can start
    const LatencyReport a = latency(params_with(400, 1, 3));
    CHECK(a.decode_latency_symbols == 1200);
    CHECK(a.minimum_latency_symbols == 800);
    CHECK(a.recommended_window == 4);

    // m_sc = 1 at the recommended default w_d = 4 -> 4T
    const LatencyReport b = latency(params_with(400, 1, 4));
    CHECK(b.decode_latency_symbols == 4 * 400);

    // an uncoupled PCC needs only T
    const LatencyReport c = latency(params_with(400, 0, 1));
    CHECK(c.decode_latency_symbols == 400);
}

TEST_CASE("memory figures", "[analysis]") {
    // T = 1200, nu = 28, m_sc = 1 -> encoder T(m_sc+1) + 2 nu
    CHECK(memory(params_with(1200, 1, 3)).encoder_elements == 2456);
    // T = 1200, w = 3 -> decoder T(w+1) + 8 nu
    CHECK(memory(params_with(1200, 1, 3)).decoder_elements == 5024);
    // PCC mode reports the uncoupled figures, not the w = 1 formula
    CHECK(memory(params_with(1200, 0, 1)).encoder_elements == 1200 + 56);
    CHECK(memory(params_with(1200, 0, 1)).decoder_elements == 1200 + 224);
}

TEST_CASE("computation figures", "[analysis]") {
    const ScPccParams p = params_with(400, 1, 3);

    // empirical: nu gamma = 28 / (1.5 * 2 * 1) = 28/3, total ~ 34 T
    const ComplexityReport emp = computation(p, ComplexityMode::Empirical);
    CHECK_THAT(emp.nonzero_taps, Catch::Matchers::WithinRel(28.0 / 3.0, 1e-12));
    CHECK_THAT(emp.total, Catch::Matchers::WithinRel(34.0 * 400, 1e-12));

    // exact: N = kJ = 8, total = T(2k + 3*8 + 2) = 30 T
    const ComplexityReport exact = computation(p, ComplexityMode::Exact);
    CHECK(exact.nonzero_taps == 8.0);
    CHECK(exact.total == 30.0 * 400);
    CHECK(exact.multiplications == 3.0 * 400);
    CHECK(exact.additions == 400 * (2 + 16 + 1));
    CHECK(exact.boxplus_ops == 400 * 8);
    CHECK(exact.window_factor == 24);
    CHECK(exact.total_per_window_position == 24.0 * 30.0 * 400);
    CHECK(exact.parallelism == 2);

    // the empirical estimate divides by zero at k = 1
    ScPccParams single = p;
    single.code = *search_csoc(1, 3, 20, 0);
    single.block_size = 400;
    CHECK_THROWS_AS(computation(single, ComplexityMode::Empirical), std::domain_error);
    CHECK_NOTHROW(computation(single, ComplexityMode::Exact));
}

TEST_CASE("analysis formulas on random parameter sets", "[analysis]") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        const int k = 1 + static_cast<int>(rng() % 3);
        const int j = 1 + static_cast<int>(rng() % 4);
        const auto code = search_csoc(k, j, 120, rng());
        REQUIRE(code.has_value());
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
        const LatencyReport lat = latency(p);
        CHECK(lat.decode_latency_symbols == static_cast<long long>(p.window_size) * t);
        CHECK(lat.minimum_latency_symbols == (p.coupling_memory + 1) * t);

        const MemoryReport mem = memory(p);
        CHECK(mem.encoder_elements == t * (p.coupling_memory + 1) + 2 * nu);
        if (p.coupling_memory == 0)
            CHECK(mem.decoder_elements == t + 8 * nu);
        else
            CHECK(mem.decoder_elements == t * (p.window_size + 1) + 8 * nu);

        const ComplexityReport comp = computation(p, ComplexityMode::Exact);
        const long long taps = static_cast<long long>(k) * j;
        CHECK(comp.nonzero_taps == static_cast<double>(taps));
        CHECK(comp.multiplications == static_cast<double>(t * (k + 1)));
        CHECK(comp.additions == static_cast<double>(t * (k + 2 * taps + 1)));
        CHECK(comp.boxplus_ops == static_cast<double>(t * taps));
        CHECK(comp.total == static_cast<double>(t * (2 * k + 3 * taps + 2)));
        CHECK(comp.window_factor == 2LL * p.window_size * p.vertical_iterations *
                                        p.horizontal_iterations);
        CHECK(comp.total_per_window_position ==
              comp.total * static_cast<double>(comp.window_factor));

        // linear in T: doubling T doubles every count
        ScPccParams doubled = p;
        doubled.block_size = 2 * p.block_size;
        CHECK(computation(doubled, ComplexityMode::Exact).total == 2.0 * comp.total);
    }
}
