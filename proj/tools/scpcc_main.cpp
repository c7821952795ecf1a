// Command-line front end: code validation and search, frame encode/decode,
// Monte Carlo sweeps, and the latency/memory/computation reports.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scpcc/scpcc.hpp"

namespace {

using namespace scpcc;

ScPccParams load_params(const std::string& config_path, const std::string& code_path) {
    std::ifstream in(config_path);
    if (!in) throw std::runtime_error("cannot open config file: " + config_path);
    nlohmann::json j;
    in >> j;
    if (j.contains("params")) j = j.at("params");  // accept echoed sim configs
    if (!code_path.empty()) j["code"] = code_to_json(load_code_file(code_path));
    if (!j.contains("code"))
        throw std::runtime_error("config has no component code; pass --code <file>");
    return j.get<ScPccParams>();
}

std::vector<double> parse_ebno_list(const std::string& spec) {
    std::vector<double> out;
    const auto colon = spec.find(':');
    if (colon != std::string::npos) {
        double start, step, stop;
        if (std::sscanf(spec.c_str(), "%lg:%lg:%lg", &start, &step, &stop) != 3 || step <= 0)
            throw std::runtime_error("bad --ebno range, expected start:step:stop");
        for (double v = start; v <= stop + 1e-9; v += step) out.push_back(v);
        return out;
    }
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    return out;
}

int default_threads() {
    if (const char* env = std::getenv("SCPCC_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

void print_progress(const BerStats& point) {
    std::fprintf(stderr, "  %.2f dB: frames=%ld bits=%lld errors=%lld ber=%.3e fer=%.3e\n",
                 point.ebno_db, point.frames, point.bits, point.bit_errors, point.ber(),
                 point.fer());
}

std::string variant_output_path(const std::string& base, const std::string& name,
                                bool single) {
    if (single) return base;
    std::string stem = base;
    const std::string ext = ".csv";
    if (stem.size() >= ext.size() && stem.substr(stem.size() - ext.size()) == ext)
        stem = stem.substr(0, stem.size() - ext.size());
    return stem + "-" + name + ".csv";
}

int run_simulate(const std::string& config_path, const std::string& code_path,
                 const std::string& preset, const std::string& only,
                 const std::string& out_path, std::optional<std::uint64_t> seed,
                 int threads, const std::string& boxplus, double extrinsic_scale,
                 const std::string& ebno_spec, std::optional<long> max_frames,
                 std::optional<long> min_bit_errors, std::optional<long> min_frames,
                 bool do_resume, bool timing) {
    SimConfig base;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw std::runtime_error("cannot open config file: " + config_path);
        nlohmann::json j;
        in >> j;
        if (!code_path.empty()) j["params"]["code"] = code_to_json(load_code_file(code_path));
        base = j.get<SimConfig>();
    }
    if (!ebno_spec.empty()) base.ebno_db = parse_ebno_list(ebno_spec);
    if (seed) base.master_seed = *seed;
    if (max_frames) base.max_frames = *max_frames;
    if (min_bit_errors) base.min_bit_errors = *min_bit_errors;
    if (min_frames) base.min_frames = *min_frames;
    base.threads = threads;
    base.record_timing = timing;

    std::vector<PresetEntry> entries;
    if (!preset.empty()) {
        std::optional<CsocCode> code;
        if (!code_path.empty()) code = load_code_file(code_path);
        entries = expand_preset(preset, code ? &*code : nullptr);
        if (!only.empty()) {
            std::erase_if(entries, [&](const PresetEntry& e) { return e.name != only; });
            if (entries.empty())
                throw std::runtime_error("preset has no variant named '" + only + "'");
        }
    } else {
        if (config_path.empty())
            throw std::runtime_error("simulate needs --config or --preset");
        entries.push_back({"", base.params});
    }

    for (const auto& entry : entries) {
        SimConfig config = base;
        config.params = entry.params;
        if (!boxplus.empty())
            config.params.boxplus_mode =
                boxplus == "exact" ? BoxplusMode::Exact : BoxplusMode::Approx;
        if (extrinsic_scale > 0) config.params.extrinsic_scale = extrinsic_scale;
        config.output_path = variant_output_path(out_path, entry.name, entries.size() == 1);
        config.validate();

        if (!entry.name.empty()) std::fprintf(stderr, "%s:\n", entry.name.c_str());
        std::vector<BerStats> results;
        if (do_resume) {
            results = resume(config, config.output_path, print_progress);
        } else {
            if (std::filesystem::exists(config.output_path))
                throw std::runtime_error("output exists: " + config.output_path +
                                         " (pass --resume to continue it)");
            results = run_sweep(config, {}, print_progress);
        }
        write_results_csv(results, config.output_path);
        write_config_echo(config, config.output_path);
        std::fprintf(stderr, "wrote %s\n", config.output_path.c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spatially coupled parallel-concatenated codes with CSOC component codes "
                 "and iterative APP threshold decoding"};
    app.require_subcommand(1);

    std::string code_path, config_path, in_path, out_path, report_path;
    std::string preset, only, boxplus, ebno_spec, mode = "exact";
    std::uint64_t seed_value = 0;
    bool seed_given = false, identity = false, do_resume = false, json_output = false,
         timing = false;
    int threads = default_threads();
    double extrinsic_scale = 0.0;
    long max_frames = 0, min_bit_errors = 0, min_frames = 0;
    int search_k = 1, search_j = 1, search_max_m = 100;
    std::size_t length = 0;

    auto* validate_cmd = app.add_subcommand("validate", "check a code file for self-orthogonality");
    validate_cmd->add_option("--code", code_path, "code description file")->required();

    auto* search_cmd = app.add_subcommand("search-code", "search for a self-orthogonal code");
    search_cmd->add_option("--k", search_k, "information streams")->required();
    search_cmd->add_option("--J", search_j, "checks per stream")->required();
    search_cmd->add_option("--max-m", search_max_m, "largest allowed memory");
    search_cmd->add_option("--seed", seed_value, "search seed");
    search_cmd->add_option("--out", out_path, "output code file")->required();

    auto* encode_cmd = app.add_subcommand("encode", "encode a packed-bit payload file");
    encode_cmd->add_option("--code", code_path, "code description file");
    encode_cmd->add_option("--config", config_path, "codec parameter file")->required();
    encode_cmd->add_option("--in", in_path, "payload bits (packed, L*T bits)")->required();
    encode_cmd->add_option("--out", out_path, "output frame file")->required();

    auto* decode_cmd = app.add_subcommand("decode", "decode a frame file");
    decode_cmd->add_option("--code", code_path, "code description file");
    decode_cmd->add_option("--config", config_path, "codec parameter file")->required();
    decode_cmd->add_option("--in", in_path, "frame file")->required();
    decode_cmd->add_option("--out", out_path, "decoded payload bits")->required();
    decode_cmd->add_option("--report", report_path, "write the decode report as JSON");

    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo BER/FER sweep");
    simulate_cmd->add_option("--code", code_path, "code description file");
    simulate_cmd->add_option("--config", config_path, "simulation config file");
    simulate_cmd->add_option("--preset", preset, "fig4 | fig5 | fig6");
    simulate_cmd->add_option("--only", only, "run a single preset variant by name");
    simulate_cmd->add_option("--out", out_path, "results CSV path (or prefix for presets)")
        ->required();
    auto* seed_opt = simulate_cmd->add_option("--seed", seed_value, "master seed");
    simulate_cmd->add_option("--threads", threads, "worker threads (env SCPCC_THREADS)");
    simulate_cmd->add_option("--boxplus", boxplus, "exact | approx")
        ->check(CLI::IsMember({"exact", "approx"}));
    simulate_cmd->add_option("--extrinsic-scale", extrinsic_scale, "a priori scale factor");
    simulate_cmd->add_option("--ebno", ebno_spec, "SNR grid: start:step:stop or comma list");
    auto* mf_opt = simulate_cmd->add_option("--max-frames", max_frames, "frame cap per point");
    auto* me_opt =
        simulate_cmd->add_option("--min-bit-errors", min_bit_errors, "early-stop error target");
    auto* mn_opt = simulate_cmd->add_option("--min-frames", min_frames, "frame floor per point");
    simulate_cmd->add_flag("--resume", do_resume, "continue an existing results file");
    simulate_cmd->add_flag("--timing", timing,
                           "record wall time in the CSV (results stop being byte-reproducible)");

    auto* analyze_cmd = app.add_subcommand("analyze", "latency/memory/computation report");
    analyze_cmd->add_option("--code", code_path, "code description file");
    analyze_cmd->add_option("--config", config_path, "codec parameter file")->required();
    analyze_cmd->add_option("--mode", mode, "exact | empirical")
        ->check(CLI::IsMember({"exact", "empirical"}));
    analyze_cmd->add_flag("--json", json_output, "emit the report as JSON");

    auto* gen_cmd = app.add_subcommand("gen-interleaver", "write a permutation file");
    gen_cmd->add_option("--length", length, "permutation length")->required();
    gen_cmd->add_option("--seed", seed_value, "permutation seed");
    gen_cmd->add_flag("--identity", identity, "emit the identity permutation");
    gen_cmd->add_option("--out", out_path, "output file")->required();

    CLI11_PARSE(app, argc, argv);
    seed_given = seed_opt->count() > 0;

    try {
        if (*validate_cmd) {
            const CsocCode code = load_code_file(code_path);
            const ValidityReport report = validate_self_orthogonality(code);
            if (report.valid) {
                std::printf("valid\n");
                return 0;
            }
            std::printf("invalid: %s\n", report.detail.c_str());
            return 1;
        }
        if (*search_cmd) {
            const auto code = search_csoc(search_k, search_j, search_max_m, seed_value);
            if (!code) {
                std::fprintf(stderr, "no (k=%d, J=%d) code found with m <= %d\n", search_k,
                             search_j, search_max_m);
                return 1;
            }
            save_code_file(*code, out_path);
            std::printf("found (%d,%d,%d) code with J=%d, wrote %s\n", code->k + 1, code->k,
                        code->m, code->check_count(), out_path.c_str());
            return 0;
        }
        if (*encode_cmd) {
            const ScPccParams params = load_params(config_path, code_path);
            params.validate();
            const Bits source = load_bits_file(in_path, params.source_bits());
            const CodedFrame frame = encode_frame(params, source);
            save_frame_file(frame, params, out_path);
            std::fprintf(stderr, "encoded %zu info bits into %zu transmitted bits\n",
                         source.size(), frame.transmitted_bits());
            return 0;
        }
        if (*decode_cmd) {
            const ScPccParams params = load_params(config_path, code_path);
            params.validate();
            const CodedFrame frame = load_frame_file(params, in_path);
            ReceivedFrame received;
            auto harden = [&](const Bits& bits) {
                std::vector<double> llr(bits.size());
                for (std::size_t i = 0; i < bits.size(); ++i)
                    llr[i] = bits[i] ? -params.llr_cap : params.llr_cap;
                return llr;
            };
            received.systematic.reserve(params.source_bits());
            for (const auto& block : frame.systematic)
                for (std::uint8_t b : block)
                    received.systematic.push_back(b ? -params.llr_cap : params.llr_cap);
            for (const auto& block : frame.parity1) received.parity1.push_back(harden(block));
            for (const auto& block : frame.parity2) received.parity2.push_back(harden(block));
            auto [decisions, report] = scpcc::decode_frame(params, received);
            save_bits_file(decisions, out_path);
            if (!report_path.empty()) {
                std::ofstream rep(report_path);
                rep << report.to_json().dump(2) << "\n";
            }
            std::fprintf(stderr, "decoded %zu bits, %lld vertical iterations\n",
                         decisions.size(), report.vertical_iterations);
            return 0;
        }
        if (*simulate_cmd) {
            return run_simulate(config_path, code_path, preset, only, out_path,
                                seed_given ? std::optional<std::uint64_t>(seed_value)
                                           : std::nullopt,
                                threads, boxplus, extrinsic_scale, ebno_spec,
                                mf_opt->count() ? std::optional<long>(max_frames) : std::nullopt,
                                me_opt->count() ? std::optional<long>(min_bit_errors)
                                                : std::nullopt,
                                mn_opt->count() ? std::optional<long>(min_frames) : std::nullopt,
                                do_resume, timing);
        }
        if (*analyze_cmd) {
            const ScPccParams params = load_params(config_path, code_path);
            params.validate();
            const LatencyReport lat = latency(params);
            const MemoryReport mem = memory(params);
            const ComplexityReport comp = computation(
                params, mode == "exact" ? ComplexityMode::Exact : ComplexityMode::Empirical);
            if (json_output) {
                nlohmann::json j;
                j["latency_symbols"] = lat.decode_latency_symbols;
                j["minimum_latency_symbols"] = lat.minimum_latency_symbols;
                j["recommended_window"] = lat.recommended_window;
                j["encoder_memory"] = mem.encoder_elements;
                j["decoder_memory"] = mem.decoder_elements;
                j["computation"] = comp.to_json();
                char hash[32];
                std::snprintf(hash, sizeof(hash), "%016llx",
                              static_cast<unsigned long long>(params_hash(params)));
                j["params_hash"] = hash;
                std::printf("%s\n", j.dump(2).c_str());
            } else {
                std::printf("latency            %lld symbols (w*T)\n", lat.decode_latency_symbols);
                std::printf("minimum latency    %lld symbols ((m_sc+1)*T)\n",
                            lat.minimum_latency_symbols);
                std::printf("recommended w      %d (2*(m_sc+1))\n", lat.recommended_window);
                std::printf("encoder memory     %lld elements\n", mem.encoder_elements);
                std::printf("decoder memory     %lld elements\n", mem.decoder_elements);
                std::printf("per component decoder, per T decoded bits (%s mode):\n",
                            comp.mode == ComplexityMode::Exact ? "exact" : "empirical");
                std::printf("  multiplications  %.6g\n", comp.multiplications);
                std::printf("  additions        %.6g\n", comp.additions);
                std::printf("  box-plus         %.6g\n", comp.boxplus_ops);
                std::printf("  total            %.6g\n", comp.total);
                std::printf("window factor      %lld vertical iterations per position\n",
                            comp.window_factor);
                std::printf("total per position %.6g operations\n",
                            comp.total_per_window_position);
                std::printf("parallelism        %d symbols per time unit\n", comp.parallelism);
            }
            return 0;
        }
        if (*gen_cmd) {
            const Interleaver pi =
                identity ? Interleaver::identity(length) : Interleaver::random(length, seed_value);
            pi.save(out_path);
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
