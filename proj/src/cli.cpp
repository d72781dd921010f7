#include "dmsparse/cli.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include <CLI11.hpp>
#include <json.hpp>

#include "dmsparse/analysis.hpp"
#include "dmsparse/bitstream_io.hpp"
#include "dmsparse/errors.hpp"
#include "dmsparse/harness.hpp"
#include "dmsparse/metrics.hpp"
#include "dmsparse/wav.hpp"

namespace dmsparse {

namespace {

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

AdmParams adm_from(const RunConfig& c) {
    AdmParams p = AdmParams::defaults(c.delta);
    p.growth = c.growth;
    if (c.delta_min > 0.0) p.delta_min = c.delta_min;
    if (c.delta_max > 0.0) p.delta_max = c.delta_max;
    return p;
}

SweepConfig sweep_from(const RunConfig& c) {
    SweepConfig s;
    s.imat.lambda = c.lambda;
    s.imat.alpha = c.alpha;
    if (c.beta > 0.0) s.imat.beta = c.beta;
    s.imat.max_iters = c.max_iters;
    if (c.guard_gamma > 0.0) s.imat.guard_gamma = c.guard_gamma;
    s.imat.delta = c.delta;
    s.smoothing_len = c.smoothing_len;
    s.omp_max_atoms = c.omp_max_atoms;
    s.omp_residual_tol_rel = c.omp_tol_rel;
    s.lasso_reg_rel = c.lasso_reg_rel;
    s.lasso_max_iters = c.lasso_max_iters;
    s.lasso_tol = c.lasso_tol;
    s.lowpass_cutoff_hz = c.cutoff_hz;
    s.lowpass_taps = c.lowpass_taps;
    s.success_threshold_db = c.threshold_db;
    s.noiseless = c.noiseless;
    s.jobs = c.jobs;
    s.seed = c.seed;
    return s;
}

SyntheticSpec synth_from(const RunConfig& c) {
    SyntheticSpec spec;
    spec.length = c.frame_len;
    spec.sparsity = c.sparsity;
    spec.amp_min = c.amp_min;
    spec.amp_max = c.amp_max;
    spec.band_split = c.band_split;
    spec.min_hz = c.min_hz;
    spec.max_hz = c.max_hz;
    spec.balance_band_energy = c.balance_energy;
    return spec;
}

std::vector<Method> methods_from(const RunConfig& c) {
    std::vector<Method> out;
    for (const auto& name : c.methods) out.push_back(parse_method(name));
    return out;
}

std::vector<Frame> sweep_frames(const RunConfig& c) {
    if (c.use_synth) {
        std::vector<Frame> frames;
        for (auto& sf : synth_corpus(synth_from(c), c.synth_frames, c.seed))
            frames.push_back(std::move(sf.frame));
        return frames;
    }
    if (c.input_path.empty())
        throw std::invalid_argument("sweep: provide --in or --synth");
    const WavData wav = load_wav(c.input_path);
    auto frames = frame_split(wav.samples, c.frame_len, c.frame_len,
                              wav.sample_rate);
    if (frames.empty())
        throw std::invalid_argument("sweep: input shorter than one frame");
    return frames;
}

std::string default_out(const RunConfig& c, const std::string& stem,
                        const std::string& ext) {
    return stem + "_" + c.config_hash() + "." + ext;
}

void cmd_encode(const RunConfig& c) {
    const WavData wav = load_wav(c.input_path);
    Frame frame{wav.samples, wav.sample_rate};
    const EncodeResult enc =
        c.adaptive ? adm_encode(frame, adm_from(c)) : dm_encode(frame, c.delta);
    const std::string out =
        c.output_path.empty() ? default_out(c, "encoded", "dmbs") : c.output_path;
    write_bitstream(out, enc.bits);
    std::printf("encoded %zu samples, mask rate %.4f -> %s\n", frame.size(),
                extract_mask(enc.bits).rate(), out.c_str());
}

void cmd_decode(const RunConfig& c) {
    const Bitstream bits = read_bitstream(c.input_path);
    const Staircase stair =
        bits.adaptive
            ? adm_decode(bits, AdmParams::defaults(bits.delta), c.rate)
            : dm_decode(bits, c.rate);
    const std::string out =
        c.output_path.empty() ? default_out(c, "decoded", "wav") : c.output_path;
    if (c.pcm16)
        save_wav_pcm16(out, stair.values, stair.sample_rate);
    else
        save_wav_float32(out, stair.values, stair.sample_rate);
    std::printf("decoded %zu samples -> %s\n", stair.size(), out.c_str());
}

void cmd_reconstruct(const RunConfig& c) {
    const WavData wav = load_wav(c.input_path);
    auto frames = frame_split(wav.samples, c.frame_len, c.frame_len,
                              wav.sample_rate);
    if (frames.empty())
        throw std::invalid_argument("reconstruct: input shorter than one frame");
    const Method method = parse_method(c.methods.front());
    const SweepConfig config = sweep_from(c);

    std::vector<double> output;
    std::vector<SnrDb> snrs;
    for (const Frame& frame : frames) {
        const EncodeResult enc = dm_encode(frame, c.delta);
        const SamplingMask mask = extract_mask(enc.bits);
        const MaskedSignal masked = masked_signal(enc.staircase, mask);
        const Frame estimate =
            reconstruct_frame(method, masked, &enc.staircase, config);
        output.insert(output.end(), estimate.samples.begin(),
                      estimate.samples.end());
        snrs.push_back(snr_db(frame, estimate));
    }

    const std::string out = c.output_path.empty()
                                ? default_out(c, "reconstructed", "wav")
                                : c.output_path;
    if (c.pcm16)
        save_wav_pcm16(out, output, wav.sample_rate);
    else
        save_wav_float32(out, output, wav.sample_rate);

    double mean = 0.0;
    for (const auto& s : snrs) mean += s.value;
    mean /= static_cast<double>(snrs.size());
    std::printf("%s over %zu frames: mean SNR %.2f dB -> %s\n",
                method_name(method).c_str(), snrs.size(), mean, out.c_str());
}

void emit_table(const RunConfig& c, const ReportTable& table,
                const std::string& stem) {
    const ReportFormat format =
        c.format == "json" ? ReportFormat::json : ReportFormat::csv;
    const std::string out = c.output_path.empty()
                                ? default_out(c, stem, c.format)
                                : c.output_path;
    emit_report(table, format, out);
    std::fputs(report_csv(table).c_str(), stdout);
    std::printf("report -> %s\n", out.c_str());
}

void cmd_sweep(const RunConfig& c) {
    const ReportTable table =
        delta_sweep(sweep_frames(c), c.deltas, methods_from(c), sweep_from(c));
    emit_table(c, table, "sweep");
}

void cmd_adm_bench(const RunConfig& c) {
    const ReportTable table = adm_benchmark(sweep_frames(c), adm_from(c),
                                            methods_from(c), sweep_from(c));
    emit_table(c, table, "adm_bench");
}

// Deterministic unit-energy test frame for the first-moment validation.
Frame theory_frame(int n) {
    Frame frame;
    frame.samples.resize(static_cast<std::size_t>(n));
    const double w = 2.0 * std::numbers::pi / static_cast<double>(n);
    for (int i = 0; i < n; ++i)
        frame.samples[static_cast<std::size_t>(i)] =
            std::cos(3.0 * w * i) + 0.5 * std::cos(7.0 * w * i + 1.0);
    const double scale = 1.0 / std::sqrt(energy(frame));
    for (double& s : frame.samples) s *= scale;
    return frame;
}

void cmd_validate_theory(const RunConfig& c) {
    std::vector<ValidationRow> rows;
    if (c.theorem == "1" || c.theorem == "both") {
        const auto stats = validate_theorem1(theory_frame(c.n_bins), c.p,
                                             c.delta, c.trials, c.seed);
        for (auto& r : theorem1_rows(stats, c.seed)) rows.push_back(r);
    }
    if (c.theorem == "2" || c.theorem == "both") {
        GeometricCheckConfig gc;
        gc.n = static_cast<std::size_t>(c.n_bins) < 32
                   ? 32
                   : static_cast<std::size_t>(c.n_bins);
        gc.tracked_bin = c.tracked_bin;
        gc.amplitude = c.amplitude;
        gc.lambda = c.lambda;
        gc.p = c.p;
        gc.delta = c.delta;
        gc.iterations = c.iterations;
        gc.trials = c.t2_trials;
        gc.seed = c.seed;
        for (auto& r : theorem2_rows(geometric_error_check(gc), c.seed))
            rows.push_back(r);
    }
    if (rows.empty())
        throw std::invalid_argument("validate-theory: --theorem must be 1, 2 or both");

    for (const auto& r : rows)
        std::printf("%-28s predicted=%-14.6g empirical=%-14.6g rel_error=%.3g\n",
                    r.quantity.c_str(), r.predicted, r.empirical, r.rel_error);
    const std::string out = c.output_path.empty()
                                ? default_out(c, "validation", "csv")
                                : c.output_path;
    write_validation_csv(out, rows);
    std::printf("report -> %s\n", out.c_str());
}

void cmd_synth(const RunConfig& c) {
    const auto corpus = synth_corpus(synth_from(c), c.synth_frames, c.seed);
    std::vector<double> samples;
    samples.reserve(corpus.size() * c.frame_len);
    for (const auto& sf : corpus)
        samples.insert(samples.end(), sf.frame.samples.begin(),
                       sf.frame.samples.end());
    const std::string out =
        c.output_path.empty() ? default_out(c, "corpus", "wav") : c.output_path;
    save_wav_float32(out, samples, kDefaultSampleRate);
    std::printf("synthesized %d frames (%zu samples) -> %s\n", c.synth_frames,
                samples.size(), out.c_str());
}

}  // namespace

std::string RunConfig::to_json() const {
    nlohmann::ordered_json j;
    j["subcommand"] = subcommand;
    j["input_path"] = input_path;
    j["output_path"] = output_path;
    j["format"] = format;
    j["jobs"] = jobs;
    j["seed"] = seed;
    j["delta"] = delta;
    j["adaptive"] = adaptive;
    j["growth"] = growth;
    j["delta_min"] = delta_min;
    j["delta_max"] = delta_max;
    j["rate"] = rate;
    j["pcm16"] = pcm16;
    j["frame_len"] = frame_len;
    j["methods"] = methods;
    j["lambda"] = lambda;
    j["alpha"] = alpha;
    j["beta"] = beta;
    j["max_iters"] = max_iters;
    j["guard_gamma"] = guard_gamma;
    j["smoothing_len"] = smoothing_len;
    j["omp_max_atoms"] = omp_max_atoms;
    j["omp_tol_rel"] = omp_tol_rel;
    j["lasso_reg_rel"] = lasso_reg_rel;
    j["lasso_max_iters"] = lasso_max_iters;
    j["lasso_tol"] = lasso_tol;
    j["cutoff_hz"] = cutoff_hz;
    j["lowpass_taps"] = lowpass_taps;
    j["deltas"] = deltas;
    j["threshold_db"] = threshold_db;
    j["noiseless"] = noiseless;
    j["use_synth"] = use_synth;
    j["synth_frames"] = synth_frames;
    j["sparsity"] = sparsity;
    j["amp_min"] = amp_min;
    j["amp_max"] = amp_max;
    j["band_split"] = band_split;
    j["min_hz"] = min_hz;
    j["max_hz"] = max_hz;
    j["balance_energy"] = balance_energy;
    j["n_bins"] = n_bins;
    j["p"] = p;
    j["trials"] = trials;
    j["theorem"] = theorem;
    j["iterations"] = iterations;
    j["tracked_bin"] = tracked_bin;
    j["amplitude"] = amplitude;
    j["t2_trials"] = t2_trials;
    return j.dump(2);
}

std::string RunConfig::config_hash() const {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(to_json())));
    return buf;
}

void dispatch(const RunConfig& config) {
    if (config.dump_config)
        std::printf("%s\n", config.to_json().c_str());

    if (config.subcommand == "encode") return cmd_encode(config);
    if (config.subcommand == "decode") return cmd_decode(config);
    if (config.subcommand == "reconstruct") return cmd_reconstruct(config);
    if (config.subcommand == "sweep") return cmd_sweep(config);
    if (config.subcommand == "adm-bench") return cmd_adm_bench(config);
    if (config.subcommand == "validate-theory")
        return cmd_validate_theory(config);
    if (config.subcommand == "synth") return cmd_synth(config);
    throw std::invalid_argument("unknown subcommand: " + config.subcommand);
}

int run_cli(int argc, const char* const* argv) {
    RunConfig config;
    CLI::App app{"Delta-modulation voice coding with sparsity-promoting reconstruction"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", config.output_path,
                        "Output path (default: derived from the config hash)");
        sub->add_option("--seed", config.seed, "Master RNG seed")
            ->capture_default_str();
        sub->add_option("--jobs", config.jobs, "Worker threads for frame loops")
            ->capture_default_str();
        sub->add_flag("--dump-config", config.dump_config,
                      "Print the resolved config as JSON before running");
    };
    auto add_synth = [&](CLI::App* sub) {
        sub->add_flag("--synth", config.use_synth,
                      "Generate a synthetic sparse corpus instead of reading --in");
        sub->add_option("--frames", config.synth_frames, "Synthetic corpus size")
            ->capture_default_str();
        sub->add_option("--sparsity", config.sparsity,
                        "Active conjugate bin pairs per frame")
            ->capture_default_str();
        sub->add_option("--amp-min", config.amp_min, "Component amplitude lower bound")
            ->capture_default_str();
        sub->add_option("--amp-max", config.amp_max, "Component amplitude upper bound")
            ->capture_default_str();
        sub->add_option("--band-split", config.band_split,
                        "Fraction of active pairs above --split of 3300 Hz")
            ->capture_default_str();
        sub->add_option("--min-hz", config.min_hz, "Lowest active frequency")
            ->capture_default_str();
        sub->add_option("--max-hz", config.max_hz, "Highest active frequency")
            ->capture_default_str();
        sub->add_flag("--balance-energy", config.balance_energy,
                      "Match band energy fractions to bin fractions exactly");
    };
    auto add_recon_params = [&](CLI::App* sub) {
        sub->add_option("--lambda", config.lambda, "Relaxation, must lie in (0, 2/p)")
            ->capture_default_str();
        sub->add_option("--alpha", config.alpha, "Threshold decay exponent (negative)")
            ->capture_default_str();
        sub->add_option("--beta", config.beta,
                        "Initial threshold (0: 0.9 * max spectral magnitude of the first iterate)")
            ->capture_default_str();
        sub->add_option("--max-iters", config.max_iters, "Iteration cap")
            ->capture_default_str();
        sub->add_option("--guard-gamma", config.guard_gamma,
                        "Threshold floor multiplier over the coding-noise std (0: off)")
            ->capture_default_str();
        sub->add_option("--smoothing-len", config.smoothing_len,
                        "Even moving-average length for the pre-smoothing block")
            ->capture_default_str();
        sub->add_option("--omp-max-atoms", config.omp_max_atoms,
                        "Greedy pursuit atom budget (conjugate pairs)")
            ->capture_default_str();
        sub->add_option("--omp-tol-rel", config.omp_tol_rel,
                        "Pursuit stop: residual norm relative to the observations")
            ->capture_default_str();
        sub->add_option("--lasso-reg-rel", config.lasso_reg_rel,
                        "l1 weight relative to the per-frame kill threshold")
            ->capture_default_str();
        sub->add_option("--lasso-max-iters", config.lasso_max_iters,
                        "Proximal descent iteration cap")
            ->capture_default_str();
        sub->add_option("--lasso-tol", config.lasso_tol,
                        "Relative objective decrease treated as converged")
            ->capture_default_str();
        sub->add_option("--cutoff-hz", config.cutoff_hz, "Lowpass cutoff")
            ->capture_default_str();
        sub->add_option("--lowpass-taps", config.lowpass_taps,
                        "FIR length (odd)")
            ->capture_default_str();
    };

    auto* enc = app.add_subcommand("encode", "Delta-modulate a WAV into a bitstream");
    enc->add_option("--in", config.input_path, "Input WAV")->required();
    enc->add_option("--delta", config.delta, "Step size")->capture_default_str();
    enc->add_flag("--adaptive", config.adaptive, "Adaptive step size");
    enc->add_option("--growth", config.growth, "Adaptive growth factor")
        ->capture_default_str();
    enc->add_option("--delta-min", config.delta_min,
                    "Adaptive step floor (0: delta/16)")
        ->capture_default_str();
    enc->add_option("--delta-max", config.delta_max,
                    "Adaptive step ceiling (0: delta*16)")
        ->capture_default_str();
    add_common(enc);

    auto* dec = app.add_subcommand("decode", "Rebuild the staircase from a bitstream");
    dec->add_option("--in", config.input_path, "Input bitstream")->required();
    dec->add_option("--rate", config.rate, "Output WAV sample rate")
        ->capture_default_str();
    dec->add_flag("--pcm16", config.pcm16, "Write 16-bit PCM instead of float32");
    add_common(dec);

    auto* rec = app.add_subcommand(
        "reconstruct", "Encode, mask and reconstruct a WAV frame by frame");
    rec->add_option("--in", config.input_path, "Input WAV")->required();
    rec->add_option("--delta", config.delta, "Step size")->capture_default_str();
    rec->add_option("--method", config.methods,
                    "One of imatdm, imat, omp, lasso, lowpass")
        ->expected(1);
    rec->add_option("--frame-len", config.frame_len, "Samples per frame")
        ->capture_default_str();
    rec->add_flag("--pcm16", config.pcm16, "Write 16-bit PCM instead of float32");
    add_recon_params(rec);
    add_common(rec);

    auto* swp = app.add_subcommand(
        "sweep", "Step-size sweep over every method with a report table");
    swp->add_option("--in", config.input_path, "Input WAV corpus");
    swp->add_option("--deltas", config.deltas, "Step sizes")
        ->delimiter(',')
        ->capture_default_str();
    swp->add_option("--methods", config.methods, "Methods to compare")
        ->delimiter(',')
        ->capture_default_str();
    swp->add_option("--frame-len", config.frame_len, "Samples per frame")
        ->capture_default_str();
    swp->add_option("--threshold-db", config.threshold_db,
                    "Success-rate SNR threshold")
        ->capture_default_str();
    swp->add_flag("--noiseless", config.noiseless,
                  "Reconstruct from d .* x (coding error suppressed)");
    swp->add_option("--format", config.format, "csv or json")
        ->capture_default_str();
    add_synth(swp);
    add_recon_params(swp);
    add_common(swp);

    auto* adm = app.add_subcommand(
        "adm-bench", "Adaptive-modulator benchmark over every method");
    adm->add_option("--in", config.input_path, "Input WAV corpus");
    adm->add_option("--delta0", config.delta, "Initial step size")
        ->capture_default_str();
    adm->add_option("--growth", config.growth, "Step growth factor")
        ->capture_default_str();
    adm->add_option("--delta-min", config.delta_min, "Step floor (0: delta0/16)")
        ->capture_default_str();
    adm->add_option("--delta-max", config.delta_max, "Step ceiling (0: delta0*16)")
        ->capture_default_str();
    adm->add_option("--methods", config.methods, "Methods to compare")
        ->delimiter(',')
        ->capture_default_str();
    adm->add_option("--frame-len", config.frame_len, "Samples per frame")
        ->capture_default_str();
    adm->add_option("--threshold-db", config.threshold_db,
                    "Success-rate SNR threshold")
        ->default_val(20.0);
    adm->add_flag("--noiseless", config.noiseless,
                  "Reconstruct from d .* x (coding error suppressed)");
    adm->add_option("--format", config.format, "csv or json")
        ->capture_default_str();
    add_synth(adm);
    add_recon_params(adm);
    add_common(adm);

    auto* val = app.add_subcommand(
        "validate-theory",
        "Monte Carlo check of the masked-spectrum moments and the mean-error decay");
    val->add_option("--n", config.n_bins, "Frame length")->capture_default_str();
    val->add_option("--p", config.p, "Sampling rate")->capture_default_str();
    val->add_option("--delta", config.delta, "Coding step")->capture_default_str();
    val->add_option("--trials", config.trials, "First-moment trials")
        ->capture_default_str();
    val->add_option("--theorem", config.theorem, "1, 2 or both")
        ->capture_default_str();
    val->add_option("--lambda", config.lambda, "Relaxation for the decay check")
        ->capture_default_str();
    val->add_option("--iterations", config.iterations, "Decay-check iterations")
        ->capture_default_str();
    val->add_option("--tracked-bin", config.tracked_bin, "Bin under test")
        ->capture_default_str();
    val->add_option("--amplitude", config.amplitude, "Tone amplitude")
        ->capture_default_str();
    val->add_option("--t2-trials", config.t2_trials, "Decay-check trials")
        ->capture_default_str();
    add_common(val);

    auto* syn = app.add_subcommand("synth",
                                   "Write a synthetic sparse corpus as WAV");
    syn->add_option("--frame-len", config.frame_len, "Samples per frame")
        ->capture_default_str();
    add_synth(syn);
    add_common(syn);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    config.subcommand = app.get_subcommands().front()->get_name();
    try {
        dispatch(config);
    } catch (const IoError& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 3;
    } catch (const NumericError& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return 4;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

}  // namespace dmsparse
