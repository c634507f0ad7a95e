#include "cli.hpp"

#include "sharpkit/harness.hpp"
#include "sharpkit/image_io.hpp"
#include "sharpkit/kernel_io.hpp"
#include "sharpkit/presets.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace sharpkit::cli {

namespace {

namespace fs = std::filesystem;

// Bad invocation, reported with exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

double parse_double(std::string_view s, const std::string& what)
{
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
        throw UsageError(what + ": '" + std::string(s) + "' is not a number");
    return v;
}

std::vector<double> parse_list(const std::string& s, const std::string& what)
{
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto end = std::min(s.find(',', start), s.size());
        out.push_back(parse_double(std::string_view(s).substr(start, end - start), what));
        start = end + 1;
    }
    return out;
}

// "a:step:b" (inclusive) or a comma-separated list.
std::vector<double> parse_fractions(const std::string& s)
{
    std::vector<double> out;
    if (s.find(':') != std::string::npos) {
        std::vector<double> parts;
        std::size_t start = 0;
        while (start <= s.size()) {
            const auto end = std::min(s.find(':', start), s.size());
            parts.push_back(parse_double(std::string_view(s).substr(start, end - start), "--fractions"));
            start = end + 1;
        }
        if (parts.size() != 3 || !(parts[1] > 0.0) || parts[2] < parts[0])
            throw UsageError("--fractions: expected start:step:stop with step > 0 and stop >= start");
        const auto count = static_cast<long>(std::floor((parts[2] - parts[0]) / parts[1] + 1e-9)) + 1;
        for (long i = 0; i < count; ++i)
            out.push_back(std::round((parts[0] + static_cast<double>(i) * parts[1]) * 1e12) / 1e12);
    } else {
        out = parse_list(s, "--fractions");
    }
    for (double f : out)
        if (!(f > 0.0 && f <= 1.0))
            throw UsageError("--fractions: every fraction must lie in (0, 1]");
    return out;
}

std::array<double, 2> parse_weights(const std::string& s)
{
    const auto w = parse_list(s, "--weights");
    if (w.size() != 2)
        throw UsageError("--weights: expected two comma-separated values");
    return {w[0], w[1]};
}

// --kernel accepts preset names and kernel or combination JSON files.
KernelConfig resolve_kernels(const std::vector<std::string>& specs, const std::string& weights)
{
    KernelConfig cfg;
    std::vector<std::string> labels;
    for (const auto& s : specs) {
        if (const auto* p = find_preset(s)) {
            auto pc = preset_config(*p);
            for (auto& k : pc.kernels)
                cfg.kernels.push_back(std::move(k));
            if (labels.empty())
                cfg.higher_is_sharper = p->higher_is_sharper;
            labels.push_back(p->name);
            continue;
        }
        const fs::path path(s);
        if (!fs::exists(path)) {
            if (path.has_extension() || s.find('/') != std::string::npos)
                throw Error(Errc::io, "no such kernel file: " + s);
            throw UsageError("unknown preset '" + s + "'; available presets: " + preset_list());
        }
        const auto text = read_text_file(path);
        if (is_combo_json(text)) {
            const auto combo = combo_from_json(text);
            if (!cfg.kernels.empty() || specs.size() != 1)
                throw UsageError("a combination file must be the only --kernel");
            cfg = combo_config(combo);
        } else {
            const auto k = kernel_from_json(text);
            if (labels.empty())
                cfg.higher_is_sharper = k.higher_is_sharper;
            cfg.kernels.push_back(k);
        }
        labels.push_back(path.filename().string());
    }
    if (cfg.kernels.empty() || cfg.kernels.size() > 2)
        throw UsageError("--kernel must resolve to one or two kernels, got " + std::to_string(cfg.kernels.size()));
    if (!weights.empty()) {
        if (cfg.kernels.size() != 2)
            throw UsageError("--weights needs two kernels");
        cfg.weights = parse_weights(weights);
    }
    std::string label;
    for (const auto& l : labels)
        label += (label.empty() ? "" : "+") + l;
    cfg.label = label;
    return cfg;
}

std::string format_optional(const std::optional<double>& v) { return v ? format_number(*v) : "n/a"; }

// ---------------------------------------------------------------------------

struct SynthArgs {
    double alpha = 0.0;
    double beta = 0.0;
    double cutoff_over_pi = 0.6;
    int terms = 3;
    int taps = 25;
    int moment = 12;
    std::string out;
};

int do_synth(const SynthArgs& a, std::ostream& out)
{
    KernelFile f;
    f.spec.gg = {a.alpha, a.beta};
    f.spec.cutoff = a.cutoff_over_pi * std::numbers::pi;
    f.spec.terms = a.terms;
    f.spec.tap_length = a.taps;
    f.spec.moment = a.moment;
    try {
        f.spec.validate();
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    const auto r = synthesize_detailed(f.spec);
    f.kernel = r.kernel;
    const auto peak = kernel_peak(f.kernel);
    if (a.out.empty()) {
        out << kernel_to_json(f);
    } else {
        save_kernel(f, a.out);
        out << "wrote " << a.out << ": " << f.kernel.taps.size() << " taps, peak at "
            << format_number(peak.omega / std::numbers::pi) << " pi, fit relative rms "
            << format_number(r.fit.relative_rms) << "\n";
    }
    return 0;
}

struct ScoreArgs {
    std::vector<std::string> paths;
    std::vector<std::string> kernels;
    std::string weights;
    std::string out;
    int workers = 0;
};

int do_score(const ScoreArgs& a, std::ostream& out, std::ostream& err)
{
    const auto cfg = resolve_kernels(a.kernels, a.weights);
    std::vector<fs::path> paths(a.paths.begin(), a.paths.end());
    const auto scores = score_files(paths, cfg, resolve_workers(a.workers));

    std::ostringstream csv;
    csv << (cfg.scalar() ? "path,score" : "path,score_1,score_2") << '\n';
    for (std::size_t i = 0; i < paths.size(); ++i) {
        const auto& s = scores[i];
        csv << a.paths[i];
        if (s.failure) {
            err << a.paths[i] << ": " << s.message << '\n';
            csv << (cfg.scalar() ? "," : ",,") << '\n';
            continue;
        }
        if (cfg.scalar())
            csv << ',' << format_number(*s.value);
        else
            csv << ',' << format_number(s.components[0]) << ',' << format_number(s.components[1]);
        csv << '\n';
    }
    if (!a.out.empty())
        write_text_file(a.out, csv.str());
    else
        out << csv.str();
    return 0;
}

struct BenchArgs {
    std::string manifest;
    std::vector<std::string> kernels;
    std::string weights;
    double sig_threshold = 0.0;
    double z = 1.96;
    bool within_group = false;
    bool time = false;
    int workers = 0;
    std::string out;
    std::string csv;
};

int do_bench(const BenchArgs& a, std::ostream& out)
{
    const auto cfg = resolve_kernels(a.kernels, a.weights);
    if (!cfg.scalar())
        throw UsageError("bench with two kernels needs --weights or a combination file from 'calibrate'");
    if (a.sig_threshold < 0.0)
        throw UsageError("--sig-threshold must be >= 0");
    EvalConfig eval;
    eval.significance.threshold = a.sig_threshold;
    eval.significance.z = a.z;
    eval.significance.within_group_only = a.within_group;
    eval.workers = a.workers;
    eval.time_repeats = a.time ? 3 : 1;

    const auto manifest = load_manifest(a.manifest);
    auto report = run_benchmark(manifest, cfg, eval);
    report.manifest = a.manifest;

    const fs::path out_path(a.out);
    emit_report(report, out_path, out_path.extension() == ".csv" ? ReportFormat::csv : ReportFormat::json);
    if (!a.csv.empty())
        emit_report(report, a.csv, ReportFormat::csv);

    out << "images " << report.images.size() << " (excluded " << report.exclusions.size() << ")\n"
        << "plcc " << format_number(report.plcc) << "\n"
        << "srcc " << format_number(report.srcc) << "\n"
        << "krcc " << format_number(report.krcc) << "\n"
        << "rmse " << format_number(report.rmse) << "\n"
        << "auc_ds " << format_optional(report.auc_ds) << "\n"
        << "auc_bw " << format_optional(report.auc_bw) << "\n"
        << "c0 " << format_optional(report.c0) << "\n"
        << "mean_seconds " << format_number(report.mean_seconds) << "\n";
    return 0;
}

struct CalibrateArgs {
    std::string manifest;
    std::vector<std::string> kernels;
    std::string out;
    int workers = 0;
};

int do_calibrate(const CalibrateArgs& a, std::ostream& out, std::ostream& err)
{
    auto cfg = resolve_kernels(a.kernels, "");
    if (cfg.kernels.size() != 2)
        throw UsageError("calibrate needs exactly two kernels");
    cfg.weights.reset();
    const auto manifest = load_manifest(a.manifest);
    std::vector<fs::path> paths;
    for (const auto& e : manifest)
        paths.push_back(e.path);
    const auto scores = score_files(paths, cfg, resolve_workers(a.workers));

    std::vector<std::array<double, 2>> rows;
    std::vector<double> y;
    for (std::size_t i = 0; i < manifest.size(); ++i) {
        if (scores[i].failure) {
            err << "excluded " << manifest[i].path.string() << ": " << scores[i].message << '\n';
            continue;
        }
        rows.push_back({scores[i].components[0], scores[i].components[1]});
        y.push_back(manifest[i].subjective);
    }
    const auto fit = fit_combo(rows, y);
    ComboFile combo;
    combo.kernels = {cfg.kernels[0], cfg.kernels[1]};
    combo.weights = fit.weights;
    combo.logistic = fit.params;
    combo.rmse = fit.final_rmse;
    save_combo(combo, a.out);
    out << "weights " << format_number(fit.weights[0]) << ',' << format_number(fit.weights[1]) << "\n"
        << "rmse " << format_number(fit.final_rmse) << "\n";
    return 0;
}

struct BlurArgs {
    std::vector<std::string> inputs;
    std::string sigmas = "0.5,1,2,4";
    std::string outdir;
    std::string manifest;
    int bit_depth = 16;
};

std::string sigma_tag(double s)
{
    auto t = format_number(s);
    for (auto& c : t)
        if (c == '.')
            c = 'p';
    return t;
}

int do_blurseries(const BlurArgs& a, std::ostream& out)
{
    const auto sigmas = parse_list(a.sigmas, "--sigmas");
    for (double s : sigmas)
        if (s < 0.0)
            throw UsageError("--sigmas: values must be >= 0");
    if (a.bit_depth != 8 && a.bit_depth != 16)
        throw UsageError("--bit-depth must be 8 or 16");
    fs::create_directories(a.outdir);

    std::vector<ManifestEntry> entries;
    for (const auto& input : a.inputs) {
        const auto img = load_gray(input);
        const auto stem = fs::path(input).stem().string();
        for (double s : sigmas) {
            const auto blurred = s > 0.0 ? gaussian_blur(img, s) : img;
            const auto path = fs::path(a.outdir) / (stem + "_s" + sigma_tag(s) + ".png");
            save_gray(blurred, path, a.bit_depth);
            // Subjective quality falls with blur; -sigma keeps "higher is better".
            entries.push_back({path, -s, std::nullopt, stem});
        }
    }
    const auto manifest = a.manifest.empty() ? fs::path(a.outdir) / "manifest.csv" : fs::path(a.manifest);
    write_manifest(manifest, entries);
    out << "wrote " << entries.size() << " images and " << manifest.string() << "\n";
    return 0;
}

struct ScaleArgs {
    std::string manifest;
    std::vector<std::string> kernels;
    std::string weights;
    std::string fractions = "0.03:0.03:0.30";
    int trials = 50;
    std::uint64_t seed = 0;
    std::string out;
    int workers = 0;
};

int do_scale(const ScaleArgs& a, std::ostream& out)
{
    const auto fractions = parse_fractions(a.fractions);
    if (a.trials < 1)
        throw UsageError("--trials must be >= 1");
    const auto cfg = resolve_kernels(a.kernels, a.weights);
    if (!cfg.scalar())
        throw UsageError("scale with two kernels needs --weights or a combination file");
    const auto manifest = load_manifest(a.manifest);
    const auto rows = run_scalability(manifest, cfg, fractions, a.trials, a.seed, a.workers);
    const auto csv = scalability_csv(rows);
    if (a.out.empty())
        out << csv;
    else
        write_text_file(a.out, csv);
    return 0;
}

void add_kernel_options(CLI::App* sub, std::vector<std::string>& kernels, std::string* weights)
{
    sub->add_option("-k,--kernel", kernels, "Preset name (" + preset_list() + ") or kernel/combination JSON")
        ->required();
    if (weights)
        sub->add_option("--weights", *weights, "Combination weights w1,w2 for two kernels");
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"No-reference image sharpness toolkit", "sharpkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "sharpkit 0.1.0");

    SynthArgs synth;
    auto* s_synth = app.add_subcommand("synth", "Synthesize a sharpness kernel");
    s_synth->add_option("--alpha", synth.alpha, "Generalized Gaussian standard deviation")->required();
    s_synth->add_option("--beta", synth.beta, "Generalized Gaussian shape")->required();
    s_synth->add_option("--cutoff-over-pi", synth.cutoff_over_pi, "Passband edge as a fraction of pi")
        ->capture_default_str();
    s_synth->add_option("--terms", synth.terms, "Polynomial terms")->capture_default_str();
    s_synth->add_option("--taps", synth.taps, "Odd FIR length")->capture_default_str();
    s_synth->add_option("--moment", synth.moment, "Central moment order")->capture_default_str();
    s_synth->add_option("-o,--out", synth.out, "Output kernel JSON (stdout if omitted)");

    ScoreArgs score;
    auto* s_score = app.add_subcommand("score", "Score images");
    s_score->add_option("paths", score.paths, "Image files")->required();
    add_kernel_options(s_score, score.kernels, &score.weights);
    s_score->add_option("-o,--out", score.out, "Write scores CSV here instead of stdout");
    s_score->add_option("--workers", score.workers, "Worker threads (0 = all cores)");

    BenchArgs bench;
    auto* s_bench = app.add_subcommand("bench", "Benchmark against subjective scores");
    s_bench->add_option("-m,--manifest", bench.manifest, "Manifest CSV")->required();
    add_kernel_options(s_bench, bench.kernels, &bench.weights);
    s_bench->add_option("--sig-threshold", bench.sig_threshold, "Significance threshold on |dY| without std");
    s_bench->add_option("--z", bench.z, "Critical value when std is available")->capture_default_str();
    s_bench->add_flag("--within-group", bench.within_group, "Only pair images of the same group");
    s_bench->add_flag("--time", bench.time, "Median of 3 timed repetitions per image");
    s_bench->add_option("--workers", bench.workers, "Worker threads (0 = all cores)");
    s_bench->add_option("-o,--out", bench.out, "Report path (.json or .csv)")->required();
    s_bench->add_option("--csv", bench.csv, "Also write per-image CSV here");

    CalibrateArgs cal;
    auto* s_cal = app.add_subcommand("calibrate", "Fit combination weights and logistic map for two kernels");
    s_cal->add_option("-m,--manifest", cal.manifest, "Manifest CSV")->required();
    add_kernel_options(s_cal, cal.kernels, nullptr);
    s_cal->add_option("-o,--out", cal.out, "Output combination JSON")->required();
    s_cal->add_option("--workers", cal.workers, "Worker threads (0 = all cores)");

    BlurArgs blur;
    auto* s_blur = app.add_subcommand("blurseries", "Write a Gaussian blur series and its manifest");
    s_blur->add_option("-i,--input", blur.inputs, "Sharp source image(s)")->required();
    s_blur->add_option("--sigmas", blur.sigmas, "Comma-separated blur sigmas (0 copies the source)")
        ->capture_default_str();
    s_blur->add_option("--outdir", blur.outdir, "Output directory")->required();
    s_blur->add_option("--manifest", blur.manifest, "Manifest path (default <outdir>/manifest.csv)");
    s_blur->add_option("--bit-depth", blur.bit_depth, "PNG bit depth (8 or 16)")->capture_default_str();

    ScaleArgs scale;
    auto* s_scale = app.add_subcommand("scale", "Monte-Carlo PLCC over random manifest subsets");
    s_scale->add_option("-m,--manifest", scale.manifest, "Manifest CSV")->required();
    add_kernel_options(s_scale, scale.kernels, &scale.weights);
    s_scale->add_option("--fractions", scale.fractions, "start:step:stop or comma list")->capture_default_str();
    s_scale->add_option("--trials", scale.trials, "Trials per fraction")->capture_default_str();
    s_scale->add_option("--seed", scale.seed, "Random seed")->capture_default_str();
    s_scale->add_option("-o,--out", scale.out, "Output CSV (stdout if omitted)");
    s_scale->add_option("--workers", scale.workers, "Worker threads (0 = all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Help and version requests exit 0; every other parse failure is a usage error.
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    try {
        if (s_synth->parsed())
            return do_synth(synth, out);
        if (s_score->parsed())
            return do_score(score, out, err);
        if (s_bench->parsed())
            return do_bench(bench, out);
        if (s_cal->parsed())
            return do_calibrate(cal, out, err);
        if (s_blur->parsed())
            return do_blurseries(blur, out);
        if (s_scale->parsed())
            return do_scale(scale, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace sharpkit::cli
