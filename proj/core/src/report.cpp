#include "kernel_json.hpp"
#include "sharpkit/harness.hpp"

#include <charconv>

namespace sharpkit {

namespace {

using nlohmann::json;

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_from(const json& j)
{
    if (j.is_null())
        return std::nullopt;
    return j.get<double>();
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

std::string format_number(double v)
{
    // Shortest form that parses back to the same double: never fewer
    // significant digits than the value carries.
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{})
        throw Error(Errc::invalid_argument, "cannot format number");
    return std::string(buf, end);
}

std::string report_to_json(const BenchReport& r, int indent)
{
    json kernels = json::array();
    for (const auto& k : r.kernel.kernels)
        kernels.push_back(detail::kernel_json(k));
    json images = json::array();
    for (const auto& im : r.images)
        images.push_back({{"path", im.path},
                          {"objective", im.objective},
                          {"subjective", im.subjective},
                          {"fitted", im.fitted},
                          {"seconds", im.seconds},
                          {"components", im.components}});
    json exclusions = json::array();
    for (const auto& e : r.exclusions)
        exclusions.push_back({{"path", e.path}, {"reason", e.reason}});

    json j{
        {"manifest", r.manifest},
        {"kernel",
         {{"label", r.kernel.label},
          {"higher_is_sharper", r.kernel.higher_is_sharper},
          {"weights", r.kernel.weights ? json(*r.kernel.weights) : json(nullptr)},
          {"kernels", kernels}}},
        {"config",
         {{"sig_threshold", r.config.significance.threshold},
          {"z", r.config.significance.z},
          {"within_group_only", r.config.significance.within_group_only},
          {"workers", r.config.workers},
          {"time_repeats", r.config.time_repeats}}},
        {"statistics",
         {{"n", r.images.size()},
          {"fit_model", r.fit_model},
          {"logistic", detail::logistic_json(r.logistic)},
          {"plcc", r.plcc},
          {"srcc", r.srcc},
          {"krcc", r.krcc},
          {"rmse", r.rmse},
          {"auc_ds", optional_json(r.auc_ds)},
          {"auc_bw", optional_json(r.auc_bw)},
          {"c0", optional_json(r.c0)},
          {"pairs", r.pairs},
          {"significant_pairs", r.significant_pairs},
          {"mean_seconds", r.mean_seconds}}},
        {"images", images},
        {"exclusions", exclusions},
        {"notes", r.notes},
    };
    return j.dump(indent) + "\n";
}

BenchReport report_from_json(const std::string& text)
{
    try {
        const auto j = json::parse(text);
        BenchReport r;
        r.manifest = j.at("manifest").get<std::string>();

        const auto& k = j.at("kernel");
        r.kernel.label = k.at("label").get<std::string>();
        r.kernel.higher_is_sharper = k.at("higher_is_sharper").get<bool>();
        if (!k.at("weights").is_null())
            r.kernel.weights = k.at("weights").get<std::array<double, 2>>();
        for (const auto& kj : k.at("kernels"))
            r.kernel.kernels.push_back(detail::kernel_from(kj));

        const auto& c = j.at("config");
        r.config.significance.threshold = c.at("sig_threshold").get<double>();
        r.config.significance.z = c.at("z").get<double>();
        r.config.significance.within_group_only = c.at("within_group_only").get<bool>();
        r.config.workers = c.at("workers").get<int>();
        r.config.time_repeats = c.at("time_repeats").get<int>();

        const auto& s = j.at("statistics");
        r.fit_model = s.at("fit_model").get<std::string>();
        r.logistic = detail::logistic_from(s.at("logistic"));
        r.plcc = s.at("plcc").get<double>();
        r.srcc = s.at("srcc").get<double>();
        r.krcc = s.at("krcc").get<double>();
        r.rmse = s.at("rmse").get<double>();
        r.auc_ds = optional_from(s.at("auc_ds"));
        r.auc_bw = optional_from(s.at("auc_bw"));
        r.c0 = optional_from(s.at("c0"));
        r.pairs = s.at("pairs").get<std::size_t>();
        r.significant_pairs = s.at("significant_pairs").get<std::size_t>();
        r.mean_seconds = s.at("mean_seconds").get<double>();

        for (const auto& im : j.at("images"))
            r.images.push_back({im.at("path").get<std::string>(), im.at("objective").get<double>(),
                                im.at("subjective").get<double>(), im.at("fitted").get<double>(),
                                im.at("seconds").get<double>(), im.at("components").get<std::vector<double>>()});
        for (const auto& e : j.at("exclusions"))
            r.exclusions.push_back({e.at("path").get<std::string>(), e.at("reason").get<std::string>()});
        r.notes = j.at("notes").get<std::vector<std::string>>();
        return r;
    } catch (const json::exception& e) {
        throw Error(Errc::parse, std::string("report JSON: ") + e.what());
    }
}

std::string report_to_csv(const BenchReport& r)
{
    std::string out = "path,objective,subjective,fitted\n";
    for (const auto& im : r.images)
        out += csv_field(im.path) + ',' + format_number(im.objective) + ',' + format_number(im.subjective) + ',' +
               format_number(im.fitted) + '\n';
    return out;
}

void emit_report(const BenchReport& r, const std::filesystem::path& path, ReportFormat format)
{
    write_text_file(path, format == ReportFormat::json ? report_to_json(r) : report_to_csv(r));
}

} // namespace sharpkit
