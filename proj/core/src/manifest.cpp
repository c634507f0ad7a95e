#include "sharpkit/harness.hpp"
#include "sharpkit/kernel_io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace sharpkit {

namespace {

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

// Comma-separated fields; a field may be wrapped in double quotes (with "" as
// an escaped quote) so paths containing commas survive.
std::vector<std::string> split_fields(const std::string& line, std::size_t line_no)
{
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"' && trim(cur).empty()) {
            quoted = true;
            was_quoted = true;
            cur.clear();
        } else if (c == ',') {
            out.push_back(was_quoted ? cur : trim(cur));
            cur.clear();
            was_quoted = false;
        } else {
            cur += c;
        }
    }
    if (quoted)
        throw Error(Errc::parse, "manifest line " + std::to_string(line_no) + ": unterminated quote");
    out.push_back(was_quoted ? cur : trim(cur));
    return out;
}

double parse_real(const std::string& s, const char* what, std::size_t line_no)
{
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (s.empty() || ec != std::errc{} || ptr != end || !std::isfinite(v))
        throw Error(Errc::parse, "manifest line " + std::to_string(line_no) + ": " + what + " '" + s +
                                     "' is not a finite number");
    return v;
}

std::string quote_if_needed(const std::string& s)
{
    if (s.find_first_of(",\"") == std::string::npos && trim(s) == s)
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

std::vector<ManifestEntry> parse_manifest(const std::string& text, const std::filesystem::path& base_dir,
                                          bool require_existing)
{
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;

    int col_path = -1, col_subj = -1, col_std = -1, col_group = -1;
    std::size_t ncols = 0;
    bool have_header = false;
    std::vector<ManifestEntry> entries;

    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.starts_with("\xEF\xBB\xBF"))
            line.erase(0, 3);
        if (trim(line).empty())
            continue;
        const auto fields = split_fields(line, line_no);
        if (!have_header) {
            for (std::size_t i = 0; i < fields.size(); ++i) {
                const auto& f = fields[i];
                int* slot = f == "path" ? &col_path
                            : f == "subjective" ? &col_subj
                            : f == "std" ? &col_std
                            : f == "group" ? &col_group
                                           : nullptr;
                if (!slot)
                    throw Error(Errc::parse, "manifest line " + std::to_string(line_no) + ": unknown column '" + f +
                                                 "' (expected path,subjective[,std][,group])");
                if (*slot >= 0)
                    throw Error(Errc::parse,
                                "manifest line " + std::to_string(line_no) + ": duplicate column '" + f + "'");
                *slot = static_cast<int>(i);
            }
            if (col_path < 0 || col_subj < 0)
                throw Error(Errc::parse, "manifest line " + std::to_string(line_no) +
                                             ": header must contain 'path' and 'subjective'");
            ncols = fields.size();
            have_header = true;
            continue;
        }
        if (fields.size() != ncols)
            throw Error(Errc::parse, "manifest line " + std::to_string(line_no) + ": expected " +
                                         std::to_string(ncols) + " fields, found " + std::to_string(fields.size()));

        ManifestEntry e;
        const auto& p = fields[static_cast<std::size_t>(col_path)];
        if (p.empty())
            throw Error(Errc::parse, "manifest line " + std::to_string(line_no) + ": empty path");
        e.path = std::filesystem::path(p);
        if (e.path.is_relative())
            e.path = base_dir / e.path;
        e.path = e.path.lexically_normal();
        if (require_existing && !std::filesystem::exists(e.path))
            throw Error(Errc::io, "manifest line " + std::to_string(line_no) + ": no such file " + e.path.string());
        e.subjective = parse_real(fields[static_cast<std::size_t>(col_subj)], "subjective", line_no);
        if (col_std >= 0 && !fields[static_cast<std::size_t>(col_std)].empty()) {
            e.std = parse_real(fields[static_cast<std::size_t>(col_std)], "std", line_no);
            if (*e.std < 0.0)
                throw Error(Errc::parse, "manifest line " + std::to_string(line_no) + ": negative std");
        }
        if (col_group >= 0 && !fields[static_cast<std::size_t>(col_group)].empty())
            e.group = fields[static_cast<std::size_t>(col_group)];
        entries.push_back(std::move(e));
    }
    if (!have_header)
        throw Error(Errc::parse, "manifest is empty (missing header)");
    return entries;
}

std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path)
{
    const auto text = read_text_file(path);
    return parse_manifest(text, path.parent_path());
}

void write_manifest(const std::filesystem::path& path, const std::vector<ManifestEntry>& entries)
{
    bool any_std = false, any_group = false;
    for (const auto& e : entries) {
        any_std = any_std || e.std.has_value();
        any_group = any_group || e.group.has_value();
    }
    const auto dir = std::filesystem::absolute(path).parent_path();
    std::string out = "path,subjective";
    if (any_std)
        out += ",std";
    if (any_group)
        out += ",group";
    out += '\n';
    for (const auto& e : entries) {
        auto p = std::filesystem::absolute(e.path).lexically_proximate(dir);
        out += quote_if_needed(p.generic_string()) + ',' + format_number(e.subjective);
        if (any_std)
            out += ',' + (e.std ? format_number(*e.std) : std::string());
        if (any_group)
            out += ',' + quote_if_needed(e.group.value_or(""));
        out += '\n';
    }
    write_text_file(path, out);
}

} // namespace sharpkit
