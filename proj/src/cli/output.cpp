#include "uavcov/cli/output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

namespace uavcov::cli {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

std::string csv_quote(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c == '\n' ? ' ' : c;
    }
    return out + '"';
}

}  // namespace

std::string coverage_csv_row(const CoverageRow& r) {
    std::string line = format_number(r.psi_db) + ',' + format_number(r.psi_linear) + ',';
    if (r.p_cov) line += format_number(*r.p_cov);
    line += ',' + format_number(r.stay_probability) + ',' + std::to_string(r.m0) + ',' +
            std::to_string(r.m_interferer) + ',' + csv_quote(r.status);
    return line;
}

std::string coverage_csv(const std::vector<CoverageRow>& rows) {
    std::string out;
    out.append(kCoverageCsvHeader).append("\n").append(kCoverageCsvColumns).append("\n");
    for (const auto& r : rows) out.append(coverage_csv_row(r)).append("\n");
    return out;
}

void write_atomically(const std::filesystem::path& path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::system_error(errno, std::generic_category(), "cannot open " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw std::system_error(errno, std::generic_category(), "cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace uavcov::cli
