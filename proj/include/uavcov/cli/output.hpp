#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace uavcov::cli {

/// First line of every coverage CSV. Bump the version when columns change.
inline constexpr std::string_view kCoverageCsvHeader = "# uavcov-coverage-csv v1";
inline constexpr std::string_view kCoverageCsvColumns =
    "psi_db,psi_linear,p_cov,stay_probability,m0,m_interferer,status";
inline constexpr std::string_view kSweepCsvHeader = "# uavcov-sweep-csv v1";
inline constexpr std::string_view kHistogramCsvHeader = "# uavcov-histogram-csv v1";

struct CoverageRow {
    double psi_db = 0.0;
    double psi_linear = 0.0;
    std::optional<double> p_cov;
    double stay_probability = 0.0;
    int m0 = 1;
    int m_interferer = 1;
    std::string status;  // "ok" or the error message
};

/// Locale-independent shortest round-trip formatting ('.' decimal).
std::string format_number(double v);

/// Versioned header, column line, then one row per entry. Status messages
/// are quoted; an absent p_cov is an empty field.
std::string coverage_csv(const std::vector<CoverageRow>& rows);
std::string coverage_csv_row(const CoverageRow& row);

/// Writes `content` to a sibling temporary file and renames it over `path`,
/// so readers never observe a partial file.
void write_atomically(const std::filesystem::path& path, std::string_view content);

}  // namespace uavcov::cli
