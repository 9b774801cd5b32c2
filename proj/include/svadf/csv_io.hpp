#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "svadf/dating.hpp"
#include "svadf/recursive.hpp"
#include "svadf/series.hpp"

namespace svadf {

/// Header row plus string cells. '#' lines and blank lines are skipped.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers;  ///< 1-based source line of each row

    bool has_column(std::string_view name) const;
    /// Throws ErrorKind::Schema naming the column when absent.
    std::size_t column(std::string_view name) const;
};

/// Comma-separated with optional double quotes. Rows with the wrong cell count are Parse errors.
CsvTable parse_csv(std::istream& in);

/// Shortest round-trip representation of a double.
std::string format_number(double value);
/// Full-string decimal parse; Parse error citing `line` otherwise.
double parse_number(std::string_view text, std::size_t line);

/// "# svadf <version> seed=<seed>" (or without the seed when absent).
std::string provenance_line(std::optional<std::uint64_t> seed);

inline constexpr std::size_t kMinIngestRows = 20;

struct IngestOptions {
    std::string date_column = "date";
    std::string price_column = "close";
    std::size_t min_rows = kMinIngestRows;
};

/**
 * @brief Reads a dated price series.
 *
 * Rows are sorted by date after parsing; a repeated date is a Data error.
 * An empty date column name reads an undated series in file order.
 */
PriceSeries ingest_csv(std::istream& in, const IngestOptions& options = {});
PriceSeries ingest_csv(const std::filesystem::path& path, const IngestOptions& options = {});

/// Columns: date (when dated), close. Ingesting the output restores the values exactly.
void write_series_csv(std::ostream& out, const PriceSeries& series, std::optional<std::uint64_t> seed = {});

/// Columns: index, date, r, statistic, cv_origination, cv_collapse. date is empty for undated series.
void write_path_csv(std::ostream& out, const recursive::StatPath& path, const PriceSeries& series,
                    const dating::ThresholdRule& orig_rule, const dating::ThresholdRule& coll_rule,
                    std::optional<std::uint64_t> seed = {});

/// Columns: label, origin_date, collapse_date, r_e_hat, r_f_hat, ongoing, max_stat. No episode writes the header only.
void write_episode_csv(std::ostream& out, const std::vector<dating::Episode>& episodes,
                       std::optional<std::uint64_t> seed = {});

}  // namespace svadf
