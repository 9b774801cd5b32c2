#include "svadf/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>

#include "svadf/error.hpp"
#include "svadf/version.hpp"

namespace svadf {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_line(std::string_view line, std::size_t line_no) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cell.push_back('"');
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                cell.push_back(ch);
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            cells.emplace_back(trim(cell));
            cell.clear();
        } else {
            cell.push_back(ch);
        }
    }
    if (quoted) throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": unterminated quote");
    cells.emplace_back(trim(cell));
    return cells;
}

std::string quote_if_needed(const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out.push_back('"');
        out.push_back(ch);
    }
    out.push_back('"');
    return out;
}

}  // namespace

bool CsvTable::has_column(std::string_view name) const {
    return std::find(header.begin(), header.end(), name) != header.end();
}

std::size_t CsvTable::column(std::string_view name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw Error(ErrorKind::Schema, "missing column '" + std::string(name) + "'");
    return static_cast<std::size_t>(it - header.begin());
}

CsvTable parse_csv(std::istream& in) {
    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view view = trim(line);
        if (view.empty() || view.front() == '#') continue;
        auto cells = split_line(view, line_no);
        if (!have_header) {
            table.header = std::move(cells);
            have_header = true;
            continue;
        }
        if (cells.size() != table.header.size()) {
            throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected " +
                                              std::to_string(table.header.size()) + " fields, found " +
                                              std::to_string(cells.size()));
        }
        table.rows.push_back(std::move(cells));
        table.line_numbers.push_back(line_no);
    }
    if (!have_header) throw Error(ErrorKind::Schema, "CSV input has no header row");
    return table;
}

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

double parse_number(std::string_view text, std::size_t line) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw Error(ErrorKind::Parse,
                    "line " + std::to_string(line) + ": cannot parse '" + std::string(text) + "' as a number");
    }
    return value;
}

std::string provenance_line(std::optional<std::uint64_t> seed) {
    std::string s = std::string("# svadf ") + kVersion;
    if (seed) s += " seed=" + std::to_string(*seed);
    return s;
}

PriceSeries ingest_csv(std::istream& in, const IngestOptions& options) {
    const CsvTable csv = parse_csv(in);
    const std::size_t price_col = csv.column(options.price_column);
    const bool dated = !options.date_column.empty();
    const std::size_t date_col = dated ? csv.column(options.date_column) : 0;

    const std::size_t rows = csv.rows.size();
    if (rows < options.min_rows) {
        throw Error(ErrorKind::Data, "need at least " + std::to_string(options.min_rows) + " rows, found " +
                                         std::to_string(rows));
    }
    std::vector<double> values(rows);
    std::vector<Date> dates(dated ? rows : 0);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t line = csv.line_numbers[r];
        values[r] = parse_number(csv.rows[r][price_col], line);
        if (!std::isfinite(values[r])) {
            throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": price is not finite");
        }
        if (dated) {
            try {
                dates[r] = Date::parse(csv.rows[r][date_col]);
            } catch (const Error& e) {
                throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + e.what());
            }
        }
    }
    if (!dated) return PriceSeries(std::move(values));

    std::vector<std::size_t> order(rows);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dates[a] < dates[b]; });
    std::vector<double> sorted_values(rows);
    std::vector<Date> sorted_dates(rows);
    for (std::size_t k = 0; k < rows; ++k) {
        sorted_values[k] = values[order[k]];
        sorted_dates[k] = dates[order[k]];
        if (k > 0 && sorted_dates[k] == sorted_dates[k - 1]) {
            throw Error(ErrorKind::Data, "duplicate date " + sorted_dates[k].to_string() + " (line " +
                                             std::to_string(csv.line_numbers[order[k]]) + ")");
        }
    }
    return PriceSeries(std::move(sorted_values), std::move(sorted_dates));
}

PriceSeries ingest_csv(const std::filesystem::path& path, const IngestOptions& options) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
    PriceSeries series = ingest_csv(in, options);
    series.set_label(path.stem().string());
    return series;
}

void write_series_csv(std::ostream& out, const PriceSeries& series, std::optional<std::uint64_t> seed) {
    out << provenance_line(seed) << '\n';
    const auto values = series.values();
    if (series.dated()) {
        out << "date,close\n";
        for (std::size_t t = 0; t < values.size(); ++t) {
            out << series.dates()[t].to_string() << ',' << format_number(values[t]) << '\n';
        }
    } else {
        out << "index,close\n";
        for (std::size_t t = 0; t < values.size(); ++t) out << t << ',' << format_number(values[t]) << '\n';
    }
}

void write_path_csv(std::ostream& out, const recursive::StatPath& path, const PriceSeries& series,
                    const dating::ThresholdRule& orig_rule, const dating::ThresholdRule& coll_rule,
                    std::optional<std::uint64_t> seed) {
    out << provenance_line(seed) << '\n';
    out << "index,date,r,statistic,cv_origination,cv_collapse\n";
    for (std::size_t i = 0; i < path.size(); ++i) {
        const std::size_t tau = path.taus[i];
        const double r = path.fractions[i];
        out << tau << ',';
        if (series.dated() && tau < series.size()) out << series.dates()[tau].to_string();
        out << ',' << format_number(r) << ',' << format_number(path.values[i]) << ','
            << format_number(dating::threshold_value(orig_rule, path.n, r)) << ','
            << format_number(dating::threshold_value(coll_rule, path.n, r)) << '\n';
    }
}

void write_episode_csv(std::ostream& out, const std::vector<dating::Episode>& episodes,
                       std::optional<std::uint64_t> seed) {
    out << provenance_line(seed) << '\n';
    out << "label,origin_date,collapse_date,r_e_hat,r_f_hat,ongoing,max_stat\n";
    for (const auto& e : episodes) {
        out << quote_if_needed(e.label) << ',' << (e.origin_date ? e.origin_date->to_string() : "") << ','
            << (e.collapse_date ? e.collapse_date->to_string() : "") << ','
            << (e.r_e_hat ? format_number(*e.r_e_hat) : "") << ','
            << (e.r_f_hat ? format_number(*e.r_f_hat) : "") << ',' << (e.ongoing ? "true" : "false") << ','
            << format_number(e.max_stat) << '\n';
    }
}

}  // namespace svadf
