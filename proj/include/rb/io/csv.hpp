#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rb/errors.hpp"
#include "rb/timeseries.hpp"

namespace rb::io {

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream stream(line);
    while (std::getline(stream, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

inline std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

inline std::size_t find_column(const std::vector<std::string>& header,
                               const std::string& name, const std::string& path) {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (trim(header[i]) == name) return i;
    fail(ErrorCode::ColumnMissing, "no column '" + name + "' in " + path);
}

} // namespace detail

/**
 * Reads a comma-separated file with a header row into a TimeSeries. Rows are
 * sorted by the integer timestamp column; an empty value cell becomes a
 * missing observation for forward_fill to repair later. Row numbers in
 * errors are 1-based file lines (the header is line 1).
 */
inline TimeSeries load_csv(const std::string& path, const std::string& value_column,
                           const std::string& timestamp_column,
                           std::optional<int> frequency_hint = std::nullopt,
                           std::string series_name = "") {
    std::ifstream file(path);
    if (!file) fail(ErrorCode::FileNotFound, "cannot open " + path);

    std::string line;
    if (!std::getline(file, line))
        fail(ErrorCode::ParseError, path + " is empty; expected a header row");
    const auto header = detail::split_csv_line(line);
    const std::size_t ts_col = detail::find_column(header, timestamp_column, path);
    const std::size_t val_col = detail::find_column(header, value_column, path);

    struct Row {
        std::int64_t timestamp;
        double value;
        std::size_t line_no;
    };
    std::vector<Row> rows;
    std::size_t line_no = 1;
    while (std::getline(file, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        const auto cells = detail::split_csv_line(line);
        if (cells.size() <= std::max(ts_col, val_col))
            fail(ErrorCode::ParseError, path + " row " + std::to_string(line_no) +
                                            ": expected at least " +
                                            std::to_string(std::max(ts_col, val_col) + 1) +
                                            " columns, found " +
                                            std::to_string(cells.size()));

        Row row;
        row.line_no = line_no;
        const std::string ts_text = detail::trim(cells[ts_col]);
        const auto ts_result = std::from_chars(ts_text.data(), ts_text.data() + ts_text.size(),
                                               row.timestamp);
        if (ts_result.ec != std::errc{} || ts_result.ptr != ts_text.data() + ts_text.size())
            fail(ErrorCode::ParseError, path + " row " + std::to_string(line_no) +
                                            ": timestamp '" + ts_text +
                                            "' is not an integer");

        const std::string val_text = detail::trim(cells[val_col]);
        if (val_text.empty()) {
            row.value = kMissing;
        } else {
            try {
                std::size_t used = 0;
                row.value = std::stod(val_text, &used);
                if (used != val_text.size()) throw std::invalid_argument(val_text);
            } catch (const std::exception&) {
                fail(ErrorCode::ParseError, path + " row " + std::to_string(line_no) +
                                                ": value '" + val_text +
                                                "' is not numeric");
            }
        }
        rows.push_back(row);
    }
    if (rows.empty()) fail(ErrorCode::ParseError, path + " has a header but no data rows");

    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.timestamp < b.timestamp; });
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].timestamp == rows[i - 1].timestamp)
            fail(ErrorCode::DuplicateTimestamp,
                 path + " row " + std::to_string(rows[i].line_no) + ": timestamp " +
                     std::to_string(rows[i].timestamp) + " appears more than once");

    TimeSeries series;
    series.name = series_name.empty()
                      ? std::filesystem::path(path).stem().string()
                      : std::move(series_name);
    series.frequency_hint = frequency_hint;
    series.timestamps.reserve(rows.size());
    series.values.reserve(rows.size());
    for (const Row& row : rows) {
        series.timestamps.push_back(row.timestamp);
        series.values.push_back(row.value);
    }
    series.validate();
    return series;
}

/// Writes a two-column CSV a later load_csv call reproduces exactly.
inline void write_csv(const std::string& path, const TimeSeries& series,
                      const std::string& value_column = "value",
                      const std::string& timestamp_column = "timestamp") {
    std::ofstream file(path);
    if (!file) fail(ErrorCode::FileNotFound, "cannot write " + path);
    file << timestamp_column << "," << value_column << "\n";
    file.precision(17);
    for (std::size_t i = 0; i < series.size(); ++i) {
        file << series.timestamps[i] << ",";
        if (!is_missing(series.values[i])) file << series.values[i];
        file << "\n";
    }
}

} // namespace rb::io
