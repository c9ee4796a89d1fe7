#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "tct/errors.hpp"
#include "tct/models.hpp"

namespace tct {

/// Shortest representation that round-trips the double exactly (never more
/// than 17 significant digits).
inline std::string format_double(double x) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view field, const std::string& path, std::size_t line,
                           const char* what) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last) {
        std::ostringstream msg;
        msg << path << ":" << line << ": cannot parse " << what << " from '" << field << "'";
        throw parameter_error(msg.str());
    }
    return v;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            out.push_back(trim(line.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

inline std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parameter_error("cannot open file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

}  // namespace detail

/// Write `content` to `path` through a temporary file plus rename, so an
/// interrupted run never leaves a partial file behind.
inline void write_text_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw parameter_error("cannot write file: " + tmp);
        out << content;
        if (!out.flush()) throw parameter_error("write failed: " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw parameter_error("cannot rename " + tmp + " to " + path + ": " + ec.message());
}

/// Load a `lag,value` CSV into a panel, grouping rows by lag while keeping
/// input order within each lag.
inline IncrementPanel load_increments(const std::string& path) {
    const auto lines = detail::read_lines(path);
    if (lines.empty()) throw parameter_error(path + ": empty file");
    if (detail::trim(lines[0]) != "lag,value")
        throw parameter_error(path + ":1: expected header 'lag,value'");
    IncrementPanel panel;
    panel.provenance = "file:" + path;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string_view line = detail::trim(lines[i]);
        if (line.empty()) continue;
        const auto fields = detail::split_csv(line);
        if (fields.size() != 2) {
            std::ostringstream msg;
            msg << path << ":" << i + 1 << ": expected 2 fields, got " << fields.size();
            throw parameter_error(msg.str());
        }
        const double lag = parse_double(fields[0], path, i + 1, "lag");
        const double value = parse_double(fields[1], path, i + 1, "value");
        if (!(lag > 0.0)) {
            std::ostringstream msg;
            msg << path << ":" << i + 1 << ": lag must be positive, got " << lag;
            throw parameter_error(msg.str());
        }
        panel.lag_series(lag).values.push_back(value);
    }
    if (panel.series.empty()) throw parameter_error(path + ": no data rows");
    panel.validate();
    return panel;
}

/// Load a `time,logprice` CSV and build non-overlapping increments
///   x_k = logprice[(k+1) m] - logprice[k m]
/// for each multiple m, at lag m * base_dt. The time column must be
/// strictly increasing and uniformly spaced within 1e-6 of base_dt.
inline IncrementPanel load_log_prices(const std::string& path, double base_dt,
                                      const std::vector<std::int64_t>& lag_multiples) {
    if (!(base_dt > 0.0)) throw parameter_error("load_log_prices: base_dt must be positive");
    if (lag_multiples.empty()) throw parameter_error("load_log_prices: no lag multiples");
    for (auto m : lag_multiples)
        if (m < 1) throw parameter_error("load_log_prices: lag multiples must be positive");

    const auto lines = detail::read_lines(path);
    if (lines.empty()) throw parameter_error(path + ": empty file");
    if (detail::trim(lines[0]) != "time,logprice")
        throw parameter_error(path + ":1: expected header 'time,logprice'");

    std::vector<double> times, prices;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string_view line = detail::trim(lines[i]);
        if (line.empty()) continue;
        const auto fields = detail::split_csv(line);
        if (fields.size() != 2) {
            std::ostringstream msg;
            msg << path << ":" << i + 1 << ": expected 2 fields, got " << fields.size();
            throw parameter_error(msg.str());
        }
        times.push_back(parse_double(fields[0], path, i + 1, "time"));
        prices.push_back(parse_double(fields[1], path, i + 1, "logprice"));
    }
    if (times.size() < 2) throw parameter_error(path + ": need at least 2 rows of prices");
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        const double dt = times[i + 1] - times[i];
        if (!(dt > 0.0))
            throw parameter_error(path + ": time column must be strictly increasing");
        if (std::abs(dt - base_dt) > 1e-6 * base_dt) {
            std::ostringstream msg;
            msg << path << ": non-uniform spacing " << dt << " between rows " << i + 2 << " and "
                << i + 3 << " (expected " << base_dt << ")";
            throw parameter_error(msg.str());
        }
    }

    IncrementPanel panel;
    panel.provenance = "prices:" + path;
    const std::size_t last = prices.size() - 1;
    for (auto m : lag_multiples) {
        const std::size_t um = static_cast<std::size_t>(m);
        if (um > last) {
            std::ostringstream msg;
            msg << "load_log_prices: multiple " << m << " exceeds the series length ("
                << prices.size() << " rows)";
            throw parameter_error(msg.str());
        }
        auto& series = panel.lag_series(static_cast<double>(m) * base_dt);
        for (std::size_t k = 0; (k + 1) * um <= last; ++k)
            series.values.push_back(prices[(k + 1) * um] - prices[k * um]);
    }
    panel.validate();
    return panel;
}

/// `lag,value` rows, one block per series in panel order.
inline std::string increments_csv(const IncrementPanel& panel) {
    std::ostringstream out;
    out << "lag,value\n";
    for (const auto& s : panel.series) {
        const std::string lag = format_double(s.lag);
        for (double v : s.values) out << lag << ',' << format_double(v) << '\n';
    }
    return out.str();
}

}  // namespace tct
