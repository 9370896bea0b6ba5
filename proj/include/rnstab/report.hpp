#pragma once

// CSV / JSON serialization of sweep and accuracy results.
//
// Output is a pure function of the records: floats are written with 17
// significant digits in CSV, rows keep record order, and JSON objects use a
// fixed key order, so identical inputs give identical bytes.

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rnstab/config.hpp"
#include "rnstab/sweep.hpp"

namespace rnstab {

enum class ReportFormat { csv, json };

[[nodiscard]] inline ReportFormat parse_report_format(std::string_view s) {
    if (s == "csv") return ReportFormat::csv;
    if (s == "json") return ReportFormat::json;
    throw InvalidParameter("unknown format: " + std::string(s));
}

inline constexpr std::string_view kSweepCsvHeader =
    "alpha,dt,n_modes,spectral_radius,worst_mode,classification,gamma_max,instability_sufficient,empirical_growth,"
    "blow_up_step";

inline constexpr std::string_view kAccuracyCsvHeader = "alpha,error,stable,blow_up_step";

[[nodiscard]] inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

[[nodiscard]] inline std::string classification_label(const SweepRecord& r) {
    return r.error ? std::string("error") : std::string(to_string(r.classification));
}

namespace detail {

template <typename T>
std::string optional_field(const std::optional<T>& v) {
    if (!v) return {};
    if constexpr (std::is_floating_point_v<T>) return format_double(*v);
    else return std::to_string(*v);
}

template <typename T>
nlohmann::ordered_json optional_json(const std::optional<T>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

inline nlohmann::ordered_json number_json(double v) {
    return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

}  // namespace detail

[[nodiscard]] inline std::string format_csv(const std::vector<SweepRecord>& records) {
    std::string out(kSweepCsvHeader);
    out += '\n';
    for (const auto& r : records) {
        out += format_double(r.alpha) + ',' + format_double(r.dt) + ',' + std::to_string(r.n_modes) + ',' +
               format_double(r.spectral_radius) + ',' + std::to_string(r.worst_mode) + ',' + classification_label(r) +
               ',' + format_double(r.gamma_max) + ',' + (r.instability_sufficient ? "true" : "false") + ',' +
               detail::optional_field(r.empirical_growth) + ',' + detail::optional_field(r.blow_up_step) + '\n';
    }
    return out;
}

[[nodiscard]] inline std::string format_json(const std::vector<SweepRecord>& records) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        nlohmann::ordered_json row;
        row["alpha"] = r.alpha;
        row["dt"] = r.dt;
        row["n_modes"] = r.n_modes;
        row["spectral_radius"] = detail::number_json(r.spectral_radius);
        row["worst_mode"] = r.worst_mode;
        row["classification"] = classification_label(r);
        row["gamma_max"] = detail::number_json(r.gamma_max);
        row["instability_sufficient"] = r.instability_sufficient;
        row["empirical_growth"] = detail::optional_json(r.empirical_growth);
        row["blow_up_step"] = detail::optional_json(r.blow_up_step);
        arr.push_back(std::move(row));
    }
    return arr.dump(2) + '\n';
}

[[nodiscard]] inline std::string format_csv(const std::vector<AccuracyRecord>& records) {
    std::string out(kAccuracyCsvHeader);
    out += '\n';
    for (const auto& r : records)
        out += format_double(r.alpha) + ',' + detail::optional_field(r.error) + ',' + (r.stable ? "true" : "false") +
               ',' + detail::optional_field(r.blow_up_step) + '\n';
    return out;
}

[[nodiscard]] inline std::string format_json(const std::vector<AccuracyRecord>& records) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        nlohmann::ordered_json row;
        row["alpha"] = r.alpha;
        row["error"] = detail::optional_json(r.error);
        row["stable"] = r.stable;
        row["blow_up_step"] = detail::optional_json(r.blow_up_step);
        row["per_mode_error"] = r.per_mode_error;
        arr.push_back(std::move(row));
    }
    return arr.dump(2) + '\n';
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("write failed for '" + path + "'");
}

template <typename Record>
void emit_report(const std::vector<Record>& records, ReportFormat format, const std::string& path) {
    if (records.empty()) throw std::invalid_argument("no records");
    write_text_file(path, format == ReportFormat::csv ? format_csv(records) : format_json(records));
}

/// Parses sweep CSV produced by format_csv back into records.
[[nodiscard]] inline std::vector<SweepRecord> parse_sweep_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kSweepCsvHeader) throw std::invalid_argument("unexpected sweep CSV header");
    std::vector<SweepRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            f.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (f.size() != 10) throw std::invalid_argument("sweep CSV row has " + std::to_string(f.size()) + " fields");
        SweepRecord r;
        r.alpha = std::stod(f[0]);
        r.dt = std::stod(f[1]);
        r.n_modes = std::stoi(f[2]);
        r.spectral_radius = std::stod(f[3]);
        r.worst_mode = std::stoi(f[4]);
        if (f[5] == "stable") r.classification = Classification::stable;
        else if (f[5] == "unstable") r.classification = Classification::unstable;
        else if (f[5] == "marginal") r.classification = Classification::marginal;
        else r.error = f[5];
        r.gamma_max = std::stod(f[6]);
        r.instability_sufficient = f[7] == "true";
        if (!f[8].empty()) r.empirical_growth = std::stod(f[8]);
        if (!f[9].empty()) r.blow_up_step = std::stol(f[9]);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace rnstab
