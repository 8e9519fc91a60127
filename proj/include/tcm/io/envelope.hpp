#pragma once

// Command output: an envelope of {command, params, rows, meta} with JSON, CSV
// and aligned-table emitters. Floating-point cells carry 12 significant digits.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace tcm::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "1.0.0";

// Rounds to 12 significant digits; the shortest round-trip form of the result
// is what the JSON writer emits.
inline double round12(double v) {
    if (!std::isfinite(v)) return v;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

inline std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct OutputEnvelope {
    std::string command;
    Json params = Json::object();
    std::vector<Json> rows;  // each an object; all rows share the first row's keys
    Json meta = Json::object();

    static OutputEnvelope make(std::string command, Json params) {
        OutputEnvelope e;
        e.command = std::move(command);
        e.params = std::move(params);
        e.meta = Json{{"version", kVersion}, {"timestamp", utc_timestamp()}};
        return e;
    }

    friend bool operator==(const OutputEnvelope&, const OutputEnvelope&) = default;
};

inline Json to_json(const OutputEnvelope& e) {
    Json rows = Json::array();
    for (const auto& r : e.rows) rows.push_back(r);
    return Json{{"command", e.command}, {"params", e.params}, {"rows", rows}, {"meta", e.meta}};
}

inline OutputEnvelope envelope_from_json(const Json& j) {
    OutputEnvelope e;
    e.command = j.at("command").get<std::string>();
    e.params = j.at("params");
    for (const auto& r : j.at("rows")) e.rows.push_back(r);
    e.meta = j.at("meta");
    return e;
}

inline OutputEnvelope parse_envelope(const std::string& text) { return envelope_from_json(Json::parse(text)); }

inline std::string serialize(const OutputEnvelope& e, int indent = 2) { return to_json(e).dump(indent); }

// Text form of one cell, shared by the CSV and table writers.
inline std::string cell_text(const Json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_float()) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", v.get<double>());
        return buf;
    }
    return v.dump();
}

inline std::vector<std::string> columns(const OutputEnvelope& e) {
    std::vector<std::string> cols;
    if (!e.rows.empty())
        for (const auto& [k, _] : e.rows.front().items()) cols.push_back(k);
    return cols;
}

inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + '"';
}

inline void write_csv(std::ostream& os, const OutputEnvelope& e) {
    const auto cols = columns(e);
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << csv_quote(cols[i]);
    os << '\n';
    for (const auto& r : e.rows) {
        for (std::size_t i = 0; i < cols.size(); ++i)
            os << (i ? "," : "") << csv_quote(cell_text(r.contains(cols[i]) ? r.at(cols[i]) : Json()));
        os << '\n';
    }
}

// Minimal RFC 4180 reader, used to check the CSV writer.
inline std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> out;
    std::vector<std::string> row;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                cell += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cell += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            row.push_back(std::move(cell));
            cell.clear();
        } else if (c == '\n') {
            row.push_back(std::move(cell));
            cell.clear();
            out.push_back(std::move(row));
            row.clear();
        } else {
            cell += c;
        }
    }
    if (!cell.empty() || !row.empty()) {
        row.push_back(std::move(cell));
        out.push_back(std::move(row));
    }
    return out;
}

inline void write_table(std::ostream& os, const OutputEnvelope& e) {
    const auto cols = columns(e);
    if (cols.empty()) {
        os << "(no rows)\n";
        return;
    }
    std::vector<std::vector<std::string>> cells;
    std::vector<std::size_t> width(cols.size());
    for (std::size_t i = 0; i < cols.size(); ++i) width[i] = cols[i].size();
    for (const auto& r : e.rows) {
        auto& line = cells.emplace_back();
        for (std::size_t i = 0; i < cols.size(); ++i) {
            line.push_back(cell_text(r.contains(cols[i]) ? r.at(cols[i]) : Json()));
            width[i] = std::max(width[i], line.back().size());
        }
    }
    auto emit = [&](const std::vector<std::string>& line) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            os << (i ? "  " : "") << line[i];
            if (i + 1 < line.size()) os << std::string(width[i] - line[i].size(), ' ');
        }
        os << '\n';
    };
    emit(cols);
    std::vector<std::string> rule;
    for (auto w : width) rule.emplace_back(w, '-');
    emit(rule);
    for (const auto& line : cells) emit(line);
}

enum class Format { Table, Json, Csv };

inline void write(std::ostream& os, const OutputEnvelope& e, Format f) {
    switch (f) {
        case Format::Json: os << serialize(e) << '\n'; break;
        case Format::Csv: write_csv(os, e); break;
        case Format::Table: write_table(os, e); break;
    }
}

}  // namespace tcm::io
