#include "output.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

namespace symfp::cli {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return fmt::format("{:.17g}", x);
}

namespace {

void emit(std::string& out, const Json& j) {
    switch (j.type()) {
        case Json::value_t::object: {
            out += '{';
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) out += ',';
                first = false;
                out += Json(key).dump();
                out += ':';
                emit(out, value);
            }
            out += '}';
            break;
        }
        case Json::value_t::array: {
            out += '[';
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ',';
                emit(out, j[i]);
            }
            out += ']';
            break;
        }
        case Json::value_t::number_float: {
            const double x = j.get<double>();
            out += std::isfinite(x) ? format_double(x) : "null";
            break;
        }
        default:
            out += j.dump();
    }
}

Json cell_json(const Cell& c) {
    return std::visit(
        [](const auto& v) -> Json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>)
                return nullptr;
            else
                return v;
        },
        c);
}

}  // namespace

std::string to_json_text(const Json& j) {
    std::string out;
    emit(out, j);
    return out;
}

std::string format_cell(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>)
                return "";
            else if constexpr (std::is_same_v<T, bool>)
                return v ? "true" : "false";
            else if constexpr (std::is_same_v<T, double>)
                return format_double(v);
            else if constexpr (std::is_same_v<T, std::string>)
                return v;
            else
                return std::to_string(v);
        },
        c);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    q += '"';
    return q;
}

std::string csv_rows(const Report& r) {
    std::string out;
    for (std::size_t i = 0; i < r.columns.size(); ++i) {
        if (i) out += ',';
        out += csv_field(r.columns[i]);
    }
    out += "\r\n";
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += csv_field(format_cell(row[i]));
        }
        out += "\r\n";
    }
    return out;
}

void write_csv(std::ostream& os, const Report& r) {
    os << "# command: " << r.command << '\n';
    for (const auto& [key, value] : r.meta.items()) os << "# " << key << ": " << to_json_text(value) << '\n';
    os << "# summary: " << to_json_text(r.summary) << '\n';
    for (const auto& c : r.checks)
        os << "# check " << c.name << ": " << (c.passed ? "pass" : "FAIL") << " (" << c.detail << ")\n";
    os << csv_rows(r);
}

void write_json(std::ostream& os, const Report& r) {
    Json meta = r.meta;
    meta["command"] = r.command;
    meta["summary"] = r.summary;
    Json checks = Json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    meta["checks"] = checks;
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json obj = Json::object();
        for (std::size_t i = 0; i < row.size() && i < r.columns.size(); ++i) obj[r.columns[i]] = cell_json(row[i]);
        rows.push_back(std::move(obj));
    }
    Json top = Json::object();
    top["meta"] = std::move(meta);
    top["rows"] = std::move(rows);
    os << to_json_text(top) << '\n';
}

}  // namespace symfp::cli
