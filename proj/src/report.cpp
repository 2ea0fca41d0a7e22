#include "p2mu/report.hpp"

#include <cmath>
#include <cstdio>

#include "p2mu/errors.hpp"

namespace p2mu {

std::string format_double(double v) {
    if (std::isnan(v)) return "\"nan\"";
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Json& Json::set(const std::string& key, Json v) {
    if (!is_object()) throw precondition_error("Json::set on a non-object");
    auto& items = std::get<Obj>(value_).items;
    for (auto& [k, old] : items)
        if (k == key) {
            old = std::move(v);
            return *this;
        }
    items.emplace_back(key, std::move(v));
    return *this;
}

Json& Json::push(Json v) {
    if (!is_array()) throw precondition_error("Json::push on a non-array");
    std::get<Arr>(value_).items.push_back(std::move(v));
    return *this;
}

namespace {

void write_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default: out += ch;
        }
    }
    out += '"';
}

} // namespace

void Json::write(std::string& out, int indent, int depth) const {
    const std::string pad = indent >= 0 ? std::string(static_cast<std::size_t>(indent) * (depth + 1), ' ') : "";
    const std::string pad_close = indent >= 0 ? std::string(static_cast<std::size_t>(indent) * depth, ' ') : "";
    const char* nl = indent >= 0 ? "\n" : "";
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::nullptr_t>)
                out += "null";
            else if constexpr (std::is_same_v<T, bool>)
                out += v ? "true" : "false";
            else if constexpr (std::is_same_v<T, long long>)
                out += std::to_string(v);
            else if constexpr (std::is_same_v<T, double>)
                out += format_double(v);
            else if constexpr (std::is_same_v<T, std::string>)
                write_escaped(out, v);
            else if constexpr (std::is_same_v<T, Obj>) {
                if (v.items.empty()) {
                    out += "{}";
                    return;
                }
                out += '{';
                out += nl;
                for (std::size_t i = 0; i < v.items.size(); ++i) {
                    out += pad;
                    write_escaped(out, v.items[i].first);
                    out += indent >= 0 ? ": " : ":";
                    v.items[i].second.write(out, indent, depth + 1);
                    if (i + 1 < v.items.size()) out += ',';
                    out += nl;
                }
                out += pad_close;
                out += '}';
            } else if constexpr (std::is_same_v<T, Arr>) {
                if (v.items.empty()) {
                    out += "[]";
                    return;
                }
                out += '[';
                out += nl;
                for (std::size_t i = 0; i < v.items.size(); ++i) {
                    out += pad;
                    v.items[i].write(out, indent, depth + 1);
                    if (i + 1 < v.items.size()) out += ',';
                    out += nl;
                }
                out += pad_close;
                out += ']';
            }
        },
        value_);
}

std::string Json::dump(int indent) const {
    std::string out;
    write(out, indent, 0);
    if (indent >= 0) out += '\n';
    return out;
}

void Csv::add_row(const std::vector<double>& row) {
    if (row.size() != columns_.size()) throw precondition_error("Csv: row width mismatch");
    rows_.push_back(row);
}

std::string Csv::dump() const {
    std::string out = "# ";
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        out += columns_[i];
        if (i + 1 < columns_.size()) out += ", ";
    }
    out += '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::string cell = format_double(row[i]);
            // bare numbers in CSV cells
            if (!cell.empty() && cell.front() == '"') cell = cell.substr(1, cell.size() - 2);
            out += cell;
            if (i + 1 < row.size()) out += ',';
        }
        out += '\n';
    }
    return out;
}

} // namespace p2mu
