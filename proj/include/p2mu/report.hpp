#pragma once

#include <complex>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace p2mu {

/// Insertion-ordered JSON document for reports and measure specs.
/// Doubles are emitted with 17 significant digits, which round-trips the
/// binary value exactly; output is fully deterministic, so identical
/// configurations produce byte-identical report files.
class Json {
public:
    static Json object() { return Json(Obj{}); }
    static Json array() { return Json(Arr{}); }
    static Json str(std::string s) { return Json(std::move(s)); }
    static Json num(double v) { return Json(v); }
    static Json integer(long long v) { return Json(v); }
    static Json boolean(bool v) { return Json(v); }

    Json() : value_(nullptr) {}

    Json& set(const std::string& key, Json v);
    Json& push(Json v);

    bool is_object() const { return std::holds_alternative<Obj>(value_); }
    bool is_array() const { return std::holds_alternative<Arr>(value_); }

    std::string dump(int indent = 2) const;

    /// [re, im] pair.
    static Json complex_pair(std::complex<double> z) {
        Json a = array();
        a.push(num(z.real()));
        a.push(num(z.imag()));
        return a;
    }

private:
    struct Obj {
        std::vector<std::pair<std::string, Json>> items;
    };
    struct Arr {
        std::vector<Json> items;
    };
    using Value =
        std::variant<std::nullptr_t, bool, long long, double, std::string, Obj, Arr>;

    explicit Json(Value v) : value_(std::move(v)) {}
    void write(std::string& out, int indent, int depth) const;

    Value value_;
};

/// Format a double with 17 significant digits (%.17g).
std::string format_double(double v);

/// One CSV table; the first row is a '#'-prefixed header comment naming the
/// columns, numbers use 17 significant digits.
class Csv {
public:
    explicit Csv(std::vector<std::string> columns) : columns_(std::move(columns)) {}
    void add_row(const std::vector<double>& row);
    std::string dump() const;
    std::size_t rows() const { return rows_.size(); }

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<double>> rows_;
};

} // namespace p2mu
