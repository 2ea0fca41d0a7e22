#include "p2mu/measure_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "p2mu/errors.hpp"
#include "p2mu/report.hpp"

namespace p2mu {

namespace {

using nlohmann::json;

cplx read_complex(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw parse_error("measure spec: field '" + field + "' must be a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

const json& require(const json& j, const std::string& field, const std::string& ctx) {
    auto it = j.find(field);
    if (it == j.end())
        throw parse_error("measure spec: missing field '" + field + "' in " + ctx);
    return *it;
}

BivariatePoly read_density(const json& j, const std::string& ctx) {
    if (!j.is_array()) throw parse_error("measure spec: 'density' must be an array in " + ctx);
    BivariatePoly p;
    for (const json& term : j) {
        if (!term.is_object())
            throw parse_error("measure spec: density term must be an object in " + ctx);
        const int m = require(term, "m", ctx).get<int>();
        const int k = require(term, "k", ctx).get<int>();
        if (m < 0 || k < 0) throw parse_error("measure spec: density exponents must be >= 0");
        p.set(m, k, p.coeff(m, k) + read_complex(require(term, "c", ctx), "c"));
    }
    return p;
}

Json density_json(const BivariatePoly& p) {
    Json arr = Json::array();
    for (const auto& [mk, c] : p.terms()) {
        Json t = Json::object();
        t.set("m", Json::integer(mk.first));
        t.set("k", Json::integer(mk.second));
        t.set("c", Json::complex_pair(c));
        arr.push(std::move(t));
    }
    return arr;
}

Json samples_json(const std::vector<std::pair<double, double>>& samples) {
    Json arr = Json::array();
    for (const auto& [t, v] : samples) {
        Json pair = Json::array();
        pair.push(Json::num(t));
        pair.push(Json::num(v));
        arr.push(std::move(pair));
    }
    return arr;
}

std::vector<std::pair<double, double>> read_samples(const json& j, const std::string& ctx) {
    if (!j.is_array()) throw parse_error("measure spec: samples must be an array in " + ctx);
    std::vector<std::pair<double, double>> out;
    for (const json& pair : j) {
        if (!pair.is_array() || pair.size() != 2)
            throw parse_error("measure spec: sample must be a [param, value] pair in " + ctx);
        out.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    return out;
}

} // namespace

ComplexMeasure parse_measure_spec(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("measure spec: ") + e.what());
    }
    if (!doc.is_object()) throw parse_error("measure spec: top level must be an object");
    const json& comps = require(doc, "components", "top level");
    if (!comps.is_array()) throw parse_error("measure spec: 'components' must be an array");

    ComplexMeasure mu;
    if (auto it = doc.find("max_degree"); it != doc.end()) {
        if (!it->is_number_integer() || it->get<int>() < 1)
            throw parse_error("measure spec: 'max_degree' must be a positive integer");
        mu.set_max_degree(it->get<int>());
    }

    int index = 0;
    for (const json& cj : comps) {
        const std::string ctx = "components[" + std::to_string(index++) + "]";
        if (!cj.is_object()) throw parse_error("measure spec: " + ctx + " must be an object");
        const std::string type = require(cj, "type", ctx).get<std::string>();
        if (type == "atom") {
            AtomComponent a;
            a.point = read_complex(require(cj, "point", ctx), ctx + ".point");
            a.weight = read_complex(require(cj, "weight", ctx), ctx + ".weight");
            mu.add_component(a);
        } else if (type == "circle_fourier") {
            const json& coeffs = require(cj, "coeffs", ctx);
            if (!coeffs.is_object())
                throw parse_error("measure spec: " + ctx + ".coeffs must be an object");
            CircleFourierComponent c;
            for (auto it = coeffs.begin(); it != coeffs.end(); ++it) {
                int k = 0;
                try {
                    std::size_t used = 0;
                    k = std::stoi(it.key(), &used);
                    if (used != it.key().size()) throw std::invalid_argument("trailing");
                } catch (const std::exception&) {
                    throw parse_error("measure spec: " + ctx + ".coeffs key '" + it.key() +
                                      "' is not an integer");
                }
                c.density.set(k, read_complex(it.value(), ctx + ".coeffs[" + it.key() + "]"));
            }
            mu.add_component(c);
        } else if (type == "bergman") {
            BergmanComponent b;
            b.alpha = require(cj, "alpha", ctx).get<int>();
            if (b.alpha < 0) throw parse_error("measure spec: " + ctx + ".alpha must be >= 0");
            if (auto it = cj.find("density"); it != cj.end()) b.density = read_density(*it, ctx);
            mu.add_component(b);
        } else if (type == "lens_harmonic") {
            LensHarmonicComponent l;
            l.c = require(cj, "c", ctx).get<double>();
            if (!(l.c > 0.0 && l.c < 1.0))
                throw parse_error("measure spec: " + ctx + ".c must lie in (0,1)");
            if (auto it = cj.find("density"); it != cj.end()) l.density = read_density(*it, ctx);
            if (auto it = cj.find("inv_abs_g_sq"); it != cj.end()) {
                l.inv_abs_g_sq = true;
                l.inv_a = read_complex(require(*it, "a", ctx), ctx + ".inv_abs_g_sq.a");
                l.inv_alpha = require(*it, "alpha", ctx).get<int>();
            }
            if (auto it = cj.find("samples"); it != cj.end()) {
                if (auto a = it->find("arc"); a != it->end()) l.arc_samples = read_samples(*a, ctx);
                if (auto ch = it->find("chord"); ch != it->end())
                    l.chord_samples = read_samples(*ch, ctx);
            }
            l.lens = std::make_shared<LensRegion>(l.c);
            mu.add_component(std::move(l));
        } else {
            throw capability_error("measure spec: unknown component type '" + type + "' in " +
                                   ctx);
        }
    }
    return mu;
}

std::string serialize_measure_spec(const ComplexMeasure& mu) {
    Json doc = Json::object();
    if (mu.max_degree() != 64) doc.set("max_degree", Json::integer(mu.max_degree()));
    Json comps = Json::array();
    for (const MeasureComponent& comp : mu.components()) {
        Json cj = Json::object();
        std::visit(
            [&](const auto& c) {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, AtomComponent>) {
                    cj.set("type", Json::str("atom"));
                    cj.set("point", Json::complex_pair(c.point));
                    cj.set("weight", Json::complex_pair(c.weight));
                } else if constexpr (std::is_same_v<T, CircleFourierComponent>) {
                    cj.set("type", Json::str("circle_fourier"));
                    Json coeffs = Json::object();
                    for (const auto& [k, v] : c.density.coeffs())
                        coeffs.set(std::to_string(k), Json::complex_pair(v));
                    cj.set("coeffs", std::move(coeffs));
                } else if constexpr (std::is_same_v<T, BergmanComponent>) {
                    cj.set("type", Json::str("bergman"));
                    cj.set("alpha", Json::integer(c.alpha));
                    if (!c.density.is_one()) cj.set("density", density_json(c.density));
                } else {
                    cj.set("type", Json::str("lens_harmonic"));
                    cj.set("c", Json::num(c.c));
                    if (!c.density.is_one()) cj.set("density", density_json(c.density));
                    if (c.inv_abs_g_sq) {
                        Json inv = Json::object();
                        inv.set("a", Json::complex_pair(c.inv_a));
                        inv.set("alpha", Json::integer(c.inv_alpha));
                        cj.set("inv_abs_g_sq", std::move(inv));
                    }
                    if (!c.arc_samples.empty() || !c.chord_samples.empty()) {
                        Json samples = Json::object();
                        if (!c.arc_samples.empty())
                            samples.set("arc", samples_json(c.arc_samples));
                        if (!c.chord_samples.empty())
                            samples.set("chord", samples_json(c.chord_samples));
                        cj.set("samples", std::move(samples));
                    }
                }
            },
            comp);
        comps.push(std::move(cj));
    }
    doc.set("components", std::move(comps));
    return doc.dump(2);
}

bool measure_identical(const ComplexMeasure& a, const ComplexMeasure& b) {
    if (a.max_degree() != b.max_degree()) return false;
    if (a.components().size() != b.components().size()) return false;
    for (std::size_t i = 0; i < a.components().size(); ++i) {
        const MeasureComponent& ca = a.components()[i];
        const MeasureComponent& cb = b.components()[i];
        if (ca.index() != cb.index()) return false;
        bool same = true;
        std::visit(
            [&](const auto& x) {
                using T = std::decay_t<decltype(x)>;
                const auto& y = std::get<T>(cb);
                if constexpr (std::is_same_v<T, AtomComponent>) {
                    same = x.point == y.point && x.weight == y.weight;
                } else if constexpr (std::is_same_v<T, CircleFourierComponent>) {
                    same = x.density.coeffs() == y.density.coeffs();
                } else if constexpr (std::is_same_v<T, BergmanComponent>) {
                    same = x.alpha == y.alpha && x.density.terms() == y.density.terms();
                } else {
                    same = x.c == y.c && x.density.terms() == y.density.terms() &&
                           x.inv_abs_g_sq == y.inv_abs_g_sq &&
                           (!x.inv_abs_g_sq ||
                            (x.inv_a == y.inv_a && x.inv_alpha == y.inv_alpha)) &&
                           x.arc_samples == y.arc_samples && x.chord_samples == y.chord_samples;
                }
            },
            ca);
        if (!same) return false;
    }
    return true;
}

ComplexMeasure load_measure_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open measure file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_measure_spec(ss.str());
}

} // namespace p2mu
