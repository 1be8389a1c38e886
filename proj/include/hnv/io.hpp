#pragma once

// Text and JSON formats: complex literals "a+bi", comma-separated points,
// tagged-union measure files, function descriptors, check reports and run
// configuration. All JSON readers reject unknown fields.

#include <charconv>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "hnv/analysis.hpp"
#include "hnv/catalogue.hpp"
#include "hnv/functions.hpp"
#include "hnv/measures.hpp"

namespace hnv::io {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Numbers

/// Shortest round-trip decimal for a finite double; -0 prints as 0.
inline std::string format_real(double x) {
    if (x == 0.0) x = 0.0;
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

/// "a+bi" / "a-bi".
inline std::string format_complex(cplx z) {
    double im = z.imag();
    if (im == 0.0) im = 0.0;
    std::string out = format_real(z.real());
    out += std::signbit(im) ? '-' : '+';
    out += format_real(std::abs(im));
    out += 'i';
    return out;
}

inline std::string format_point(std::span<const cplx> z) {
    std::string out;
    for (std::size_t j = 0; j < z.size(); ++j) {
        if (j) out += ',';
        out += format_complex(z[j]);
    }
    return out;
}

inline std::string format_point(const CutPlanePoint& z) { return format_point(z.coords()); }

namespace detail {

inline std::string trim(std::string_view s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

inline double parse_real_strict(std::string_view s, std::string_view whole) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || r.ec != std::errc() || r.ptr != s.data() + s.size())
        throw ParseError("cannot parse number '" + std::string(s) + "' in '" + std::string(whole) + "'");
    return v;
}

}  // namespace detail

/// Accepts "3", "-2.5", "4i", "-i", "1+2i", "1e-3-2.5e2i", "0.5-i" (spaces ignored).
inline cplx parse_complex(std::string_view text) {
    const std::string s = detail::trim(text);
    if (s.empty()) throw ParseError("empty complex literal");
    if (s.back() != 'i') return {detail::parse_real_strict(s, text), 0.0};

    const std::string body = s.substr(0, s.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    const std::string re_part = split == std::string::npos ? "" : body.substr(0, split);
    const std::string im_part = split == std::string::npos ? body : body.substr(split);
    double im = 0.0;
    if (im_part.empty() || im_part == "+")
        im = 1.0;
    else if (im_part == "-")
        im = -1.0;
    else
        im = detail::parse_real_strict(im_part, text);
    const double re = re_part.empty() ? 0.0 : detail::parse_real_strict(re_part, text);
    return {re, im};
}

inline std::vector<cplx> parse_coords(std::string_view text) {
    std::vector<cplx> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        out.push_back(parse_complex(text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                                       : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

/// "z1,z2,...,zn" -> CutPlanePoint. Real coordinates raise InvalidPoint.
inline CutPlanePoint parse_point(std::string_view text) { return CutPlanePoint(parse_coords(text), kMaxMaskDimension); }

// ---------------------------------------------------------------------------
// Strict JSON access

namespace detail {

inline void require_object(const json& j, const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": expected a JSON object");
}

inline void allow_fields(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    require_object(j, where);
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& item : j.items())
        if (!ok.count(item.key())) throw ParseError(where + ": unknown field '" + item.key() + "'");
}

inline const json& field(const json& j, const char* name, const std::string& where) {
    if (!j.contains(name)) throw ParseError(where + ": missing field '" + name + "'");
    return j.at(name);
}

inline double number(const json& j, const std::string& where) {
    if (!j.is_number()) throw ParseError(where + ": expected a number");
    return j.get<double>();
}

inline std::size_t count(const json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<long long>() < 0) throw ParseError(where + ": expected a nonnegative integer");
    return j.get<std::size_t>();
}

inline std::string text(const json& j, const std::string& where) {
    if (!j.is_string()) throw ParseError(where + ": expected a string");
    return j.get<std::string>();
}

inline std::vector<double> numbers(const json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected an array of numbers");
    std::vector<double> out;
    for (std::size_t k = 0; k < j.size(); ++k) out.push_back(number(j[k], where + "[" + std::to_string(k) + "]"));
    return out;
}

inline json number_or_label(double x) {
    if (std::isfinite(x)) return x;
    return format_real(x);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Densities and measures

inline DensityDescriptor parse_density(const json& j, const std::string& where = "density") {
    detail::require_object(j, where);
    const std::string form = detail::text(detail::field(j, "form", where), where + ".form");
    if (form == "constant") {
        detail::allow_fields(j, {"form", "c"}, where);
        return DensityDescriptor::constant(detail::number(detail::field(j, "c", where), where + ".c"));
    }
    if (form == "cauchy_weight") {
        detail::allow_fields(j, {"form"}, where);
        return DensityDescriptor::cauchy_weight();
    }
    if (form == "gaussian") {
        detail::allow_fields(j, {"form", "mean", "sigma"}, where);
        return DensityDescriptor::gaussian(detail::number(detail::field(j, "mean", where), where + ".mean"),
                                           detail::number(detail::field(j, "sigma", where), where + ".sigma"));
    }
    if (form == "rational_table") {
        detail::allow_fields(j, {"form", "name"}, where);
        return DensityDescriptor::rational(detail::text(detail::field(j, "name", where), where + ".name"));
    }
    throw ParseError(where + ": unknown density form '" + form + "'");
}

inline json to_json(const DensityDescriptor& d) {
    return std::visit(
        [](const auto& f) -> json {
            using D = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<D, ConstantDensity>) return {{"form", "constant"}, {"c", f.c}};
            else if constexpr (std::is_same_v<D, CauchyWeightDensity>) return {{"form", "cauchy_weight"}};
            else if constexpr (std::is_same_v<D, GaussianDensity>)
                return {{"form", "gaussian"}, {"mean", f.mean}, {"sigma", f.sigma}};
            else return {{"form", "rational_table"}, {"name", f.name}};
        },
        d.form());
}

inline Measure parse_measure(const json& j, const std::string& where = "measure") {
    detail::require_object(j, where);
    const std::string type = detail::text(detail::field(j, "type", where), where + ".type");
    if (type == "atomic") {
        detail::allow_fields(j, {"type", "points", "weights", "dimension"}, where);
        const json& pts = detail::field(j, "points", where);
        if (!pts.is_array()) throw ParseError(where + ".points: expected an array");
        std::vector<std::vector<double>> points;
        for (std::size_t k = 0; k < pts.size(); ++k)
            points.push_back(detail::numbers(pts[k], where + ".points[" + std::to_string(k) + "]"));
        std::vector<double> weights = detail::numbers(detail::field(j, "weights", where), where + ".weights");
        const std::size_t dim = j.contains("dimension") ? detail::count(j["dimension"], where + ".dimension") : 0;
        return Measure::atomic(std::move(points), std::move(weights), dim);
    }
    if (type == "lebesgue_scaled") {
        detail::allow_fields(j, {"type", "dimension", "c"}, where);
        return Measure::lebesgue(detail::count(detail::field(j, "dimension", where), where + ".dimension"),
                                 detail::number(detail::field(j, "c", where), where + ".c"));
    }
    if (type == "product_density") {
        detail::allow_fields(j, {"type", "factors", "scale"}, where);
        const json& fs = detail::field(j, "factors", where);
        if (!fs.is_array()) throw ParseError(where + ".factors: expected an array");
        std::vector<DensityDescriptor> factors;
        for (std::size_t k = 0; k < fs.size(); ++k)
            factors.push_back(parse_density(fs[k], where + ".factors[" + std::to_string(k) + "]"));
        const double scale = j.contains("scale") ? detail::number(j["scale"], where + ".scale") : 1.0;
        return Measure::product(std::move(factors), scale);
    }
    if (type == "curve_pushforward") {
        detail::allow_fields(j, {"type", "curve", "weight", "scale"}, where);
        const json& curve = detail::field(j, "curve", where);
        detail::allow_fields(curve, {"alpha", "beta"}, where + ".curve");
        return Measure::curve(detail::numbers(detail::field(curve, "alpha", where + ".curve"), where + ".curve.alpha"),
                              detail::numbers(detail::field(curve, "beta", where + ".curve"), where + ".curve.beta"),
                              parse_density(detail::field(j, "weight", where), where + ".weight"),
                              detail::number(detail::field(j, "scale", where), where + ".scale"));
    }
    if (type == "sum") {
        detail::allow_fields(j, {"type", "terms", "dimension"}, where);
        const json& ts = detail::field(j, "terms", where);
        if (!ts.is_array()) throw ParseError(where + ".terms: expected an array");
        std::vector<Measure> terms;
        for (std::size_t k = 0; k < ts.size(); ++k)
            terms.push_back(parse_measure(ts[k], where + ".terms[" + std::to_string(k) + "]"));
        const std::size_t dim = j.contains("dimension") ? detail::count(j["dimension"], where + ".dimension") : 0;
        return Measure::sum(std::move(terms), dim);
    }
    throw ParseError(where + ": unknown measure type '" + type + "'");
}

inline json to_json(const Measure& mu) {
    return std::visit(
        [&mu](const auto& m) -> json {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, AtomicMeasure>) {
                return {{"type", "atomic"}, {"points", m.points}, {"weights", m.weights}, {"dimension", mu.dimension()}};
            } else if constexpr (std::is_same_v<M, LebesgueMeasure>) {
                return {{"type", "lebesgue_scaled"}, {"dimension", mu.dimension()}, {"c", m.c}};
            } else if constexpr (std::is_same_v<M, ProductMeasure>) {
                json fs = json::array();
                for (const auto& d : m.factors) fs.push_back(to_json(d));
                return {{"type", "product_density"}, {"factors", fs}, {"scale", m.scale}};
            } else if constexpr (std::is_same_v<M, CurveMeasure>) {
                return {{"type", "curve_pushforward"},
                        {"curve", {{"alpha", m.alpha}, {"beta", m.beta}}},
                        {"weight", to_json(m.weight)},
                        {"scale", m.scale}};
            } else {
                json ts = json::array();
                for (const auto& t : m.terms) ts.push_back(to_json(t));
                return {{"type", "sum"}, {"terms", ts}, {"dimension", mu.dimension()}};
            }
        },
        mu.variant());
}

/// A measure object, or the name of a built-in measure. "zero" needs
/// `zero_dimension` (the caller infers it from context).
inline Measure measure_from_json(const json& j, const std::string& where, std::size_t zero_dimension = 0) {
    if (j.is_string()) {
        const std::string name = j.get<std::string>();
        if (name == "zero") {
            if (zero_dimension == 0) throw ParseError(where + ": cannot infer the dimension of 'zero'");
            return Measure::zero(zero_dimension);
        }
        if (auto m = catalogue::named_measure(name)) return *m;
        throw ParseError(where + ": unknown measure name '" + name + "'");
    }
    return parse_measure(j, where);
}

// ---------------------------------------------------------------------------
// Function descriptors

/// {"type":"catalogue","id"} | {"type":"cauchy","measure"} |
/// {"type":"herglotz","a","b","measure"}. "mu" is accepted in place of
/// "measure"; a measure may be given by built-in name.
inline EvaluableFunction parse_function(const json& j, const QuadratureConfig& cfg = {},
                                        const std::string& where = "function") {
    detail::require_object(j, where);
    const std::string type = detail::text(detail::field(j, "type", where), where + ".type");
    auto measure_field = [&](std::size_t zero_dim) {
        const bool has_measure = j.contains("measure"), has_mu = j.contains("mu");
        if (has_measure == has_mu) throw ParseError(where + ": give exactly one of 'measure' or 'mu'");
        return measure_from_json(has_measure ? j["measure"] : j["mu"], where + (has_measure ? ".measure" : ".mu"),
                                 zero_dim);
    };
    if (type == "catalogue") {
        detail::allow_fields(j, {"type", "id"}, where);
        return catalogue::function(detail::text(detail::field(j, "id", where), where + ".id"));
    }
    if (type == "cauchy") {
        detail::allow_fields(j, {"type", "measure", "mu"}, where);
        const Measure mu = measure_field(0);
        return cauchy_function(mu, cfg, "cauchy");
    }
    if (type == "herglotz") {
        detail::allow_fields(j, {"type", "a", "b", "measure", "mu"}, where);
        const double a = detail::number(detail::field(j, "a", where), where + ".a");
        const std::vector<double> b = detail::numbers(detail::field(j, "b", where), where + ".b");
        HerglotzTriple triple{a, b, measure_field(b.size())};
        return herglotz_function(triple, cfg, "herglotz");
    }
    throw ParseError(where + ": unknown function type '" + type + "'");
}

namespace detail {

// Quotes bare identifiers so that {a:1,b:[2],mu:zero} reads as JSON.
inline std::string quote_bare_words(std::string_view s) {
    std::string out;
    bool in_string = false;
    for (std::size_t k = 0; k < s.size();) {
        const char c = s[k];
        if (in_string) {
            out += c;
            if (c == '\\' && k + 1 < s.size()) out += s[++k];
            else if (c == '"') in_string = false;
            ++k;
            continue;
        }
        if (c == '"') {
            in_string = true;
            out += c;
            ++k;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t e = k;
            while (e < s.size() && (std::isalnum(static_cast<unsigned char>(s[e])) || s[e] == '_' || s[e] == '-')) ++e;
            const std::string word(s.substr(k, e - k));
            const bool in_number = !out.empty() && (std::isdigit(static_cast<unsigned char>(out.back())) || out.back() == '.');
            if (word == "true" || word == "false" || word == "null" || in_number)
                out += word;
            else
                out += '"' + word + '"';
            k = e;
            continue;
        }
        out += c;
        ++k;
    }
    return out;
}

inline std::size_t line_of(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t k = 0; k < byte && k < text.size(); ++k)
        if (text[k] == '\n') ++line;
    return line;
}

}  // namespace detail

/// JSON text with parse diagnostics that name the source and line.
inline json parse_json_text(std::string_view text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(source + ": line " + std::to_string(detail::line_of(text, e.byte)) + ": " + e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// --fn forms: catalogue:ID, cauchy:NAME, herglotz:{a:..,b:[..],mu:..}
/// (bare words allowed), or the path of a JSON descriptor file.
inline json function_spec_json(const std::string& spec) {
    if (spec.rfind("catalogue:", 0) == 0) return {{"type", "catalogue"}, {"id", spec.substr(10)}};
    if (spec.rfind("cauchy:", 0) == 0) return {{"type", "cauchy"}, {"measure", spec.substr(7)}};
    if (spec.rfind("herglotz:", 0) == 0) {
        json body = parse_json_text(detail::quote_bare_words(spec.substr(9)), "--fn");
        detail::require_object(body, "--fn");
        body["type"] = "herglotz";
        return body;
    }
    return parse_json_text(read_file(spec), spec);
}

/// --measure forms: a built-in name or the path of a JSON measure file.
inline Measure measure_spec(const std::string& spec) {
    if (auto m = catalogue::named_measure(spec)) return *m;
    return parse_measure(parse_json_text(read_file(spec), spec), spec);
}

// ---------------------------------------------------------------------------
// Reports

inline json to_json(const Witness& w) {
    json point = json::array();
    for (cplx c : w.point.coords()) point.push_back(format_complex(c));
    return {{"point", point}, {"residual", detail::number_or_label(w.residual)}};
}

inline json to_json(const CheckReport& r) {
    json ws = json::array();
    for (const Witness& w : r.witnesses) ws.push_back(to_json(w));
    return {{"verdict", to_string(r.verdict)},
            {"max_residual", detail::number_or_label(r.max_residual)},
            {"tolerance", detail::number_or_label(r.tolerance)},
            {"witnesses", ws},
            {"config", r.config}};
}

inline json to_json(const LimitEstimate& e) {
    return {{"value", format_complex(e.value)},
            {"verdict", to_string(e.verdict)},
            {"converged", e.converged},
            {"base_independent", e.base_independent},
            {"change", detail::number_or_label(e.change)},
            {"base_spread", detail::number_or_label(e.base_spread)}};
}

inline json to_json(const Characterization& c) {
    const auto cond = c.conditions();
    json ups = json::array(), downs = json::array();
    for (const auto& e : c.upper_limits) ups.push_back(to_json(e));
    for (const auto& e : c.lower_limits) downs.push_back(to_json(e));
    return {{"verdict", to_string(c.verdict)},
            {"d", c.d},
            {"limits", {{"verdict", to_string(c.limits_verdict)}, {"upper", ups}, {"lower", downs}}},
            {"conditions", {{"i", cond[0]}, {"ii", cond[1]}, {"iii", cond[2]}}},
            {"positivity", to_json(c.positivity)},
            {"symmetry", to_json(c.symmetry)},
            {"nondependence", to_json(c.nondependence)}};
}

// ---------------------------------------------------------------------------
// Run configuration

struct RunConfig {
    QuadratureConfig quadrature{};
    SamplingConfig sampling{};
    LimitConfig limits{};
};

inline json to_json(const RunConfig& c) {
    return {{"quadrature",
             {{"abs_tol", c.quadrature.abs_tol},
              {"rel_tol", c.quadrature.rel_tol},
              {"max_subdivisions", c.quadrature.max_subdivisions},
              {"initial_segments", c.quadrature.initial_segments}}},
            {"sampling",
             {{"samples_per_component", c.sampling.samples_per_component},
              {"probes", c.sampling.probes},
              {"anchors", c.sampling.anchors},
              {"positivity_samples", c.sampling.positivity_samples},
              {"seed", c.sampling.seed},
              {"symmetry_tol", c.sampling.symmetry_tol},
              {"nondependence_tol", c.sampling.nondependence_tol},
              {"positivity_tol", c.sampling.positivity_tol}}},
            {"limits",
             {{"stoltz_angle", c.limits.stoltz_angle},
              {"radius_sequence", c.limits.radius_sequence},
              {"y_sequence", c.limits.y_sequence},
              {"extrapolation_order", c.limits.extrapolation_order},
              {"tolerance", c.limits.tolerance},
              {"tail_tolerance", c.limits.tail_tolerance}}}};
}

/// Overlays the fields present in `j` on `base`; every section and field is optional.
inline RunConfig parse_run_config(const json& j, RunConfig base = {}) {
    using detail::allow_fields;
    using detail::count;
    using detail::number;
    allow_fields(j, {"quadrature", "sampling", "limits"}, "config");
    if (j.contains("quadrature")) {
        const json& q = j["quadrature"];
        allow_fields(q, {"abs_tol", "rel_tol", "max_subdivisions", "initial_segments"}, "config.quadrature");
        if (q.contains("abs_tol")) base.quadrature.abs_tol = number(q["abs_tol"], "config.quadrature.abs_tol");
        if (q.contains("rel_tol")) base.quadrature.rel_tol = number(q["rel_tol"], "config.quadrature.rel_tol");
        if (q.contains("max_subdivisions"))
            base.quadrature.max_subdivisions = static_cast<int>(count(q["max_subdivisions"], "config.quadrature.max_subdivisions"));
        if (q.contains("initial_segments"))
            base.quadrature.initial_segments = static_cast<int>(count(q["initial_segments"], "config.quadrature.initial_segments"));
        base.quadrature.validate();
    }
    if (j.contains("sampling")) {
        const json& s = j["sampling"];
        allow_fields(s, {"samples_per_component", "probes", "anchors", "positivity_samples", "seed", "symmetry_tol",
                         "nondependence_tol", "positivity_tol"},
                     "config.sampling");
        auto& c = base.sampling;
        if (s.contains("samples_per_component")) c.samples_per_component = count(s["samples_per_component"], "config.sampling.samples_per_component");
        if (s.contains("probes")) c.probes = count(s["probes"], "config.sampling.probes");
        if (s.contains("anchors")) c.anchors = count(s["anchors"], "config.sampling.anchors");
        if (s.contains("positivity_samples")) c.positivity_samples = count(s["positivity_samples"], "config.sampling.positivity_samples");
        if (s.contains("seed")) c.seed = count(s["seed"], "config.sampling.seed");
        if (s.contains("symmetry_tol")) c.symmetry_tol = number(s["symmetry_tol"], "config.sampling.symmetry_tol");
        if (s.contains("nondependence_tol")) c.nondependence_tol = number(s["nondependence_tol"], "config.sampling.nondependence_tol");
        if (s.contains("positivity_tol")) c.positivity_tol = number(s["positivity_tol"], "config.sampling.positivity_tol");
    }
    if (j.contains("limits")) {
        const json& l = j["limits"];
        allow_fields(l, {"stoltz_angle", "radius_sequence", "y_sequence", "extrapolation_order", "tolerance", "tail_tolerance"},
                     "config.limits");
        auto& c = base.limits;
        if (l.contains("stoltz_angle")) c.stoltz_angle = number(l["stoltz_angle"], "config.limits.stoltz_angle");
        if (l.contains("radius_sequence")) c.radius_sequence = detail::numbers(l["radius_sequence"], "config.limits.radius_sequence");
        if (l.contains("y_sequence")) c.y_sequence = detail::numbers(l["y_sequence"], "config.limits.y_sequence");
        if (l.contains("extrapolation_order"))
            c.extrapolation_order = static_cast<int>(count(l["extrapolation_order"], "config.limits.extrapolation_order"));
        if (l.contains("tolerance")) c.tolerance = number(l["tolerance"], "config.limits.tolerance");
        if (l.contains("tail_tolerance")) c.tail_tolerance = number(l["tail_tolerance"], "config.limits.tail_tolerance");
        c.validate();
    }
    return base;
}

}  // namespace hnv::io
