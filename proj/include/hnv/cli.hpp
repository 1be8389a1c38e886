#pragma once

// Command implementations behind the hnv executable. Each command writes its
// human-readable output to `out`, diagnostics to `err`, and returns the
// process exit code. Argument parsing lives in tools/hnv.cpp.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hnv/analysis.hpp"
#include "hnv/catalogue.hpp"
#include "hnv/io.hpp"

namespace hnv::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitError = 3;

struct Options {
    std::string fn;
    std::string measure;
    std::string point;
    std::string t;
    std::string phi = "cauchy2d";
    std::string mode = "alternating";
    std::string which;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string config;
};

inline int exit_code(Verdict v) {
    switch (v) {
        case Verdict::pass: return kExitPass;
        case Verdict::fail: return kExitFail;
        case Verdict::inconclusive: return kExitInconclusive;
    }
    return kExitError;
}

inline io::RunConfig load_config(const Options& o) {
    io::RunConfig cfg;
    if (!o.config.empty()) cfg = io::parse_run_config(io::parse_json_text(io::read_file(o.config), o.config));
    if (o.seed) cfg.sampling.seed = *o.seed;
    return cfg;
}

inline EvaluableFunction load_function(const Options& o, const io::RunConfig& cfg) {
    if (o.fn.empty()) throw InvalidArgument("--fn is required");
    return io::parse_function(io::function_spec_json(o.fn), cfg.quadrature, "--fn");
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidArgument("cannot write '" + path + "'");
    f << text;
}

inline std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------

inline int cmd_eval(const Options& o, std::ostream& out) {
    const io::RunConfig cfg = load_config(o);
    const EvaluableFunction f = load_function(o, cfg);
    if (o.point.empty()) throw InvalidArgument("--point is required");
    const CutPlanePoint z = io::parse_point(o.point);
    const Sample s = f.evaluate(z);
    const nlohmann::json record = {{"function", f.name()},
                                   {"point", io::format_point(z)},
                                   {"component", signature_of(z).label()},
                                   {"value", io::format_complex(s.value)},
                                   {"error", s.error}};
    out << io::format_complex(s.value) << "\n" << record.dump() << "\n";
    if (!o.out.empty()) write_text(o.out, dump(record));
    return kExitPass;
}

inline int cmd_kernel(const Options& o, std::ostream& out) {
    if (o.point.empty() || o.t.empty()) throw InvalidArgument("kernel needs --point and --t");
    const CutPlanePoint z = io::parse_point(o.point);
    std::vector<double> t;
    for (cplx c : io::parse_coords(o.t)) {
        if (c.imag() != 0.0) throw InvalidArgument("--t must be real");
        t.push_back(c.real());
    }
    const cplx k = kernel_K(z, t);
    nlohmann::json record = {{"point", io::format_point(z)}, {"K", io::format_complex(k)}};
    if (signature_of(z).all_upper()) record["P"] = poisson(z, t);
    out << io::format_complex(k) << "\n" << record.dump() << "\n";
    if (!o.out.empty()) write_text(o.out, dump(record));
    return kExitPass;
}

inline int cmd_reconstruct(const Options& o, std::ostream& out) {
    const io::RunConfig cfg = load_config(o);
    const EvaluableFunction f = load_function(o, cfg);
    if (o.point.empty()) throw InvalidArgument("--point is required");
    const CutPlanePoint z = io::parse_point(o.point);
    const cplx v = reconstruct_from_upper(f, z);
    const nlohmann::json record = {{"function", f.name()}, {"point", io::format_point(z)}, {"value", io::format_complex(v)}};
    out << io::format_complex(v) << "\n" << record.dump() << "\n";
    if (!o.out.empty()) write_text(o.out, dump(record));
    return kExitPass;
}

/// Growth integral and Nevanlinna residuals of a measure.
inline int cmd_measure(const Options& o, std::ostream& out) {
    const io::RunConfig cfg = load_config(o);
    if (o.measure.empty()) throw InvalidArgument("--measure is required");
    const Measure mu = io::measure_spec(o.measure);
    const GrowthReport g = check_growth(mu, cfg.quadrature);
    nlohmann::json record = {{"measure", io::to_json(mu)},
                             {"growth", {{"finite", g.finite}, {"value", io::detail::number_or_label(g.value)}}}};
    if (g.finite) {
        std::vector<CutPlanePoint> grid =
            o.point.empty() ? default_nevanlinna_grid(mu.dimension()) : std::vector<CutPlanePoint>{io::parse_point(o.point)};
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& z : grid) {
            const QuadResult r = nevanlinna_residual(mu, z, cfg.quadrature);
            rows.push_back({{"point", io::format_point(z)}, {"residual", io::format_complex(r.value)}, {"abs", std::abs(r.value)}});
        }
        record["nevanlinna"] = rows;
    }
    out << dump(record);
    if (!o.out.empty()) write_text(o.out, dump(record));
    return g.finite ? kExitPass : kExitFail;
}

inline int cmd_check(const Options& o, std::ostream& out) {
    io::RunConfig cfg = load_config(o);
    const EvaluableFunction f = load_function(o, cfg);
    nlohmann::json report;
    Verdict verdict = Verdict::inconclusive;
    if (o.which == "symmetry" || o.which == "nondep" || o.which == "positivity") {
        if (o.tol) {
            cfg.sampling.symmetry_tol = *o.tol;
            cfg.sampling.nondependence_tol = *o.tol;
            cfg.sampling.positivity_tol = *o.tol;
        }
        const CheckReport r = o.which == "symmetry" ? symmetry_check(f, cfg.sampling)
                              : o.which == "nondep" ? nondependence_test(f, cfg.sampling)
                                                    : positivity_check(f, cfg.sampling);
        verdict = r.verdict;
        report = io::to_json(r);
    } else if (o.which == "characterize") {
        if (o.tol) cfg.limits.tolerance = *o.tol;
        const Characterization c = characterize(f, {cfg.limits, cfg.sampling});
        verdict = c.verdict;
        report = io::to_json(c);
        report["config"] = io::to_json(cfg);
    } else {
        throw InvalidArgument("check expects one of symmetry, nondep, positivity, characterize; got '" + o.which + "'");
    }
    report["function"] = f.name();
    out << o.which << ": " << to_string(verdict) << "\n";
    if (report.contains("d")) {
        out << "d = (";
        for (std::size_t j = 0; j < report["d"].size(); ++j) out << (j ? "," : "") << io::format_real(report["d"][j].get<double>());
        out << ")\n";
    }
    if (!o.out.empty())
        write_text(o.out, dump(report));
    else
        out << dump(report);
    return exit_code(verdict);
}

inline int cmd_invert(const Options& o, std::ostream& out) {
    io::RunConfig cfg = load_config(o);
    if (o.tol) cfg.limits.tolerance = *o.tol;
    const EvaluableFunction f = load_function(o, cfg);
    const TestFunction phi = test_functions::by_name(o.phi);
    InversionResult r;
    if (o.mode == "classic")
        r = stieltjes_classic(f, phi, cfg.limits, cfg.quadrature);
    else if (o.mode == "alternating")
        r = stieltjes_cauchy_type(f, phi, cfg.limits, cfg.quadrature);
    else
        throw InvalidArgument("--mode must be classic or alternating");

    std::ostringstream csv;
    csv << "y,raw,extrapolant\n" << std::setprecision(17);
    for (const auto& row : r.rows) csv << row.y << "," << row.raw << "," << row.extrapolant << "\n";
    out << "estimate = " << io::format_real(r.estimate) << "\n"
        << "converged = " << (r.converged ? "true" : "false") << "\n"
        << "box_radius = " << io::format_real(r.box_radius) << "\n";
    if (!o.out.empty())
        write_text(o.out, csv.str());
    else
        out << csv.str();
    return r.converged ? kExitPass : kExitInconclusive;
}

// ---------------------------------------------------------------------------
// Tables

struct TableOutcome {
    nlohmann::json table1;
    nlohmann::json table2;
    bool table2_matches = true;
    std::vector<std::string> mismatches;
};

namespace detail {

// Integral representation of a catalogue function, where one exists.
inline std::optional<EvaluableFunction> integral_form(const std::string& id, const QuadratureConfig& cfg) {
    if (id == "f2") return cauchy_function(catalogue::mu2(), cfg, "f2-integral");
    if (id == "f4") return cauchy_function(catalogue::f4_defining_measure(), cfg, "f4-integral");
    if (id == "f7") return cauchy_function(Measure::lebesgue(2), cfg, "f7-integral");
    if (id == "f6") {
        const EvaluableFunction g = cauchy_function(Measure::lebesgue(2), cfg, "f6-integral");
        return make_function(2, "f6-integral", [g](const CutPlanePoint& z) { return -g(z); });
    }
    return std::nullopt;
}

}  // namespace detail

inline TableOutcome reproduce_tables(const io::RunConfig& cfg, std::size_t samples_per_component = 5) {
    TableOutcome t;
    t.table1 = {{"seed", cfg.sampling.seed}, {"samples_per_component", samples_per_component}, {"functions", nlohmann::json::object()}};
    t.table2 = {{"rows", nlohmann::json::object()}};
    const char* labels[3] = {"i", "ii", "iii"};

    for (const std::string& id : catalogue::ids()) {
        const EvaluableFunction f = catalogue::function(id);
        const auto integral = detail::integral_form(id, cfg.quadrature);
        SampleRng rng(cfg.sampling.seed);
        nlohmann::json comps = nlohmann::json::object();
        for (std::uint32_t key = 0; key < 4; ++key) {
            const ComponentSignature sig = ComponentSignature::from_lower_mask(2, key);
            nlohmann::json rows = nlohmann::json::array();
            for (std::size_t k = 0; k < samples_per_component; ++k) {
                const CutPlanePoint z = rng.point(sig);
                const cplx closed = f(z);
                nlohmann::json row = {{"point", io::format_point(z)}, {"closed_form", io::format_complex(closed)}};
                if (integral) {
                    const cplx q = (*integral)(z);
                    row["integral"] = io::format_complex(q);
                    row["abs_diff"] = std::abs(q - closed);
                }
                rows.push_back(row);
            }
            comps[sig.label()] = rows;
        }
        t.table1["functions"][id] = comps;

        const Characterization c = characterize(f, {cfg.limits, cfg.sampling});
        const auto got = c.conditions();
        const auto want = catalogue::expected_conditions(id);
        nlohmann::json row = nlohmann::json::object();
        for (int k = 0; k < 3; ++k) {
            row[labels[k]] = got[k];
            if (got[k] != want[k]) {
                t.table2_matches = false;
                t.mismatches.push_back(id + " (" + labels[k] + "): computed " + (got[k] ? "yes" : "no") + ", expected " +
                                       (want[k] ? "yes" : "no"));
            }
        }
        row["d"] = c.d;
        row["characterization"] = to_string(c.verdict);
        t.table2["rows"][id] = row;
    }
    t.table2["matches_expected"] = t.table2_matches;
    return t;
}

inline int cmd_reproduce_tables(const Options& o, std::ostream& out, std::ostream& err) {
    const io::RunConfig cfg = load_config(o);
    const TableOutcome t = reproduce_tables(cfg);
    const std::filesystem::path dir = o.out.empty() ? std::filesystem::path(".") : std::filesystem::path(o.out);
    std::filesystem::create_directories(dir);
    write_text((dir / "table1.json").string(), dump(t.table1));
    write_text((dir / "table2.json").string(), dump(t.table2));

    out << "      (i)  (ii)  (iii)\n";
    for (const std::string& id : catalogue::ids()) {
        const auto& row = t.table2["rows"][id];
        out << id << "    " << (row["i"].get<bool>() ? "yes" : "no ") << "  " << (row["ii"].get<bool>() ? "yes" : "no ")
            << "   " << (row["iii"].get<bool>() ? "yes" : "no ") << "\n";
    }
    for (const std::string& m : t.mismatches) err << "mismatch: " << m << "\n";
    return t.table2_matches ? kExitPass : kExitFail;
}

}  // namespace hnv::cli
