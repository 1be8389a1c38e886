#pragma once

// Checks and reconstructions on functions of the poly cut-plane: symmetry
// residuals, variable non-dependence, reconstruction from C^{+n} data,
// growth limits in Stoltz domains, the symmetric-extension characterization,
// and the two Stieltjes inversion procedures.
//
// Every universal statement ("for all z") is assessed on a finite,
// deterministic sample; reports say "sampled", never "proved".

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <json.hpp>

#include "hnv/core.hpp"
#include "hnv/functions.hpp"
#include "hnv/quadrature.hpp"

namespace hnv {

enum class Verdict { pass, fail, inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

struct Witness {
    CutPlanePoint point;
    double residual = 0.0;
};

struct CheckReport {
    Verdict verdict = Verdict::inconclusive;
    double max_residual = 0.0;
    double tolerance = 0.0;
    std::vector<Witness> witnesses;  // largest residuals first
    nlohmann::json config = nlohmann::json::object();
};

struct SamplingConfig {
    std::size_t samples_per_component = 50;
    std::size_t probes = 12;           // non-dependence: values per upper-coordinate sweep
    std::size_t anchors = 5;           // non-dependence: fixed lower-coordinate samples per component
    std::size_t positivity_samples = 200;
    std::uint64_t seed = kDefaultSeed;
    double symmetry_tol = 1e-9;
    double nondependence_tol = 1e-9;
    double positivity_tol = 1e-12;
};

namespace detail {

class WitnessCollector {
public:
    explicit WitnessCollector(std::size_t keep = 5) : keep_(keep) {}

    void add(const CutPlanePoint& z, double residual) {
        max_ = std::max(max_, residual);
        items_.push_back({z, residual});
        std::stable_sort(items_.begin(), items_.end(),
                         [](const Witness& a, const Witness& b) { return a.residual > b.residual; });
        if (items_.size() > keep_) items_.pop_back();
    }

    CheckReport report(double tolerance, nlohmann::json config) const {
        CheckReport r;
        r.max_residual = max_;
        r.tolerance = tolerance;
        r.verdict = max_ <= tolerance ? Verdict::pass : Verdict::fail;
        r.witnesses = items_;
        r.config = std::move(config);
        r.config["assessment"] = "sampled";
        return r;
    }

private:
    std::size_t keep_;
    double max_ = 0.0;
    std::vector<Witness> items_;
};

inline std::vector<ComponentSignature> all_components(std::size_t n) {
    std::vector<ComponentSignature> out;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) out.push_back(ComponentSignature::from_lower_mask(n, mask));
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Symmetry formula

/// sum_{B != {}} (-1)^{|B|+1} conj f(Psi_B(i1, z))
inline cplx symmetry_sum(const EvaluableFunction& f, const CutPlanePoint& z) {
    cplx sum{};
    for (const IndexSet& b : enumerate_subsets(z.dimension(), SubsetFilter::nonempty(), kMaxMaskDimension))
        sum += -b.parity_sign() * std::conj(f(reflect_from_i(b, z)));
    return sum;
}

/// |f(z) - sum_{B != {}} (-1)^{|B|+1} conj f(Psi_B(i1, z))|
inline double symmetry_residual(const EvaluableFunction& f, const CutPlanePoint& z) {
    return std::abs(f(z) - symmetry_sum(f, z));
}

/// The symmetry sum restricted to B subset of B', B != {}, with B' the
/// lower-half positions of z. Every reflected point lies in C^{+n}.
inline cplx reduced_symmetry_sum(const EvaluableFunction& f, const CutPlanePoint& z) {
    const IndexSet lower = signature_of(z).lower_index_set();
    cplx sum{};
    for (const IndexSet& b : enumerate_subsets(z.dimension(), SubsetFilter::subsets_of(lower), kMaxMaskDimension)) {
        if (b.is_empty()) continue;
        sum += -b.parity_sign() * std::conj(f(reflect_from_i(b, z)));
    }
    return sum;
}

/// Value at z (with at least one lower coordinate) of the unique function that
/// agrees with f_upper on C^{+n} and satisfies both the symmetry formula and
/// variable non-dependence. Computes only; the hypotheses are not verified.
inline cplx reconstruct_from_upper(const EvaluableFunction& f_upper, const CutPlanePoint& z) {
    if (signature_of(z).all_upper())
        throw InvalidArgument("reconstruct_from_upper: z lies in C^{+n}; evaluate the function directly");
    return reduced_symmetry_sum(f_upper, z);
}

inline CheckReport symmetry_check(const EvaluableFunction& f, const SamplingConfig& cfg = {}) {
    detail::WitnessCollector w;
    SampleRng rng(cfg.seed);
    for (const ComponentSignature& sig : detail::all_components(f.dimension()))
        for (std::size_t k = 0; k < cfg.samples_per_component; ++k) {
            const CutPlanePoint z = rng.point(sig);
            w.add(z, symmetry_residual(f, z));
        }
    return w.report(cfg.symmetry_tol, {{"check", "symmetry"},
                                       {"samples_per_component", cfg.samples_per_component},
                                       {"seed", cfg.seed}});
}

// ---------------------------------------------------------------------------
// Variable non-dependence

/// For every component with both lower and upper coordinates, fixes the lower
/// ones at `anchors` seeded samples and sweeps the upper ones over `probes`
/// seeded values. Residual = max pairwise difference of the values.
inline CheckReport nondependence_test(const EvaluableFunction& f, const SamplingConfig& cfg = {}) {
    const std::size_t n = f.dimension();
    detail::WitnessCollector w;
    nlohmann::json config = {{"check", "nondependence"},
                             {"probes", cfg.probes},
                             {"anchors", cfg.anchors},
                             {"seed", cfg.seed}};
    if (n == 1) return w.report(cfg.nondependence_tol, config);

    SampleRng rng(cfg.seed);
    for (const ComponentSignature& sig : detail::all_components(n)) {
        const IndexSet lower = sig.lower_index_set();
        if (lower.is_empty() || lower.size() == n) continue;
        for (std::size_t a = 0; a < cfg.anchors; ++a) {
            const CutPlanePoint anchor = rng.point(sig);
            std::vector<CutPlanePoint> points;
            std::vector<cplx> values;
            for (std::size_t p = 0; p < cfg.probes; ++p) {
                std::vector<cplx> z = anchor.vector();
                for (std::size_t j = 0; j < n; ++j)
                    if (!lower.contains(j)) z[j] = {rng.uniform(-4.0, 4.0), rng.uniform(0.1, 4.0)};
                points.emplace_back(std::move(z), kMaxMaskDimension);
                values.push_back(f(points.back()));
            }
            double spread = 0.0;
            std::size_t at = 0;
            for (std::size_t p = 0; p < values.size(); ++p)
                for (std::size_t q = p + 1; q < values.size(); ++q) {
                    const double d = std::abs(values[p] - values[q]);
                    if (d > spread) {
                        spread = d;
                        at = q;
                    }
                }
            w.add(points[at], spread);
        }
    }
    return w.report(cfg.nondependence_tol, config);
}

// ---------------------------------------------------------------------------
// Positivity on C^{+n}

/// Residual at z is max(0, -Im f(z)), sampled on the probe grid plus seeded points.
inline CheckReport positivity_check(const EvaluableFunction& f, const SamplingConfig& cfg = {}) {
    detail::WitnessCollector w;
    for (const CutPlanePoint& z : upper_probe_grid(f.dimension())) w.add(z, std::max(0.0, -f(z).imag()));
    SampleRng rng(cfg.seed);
    const ComponentSignature upper = ComponentSignature::from_lower_mask(f.dimension(), 0);
    for (std::size_t k = 0; k < cfg.positivity_samples; ++k) {
        const CutPlanePoint z = rng.point(upper, 20.0, 1e-3, 20.0);
        w.add(z, std::max(0.0, -f(z).imag()));
    }
    return w.report(cfg.positivity_tol, {{"check", "positivity"},
                                         {"grid_points", upper_probe_grid(f.dimension()).size()},
                                         {"random_points", cfg.positivity_samples},
                                         {"seed", cfg.seed}});
}

// ---------------------------------------------------------------------------
// Growth limits

struct LimitConfig {
    double stoltz_angle = std::numbers::pi / 4.0;
    std::vector<double> radius_sequence = default_radii();
    std::vector<double> y_sequence = default_heights();
    int extrapolation_order = 2;
    double tolerance = 1e-6;       // agreement of the last two extrapolants
    double tail_tolerance = 1e-7;  // phi-mass allowed outside the inversion box

    static std::vector<double> default_radii() {
        std::vector<double> r;
        for (int k = 3; k <= 12; ++k) r.push_back(std::ldexp(1.0, k));
        return r;
    }
    static std::vector<double> default_heights() {
        std::vector<double> y;
        for (int k = 1; k <= 10; ++k) y.push_back(std::ldexp(1.0, -k));
        return y;
    }

    void validate() const {
        if (!(stoltz_angle > 0.0 && stoltz_angle <= std::numbers::pi / 2.0))
            throw InvalidArgument("stoltz angle must lie in (0, pi/2]");
        if (radius_sequence.size() < 2 || y_sequence.size() < 2) throw InvalidArgument("limit sequences too short");
        for (std::size_t k = 1; k < radius_sequence.size(); ++k)
            if (!(radius_sequence[k] > radius_sequence[k - 1]) || !(radius_sequence[k - 1] > 0.0))
                throw InvalidArgument("radius sequence must be positive and increasing");
        for (std::size_t k = 1; k < y_sequence.size(); ++k)
            if (!(y_sequence[k] < y_sequence[k - 1]) || !(y_sequence[k] > 0.0))
                throw InvalidArgument("y sequence must be positive and decreasing");
        if (extrapolation_order < 0) throw InvalidArgument("extrapolation order must be >= 0");
        if (!(tolerance > 0.0)) throw InvalidArgument("limit tolerance must be positive");
    }
};

enum class Direction { upper, lower };

struct LimitEstimate {
    cplx value{};
    bool converged = false;
    bool base_independent = false;
    double change = 0.0;          // |last two extrapolants|
    double base_spread = 0.0;     // max deviation over the alternate bases
    double empirical_order = 0.0;
    std::vector<std::pair<double, cplx>> samples;  // (r, f(z)/z_j) along the ray
    Verdict verdict = Verdict::inconclusive;
};

namespace detail {

struct RayResult {
    cplx value{};
    double change = 0.0;
    double order = 0.0;
    bool converged = false;
    std::vector<std::pair<double, cplx>> samples;
};

inline RayResult ray_limit(const EvaluableFunction& f, std::size_t j, const CutPlanePoint& base, const LimitConfig& cfg,
                           Direction dir) {
    const double angle = dir == Direction::upper ? cfg.stoltz_angle : -cfg.stoltz_angle;
    const cplx unit = std::polar(1.0, angle);
    RichardsonTable table{cfg.extrapolation_order, {}, {}};
    RayResult out;
    for (double r : cfg.radius_sequence) {
        std::vector<cplx> z = base.vector();
        z[j] = r * unit;
        const cplx q = f(CutPlanePoint(std::move(z), kMaxMaskDimension)) / (r * unit);
        out.samples.emplace_back(r, q);
        table.push(1.0 / r, q);
    }
    out.value = table.best();
    out.change = table.last_change();
    out.order = table.empirical_order();
    out.converged = table.full_order() && out.change <= cfg.tolerance;
    return out;
}

// Alternates keep the component of every coordinate so that functions known
// only on part of the cut-plane stay evaluable.
inline std::vector<CutPlanePoint> alternate_bases(const CutPlanePoint& base, std::size_t j) {
    const std::array<cplx, 3> pool = {cplx(1.5, 0.5), cplx(-2.0, 1.5), cplx(0.25, 3.0)};
    std::vector<CutPlanePoint> out;
    for (std::size_t k = 0; k < pool.size(); ++k) {
        std::vector<cplx> z = base.vector();
        for (std::size_t l = 0; l < z.size(); ++l) {
            if (l == j) continue;
            const cplx p = pool[(k + l) % pool.size()];
            z[l] = {p.real(), base[l].imag() > 0 ? p.imag() : -p.imag()};
        }
        out.emplace_back(std::move(z), kMaxMaskDimension);
    }
    return out;
}

}  // namespace detail

/// Estimates lim f(z)/z_j as z_j -> infinity in an upper (or lower) Stoltz
/// domain along the ray of angle cfg.stoltz_angle, with Richardson
/// extrapolation in 1/r. Also reports whether three alternate bases that
/// differ in every non-j coordinate change the estimate.
inline LimitEstimate stoltz_limit(const EvaluableFunction& f, std::size_t j, const CutPlanePoint& base,
                                  const LimitConfig& cfg = {}, Direction dir = Direction::upper) {
    cfg.validate();
    if (j >= f.dimension()) throw InvalidArgument("stoltz_limit: axis index out of range");
    if (base.dimension() != f.dimension()) throw InvalidArgument("stoltz_limit: base of wrong dimension");

    const detail::RayResult main = detail::ray_limit(f, j, base, cfg, dir);
    LimitEstimate est;
    est.value = main.value;
    est.change = main.change;
    est.empirical_order = main.order;
    est.samples = main.samples;
    est.converged = main.converged;

    bool alternates_converged = true;
    for (const CutPlanePoint& alt : detail::alternate_bases(base, j)) {
        const detail::RayResult r = detail::ray_limit(f, j, alt, cfg, dir);
        alternates_converged = alternates_converged && r.converged;
        est.base_spread = std::max(est.base_spread, std::abs(r.value - main.value));
    }
    est.base_independent = est.base_spread <= cfg.tolerance;
    if (!est.converged || !alternates_converged)
        est.verdict = Verdict::inconclusive;
    else
        est.verdict = est.base_independent ? Verdict::pass : Verdict::fail;
    return est;
}

// ---------------------------------------------------------------------------
// Characterization of symmetric extensions

struct CharacterizeConfig {
    LimitConfig limits{};
    SamplingConfig sampling{};
};

struct Characterization {
    Verdict verdict = Verdict::inconclusive;
    std::vector<double> d;
    Verdict limits_verdict = Verdict::inconclusive;
    std::vector<LimitEstimate> upper_limits;
    std::vector<LimitEstimate> lower_limits;
    CheckReport positivity;     // (i) on f
    CheckReport symmetry;       // (ii') on f - sum d_j z_j
    CheckReport nondependence;  // (iii') on f - sum d_j z_j

    /// (i), (ii), (iii) as booleans.
    std::array<bool, 3> conditions() const {
        return {positivity.verdict == Verdict::pass, symmetry.verdict == Verdict::pass,
                nondependence.verdict == Verdict::pass};
    }
};

namespace detail {

// One base per component of the non-j coordinates; coordinate j is irrelevant.
inline std::vector<CutPlanePoint> limit_bases(std::size_t n, std::size_t j) {
    std::vector<CutPlanePoint> out;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if ((mask >> j) & 1u) continue;
        std::vector<cplx> z(n);
        for (std::size_t l = 0; l < n; ++l) {
            const cplx p(0.5 - 0.3 * static_cast<double>(l), 1.25 + 0.5 * static_cast<double>(l));
            z[l] = ((mask >> l) & 1u) ? std::conj(p) : p;
        }
        z[j] = kI;
        out.emplace_back(std::move(z), kMaxMaskDimension);
    }
    return out;
}

}  // namespace detail

/// Extracts d_j from the upper and lower Stoltz limits (which must agree and be
/// base independent), then runs positivity on f and the symmetry and
/// non-dependence checks on f - sum d_j z_j. Inconclusive limits make the
/// whole verdict inconclusive.
inline Characterization characterize(const EvaluableFunction& f, const CharacterizeConfig& cfg = {}) {
    const std::size_t n = f.dimension();
    const double tol = cfg.limits.tolerance;
    Characterization out;
    out.d.assign(n, 0.0);
    bool inconclusive = false;
    bool limits_ok = true;

    for (std::size_t j = 0; j < n; ++j) {
        std::vector<cplx> estimates;
        for (Direction dir : {Direction::upper, Direction::lower}) {
            for (const CutPlanePoint& base : detail::limit_bases(n, j)) {
                LimitEstimate e = stoltz_limit(f, j, base, cfg.limits, dir);
                if (e.verdict == Verdict::inconclusive) inconclusive = true;
                if (e.verdict == Verdict::fail) limits_ok = false;
                estimates.push_back(e.value);
                (dir == Direction::upper ? out.upper_limits : out.lower_limits).push_back(std::move(e));
            }
        }
        for (cplx e : estimates)
            if (std::abs(e - estimates.front()) > tol) limits_ok = false;
        const cplx dj = estimates.front();
        if (std::abs(dj.imag()) > tol) limits_ok = false;
        if (dj.real() < -tol) limits_ok = false;
        out.d[j] = std::abs(dj.real()) <= tol ? 0.0 : dj.real();
    }
    out.limits_verdict = inconclusive ? Verdict::inconclusive : (limits_ok ? Verdict::pass : Verdict::fail);

    std::vector<double> minus_d(n);
    for (std::size_t j = 0; j < n; ++j) minus_d[j] = -out.d[j];
    const EvaluableFunction reduced = add_linear(f, minus_d, f.name() + "-linear");

    out.positivity = positivity_check(f, cfg.sampling);
    out.symmetry = symmetry_check(reduced, cfg.sampling);
    out.nondependence = nondependence_test(reduced, cfg.sampling);

    if (out.limits_verdict == Verdict::inconclusive) {
        out.verdict = Verdict::inconclusive;
    } else {
        const auto c = out.conditions();
        out.verdict = (out.limits_verdict == Verdict::pass && c[0] && c[1] && c[2]) ? Verdict::pass : Verdict::fail;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Stieltjes inversion

/// A C^1 test function with |phi(x)| <= bound * prod (1 + x_j^2)^{-1}.
struct TestFunction {
    std::string name;
    std::size_t dimension = 1;
    double bound = 1.0;
    std::function<double(std::span<const double>)> phi;
};

namespace test_functions {

inline TestFunction cauchy_product(std::size_t n) {
    return {n == 2 ? "cauchy2d" : "cauchy" + std::to_string(n) + "d", n, 1.0, [](std::span<const double> x) {
                double p = 1.0;
                for (double v : x) p /= 1.0 + v * v;
                return p;
            }};
}

inline TestFunction cauchy_squared_product(std::size_t n) {
    return {"cauchy_sq" + std::to_string(n) + "d", n, 1.0, [](std::span<const double> x) {
                double p = 1.0;
                for (double v : x) p /= (1.0 + v * v) * (1.0 + v * v);
                return p;
            }};
}

/// prod exp(-x_j^2 / (2 sigma^2)).
inline TestFunction gaussian_product(std::size_t n, double sigma) {
    const double s2 = 2.0 * sigma * sigma;
    const double axis_bound = s2 <= 1.0 ? 1.0 : s2 * std::exp(-(s2 - 1.0) / s2);
    return {"gauss" + std::to_string(n) + "d", n, std::pow(axis_bound, static_cast<double>(n)),
            [s2](std::span<const double> x) {
                double p = 1.0;
                for (double v : x) p *= std::exp(-v * v / s2);
                return p;
            }};
}

/// "cauchy1d", "cauchy2d", "cauchy_sq1d", "cauchy_sq2d", "gauss1d", "gauss2d".
inline TestFunction by_name(const std::string& name) {
    if (name == "cauchy1d") return cauchy_product(1);
    if (name == "cauchy2d") return cauchy_product(2);
    if (name == "cauchy_sq1d") return cauchy_squared_product(1);
    if (name == "cauchy_sq2d") return cauchy_squared_product(2);
    if (name == "gauss1d") return gaussian_product(1, 1.0);
    if (name == "gauss2d") return gaussian_product(2, 1.0);
    throw InvalidArgument("unknown test function '" + name + "'");
}

}  // namespace test_functions

/// Spot-checks the bound |phi| <= D prod (1+x^2)^{-1} on a fixed grid.
inline void verify_test_function(const TestFunction& phi) {
    if (!phi.phi) throw InvalidTestFunction("test function has no body");
    if (!(phi.bound >= 0.0)) throw InvalidTestFunction("bound D must be >= 0");
    const std::vector<double> axis = {-1e3, -100.0, -10.0, -3.0, -1.0, -0.3, 0.0, 0.3, 1.0, 3.0, 10.0, 100.0, 1e3};
    std::vector<std::size_t> idx(phi.dimension, 0);
    std::vector<double> x(phi.dimension);
    while (true) {
        double weight = phi.bound;
        for (std::size_t j = 0; j < x.size(); ++j) {
            x[j] = axis[idx[j]];
            weight /= 1.0 + x[j] * x[j];
        }
        const double v = phi.phi(x);
        if (!std::isfinite(v) || std::abs(v) > weight * (1.0 + 1e-9) + 1e-300)
            throw InvalidTestFunction("test function " + phi.name + " violates its decay bound");
        std::size_t j = 0;
        while (j < idx.size() && ++idx[j] == axis.size()) idx[j++] = 0;
        if (j == idx.size()) break;
    }
}

/// Half-width R of the box [-R, R]^n outside of which the phi bound carries
/// at most `tail` mass: D (pi^n - (2 atan R)^n) <= tail.
inline double inversion_box_radius(std::size_t n, double bound, double tail) {
    const double full = std::pow(std::numbers::pi, static_cast<double>(n));
    if (bound <= 0.0 || tail >= bound * full) return 1.0;
    const double inner = std::pow(full - tail / bound, 1.0 / static_cast<double>(n));
    return std::max(1.0, std::tan(0.5 * inner));
}

struct InversionRow {
    double y = 0.0;
    double raw = 0.0;
    double extrapolant = 0.0;
};

struct InversionResult {
    double estimate = 0.0;
    bool converged = false;
    Verdict verdict = Verdict::inconclusive;
    double change = 0.0;
    double box_radius = 0.0;
    double max_imag = 0.0;  // alternating mode: largest |Im| of the raw integrals
    double empirical_order = 0.0;
    std::vector<InversionRow> rows;
};

namespace detail {

template <class Raw>
InversionResult run_inversion(std::size_t n, const TestFunction& phi, const LimitConfig& cfg, Raw&& raw) {
    cfg.validate();
    verify_test_function(phi);
    if (phi.dimension != n) throw InvalidTestFunction("test function dimension does not match the function");
    InversionResult out;
    out.box_radius = inversion_box_radius(n, phi.bound, cfg.tail_tolerance);
    RichardsonTable table{cfg.extrapolation_order, {}, {}};
    for (double y : cfg.y_sequence) {
        const cplx value = raw(y, out.box_radius);
        out.max_imag = std::max(out.max_imag, std::abs(value.imag()));
        table.push(y, value.real());
        out.rows.push_back({y, value.real(), table.best().real()});
        out.estimate = table.best().real();
        out.change = table.last_change();
        if (table.full_order() && out.change <= cfg.tolerance) {
            out.converged = true;
            break;
        }
    }
    out.empirical_order = table.empirical_order();
    out.verdict = out.converged ? Verdict::pass : Verdict::inconclusive;
    return out;
}

}  // namespace detail

/// lim_{y -> 0+} int phi(x) Im h(x + i y 1) dx for h known on C^{+n}.
inline InversionResult stieltjes_classic(const EvaluableFunction& h_upper, const TestFunction& phi,
                                         const LimitConfig& cfg = {}, const QuadratureConfig& quad = {}) {
    const std::size_t n = h_upper.dimension();
    return detail::run_inversion(n, phi, cfg, [&](double y, double radius) -> cplx {
        std::vector<cplx> z(n);
        auto integrand = [&](std::span<const double> x) -> double {
            const double w = phi.phi(x);
            if (w == 0.0) return 0.0;
            for (std::size_t j = 0; j < n; ++j) z[j] = {x[j], y};
            return w * h_upper(CutPlanePoint(z, kMaxMaskDimension)).imag();
        };
        return integrate_box(n, radius, integrand, quad).value;
    });
}

/// lim_{y -> 0+} (1/2i) int phi(x) sum_B (-1)^{|B|} g(Psi_B(x+iy, x+iy)) dx,
/// which recovers int phi dmu for a Cauchy-type g with defining measure mu.
inline InversionResult stieltjes_cauchy_type(const EvaluableFunction& g, const TestFunction& phi,
                                             const LimitConfig& cfg = {}, const QuadratureConfig& quad = {}) {
    const std::size_t n = g.dimension();
    const auto subsets = enumerate_subsets(n, SubsetFilter::all(), kMaxMaskDimension);
    const cplx inv_2i{0.0, -0.5};
    return detail::run_inversion(n, phi, cfg, [&](double y, double radius) -> cplx {
        std::vector<cplx> zeta(n);
        auto integrand = [&](std::span<const double> x) -> cplx {
            const double w = phi.phi(x);
            if (w == 0.0) return {};
            for (std::size_t j = 0; j < n; ++j) zeta[j] = {x[j], y};
            cplx sum{};
            for (const IndexSet& b : subsets)
                sum += b.parity_sign() * g(CutPlanePoint(psi_map(b, zeta, zeta), kMaxMaskDimension));
            return w * inv_2i * sum;
        };
        return integrate_box(n, radius, integrand, quad).value;
    });
}

}  // namespace hnv
