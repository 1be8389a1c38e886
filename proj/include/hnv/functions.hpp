#pragma once

// Evaluable functions on the poly cut-plane: Cauchy-type functions built from
// measures, symmetric extensions of Herglotz-Nevanlinna functions, and
// closed forms given branch-by-branch per connected component.

#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hnv/core.hpp"
#include "hnv/kernels.hpp"
#include "hnv/measures.hpp"

namespace hnv {

/// Deterministic uniform sampler. The mapping from engine output to doubles is
/// fixed here so that sample sets do not depend on the standard library.
class SampleRng {
public:
    explicit SampleRng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) {
        const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

    /// A point of the component with the given signature, |Re| <= re_max and
    /// |Im| in [im_min, im_max].
    CutPlanePoint point(const ComponentSignature& sig, double re_max = 3.0, double im_min = 0.2, double im_max = 3.0) {
        std::vector<cplx> z(sig.dimension());
        for (std::size_t j = 0; j < z.size(); ++j)
            z[j] = {uniform(-re_max, re_max), sig.signs[j] * uniform(im_min, im_max)};
        return CutPlanePoint(std::move(z), kMaxMaskDimension);
    }

private:
    std::mt19937_64 engine_;
};

inline constexpr std::uint64_t kDefaultSeed = 20191127;

class EvaluableFunction {
public:
    enum class Kind { catalogue, cauchy, herglotz, closed_form, derived };
    using Evaluator = std::function<Sample(const CutPlanePoint&)>;

    EvaluableFunction(std::size_t dimension, Kind kind, std::string name, Evaluator eval)
        : dimension_(dimension), kind_(kind), name_(std::move(name)), eval_(std::move(eval)) {
        check_dimension(dimension_, kMaxMaskDimension);
    }

    std::size_t dimension() const noexcept { return dimension_; }
    Kind kind() const noexcept { return kind_; }
    const std::string& name() const noexcept { return name_; }

    /// Value with the quadrature error estimate (0 for closed forms).
    Sample evaluate(const CutPlanePoint& z) const {
        if (z.dimension() != dimension_)
            throw InvalidArgument(name_ + ": expected a point of dimension " + std::to_string(dimension_) + ", got " +
                                  std::to_string(z.dimension()));
        return eval_(z);
    }

    cplx operator()(const CutPlanePoint& z) const { return evaluate(z).value; }

private:
    std::size_t dimension_;
    Kind kind_;
    std::string name_;
    Evaluator eval_;
};

// ---------------------------------------------------------------------------
// Closed forms keyed by component signature

using Branch = std::function<cplx(std::span<const cplx>)>;

/// Branches are keyed by ComponentSignature::key() (bit j set when z_j is in
/// the lower half-plane). Points in a component without a branch are refused.
inline EvaluableFunction closed_form(std::size_t n, std::string name, std::map<std::uint32_t, Branch> branches,
                                     EvaluableFunction::Kind kind = EvaluableFunction::Kind::closed_form) {
    auto shared = std::make_shared<const std::map<std::uint32_t, Branch>>(std::move(branches));
    std::string label = name;
    return EvaluableFunction(n, kind, std::move(name), [shared, label](const CutPlanePoint& z) -> Sample {
        const ComponentSignature sig = signature_of(z);
        const auto it = shared->find(sig.key());
        if (it == shared->end())
            throw InvalidArgument(label + " has no branch on component " + sig.label());
        return {it->second(z.coords()), 0.0};
    });
}

inline EvaluableFunction make_function(std::size_t n, std::string name,
                                       std::function<cplx(const CutPlanePoint&)> f) {
    return EvaluableFunction(n, EvaluableFunction::Kind::derived, std::move(name),
                             [f = std::move(f)](const CutPlanePoint& z) -> Sample { return {f(z), 0.0}; });
}

/// z -> f(z) + sum_j d_j z_j
inline EvaluableFunction add_linear(const EvaluableFunction& f, std::vector<double> d, std::string name = {}) {
    if (d.size() != f.dimension()) throw InvalidArgument("add_linear: coefficient vector of wrong length");
    if (name.empty()) name = f.name() + "+linear";
    return EvaluableFunction(f.dimension(), EvaluableFunction::Kind::derived, std::move(name),
                             [f, d = std::move(d)](const CutPlanePoint& z) -> Sample {
                                 Sample s = f.evaluate(z);
                                 for (std::size_t j = 0; j < d.size(); ++j) s.value += d[j] * z[j];
                                 return s;
                             });
}

inline EvaluableFunction add(const EvaluableFunction& f, const EvaluableFunction& g, std::string name = {}) {
    if (f.dimension() != g.dimension()) throw InvalidArgument("add: dimension mismatch");
    if (name.empty()) name = f.name() + "+" + g.name();
    return EvaluableFunction(f.dimension(), EvaluableFunction::Kind::derived, std::move(name),
                             [f, g](const CutPlanePoint& z) -> Sample {
                                 const Sample a = f.evaluate(z), b = g.evaluate(z);
                                 return {a.value + b.value, a.error + b.error};
                             });
}

// ---------------------------------------------------------------------------
// Cauchy-type functions

namespace detail {

inline SeparableIntegrand moving_kernel_term(const CutPlanePoint& z) {
    SeparableTerm term;
    for (std::size_t l = 0; l < z.dimension(); ++l) {
        const cplx zl = z[l];
        term.factors.push_back({[zl](double t) { return a_factor(zl, t); }, {zl.real()}});
    }
    return {term};
}

inline SeparableIntegrand fixed_kernel_term(std::size_t n) {
    SeparableTerm term;
    for (std::size_t l = 0; l < n; ++l) term.factors.push_back({[](double t) { return cplx(1.0 / (1.0 + t * t)); }, {}});
    return {term};
}

inline double pi_pow(std::size_t n) { return std::pow(std::numbers::pi, static_cast<double>(n)); }

inline void require_growth(const Measure& mu, const QuadratureConfig& cfg) {
    const GrowthReport g = check_growth(mu, cfg);
    if (!g.finite) throw InvalidMeasure("measure violates the growth condition");
}

}  // namespace detail

/// int K_n(z, t) dmu(t) through the separable route.
inline QuadResult kernel_integral(const Measure& mu, const CutPlanePoint& z, const QuadratureConfig& cfg = {}) {
    if (z.dimension() != mu.dimension()) throw InvalidArgument("kernel integral: dimension mismatch");
    SeparableIntegrand terms = detail::moving_kernel_term(z);
    terms[0].coefficient = 2.0 * kI;
    SeparableIntegrand fixed = detail::fixed_kernel_term(z.dimension());
    fixed[0].coefficient = -kI;
    terms.push_back(std::move(fixed[0]));
    return integrate_separable(mu, terms, cfg);
}

/// g(z) = pi^{-n} int K_n(z, t) dmu(t).
inline Sample evaluate_cauchy(const Measure& mu, const CutPlanePoint& z, const QuadratureConfig& cfg = {}) {
    detail::require_growth(mu, cfg);
    const QuadResult r = kernel_integral(mu, z, cfg);
    const double norm = detail::pi_pow(z.dimension());
    return {r.value / norm, r.error / norm};
}

/// Cauchy-type function object. The growth check and the z-independent part
/// of the kernel integral are computed once.
inline EvaluableFunction cauchy_function(const Measure& mu, const QuadratureConfig& cfg = {}, std::string name = "cauchy") {
    detail::require_growth(mu, cfg);
    const std::size_t n = mu.dimension();
    const QuadResult fixed = integrate_separable(mu, detail::fixed_kernel_term(n), cfg);
    const double norm = detail::pi_pow(n);
    return EvaluableFunction(n, EvaluableFunction::Kind::cauchy, std::move(name),
                             [mu, cfg, fixed, norm](const CutPlanePoint& z) -> Sample {
                                 const QuadResult moving = integrate_separable(mu, detail::moving_kernel_term(z), cfg);
                                 const cplx value = kI * (2.0 * moving.value - fixed.value) / norm;
                                 return {value, (2.0 * moving.error + fixed.error) / norm};
                             });
}

// ---------------------------------------------------------------------------
// Herglotz-Nevanlinna functions and their symmetric extensions

/// Representing parameters (a, b, mu).
struct HerglotzTriple {
    double a = 0.0;
    std::vector<double> b;
    Measure mu;

    std::size_t dimension() const { return mu.dimension(); }

    void validate(const QuadratureConfig& cfg = {}) const {
        if (!std::isfinite(a)) throw InvalidArgument("herglotz triple: a must be finite");
        if (b.size() != mu.dimension()) throw InvalidArgument("herglotz triple: b has the wrong length");
        for (double bj : b)
            if (!(bj >= 0.0)) throw InvalidArgument("herglotz triple: b must be nonnegative");
        detail::require_growth(mu, cfg);
    }
};

inline Sample evaluate_herglotz_sym(const HerglotzTriple& triple, const CutPlanePoint& z, const QuadratureConfig& cfg = {}) {
    triple.validate(cfg);
    if (z.dimension() != triple.dimension()) throw InvalidArgument("herglotz: dimension mismatch");
    Sample s = evaluate_cauchy(triple.mu, z, cfg);
    s.value += triple.a;
    for (std::size_t j = 0; j < triple.b.size(); ++j) s.value += triple.b[j] * z[j];
    return s;
}

inline EvaluableFunction herglotz_function(const HerglotzTriple& triple, const QuadratureConfig& cfg = {},
                                           std::string name = "herglotz") {
    triple.validate(cfg);
    const EvaluableFunction g = cauchy_function(triple.mu, cfg);
    return EvaluableFunction(triple.dimension(), EvaluableFunction::Kind::herglotz, std::move(name),
                             [g, a = triple.a, b = triple.b](const CutPlanePoint& z) -> Sample {
                                 Sample s = g.evaluate(z);
                                 s.value += a;
                                 for (std::size_t j = 0; j < b.size(); ++j) s.value += b[j] * z[j];
                                 return s;
                             });
}

/// Sampled Nevanlinna residuals of a triple's measure on the default grid.
inline double max_nevanlinna_residual(const Measure& mu, const QuadratureConfig& cfg = {}) {
    double worst = 0.0;
    for (const CutPlanePoint& z : default_nevanlinna_grid(mu.dimension()))
        worst = std::max(worst, std::abs(nevanlinna_residual(mu, z, cfg).value));
    return worst;
}

// ---------------------------------------------------------------------------
// Positivity probe

/// Per-coordinate grid used by the positivity probes on C^{+n}.
inline std::vector<cplx> upper_probe_axis() {
    std::vector<cplx> out;
    for (double x : {-10.0, -1.0, 0.0, 0.5, 3.0})
        for (double y : {0.01, 0.1, 1.0, 4.0, 100.0}) out.emplace_back(x, y);
    return out;
}

/// All points of the product grid upper_probe_axis()^n.
inline std::vector<CutPlanePoint> upper_probe_grid(std::size_t n) {
    const auto axis = upper_probe_axis();
    std::vector<CutPlanePoint> out;
    std::vector<std::size_t> idx(n, 0);
    while (true) {
        std::vector<cplx> z(n);
        for (std::size_t j = 0; j < n; ++j) z[j] = axis[idx[j]];
        out.emplace_back(std::move(z), kMaxMaskDimension);
        std::size_t j = 0;
        while (j < n && ++idx[j] == axis.size()) idx[j++] = 0;
        if (j == n) break;
    }
    return out;
}

/// Minimum of Im f over the probe grid plus `samples` seeded points of C^{+n}.
inline double herglotz_imag_lower_bound_probe(const EvaluableFunction& f, std::size_t samples,
                                              std::uint64_t seed = kDefaultSeed) {
    double lowest = std::numeric_limits<double>::infinity();
    for (const CutPlanePoint& z : upper_probe_grid(f.dimension())) lowest = std::min(lowest, f(z).imag());
    SampleRng rng(seed);
    const ComponentSignature upper = ComponentSignature::from_lower_mask(f.dimension(), 0);
    for (std::size_t k = 0; k < samples; ++k) lowest = std::min(lowest, f(rng.point(upper, 20.0, 1e-3, 20.0)).imag());
    return lowest;
}

}  // namespace hnv
