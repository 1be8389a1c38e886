#pragma once

// A closed family of positive Borel measures on R^n and the integration
// engine behind every dmu integral: atoms, scaled Lebesgue measure, product
// densities, pushforwards along affine curves, and finite sums.

#include <cmath>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "hnv/core.hpp"
#include "hnv/kernels.hpp"
#include "hnv/quadrature.hpp"

namespace hnv {

// ---------------------------------------------------------------------------
// One-dimensional densities

struct ConstantDensity {
    double c = 1.0;
};

/// t -> (1 + t^2)^{-1}
struct CauchyWeightDensity {};

/// Normal probability density with the given mean and standard deviation.
struct GaussianDensity {
    double mean = 0.0;
    double sigma = 1.0;
};

/// Named closed forms: "cauchy_squared" (1+t^2)^{-2}, "inverse_quartic"
/// (1+t^4)^{-1}, and "linear" |t|. The last one violates the growth
/// condition and exists so divergence detection has something to find.
struct RationalDensity {
    std::string name;
};

class DensityDescriptor {
public:
    using Form = std::variant<ConstantDensity, CauchyWeightDensity, GaussianDensity, RationalDensity>;

    DensityDescriptor() : form_(ConstantDensity{1.0}) {}
    DensityDescriptor(Form form) : form_(std::move(form)) { validate(); }  // NOLINT(implicit)

    static DensityDescriptor constant(double c) { return DensityDescriptor(ConstantDensity{c}); }
    static DensityDescriptor cauchy_weight() { return DensityDescriptor(CauchyWeightDensity{}); }
    static DensityDescriptor gaussian(double mean, double sigma) { return DensityDescriptor(GaussianDensity{mean, sigma}); }
    static DensityDescriptor rational(std::string name) { return DensityDescriptor(RationalDensity{std::move(name)}); }

    const Form& form() const noexcept { return form_; }

    double operator()(double t) const {
        return std::visit(
            [t](const auto& d) -> double {
                using D = std::decay_t<decltype(d)>;
                if constexpr (std::is_same_v<D, ConstantDensity>) {
                    return d.c;
                } else if constexpr (std::is_same_v<D, CauchyWeightDensity>) {
                    return 1.0 / (1.0 + t * t);
                } else if constexpr (std::is_same_v<D, GaussianDensity>) {
                    const double u = (t - d.mean) / d.sigma;
                    return std::exp(-0.5 * u * u) / (d.sigma * std::sqrt(2.0 * std::numbers::pi));
                } else {
                    if (d.name == "cauchy_squared") {
                        const double w = 1.0 / (1.0 + t * t);
                        return w * w;
                    }
                    if (d.name == "inverse_quartic") return 1.0 / (1.0 + t * t * t * t);
                    return std::abs(t);  // "linear"
                }
            },
            form_);
    }

    /// Compactification suited to this density.
    AxisMap axis_map() const {
        if (const auto* g = std::get_if<GaussianDensity>(&form_)) return {g->mean, g->sigma};
        return {};
    }

    bool is_zero() const {
        const auto* c = std::get_if<ConstantDensity>(&form_);
        return c && c->c == 0.0;
    }

    static bool known_rational(const std::string& name) {
        return name == "cauchy_squared" || name == "inverse_quartic" || name == "linear";
    }

    friend bool operator==(const DensityDescriptor& a, const DensityDescriptor& b) {
        if (a.form_.index() != b.form_.index()) return false;
        return std::visit(
            [&b](const auto& d) {
                using D = std::decay_t<decltype(d)>;
                const auto& e = std::get<D>(b.form_);
                if constexpr (std::is_same_v<D, ConstantDensity>) return d.c == e.c;
                else if constexpr (std::is_same_v<D, CauchyWeightDensity>) return true;
                else if constexpr (std::is_same_v<D, GaussianDensity>) return d.mean == e.mean && d.sigma == e.sigma;
                else return d.name == e.name;
            },
            a.form_);
    }

private:
    void validate() const {
        std::visit(
            [](const auto& d) {
                using D = std::decay_t<decltype(d)>;
                if constexpr (std::is_same_v<D, ConstantDensity>) {
                    if (!(d.c >= 0.0) || !std::isfinite(d.c)) throw InvalidMeasure("constant density must be >= 0");
                } else if constexpr (std::is_same_v<D, GaussianDensity>) {
                    if (!(d.sigma > 0.0) || !std::isfinite(d.mean)) throw InvalidMeasure("gaussian density needs sigma > 0");
                } else if constexpr (std::is_same_v<D, RationalDensity>) {
                    if (!known_rational(d.name)) throw InvalidMeasure("unknown rational_table density '" + d.name + "'");
                }
            },
            form_);
    }

    Form form_;
};

// ---------------------------------------------------------------------------
// Measures

class Measure;

struct AtomicMeasure {
    std::vector<std::vector<double>> points;
    std::vector<double> weights;
};

/// c times n-dimensional Lebesgue measure.
struct LebesgueMeasure {
    double c = 1.0;
};

/// scale * (factor_1 (x) ... (x) factor_n), each factor a density times 1D Lebesgue.
struct ProductMeasure {
    std::vector<DensityDescriptor> factors;
    double scale = 1.0;
};

/// Pushforward of scale * weight(s) ds under s -> alpha * s + beta.
struct CurveMeasure {
    std::vector<double> alpha;
    std::vector<double> beta;
    DensityDescriptor weight;
    double scale = 1.0;
};

struct SumMeasure {
    std::vector<Measure> terms;
};

class Measure {
public:
    using Variant = std::variant<AtomicMeasure, LebesgueMeasure, ProductMeasure, CurveMeasure, SumMeasure>;

    Measure(std::size_t dimension, Variant v) : dimension_(dimension), v_(std::move(v)) { validate(); }

    static Measure atomic(std::vector<std::vector<double>> points, std::vector<double> weights,
                          std::size_t dimension = 0) {
        if (dimension == 0) {
            if (points.empty()) throw InvalidMeasure("empty atomic measure needs an explicit dimension");
            dimension = points.front().size();
        }
        return Measure(dimension, AtomicMeasure{std::move(points), std::move(weights)});
    }
    static Measure lebesgue(std::size_t dimension, double c = 1.0) { return Measure(dimension, LebesgueMeasure{c}); }
    static Measure product(std::vector<DensityDescriptor> factors, double scale = 1.0) {
        const std::size_t n = factors.size();
        return Measure(n, ProductMeasure{std::move(factors), scale});
    }
    static Measure curve(std::vector<double> alpha, std::vector<double> beta, DensityDescriptor weight, double scale) {
        const std::size_t n = alpha.size();
        return Measure(n, CurveMeasure{std::move(alpha), std::move(beta), std::move(weight), scale});
    }
    static Measure sum(std::vector<Measure> terms, std::size_t dimension = 0) {
        if (dimension == 0) {
            if (terms.empty()) throw InvalidMeasure("empty sum needs an explicit dimension");
            dimension = terms.front().dimension();
        }
        return Measure(dimension, SumMeasure{std::move(terms)});
    }
    static Measure zero(std::size_t dimension) { return atomic({}, {}, dimension); }

    std::size_t dimension() const noexcept { return dimension_; }
    const Variant& variant() const noexcept { return v_; }

    /// c * mu
    Measure scaled(double c) const {
        if (!(c >= 0.0)) throw InvalidMeasure("measures can only be scaled by c >= 0");
        return std::visit(
            [&](const auto& m) -> Measure {
                using M = std::decay_t<decltype(m)>;
                M copy = m;
                if constexpr (std::is_same_v<M, AtomicMeasure>) {
                    for (double& w : copy.weights) w *= c;
                } else if constexpr (std::is_same_v<M, LebesgueMeasure>) {
                    copy.c *= c;
                } else if constexpr (std::is_same_v<M, ProductMeasure> || std::is_same_v<M, CurveMeasure>) {
                    copy.scale *= c;
                } else {
                    for (Measure& t : copy.terms) t = t.scaled(c);
                }
                return Measure(dimension_, std::move(copy));
            },
            v_);
    }

    Measure operator+(const Measure& other) const { return Measure::sum({*this, other}); }

private:
    void validate() const {
        check_dimension(dimension_, kMaxMaskDimension);
        std::visit(
            [this](const auto& m) {
                using M = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<M, AtomicMeasure>) {
                    if (m.points.size() != m.weights.size())
                        throw InvalidMeasure("atomic measure: points and weights differ in count");
                    for (const auto& p : m.points)
                        if (p.size() != dimension_) throw InvalidMeasure("atomic measure: point of wrong dimension");
                    for (double w : m.weights)
                        if (!(w >= 0.0) || !std::isfinite(w)) throw InvalidMeasure("atomic measure: weights must be >= 0");
                } else if constexpr (std::is_same_v<M, LebesgueMeasure>) {
                    if (!(m.c >= 0.0) || !std::isfinite(m.c)) throw InvalidMeasure("lebesgue scale must be >= 0");
                } else if constexpr (std::is_same_v<M, ProductMeasure>) {
                    if (m.factors.size() != dimension_) throw InvalidMeasure("product density: wrong number of factors");
                    if (!(m.scale >= 0.0)) throw InvalidMeasure("product density: scale must be >= 0");
                } else if constexpr (std::is_same_v<M, CurveMeasure>) {
                    if (m.alpha.size() != dimension_ || m.beta.size() != dimension_)
                        throw InvalidMeasure("curve pushforward: alpha/beta of wrong dimension");
                    bool nondegenerate = false;
                    for (double a : m.alpha) nondegenerate = nondegenerate || a != 0.0;
                    if (!nondegenerate) throw InvalidMeasure("curve pushforward: alpha must have a nonzero entry");
                    if (!(m.scale >= 0.0)) throw InvalidMeasure("curve pushforward: scale must be >= 0");
                } else {
                    for (const Measure& t : m.terms)
                        if (t.dimension() != dimension_) throw InvalidMeasure("sum of measures of different dimension");
                }
            },
            v_);
    }

    std::size_t dimension_;
    Variant v_;
};

// ---------------------------------------------------------------------------
// Separable integrands: sum_k c_k prod_l f_{k,l}(t_l)

struct AxisFactor {
    std::function<cplx(double)> f;
    std::vector<double> breakpoints;
};

struct SeparableTerm {
    cplx coefficient{1.0, 0.0};
    std::vector<AxisFactor> factors;
};

using SeparableIntegrand = std::vector<SeparableTerm>;

namespace detail {

template <class F>
QuadResult integrate_product(std::span<const DensityDescriptor> factors, double scale, F& f, std::size_t n,
                             const QuadratureConfig& cfg) {
    // An inner integral at outer abscissa s gets the absolute tolerance
    // 0.1 * tol / (pi * w(s) * (1 + s^2)), so the error carried outward
    // integrates to at most a tenth of the outer budget.
    std::vector<double> t(n, 0.0);
    std::size_t evaluations = 0;
    auto level = [&](auto& self, std::size_t axis, QuadratureConfig level_cfg) -> QuadResult {
        const DensityDescriptor& dens = factors[axis];
        auto g = [&](double s) -> Sample {
            t[axis] = s;
            const double w = dens(s);
            if (w == 0.0) return {};
            if (axis + 1 == n) {
                ++evaluations;
                return {w * cplx(f(std::span<const double>(t))), 0.0};
            }
            QuadratureConfig inner_cfg = level_cfg;
            inner_cfg.abs_tol = 0.1 * level_cfg.abs_tol / (std::numbers::pi * w * (1.0 + s * s));
            inner_cfg.rel_tol = 0.1 * level_cfg.rel_tol;
            const QuadResult inner = self(self, axis + 1, inner_cfg);
            return {w * inner.value, w * inner.error};
        };
        return integrate_real_line(g, level_cfg, dens.axis_map());
    };
    QuadResult r = level(level, 0, cfg);
    r.value *= scale;
    r.error *= scale;
    r.evaluations = evaluations;
    return r;
}

inline std::vector<DensityDescriptor> lebesgue_factors(std::size_t n) {
    return std::vector<DensityDescriptor>(n, DensityDescriptor::constant(1.0));
}

}  // namespace detail

/// Integral of a generic integrand f: R^n -> C. Product-type measures are
/// integrated axis by axis; curves reduce to one parameter; atoms are summed.
template <class F>
QuadResult integrate(const Measure& mu, F&& f, const QuadratureConfig& cfg = {}) {
    const std::size_t n = mu.dimension();
    return std::visit(
        [&](const auto& m) -> QuadResult {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, AtomicMeasure>) {
                QuadResult r;
                for (std::size_t k = 0; k < m.points.size(); ++k)
                    r.value += m.weights[k] * cplx(f(std::span<const double>(m.points[k])));
                r.evaluations = m.points.size();
                return r;
            } else if constexpr (std::is_same_v<M, LebesgueMeasure>) {
                if (m.c == 0.0) return {};
                const auto factors = detail::lebesgue_factors(n);
                return detail::integrate_product(factors, m.c, f, n, cfg);
            } else if constexpr (std::is_same_v<M, ProductMeasure>) {
                if (m.scale == 0.0) return {};
                return detail::integrate_product(m.factors, m.scale, f, n, cfg);
            } else if constexpr (std::is_same_v<M, CurveMeasure>) {
                if (m.scale == 0.0) return {};
                std::vector<double> t(n);
                std::size_t evaluations = 0;
                auto g = [&](double s) -> cplx {
                    const double w = m.weight(s);
                    if (w == 0.0) return {};
                    for (std::size_t l = 0; l < n; ++l) t[l] = m.alpha[l] * s + m.beta[l];
                    ++evaluations;
                    return w * cplx(f(std::span<const double>(t)));
                };
                QuadResult r = integrate_real_line(g, cfg, m.weight.axis_map());
                r.value *= m.scale;
                r.error *= m.scale;
                r.evaluations = evaluations;
                return r;
            } else {
                QuadResult r;
                for (const Measure& term : m.terms) {
                    const QuadResult p = integrate(term, f, cfg);
                    r.value += p.value;
                    r.error += p.error;
                    r.evaluations += p.evaluations;
                }
                return r;
            }
        },
        mu.variant());
}

namespace detail {

inline QuadResult integrate_separable_product(std::span<const DensityDescriptor> dens, double scale,
                                              const SeparableIntegrand& terms, const QuadratureConfig& cfg) {
    QuadResult r;
    const std::size_t n = dens.size();
    for (const SeparableTerm& term : terms) {
        if (term.factors.size() != n) throw InvalidArgument("separable term has the wrong number of factors");
        std::vector<cplx> values(n);
        std::vector<double> errors(n);
        for (std::size_t l = 0; l < n; ++l) {
            const DensityDescriptor& d = dens[l];
            const AxisFactor& factor = term.factors[l];
            auto g = [&](double t) -> cplx {
                const double w = d(t);
                return w == 0.0 ? cplx{} : w * factor.f(t);
            };
            const QuadResult q = integrate_real_line(g, cfg, d.axis_map(), factor.breakpoints);
            values[l] = q.value;
            errors[l] = q.error;
            r.evaluations += q.evaluations;
        }
        cplx prod = term.coefficient * scale;
        for (cplx v : values) prod *= v;
        double err = 0.0;
        for (std::size_t l = 0; l < n; ++l) {
            double others = std::abs(term.coefficient) * scale * errors[l];
            for (std::size_t m = 0; m < n; ++m)
                if (m != l) others *= std::abs(values[m]) + errors[m];
            err += others;
        }
        r.value += prod;
        r.error += err;
    }
    return r;
}

inline cplx evaluate_separable(const SeparableIntegrand& terms, std::span<const double> t) {
    cplx sum{};
    for (const SeparableTerm& term : terms) {
        cplx p = term.coefficient;
        for (std::size_t l = 0; l < t.size(); ++l) p *= term.factors[l].f(t[l]);
        sum += p;
    }
    return sum;
}

}  // namespace detail

/// Integral of a separable integrand. Product-type measures integrate each
/// factor in one dimension; other variants fall back to pointwise evaluation.
inline QuadResult integrate_separable(const Measure& mu, const SeparableIntegrand& terms, const QuadratureConfig& cfg = {}) {
    const std::size_t n = mu.dimension();
    return std::visit(
        [&](const auto& m) -> QuadResult {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, AtomicMeasure>) {
                QuadResult r;
                for (std::size_t k = 0; k < m.points.size(); ++k)
                    r.value += m.weights[k] * detail::evaluate_separable(terms, m.points[k]);
                r.evaluations = m.points.size();
                return r;
            } else if constexpr (std::is_same_v<M, LebesgueMeasure>) {
                if (m.c == 0.0) return {};
                const auto factors = detail::lebesgue_factors(n);
                return detail::integrate_separable_product(factors, m.c, terms, cfg);
            } else if constexpr (std::is_same_v<M, ProductMeasure>) {
                if (m.scale == 0.0) return {};
                return detail::integrate_separable_product(m.factors, m.scale, terms, cfg);
            } else if constexpr (std::is_same_v<M, CurveMeasure>) {
                if (m.scale == 0.0) return {};
                std::vector<double> breaks;
                for (const SeparableTerm& term : terms)
                    for (std::size_t l = 0; l < n && l < term.factors.size(); ++l)
                        if (m.alpha[l] != 0.0)
                            for (double b : term.factors[l].breakpoints) breaks.push_back((b - m.beta[l]) / m.alpha[l]);
                std::vector<double> t(n);
                auto g = [&](double s) -> cplx {
                    const double w = m.weight(s);
                    if (w == 0.0) return {};
                    for (std::size_t l = 0; l < n; ++l) t[l] = m.alpha[l] * s + m.beta[l];
                    return w * detail::evaluate_separable(terms, t);
                };
                QuadResult r = integrate_real_line(g, cfg, m.weight.axis_map(), breaks);
                r.value *= m.scale;
                r.error *= m.scale;
                return r;
            } else {
                QuadResult r;
                for (const Measure& term : m.terms) {
                    const QuadResult p = integrate_separable(term, terms, cfg);
                    r.value += p.value;
                    r.error += p.error;
                    r.evaluations += p.evaluations;
                }
                return r;
            }
        },
        mu.variant());
}

// ---------------------------------------------------------------------------
// Growth and Nevanlinna conditions

/// prod (1 + t_l^2)^{-1} as a separable integrand.
inline SeparableIntegrand growth_integrand(std::size_t n) {
    SeparableTerm term;
    for (std::size_t l = 0; l < n; ++l) term.factors.push_back({[](double t) { return cplx(1.0 / (1.0 + t * t)); }, {}});
    return {term};
}

struct GrowthReport {
    bool finite = false;
    double value = 0.0;
    double error = 0.0;
};

/// Evaluates int prod (1+t_l^2)^{-1} dmu; finite == false when divergence is detected.
inline GrowthReport check_growth(const Measure& mu, const QuadratureConfig& cfg = {}) {
    try {
        const QuadResult r = integrate_separable(mu, growth_integrand(mu.dimension()), cfg);
        return {true, r.value.real(), r.error};
    } catch (const DivergenceError&) {
        return {false, std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    }
}

/// All rho in {-1,0,1}^n containing both -1 and +1, in lexicographic order.
inline std::vector<std::vector<Rho>> nevanlinna_rhos(std::size_t n) {
    std::vector<std::vector<Rho>> out;
    std::size_t total = 1;
    for (std::size_t j = 0; j < n; ++j) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
        std::vector<Rho> rho(n);
        std::size_t c = code;
        bool has_minus = false, has_plus = false;
        for (std::size_t j = n; j-- > 0;) {
            rho[j] = static_cast<Rho>(static_cast<int>(c % 3) - 1);
            c /= 3;
            has_minus = has_minus || rho[j] == Rho::minus;
            has_plus = has_plus || rho[j] == Rho::plus;
        }
        if (has_minus && has_plus) out.push_back(std::move(rho));
    }
    return out;
}

/// sum over rho (both signs present) of int prod N_{rho_j}(z_j, t_j) dmu.
/// Exactly zero when n == 1 since no rho qualifies.
inline QuadResult nevanlinna_residual(const Measure& mu, const CutPlanePoint& z, const QuadratureConfig& cfg = {}) {
    if (z.dimension() != mu.dimension()) throw InvalidArgument("nevanlinna_residual: dimension mismatch");
    require_upper(z.coords(), "nevanlinna_residual");
    SeparableIntegrand terms;
    for (const auto& rho : nevanlinna_rhos(z.dimension())) {
        SeparableTerm term;
        for (std::size_t j = 0; j < rho.size(); ++j) {
            const cplx zj = z[j];
            const Rho r = rho[j];
            std::vector<double> breaks;
            if (r != Rho::zero) breaks.push_back(zj.real());
            term.factors.push_back({[zj, r](double t) { return n_factor(r, zj, t); }, std::move(breaks)});
        }
        terms.push_back(std::move(term));
    }
    if (terms.empty()) return {};
    return integrate_separable(mu, terms, cfg);
}

/// A deterministic sample of C^{+n} used to assess the Nevanlinna condition.
/// Coordinates equal to i are avoided: every rho-term vanishes there.
inline std::vector<CutPlanePoint> default_nevanlinna_grid(std::size_t n) {
    const std::vector<cplx> base = {{0.0, 2.0}, {1.0, 0.5}, {-1.5, 3.0}, {0.3, 1.7}, {-0.7, 0.4}};
    std::vector<CutPlanePoint> out;
    for (std::size_t k = 0; k < base.size(); ++k) {
        std::vector<cplx> z(n);
        for (std::size_t j = 0; j < n; ++j) z[j] = base[(k + 2 * j) % base.size()];
        out.emplace_back(std::move(z), kMaxMaskDimension);
    }
    return out;
}

}  // namespace hnv
