#pragma once

// Adaptive Gauss-Kronrod (7/15) quadrature for complex-valued integrands,
// with the compactification t = center + scale * tan(theta) for the real line.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <queue>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "hnv/core.hpp"

namespace hnv {

struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    int max_subdivisions = 2000;  // per axis
    int initial_segments = 8;

    void validate() const {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw InvalidArgument("quadrature tolerances must be positive");
        if (max_subdivisions < 1) throw InvalidArgument("max_subdivisions must be at least 1");
        if (initial_segments < 1) throw InvalidArgument("initial_segments must be at least 1");
    }
};

struct QuadResult {
    cplx value{};
    double error = 0.0;
    std::size_t evaluations = 0;
    std::size_t subdivisions = 0;
};

/// Integrand value together with an error already carried by it (nested integrals).
struct Sample {
    cplx value{};
    double error = 0.0;
};

namespace detail {

inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
Sample call_sample(F& f, double x) {
    using R = std::invoke_result_t<F&, double>;
    if constexpr (std::is_same_v<std::decay_t<R>, Sample>) {
        return f(x);
    } else {
        return Sample{cplx(f(x)), 0.0};
    }
}

struct RuleOutput {
    cplx value{};
    double error = 0.0;
};

// QUADPACK qk15 error heuristic applied to one real component.
inline double qk15_component_error(double resk, double resg, double resabs, double resasc, double hlgth) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr double uflow = std::numeric_limits<double>::min();
    const double dh = std::abs(hlgth);
    double abserr = std::abs((resk - resg) * hlgth);
    resabs *= dh;
    resasc *= dh;
    if (resasc != 0.0 && abserr != 0.0) abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
    if (resabs > uflow / (50.0 * eps)) abserr = std::max(eps * 50.0 * resabs, abserr);
    return abserr;
}

template <class F>
RuleOutput gauss_kronrod_15(F& f, double a, double b) {
    const double centr = 0.5 * (a + b);
    const double hlgth = 0.5 * (b - a);

    std::array<Sample, 15> s;
    s[0] = call_sample(f, centr);
    for (int j = 0; j < 7; ++j) {
        const double dx = hlgth * kXgk[j];
        s[1 + 2 * j] = call_sample(f, centr - dx);
        s[2 + 2 * j] = call_sample(f, centr + dx);
    }

    RuleOutput out;
    double carried = kWgk[7] * s[0].error;
    for (int j = 0; j < 7; ++j) carried += kWgk[j] * (s[1 + 2 * j].error + s[2 + 2 * j].error);

    for (int part = 0; part < 2; ++part) {
        auto comp = [part](const Sample& x) { return part == 0 ? x.value.real() : x.value.imag(); };
        const double fc = comp(s[0]);
        double resg = fc * kWg[3];
        double resk = fc * kWgk[7];
        double resabs = std::abs(resk);
        for (int j = 0; j < 7; ++j) {
            const double f1 = comp(s[1 + 2 * j]);
            const double f2 = comp(s[2 + 2 * j]);
            resk += kWgk[j] * (f1 + f2);
            resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
            if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
        }
        const double reskh = 0.5 * resk;
        double resasc = kWgk[7] * std::abs(fc - reskh);
        for (int j = 0; j < 7; ++j)
            resasc += kWgk[j] * (std::abs(comp(s[1 + 2 * j]) - reskh) + std::abs(comp(s[2 + 2 * j]) - reskh));
        const double err = qk15_component_error(resk, resg, resabs, resasc, hlgth);
        if (part == 0)
            out.value.real(resk * hlgth);
        else
            out.value.imag(resk * hlgth);
        out.error += err;
    }
    out.error += carried * std::abs(hlgth);
    return out;
}

struct Segment {
    double a, b;
    cplx value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

}  // namespace detail

/// Adaptive quadrature of f over [a, b]. The interval is split uniformly into
/// cfg.initial_segments pieces and additionally at every breakpoint inside it.
template <class F>
QuadResult integrate_interval(F&& f, double a, double b, const QuadratureConfig& cfg,
                              std::span<const double> breakpoints = {}) {
    cfg.validate();
    QuadResult result;
    if (a == b) return result;

    std::vector<double> cuts;
    for (int k = 0; k <= cfg.initial_segments; ++k)
        cuts.push_back(a + (b - a) * static_cast<double>(k) / cfg.initial_segments);
    const double lo = std::min(a, b), hi = std::max(a, b);
    for (double p : breakpoints)
        if (p > lo && p < hi) cuts.push_back(p);
    if (a < b)
        std::sort(cuts.begin(), cuts.end());
    else
        std::sort(cuts.begin(), cuts.end(), std::greater<>());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::priority_queue<detail::Segment> heap;
    cplx total{};
    double total_error = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const auto r = detail::gauss_kronrod_15(f, cuts[k], cuts[k + 1]);
        result.evaluations += 15;
        heap.push({cuts[k], cuts[k + 1], r.value, r.error});
        total += r.value;
        total_error += r.error;
    }

    std::vector<detail::Segment> frozen;
    auto tolerance = [&] { return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total)); };
    int splits = 0;
    while (total_error > tolerance() && !heap.empty()) {
        if (splits >= cfg.max_subdivisions) {
            result.value = total;
            result.error = total_error;
            result.subdivisions = static_cast<std::size_t>(splits);
            throw AccuracyError("quadrature did not reach tolerance within " +
                                    std::to_string(cfg.max_subdivisions) + " subdivisions (error estimate " +
                                    std::to_string(total_error) + ")",
                                total, total_error);
        }
        detail::Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const double width = std::abs(worst.b - worst.a);
        if (width <= 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(mid))) {
            frozen.push_back(worst);  // cannot be refined further in double precision
            continue;
        }
        const auto left = detail::gauss_kronrod_15(f, worst.a, mid);
        const auto right = detail::gauss_kronrod_15(f, mid, worst.b);
        result.evaluations += 30;
        ++splits;
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push({worst.a, mid, left.value, left.error});
        heap.push({mid, worst.b, right.value, right.error});
    }

    // Recompute from the pieces to shed accumulated cancellation in the running sums.
    cplx sum{};
    double err = 0.0;
    while (!heap.empty()) {
        sum += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    for (const auto& s : frozen) {
        sum += s.value;
        err += s.error;
    }
    result.value = sum;
    result.error = err;
    result.subdivisions = static_cast<std::size_t>(splits);
    if (err > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(sum)))
        throw AccuracyError("quadrature stalled at the resolution limit (error estimate " + std::to_string(err) + ")",
                            sum, err);
    return result;
}

/// Compactification t = center + scale * tan(theta) of one real axis.
struct AxisMap {
    double center = 0.0;
    double scale = 1.0;

    double to_t(double theta) const { return center + scale * std::tan(theta); }
    double to_theta(double t) const { return std::atan((t - center) / scale); }
    double jacobian(double theta) const {
        const double c = std::cos(theta);
        return scale / (c * c);
    }
};

namespace detail {

// Tail increments R * |g(+-R)| over six doublings of R, starting well past the
// scale and every breakpoint. A convergent integral has them shrinking; a
// non-decreasing run means the partial integrals over |t| <= R do not
// Cauchy-converge.
template <class G>
void check_decay(G& g, const AxisMap& map, const QuadratureConfig& cfg, std::span<const double> breakpoints) {
    double reach = map.scale;
    for (double b : breakpoints) reach = std::max(reach, std::abs(b - map.center));
    std::array<double, 7> incr{};
    for (int k = 0; k < 7; ++k) {
        const double r = reach * std::ldexp(1.0, 10 + k);
        incr[k] = r * (std::abs(call_sample(g, map.center + r).value) + std::abs(call_sample(g, map.center - r).value));
    }
    bool growing = true;
    for (int k = 3; k < 6; ++k)
        if (incr[k + 1] < 0.9 * incr[k]) growing = false;
    if (growing && incr[6] > cfg.abs_tol)
        throw DivergenceError("integrand does not decay: partial integrals over |t| <= R fail to converge as R doubles");
}

}  // namespace detail

/// Integral of g over the whole real line. The line is cut at map.center and
/// at every breakpoint; the finite pieces are integrated in t and the two
/// tails through t = c +- scale * tan(theta) anchored at the outermost cuts, so
/// a narrow feature far from the origin is resolved on its own scale.
template <class G>
QuadResult integrate_real_line(G&& g, const QuadratureConfig& cfg, const AxisMap& map = {},
                               std::span<const double> breakpoints = {}, bool verify_decay = true) {
    if (verify_decay) detail::check_decay(g, map, cfg, breakpoints);
    std::vector<double> cuts{map.center};
    for (double t : breakpoints)
        if (std::isfinite(t)) cuts.push_back(t);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    QuadResult total;
    auto add = [&total](const QuadResult& r) {
        total.value += r.value;
        total.error += r.error;
        total.evaluations += r.evaluations;
        total.subdivisions += r.subdivisions;
    };
    // The first scale-width of each tail is integrated in t: close to a large
    // anchor, anchor + scale * tan(theta) rounds to the anchor's ulp and a
    // narrow feature there would see jacobian and sample point disagree.
    auto tail = [&](double anchor, double sign) {
        auto h = [&, anchor, sign](double theta) -> Sample {
            const double c = std::cos(theta);
            const double jac = map.scale / (c * c);
            const Sample s = detail::call_sample(g, anchor + sign * map.scale * std::tan(theta));
            return {s.value * jac, s.error * jac};
        };
        return integrate_interval(h, 0.25 * std::numbers::pi, 0.5 * std::numbers::pi, cfg);
    };
    const double lo = cuts.front() - map.scale, hi = cuts.back() + map.scale;
    add(tail(cuts.front(), -1.0));
    add(integrate_interval(g, lo, cuts.front(), cfg));
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) add(integrate_interval(g, cuts[k], cuts[k + 1], cfg));
    add(integrate_interval(g, cuts.back(), hi, cfg));
    add(tail(cuts.back(), 1.0));
    return total;
}

/// Integral of g over [lo, hi] (finite) through the same substitution.
template <class G>
QuadResult integrate_real_range(G&& g, double lo, double hi, const QuadratureConfig& cfg, const AxisMap& map = {},
                                std::span<const double> breakpoints = {}) {
    std::vector<double> theta_breaks;
    for (double t : breakpoints) theta_breaks.push_back(map.to_theta(t));
    auto h = [&](double theta) -> Sample {
        const Sample s = detail::call_sample(g, map.to_t(theta));
        const double jac = map.jacobian(theta);
        return {s.value * jac, s.error * jac};
    };
    return integrate_interval(h, map.to_theta(lo), map.to_theta(hi), cfg, theta_breaks);
}

/// Iterated integral of f over the box [-radius, radius]^n, every axis mapped
/// by t = tan(theta). An inner integral sitting at outer angle theta gets the
/// absolute tolerance 0.1 * tol / (pi * jacobian(theta)) and a tenth of the
/// relative one, so the error it carries outward stays below a tenth of the
/// outer budget. Inner axes break at the values fixed on outer axes since the
/// integrands of this library peak along diagonals x_j = x_k.
template <class F>
QuadResult integrate_box(std::size_t n, double radius, F&& f, const QuadratureConfig& cfg) {
    check_dimension(n, kMaxMaskDimension);
    cfg.validate();
    const AxisMap map{};
    const double theta_max = map.to_theta(radius);
    std::vector<double> x(n, 0.0);
    std::size_t evaluations = 0;

    auto level = [&](auto& self, std::size_t axis, QuadratureConfig level_cfg) -> QuadResult {
        auto h = [&](double theta) -> Sample {
            const double jac = map.jacobian(theta);
            x[axis] = map.to_t(theta);
            if (axis + 1 == n) {
                ++evaluations;
                return {cplx(f(std::span<const double>(x))) * jac, 0.0};
            }
            QuadratureConfig inner = level_cfg;
            inner.abs_tol = 0.1 * level_cfg.abs_tol / (std::numbers::pi * jac);
            inner.rel_tol = 0.1 * level_cfg.rel_tol;
            const QuadResult r = self(self, axis + 1, inner);
            return {r.value * jac, r.error * jac};
        };
        std::vector<double> breaks;
        for (std::size_t k = 0; k < axis; ++k) breaks.push_back(map.to_theta(x[k]));
        return integrate_interval(h, -theta_max, theta_max, level_cfg, breaks);
    };
    QuadResult r = level(level, 0, cfg);
    r.evaluations = evaluations;
    return r;
}

/// Neville-Richardson tableau extrapolating F(h) to h = 0 under an error
/// expansion in integer powers of h. Row k, column m eliminates h^1..h^m.
struct RichardsonTable {
    int max_order = 2;
    std::vector<double> steps;
    std::vector<std::vector<cplx>> rows;

    void push(double h, cplx value) {
        std::vector<cplx> row{value};
        const std::size_t k = rows.size();
        steps.push_back(h);
        for (std::size_t m = 1; m <= static_cast<std::size_t>(max_order) && m <= k; ++m) {
            const double h_old = steps[k - m];
            const cplx prev = rows[k - 1][m - 1];
            row.push_back(row[m - 1] + (row[m - 1] - prev) * (h / (h_old - h)));
        }
        rows.push_back(std::move(row));
    }

    std::size_t size() const { return rows.size(); }

    /// Highest-order extrapolant available in the latest row.
    cplx best() const { return rows.back().back(); }

    /// Difference between the two most recent extrapolants of equal order.
    double last_change() const {
        if (rows.size() < 2) return std::numeric_limits<double>::infinity();
        const auto& a = rows[rows.size() - 1];
        const auto& b = rows[rows.size() - 2];
        const std::size_t m = std::min(a.size(), b.size()) - 1;
        return std::abs(a[m] - b[m]);
    }

    /// True once the last two rows both carry the full extrapolation order.
    bool full_order() const {
        const auto full = static_cast<std::size_t>(max_order) + 1;
        return rows.size() >= 2 && rows.back().size() == full && rows[rows.size() - 2].size() == full;
    }

    /// Empirical convergence order of the raw sequence, log(d1/d2)/log(h1/h2).
    double empirical_order() const {
        if (rows.size() < 3) return std::numeric_limits<double>::quiet_NaN();
        const std::size_t k = rows.size() - 1;
        const double d1 = std::abs(rows[k - 1][0] - rows[k - 2][0]);
        const double d2 = std::abs(rows[k][0] - rows[k - 1][0]);
        if (d1 == 0.0 || d2 == 0.0) return std::numeric_limits<double>::infinity();
        return std::log(d1 / d2) / std::log(steps[k - 1] / steps[k]);
    }
};

}  // namespace hnv
