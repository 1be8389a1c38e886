#pragma once

// The eight two-variable example functions f0..f7 given branch-by-branch on
// the four components of (C \ R)^2, together with the measures that generate
// the Cauchy-type members of the family.

#include <array>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "hnv/functions.hpp"

namespace hnv::catalogue {

// Branch keys: bit 0 set when z1 is in C-, bit 1 set when z2 is in C-.
inline constexpr std::uint32_t kUpperUpper = 0;  // C+ x C+
inline constexpr std::uint32_t kLowerUpper = 1;  // C- x C+
inline constexpr std::uint32_t kUpperLower = 2;  // C+ x C-
inline constexpr std::uint32_t kLowerLower = 3;  // C- x C-

inline const std::vector<std::string>& ids() {
    static const std::vector<std::string> all = {"f0", "f1", "f2", "f3", "f4", "f5", "f6", "f7"};
    return all;
}

namespace detail {

inline Branch constant(cplx c) {
    return [c](std::span<const cplx>) { return c; };
}

// f2 and f4 differ only by the imaginary constants.
inline std::map<std::uint32_t, Branch> diagonal_family(cplx upper_const, cplx other_const) {
    return {
        {kUpperUpper, [upper_const](std::span<const cplx> z) { return upper_const - 1.0 / (kI + z[0]) - 1.0 / (kI + z[1]); }},
        {kLowerUpper, [other_const](std::span<const cplx> z) { return other_const + 1.0 / (z[1] - z[0]) - 1.0 / (kI + z[1]); }},
        {kUpperLower, [other_const](std::span<const cplx> z) { return other_const - 1.0 / (kI + z[0]) + 1.0 / (z[0] - z[1]); }},
        {kLowerLower, constant(other_const)},
    };
}

inline std::map<std::uint32_t, Branch> table_row(const std::string& id) {
    const cplx i = kI;
    auto inv_z2 = [](std::span<const cplx> z) { return 1.0 / z[1]; };
    if (id == "f0") return {{kUpperUpper, constant(-i)}, {kLowerUpper, inv_z2}, {kUpperLower, constant(0)}, {kLowerLower, constant(0)}};
    if (id == "f1") return {{kUpperUpper, constant(i)}, {kLowerUpper, inv_z2}, {kUpperLower, constant(0)}, {kLowerLower, constant(0)}};
    if (id == "f2") return diagonal_family(-0.5 * i, -0.5 * i);
    if (id == "f3") return {{kUpperUpper, constant(-i)}, {kLowerUpper, constant(0)}, {kUpperLower, constant(0)}, {kLowerLower, constant(0)}};
    if (id == "f4") return diagonal_family(4.5 * i, -5.5 * i);
    if (id == "f5") return {{kUpperUpper, constant(i)}, {kLowerUpper, constant(0)}, {kUpperLower, constant(0)}, {kLowerLower, constant(0)}};
    if (id == "f6") return {{kUpperUpper, constant(-i)}, {kLowerUpper, constant(i)}, {kUpperLower, constant(i)}, {kLowerLower, constant(i)}};
    if (id == "f7") return {{kUpperUpper, constant(i)}, {kLowerUpper, constant(-i)}, {kUpperLower, constant(-i)}, {kLowerLower, constant(-i)}};
    throw InvalidArgument("unknown catalogue function '" + id + "'");
}

}  // namespace detail

/// Catalogue entry by id ("f0".."f7"). "f4-upper" is f4 restricted to C+ x C+.
inline EvaluableFunction function(const std::string& id) {
    if (id == "f4-upper") {
        auto row = detail::table_row("f4");
        return closed_form(2, id, {{kUpperUpper, row.at(kUpperUpper)}}, EvaluableFunction::Kind::catalogue);
    }
    return closed_form(2, id, detail::table_row(id), EvaluableFunction::Kind::catalogue);
}

/// Conditions (i), (ii), (iii) as marked for each function.
inline std::array<bool, 3> expected_conditions(const std::string& id) {
    if (id == "f0") return {false, false, false};
    if (id == "f1") return {true, false, false};
    if (id == "f2") return {false, true, false};
    if (id == "f3") return {false, false, true};
    if (id == "f4") return {true, true, false};
    if (id == "f5") return {true, false, true};
    if (id == "f6") return {false, true, true};
    if (id == "f7") return {true, true, true};
    throw InvalidArgument("unknown catalogue function '" + id + "'");
}

// ---------------------------------------------------------------------------
// Measures

/// pi times arc length along the diagonal of R^2, parametrised by s -> (s, s).
inline Measure mu2() {
    return Measure::curve({1.0, 1.0}, {0.0, 0.0}, DensityDescriptor::constant(1.0), std::numbers::pi);
}

/// Defining measure of f4 as a Cauchy-type function: mu2 + 5 lambda^2.
inline Measure f4_defining_measure() { return Measure::sum({mu2(), Measure::lebesgue(2, 5.0)}); }

/// Representing measure of f4 restricted to C+ x C+ as a Herglotz-Nevanlinna function:
/// (9/2) lambda^2 + w (x) lambda + lambda (x) w with w(t) = (1+t^2)^{-1}.
inline Measure f4_alternative_measure() {
    return Measure::sum({
        Measure::lebesgue(2, 4.5),
        Measure::product({DensityDescriptor::cauchy_weight(), DensityDescriptor::constant(1.0)}),
        Measure::product({DensityDescriptor::constant(1.0), DensityDescriptor::cauchy_weight()}),
    });
}

/// Built-in measures addressable by name from the command line.
inline std::optional<Measure> named_measure(const std::string& name) {
    if (name == "lebesgue1") return Measure::lebesgue(1);
    if (name == "lebesgue2") return Measure::lebesgue(2);
    if (name == "mu2") return mu2();
    if (name == "f4-defining") return f4_defining_measure();
    if (name == "f4-alternative") return f4_alternative_measure();
    return std::nullopt;
}

}  // namespace hnv::catalogue
