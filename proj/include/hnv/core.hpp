#pragma once

// Value types for the poly cut-plane (C \ R)^n: points, component
// signatures, index subsets and the selective-conjugation map.

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "hnv/errors.hpp"

namespace hnv {

using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};

/// Every subset sum costs 2^n evaluations; dimensions above this are refused
/// unless the caller raises the limit explicitly.
inline constexpr std::size_t kDefaultMaxDimension = 8;

/// Hard ceiling imposed by the 32-bit subset masks.
inline constexpr std::size_t kMaxMaskDimension = 30;

/// Imaginary parts below this magnitude count as lying on the cut.
inline constexpr double kCutThreshold = 1e-300;

inline bool on_cut(cplx z) { return !(std::abs(z.imag()) >= kCutThreshold); }

inline void check_dimension(std::size_t n, std::size_t max_dimension = kDefaultMaxDimension) {
    if (n == 0) throw InvalidArgument("dimension must be at least 1");
    if (max_dimension > kMaxMaskDimension) max_dimension = kMaxMaskDimension;
    if (n > max_dimension)
        throw InvalidArgument("dimension " + std::to_string(n) + " exceeds the configured maximum " +
                              std::to_string(max_dimension));
}

/// A point of (C \ R)^n. Immutable once constructed.
class CutPlanePoint {
public:
    explicit CutPlanePoint(std::vector<cplx> coords, std::size_t max_dimension = kDefaultMaxDimension)
        : coords_(std::move(coords)) {
        check_dimension(coords_.size(), max_dimension);
        for (std::size_t j = 0; j < coords_.size(); ++j) {
            if (on_cut(coords_[j]))
                throw InvalidPoint("coordinate " + std::to_string(j + 1) + " lies on the real axis");
        }
    }

    CutPlanePoint(std::initializer_list<cplx> coords) : CutPlanePoint(std::vector<cplx>(coords)) {}

    std::size_t dimension() const noexcept { return coords_.size(); }
    cplx operator[](std::size_t j) const { return coords_[j]; }
    std::span<const cplx> coords() const noexcept { return coords_; }
    const std::vector<cplx>& vector() const noexcept { return coords_; }

    /// True on C^{+n}.
    bool all_upper() const noexcept {
        for (cplx z : coords_)
            if (z.imag() < 0) return false;
        return true;
    }

    friend bool operator==(const CutPlanePoint&, const CutPlanePoint&) = default;

private:
    std::vector<cplx> coords_;
};

/// Subset of {0, ..., n-1} stored as a bitmask. Printed 1-based.
class IndexSet {
public:
    IndexSet() = default;
    IndexSet(std::size_t n, std::uint32_t mask) : n_(n), mask_(mask) {
        if (n_ > kMaxMaskDimension) throw InvalidArgument("index set dimension too large");
        if (n_ < 32 && (mask_ >> n_) != 0) throw InvalidArgument("index set references an index beyond n");
    }

    static IndexSet of(std::size_t n, std::initializer_list<std::size_t> members) {
        std::uint32_t mask = 0;
        for (std::size_t j : members) {
            if (j >= n) throw InvalidArgument("index " + std::to_string(j + 1) + " exceeds dimension");
            mask |= 1u << j;
        }
        return IndexSet(n, mask);
    }

    static IndexSet empty(std::size_t n) { return IndexSet(n, 0); }
    static IndexSet full(std::size_t n) { return IndexSet(n, n == 32 ? ~0u : ((1u << n) - 1u)); }

    std::size_t dimension() const noexcept { return n_; }
    std::uint32_t mask() const noexcept { return mask_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(std::popcount(mask_)); }
    bool is_empty() const noexcept { return mask_ == 0; }
    bool contains(std::size_t j) const noexcept { return j < n_ && ((mask_ >> j) & 1u); }
    bool subset_of(const IndexSet& other) const noexcept { return (mask_ & ~other.mask_) == 0; }

    /// (-1)^{|B|}
    double parity_sign() const noexcept { return (size() % 2 == 0) ? 1.0 : -1.0; }

    std::vector<std::size_t> members() const {
        std::vector<std::size_t> out;
        for (std::size_t j = 0; j < n_; ++j)
            if (contains(j)) out.push_back(j);
        return out;
    }

    std::string to_string() const {
        std::string s = "{";
        bool first = true;
        for (std::size_t j : members()) {
            if (!first) s += ",";
            s += std::to_string(j + 1);
            first = false;
        }
        return s + "}";
    }

    friend bool operator==(const IndexSet&, const IndexSet&) = default;

private:
    std::size_t n_ = 0;
    std::uint32_t mask_ = 0;
};

/// Sign pattern of the imaginary parts; identifies one of the 2^n components.
struct ComponentSignature {
    std::vector<int> signs;

    std::size_t dimension() const noexcept { return signs.size(); }

    /// B' = positions in the lower half-plane.
    IndexSet lower_index_set() const {
        std::uint32_t mask = 0;
        for (std::size_t j = 0; j < signs.size(); ++j)
            if (signs[j] < 0) mask |= 1u << j;
        return IndexSet(signs.size(), mask);
    }

    bool all_upper() const noexcept {
        for (int s : signs)
            if (s < 0) return false;
        return true;
    }

    /// Encodes the signature as a mask with bit j set for lower coordinates.
    std::uint32_t key() const { return lower_index_set().mask(); }

    static ComponentSignature from_lower_mask(std::size_t n, std::uint32_t mask) {
        ComponentSignature s;
        s.signs.resize(n);
        for (std::size_t j = 0; j < n; ++j) s.signs[j] = ((mask >> j) & 1u) ? -1 : 1;
        return s;
    }

    /// "C+xC-" style label.
    std::string label() const {
        std::string s;
        for (std::size_t j = 0; j < signs.size(); ++j) {
            if (j) s += "x";
            s += signs[j] > 0 ? "C+" : "C-";
        }
        return s;
    }

    friend bool operator==(const ComponentSignature&, const ComponentSignature&) = default;
};

inline ComponentSignature signature_of(std::span<const cplx> z) {
    ComponentSignature s;
    s.signs.reserve(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) {
        if (on_cut(z[j]))
            throw InvalidPoint("coordinate " + std::to_string(j + 1) + " has zero imaginary part");
        s.signs.push_back(z[j].imag() > 0 ? 1 : -1);
    }
    return s;
}

inline ComponentSignature signature_of(const CutPlanePoint& p) { return signature_of(p.coords()); }

/// Psi_B(z, w): z_j for j outside B, conj(w_j) for j in B.
inline std::vector<cplx> psi_map(const IndexSet& b, std::span<const cplx> z, std::span<const cplx> w) {
    if (z.size() != w.size()) throw InvalidArgument("psi_map: z and w differ in length");
    if (b.dimension() > z.size() && (b.mask() >> z.size()) != 0)
        throw InvalidArgument("psi_map: index set references an index beyond n");
    std::vector<cplx> out(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) out[j] = b.contains(j) ? std::conj(w[j]) : z[j];
    return out;
}

inline CutPlanePoint psi_map(const IndexSet& b, const CutPlanePoint& z, const CutPlanePoint& w) {
    return CutPlanePoint(psi_map(b, z.coords(), w.coords()), kMaxMaskDimension);
}

/// Psi_B(i*1, z), the reflection used by every symmetry sum.
inline CutPlanePoint reflect_from_i(const IndexSet& b, const CutPlanePoint& z) {
    std::vector<cplx> ones(z.dimension(), kI);
    return CutPlanePoint(psi_map(b, ones, z.coords()), kMaxMaskDimension);
}

enum class SubsetFilterKind { all, nonempty, subsets_of, not_subsets_of };

struct SubsetFilter {
    SubsetFilterKind kind = SubsetFilterKind::all;
    IndexSet reference{};  // B' for the subsets_of / not_subsets_of filters

    static SubsetFilter all() { return {SubsetFilterKind::all, {}}; }
    static SubsetFilter nonempty() { return {SubsetFilterKind::nonempty, {}}; }
    static SubsetFilter subsets_of(IndexSet b) { return {SubsetFilterKind::subsets_of, b}; }
    static SubsetFilter not_subsets_of(IndexSet b) { return {SubsetFilterKind::not_subsets_of, b}; }
};

/// Subsets of {0..n-1} in increasing bitmask order.
inline std::vector<IndexSet> enumerate_subsets(std::size_t n, const SubsetFilter& filter = SubsetFilter::all(),
                                               std::size_t max_dimension = kDefaultMaxDimension) {
    check_dimension(n, max_dimension);
    const bool uses_reference =
        filter.kind == SubsetFilterKind::subsets_of || filter.kind == SubsetFilterKind::not_subsets_of;
    if (uses_reference && filter.reference.dimension() > n && (filter.reference.mask() >> n) != 0)
        throw InvalidArgument("reference set references an index beyond n");
    const IndexSet ref(n, filter.reference.mask());

    std::vector<IndexSet> out;
    const std::uint32_t count = 1u << n;
    for (std::uint32_t mask = 0; mask < count; ++mask) {
        IndexSet b(n, mask);
        switch (filter.kind) {
            case SubsetFilterKind::all: break;
            case SubsetFilterKind::nonempty:
                if (b.is_empty()) continue;
                break;
            case SubsetFilterKind::subsets_of:
                if (!b.subset_of(ref)) continue;
                break;
            case SubsetFilterKind::not_subsets_of:
                if (b.subset_of(ref)) continue;
                break;
        }
        out.push_back(b);
    }
    return out;
}

}  // namespace hnv
