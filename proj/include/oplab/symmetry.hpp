#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "oplab/space.hpp"

namespace oplab {

/// The closed catalogue of maps on M_n(A) used by the structure lemmas.
/// All kinds except the two corner maps are surjective linear isometries of
/// the realization; the corner maps R and S are convex combinations of
/// isometries, hence contractive, and are applied through corner_map_r /
/// corner_map_s.
enum class IsometryKind {
    RowSign,
    ColSign,
    RowSwap,
    ColSwap,
    RowPhase,
    ColPhase,
    BlockSignPsi1,
    BlockSignPsi2,
    CornerAverageR,
    CornerRestrictS,
};

inline const char* kind_name(IsometryKind k) {
    switch (k) {
        case IsometryKind::RowSign: return "row_sign";
        case IsometryKind::ColSign: return "col_sign";
        case IsometryKind::RowSwap: return "row_swap";
        case IsometryKind::ColSwap: return "col_swap";
        case IsometryKind::RowPhase: return "row_phase";
        case IsometryKind::ColPhase: return "col_phase";
        case IsometryKind::BlockSignPsi1: return "block_sign_psi1";
        case IsometryKind::BlockSignPsi2: return "block_sign_psi2";
        case IsometryKind::CornerAverageR: return "corner_average_R";
        case IsometryKind::CornerRestrictS: return "corner_restrict_S";
    }
    return "?";
}

/// Grid indices and the partition index m are 1-based, matching the
/// customary block notation [a,b;c,d] with partition after row/column m.
struct IsometrySpec {
    IsometryKind kind;
    int level = 2;
    int i = 0;
    int j = 0;
    int m = 0;
    double theta = 0.0;
    int sign = +1;  // corner maps only
};

inline bool is_isometry(IsometryKind k) {
    return k != IsometryKind::CornerAverageR && k != IsometryKind::CornerRestrictS;
}

/// Kinds whose square is the identity bitwise (sign flips and swaps).
inline bool is_order_two(IsometryKind k) {
    switch (k) {
        case IsometryKind::RowSign:
        case IsometryKind::ColSign:
        case IsometryKind::RowSwap:
        case IsometryKind::ColSwap:
        case IsometryKind::BlockSignPsi1:
        case IsometryKind::BlockSignPsi2:
            return true;
        default:
            return false;
    }
}

namespace detail {

inline void check_index(int idx, int level, const char* what) {
    if (idx < 1 || idx > level)
        throw ShapeError(std::string("isometry: ") + what + " index " + std::to_string(idx) +
                         " out of range for level " + std::to_string(level));
}

inline void check_partition(int m, int level) {
    if (m < 1 || m >= level)
        throw ShapeError("isometry: partition m=" + std::to_string(m) +
                         " must satisfy 1 <= m < level=" + std::to_string(level));
}

} // namespace detail

/// Applies a catalogued isometry as a structured grid transformation.
/// Rejects the corner maps, which are not isometries.
inline AmpElement apply_isometry(const IsometrySpec& spec, const AmpElement& e) {
    if (!is_isometry(spec.kind))
        throw ShapeError(std::string("apply_isometry: ") + kind_name(spec.kind) +
                         " is a contraction, not an isometry; use corner_map_r/corner_map_s");
    if (spec.level != e.level)
        throw ShapeError("apply_isometry: spec level " + std::to_string(spec.level) +
                         " != element level " + std::to_string(e.level));
    const int n = e.level;
    std::vector<CVec> coeffs = e.coeffs;
    auto at = [&](int i, int j) -> CVec& { return coeffs[static_cast<std::size_t>(i) * n + j]; };

    switch (spec.kind) {
        case IsometryKind::RowSign: {
            detail::check_index(spec.i, n, "row");
            for (int j = 0; j < n; ++j) at(spec.i - 1, j) *= -1.0;
            break;
        }
        case IsometryKind::ColSign: {
            detail::check_index(spec.j, n, "column");
            for (int i = 0; i < n; ++i) at(i, spec.j - 1) *= -1.0;
            break;
        }
        case IsometryKind::RowSwap: {
            detail::check_index(spec.i, n, "row");
            detail::check_index(spec.j, n, "row");
            for (int j = 0; j < n; ++j) std::swap(at(spec.i - 1, j), at(spec.j - 1, j));
            break;
        }
        case IsometryKind::ColSwap: {
            detail::check_index(spec.i, n, "column");
            detail::check_index(spec.j, n, "column");
            for (int i = 0; i < n; ++i) std::swap(at(i, spec.i - 1), at(i, spec.j - 1));
            break;
        }
        case IsometryKind::RowPhase: {
            detail::check_index(spec.i, n, "row");
            const Complex phase = std::polar(1.0, spec.theta);
            for (int j = 0; j < n; ++j) at(spec.i - 1, j) *= phase;
            break;
        }
        case IsometryKind::ColPhase: {
            detail::check_index(spec.j, n, "column");
            const Complex phase = std::polar(1.0, spec.theta);
            for (int i = 0; i < n; ++i) at(i, spec.j - 1) *= phase;
            break;
        }
        case IsometryKind::BlockSignPsi1: {
            // [a,b;c,d] -> [a,-b;-c,d]: negate entries with exactly one
            // index inside the leading partition.
            detail::check_partition(spec.m, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if ((i < spec.m) != (j < spec.m)) at(i, j) *= -1.0;
            break;
        }
        case IsometryKind::BlockSignPsi2: {
            // [a,b;c,d] -> [a,-b;c,-d]: negate columns beyond the partition.
            detail::check_partition(spec.m, n);
            for (int i = 0; i < n; ++i)
                for (int j = spec.m; j < n; ++j) at(i, j) *= -1.0;
            break;
        }
        default:
            break;
    }
    return amp_from_coefficients(*e.space, n, std::move(coeffs));
}

/// P_m = (psi2 psi1 + psi2 + psi1 + Id)/4, the averaged projection onto
/// M_m(A) embedded at the element's level. The sign cancellations make the
/// average equal the top-left corner compression exactly.
inline AmpElement project_pm(int m, const AmpElement& e) {
    if (m <= 0 || m > e.level)
        throw ShapeError("project_pm: m=" + std::to_string(m) + " out of range for level " +
                         std::to_string(e.level));
    if (m == e.level) return e;
    const IsometrySpec psi1{IsometryKind::BlockSignPsi1, e.level, 0, 0, m, 0.0, +1};
    const IsometrySpec psi2{IsometryKind::BlockSignPsi2, e.level, 0, 0, m, 0.0, +1};
    const AmpElement a1 = apply_isometry(psi1, e);
    const AmpElement a2 = apply_isometry(psi2, e);
    const AmpElement a21 = apply_isometry(psi2, a1);
    std::vector<CVec> coeffs;
    coeffs.reserve(e.coeffs.size());
    for (std::size_t k = 0; k < e.coeffs.size(); ++k)
        coeffs.push_back(0.25 * (a21.coeffs[k] + a2.coeffs[k] + a1.coeffs[k] + e.coeffs[k]));
    return amp_from_coefficients(*e.space, e.level, std::move(coeffs));
}

/// R (sign=+1): [a,b;c,d] -> [[a+b,a+b],[c+d,c+d]]/2, the average of the
/// identity with the column swap. R (sign=-1): [a,b;c,d] ->
/// [[a-b,b-a],[c-d,d-c]]/2. Both are level-2 contractions.
inline AmpElement corner_map_r(int sign, const AmpElement& e) {
    if (e.level != 2) throw ShapeError("corner_map_r: defined at level 2 only");
    const double s = sign >= 0 ? 1.0 : -1.0;
    std::vector<CVec> coeffs(4, CVec::Zero(e.space->dim()));
    for (int i = 0; i < 2; ++i) {
        const CVec mix = 0.5 * (e.coeff_at(i, 0) + s * e.coeff_at(i, 1));
        coeffs[static_cast<std::size_t>(i) * 2 + 0] = mix;
        coeffs[static_cast<std::size_t>(i) * 2 + 1] = s * mix;
    }
    return amp_from_coefficients(*e.space, 2, std::move(coeffs));
}

/// S: [a,b;c,d] -> [a,b;0,0], the average of the identity with the
/// second-row sign flip. The sign variant is the same map.
inline AmpElement corner_map_s(int /*sign*/, const AmpElement& e) {
    if (e.level != 2) throw ShapeError("corner_map_s: defined at level 2 only");
    std::vector<CVec> coeffs(4, CVec::Zero(e.space->dim()));
    coeffs[0] = e.coeff_at(0, 0);
    coeffs[1] = e.coeff_at(0, 1);
    return amp_from_coefficients(*e.space, 2, std::move(coeffs));
}

/// Every valid parameterization of the isometry kinds at the given level;
/// phases sampled at pi/2 and an incommensurate angle.
inline std::vector<IsometrySpec> isometry_catalogue(int level) {
    std::vector<IsometrySpec> out;
    for (int i = 1; i <= level; ++i) {
        out.push_back({IsometryKind::RowSign, level, i, 0, 0, 0.0, +1});
        out.push_back({IsometryKind::ColSign, level, 0, i, 0, 0.0, +1});
        out.push_back({IsometryKind::RowPhase, level, i, 0, 0, 1.5707963267948966, +1});
        out.push_back({IsometryKind::ColPhase, level, 0, i, 0, 0.81, +1});
    }
    for (int i = 1; i <= level; ++i)
        for (int j = i + 1; j <= level; ++j) {
            out.push_back({IsometryKind::RowSwap, level, i, j, 0, 0.0, +1});
            out.push_back({IsometryKind::ColSwap, level, i, j, 0, 0.0, +1});
        }
    for (int m = 1; m < level; ++m) {
        out.push_back({IsometryKind::BlockSignPsi1, level, 0, 0, m, 0.0, +1});
        out.push_back({IsometryKind::BlockSignPsi2, level, 0, 0, m, 0.0, +1});
    }
    return out;
}

} // namespace oplab
