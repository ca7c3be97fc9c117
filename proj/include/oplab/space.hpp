#pragma once

#include <string>
#include <utility>
#include <vector>

#include "oplab/matrix.hpp"
#include "oplab/rng.hpp"

namespace oplab {

/// A concrete operator space: a named subspace of p-by-q complex matrices
/// given by a basis. A Frobenius-orthonormal companion basis of the same
/// span is derived at construction and backs all membership and
/// coefficient work.
struct OperatorSpace {
    std::string name;
    int ambient_rows = 0;
    int ambient_cols = 0;
    std::vector<CMat> basis;
    std::vector<CMat> orthonormal_basis;

    int dim() const { return static_cast<int>(basis.size()); }

    /// Coefficients of x against the orthonormal basis (exact for members).
    CVec coefficients(const CMat& x) const {
        CVec c(orthonormal_basis.size());
        for (std::size_t k = 0; k < orthonormal_basis.size(); ++k)
            c(static_cast<Eigen::Index>(k)) = frobenius_inner(x, orthonormal_basis[k]);
        return c;
    }

    CMat from_coefficients(const CVec& c) const {
        CMat x = CMat::Zero(ambient_rows, ambient_cols);
        for (std::size_t k = 0; k < orthonormal_basis.size(); ++k)
            x += c(static_cast<Eigen::Index>(k)) * orthonormal_basis[k];
        return x;
    }
};

namespace detail {

inline std::vector<CMat> orthonormalize(const std::vector<CMat>& basis, Eigen::Index p,
                                        Eigen::Index q) {
    const CMat cols = basis_columns(basis);
    Eigen::HouseholderQR<CMat> qr(cols);
    const CMat thin_q =
        qr.householderQ() * CMat::Identity(p * q, static_cast<Eigen::Index>(basis.size()));
    std::vector<CMat> onb;
    onb.reserve(basis.size());
    for (Eigen::Index k = 0; k < thin_q.cols(); ++k)
        onb.push_back(unvectorize(thin_q.col(k), p, q));
    return onb;
}

/// Internal constructor that tolerates an empty basis (used by
/// adjoint_intersection, which can legitimately produce the zero space).
inline OperatorSpace make_space_unchecked(std::string name, int p, int q,
                                          std::vector<CMat> basis) {
    OperatorSpace s;
    s.name         = std::move(name);
    s.ambient_rows = p;
    s.ambient_cols = q;
    s.basis        = std::move(basis);
    if (!s.basis.empty()) s.orthonormal_basis = orthonormalize(s.basis, p, q);
    return s;
}

} // namespace detail

inline OperatorSpace make_space(const std::string& name, int p, int q,
                                const std::vector<CMat>& basis) {
    if (p <= 0 || q <= 0) throw ShapeError("make_space: ambient dimensions must be positive");
    if (basis.empty()) throw DegenerateBasisError("make_space: empty basis", 0);
    for (std::size_t k = 0; k < basis.size(); ++k) {
        if (basis[k].rows() != p || basis[k].cols() != q)
            throw ShapeError("make_space: basis member " + std::to_string(k) + " has shape " +
                             shape_string(basis[k]) + ", expected " + std::to_string(p) + "x" +
                             std::to_string(q));
        if (!all_finite(basis[k]))
            throw NumericalError("make_space: basis member " + std::to_string(k) +
                                 " has non-finite entries");
    }
    const int dep = dependent_index(basis_columns(basis));
    if (dep >= 0)
        throw DegenerateBasisError(
            "make_space: basis member " + std::to_string(dep) + " depends on its predecessors",
            dep);
    return detail::make_space_unchecked(name, p, q, basis);
}

struct Membership {
    bool member;
    double residual;
};

/// Frobenius distance from x to the space; member iff within tolerance.
inline Membership member(const OperatorSpace& space, const CMat& x) {
    if (x.rows() != space.ambient_rows || x.cols() != space.ambient_cols)
        throw ShapeError("member: x has shape " + shape_string(x) + ", ambient is " +
                         std::to_string(space.ambient_rows) + "x" +
                         std::to_string(space.ambient_cols));
    CMat residual_mat = x;
    for (const CMat& u : space.orthonormal_basis) residual_mat -= frobenius_inner(x, u) * u;
    const double r = frobenius(residual_mat);
    return {r <= tolerances().membership, r};
}

/// An element of M_n(A): grid entries stored as coefficient vectors against
/// the orthonormal basis, together with the cached block-matrix realization.
/// The entries view and the realization agree by construction.
struct AmpElement {
    const OperatorSpace* space = nullptr;
    int level = 0;
    std::vector<CVec> coeffs;   ///< n*n coefficient vectors, row-major
    std::vector<CMat> entries;  ///< reconstructed grid entries
    CMat realization;

    const CVec& coeff_at(int i, int j) const { return coeffs[static_cast<std::size_t>(i) * level + j]; }
    CVec& coeff_at(int i, int j) { return coeffs[static_cast<std::size_t>(i) * level + j]; }
    const CMat& entry(int i, int j) const { return entries[static_cast<std::size_t>(i) * level + j]; }
};

inline AmpElement amp_from_coefficients(const OperatorSpace& space, int n,
                                        std::vector<CVec> coeffs) {
    AmpElement e;
    e.space  = &space;
    e.level  = n;
    e.coeffs = std::move(coeffs);
    e.entries.reserve(e.coeffs.size());
    BlockGrid grid(static_cast<std::size_t>(n), std::vector<CMat>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            CMat m = space.from_coefficients(e.coeff_at(i, j));
            grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m;
            e.entries.push_back(std::move(m));
        }
    e.realization = block_embed(grid);
    return e;
}

/// Builds an element of M_n(A) from explicit grid entries. Each entry must
/// be a member of the space.
inline AmpElement amplify(const OperatorSpace& space, const BlockGrid& grid) {
    const int n = static_cast<int>(grid.size());
    if (n == 0) throw ShapeError("amplify: empty grid");
    std::vector<CVec> coeffs;
    coeffs.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(grid[static_cast<std::size_t>(i)].size()) != n)
            throw ShapeError("amplify: ragged grid row " + std::to_string(i));
        for (int j = 0; j < n; ++j) {
            const CMat& x = grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            const Membership m = member(space, x);
            if (!m.member)
                throw MembershipError("amplify: entry (" + std::to_string(i) + "," +
                                          std::to_string(j) + ") is not in " + space.name +
                                          " (residual " + std::to_string(m.residual) + ")",
                                      m.residual);
            coeffs.push_back(space.coefficients(x));
        }
    }
    return amp_from_coefficients(space, n, std::move(coeffs));
}

inline double amp_norm(const AmpElement& e) { return opnorm(e.realization); }

/// Rebuilds an element of M_n(A) from its block-matrix realization; every
/// block must be a member of the space.
inline AmpElement amp_from_realization(const OperatorSpace& space, int n, const CMat& real) {
    const Eigen::Index p = space.ambient_rows, q = space.ambient_cols;
    if (real.rows() != n * p || real.cols() != n * q)
        throw ShapeError("amp_from_realization: got " + shape_string(real) + ", expected " +
                         std::to_string(n * p) + "x" + std::to_string(n * q));
    BlockGrid grid(static_cast<std::size_t>(n), std::vector<CMat>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                real.block(i * p, j * q, p, q);
    return amplify(space, grid);
}

/// Embeds at a higher level by adding zero rows and columns; the norm is
/// unchanged.
inline AmpElement embed_at_level(const AmpElement& e, int target_level) {
    if (target_level < e.level)
        throw ShapeError("embed_at_level: target level below current level");
    const Eigen::Index d = e.space->dim();
    std::vector<CVec> coeffs(static_cast<std::size_t>(target_level) * target_level,
                             CVec::Zero(d));
    for (int i = 0; i < e.level; ++i)
        for (int j = 0; j < e.level; ++j)
            coeffs[static_cast<std::size_t>(i) * target_level + j] = e.coeff_at(i, j);
    return amp_from_coefficients(*e.space, target_level, std::move(coeffs));
}

/// Random member of A with independent standard complex Gaussian
/// coefficients against the orthonormal basis, normalized to unit operator
/// norm (unless the draw is numerically zero).
inline CMat sample_element(const OperatorSpace& space, Rng& rng, bool normalize = true) {
    CMat x = space.from_coefficients(rng.complex_gaussian_vector(space.dim()));
    if (normalize) {
        const double n = opnorm(x);
        if (n > 0) x /= n;
    }
    return x;
}

/// Random element of M_n(A), normalized to unit amplified norm.
inline AmpElement sample_amp(const OperatorSpace& space, int n, Rng& rng, bool normalize = true) {
    std::vector<CVec> coeffs;
    coeffs.reserve(static_cast<std::size_t>(n) * n);
    for (int k = 0; k < n * n; ++k) coeffs.push_back(rng.complex_gaussian_vector(space.dim()));
    AmpElement e = amp_from_coefficients(space, n, std::move(coeffs));
    if (normalize) {
        const double norm = amp_norm(e);
        if (norm > 0) {
            for (CVec& c : e.coeffs) c /= norm;
            for (CMat& m : e.entries) m /= norm;
            e.realization /= norm;
        }
    }
    return e;
}

} // namespace oplab
