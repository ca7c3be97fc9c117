#pragma once

#include <string>
#include <utility>
#include <vector>

#include "oplab/space.hpp"
#include "oplab/triple.hpp"

namespace oplab {

/// Carries the distinguished element v of a space together with its norm
/// and the cached residual of {x,v,v} = x over the orthonormal basis.
/// Owns a copy of the space; spaces are small immutable values.
struct ProductContext {
    OperatorSpace space;
    CMat v;
    double norm_v = 0.0;
    double cond_i_residual = 0.0;
    int cond_i_witness = -1;    ///< basis index attaining the residual
    std::string restriction;    ///< "tro" | "intersection" | "assumed" | "unjustified"
};

/// Max over the orthonormal basis of ||{b,v,v} - b||; linearity bounds all
/// of A by scaling.
inline std::pair<double, int> condition_i_residual(const OperatorSpace& space, const CMat& v) {
    double worst = 0.0;
    int witness = -1;
    for (int k = 0; k < space.dim(); ++k) {
        const CMat& b = space.orthonormal_basis[static_cast<std::size_t>(k)];
        const double r = opnorm(triple(b, v, v) - b);
        if (r > worst) {
            worst = r;
            witness = k;
        }
    }
    return {worst, witness};
}

inline ProductContext make_product_context(const OperatorSpace& space, const CMat& v,
                                           const std::string& restriction = "unjustified") {
    const Membership m = member(space, v);
    if (!m.member)
        throw MembershipError("product context: v is not in " + space.name + " (residual " +
                                  std::to_string(m.residual) + ")",
                              m.residual);
    ProductContext ctx;
    ctx.space = &space;
    ctx.v = v;
    ctx.norm_v = opnorm(v);
    const auto [res, wit] = condition_i_residual(space, v);
    ctx.cond_i_residual = res;
    ctx.cond_i_witness = wit;
    ctx.restriction = restriction;
    return ctx;
}

namespace detail {

inline CMat corner_block(const CMat& x, int bi, int bj, Eigen::Index p, Eigen::Index q) {
    CMat out = CMat::Zero(2 * p, 2 * q);
    out.block(bi * p, bj * q, p, q) = x;
    return out;
}

} // namespace detail

/// The binary product y.x, computed through the defining level-2 amplified
/// triple product [y.x, 0; 0, 0] = 2 {[x,0;0,0],[0,v;0,0],[0,y;0,0]}.
inline CMat dot(const ProductContext& ctx, const CMat& y, const CMat& x) {
    const Eigen::Index p = ctx.space->ambient_rows, q = ctx.space->ambient_cols;
    if (y.rows() != p || y.cols() != q || x.rows() != p || x.cols() != q)
        throw ShapeError("dot: operands must have the ambient shape");
    const CMat a = detail::corner_block(x, 0, 0, p, q);
    const CMat b = detail::corner_block(ctx.v, 0, 1, p, q);
    const CMat c = detail::corner_block(y, 0, 1, p, q);
    const CMat t = triple(a, b, c);
    return 2.0 * t.block(0, 0, p, q);
}

/// Closed-form route y v^* x; dot() must agree with it to 1e-12.
inline CMat dot_oracle(const ProductContext& ctx, const CMat& y, const CMat& x) {
    return y * ctx.v.adjoint() * x;
}

struct DotResult {
    CMat value;
    double closure_residual;  ///< Frobenius distance of the product from A
    bool in_space;
};

/// dot() plus a membership check on the result. When A is not closed under
/// the product the residual is reported and the raw value still returned.
inline DotResult dot_checked(const ProductContext& ctx, const CMat& y, const CMat& x) {
    CMat value = dot(ctx, y, x);
    const Membership m = member(*ctx.space, value);
    return {std::move(value), m.residual, m.member};
}

struct MatrixDot {
    AmpElement element;       ///< entries projected back into A
    CMat raw_realization;     ///< block embedding of the raw entrywise products
    double closure_residual;  ///< max membership residual over the entries
};

/// Matrix extension X.Y with entries z_ij = sum_k x_ik . y_kj, each entry
/// through the defining route. Agrees with the realization-level X V^* Y.
inline MatrixDot matrix_dot(const ProductContext& ctx, const AmpElement& X, const AmpElement& Y) {
    if (X.level != Y.level) throw ShapeError("matrix_dot: levels differ");
    if (X.space != Y.space) throw ShapeError("matrix_dot: operands live in different spaces");
    const int n = X.level;
    const OperatorSpace& space = *ctx.space;
    BlockGrid raw(static_cast<std::size_t>(n), std::vector<CMat>(static_cast<std::size_t>(n)));
    std::vector<CVec> coeffs;
    coeffs.reserve(static_cast<std::size_t>(n) * n);
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            CMat z = CMat::Zero(space.ambient_rows, space.ambient_cols);
            for (int k = 0; k < n; ++k) z += dot(ctx, X.entry(i, k), Y.entry(k, j));
            const Membership m = member(space, z);
            if (m.residual > worst) worst = m.residual;
            coeffs.push_back(space.coefficients(z));
            raw[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::move(z);
        }
    MatrixDot out{amp_from_coefficients(space, n, std::move(coeffs)), block_embed(raw), worst};
    return out;
}

/// Diagonal amplification diag(v,...,v) of the unit candidate.
inline CMat diag_unit(const ProductContext& ctx, int n) {
    BlockGrid grid(static_cast<std::size_t>(n),
                   std::vector<CMat>(static_cast<std::size_t>(n),
                                     CMat::Zero(ctx.space->ambient_rows, ctx.space->ambient_cols)));
    for (int i = 0; i < n; ++i) grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = ctx.v;
    return block_embed(grid);
}

/// ||{x,v,y} - (x.y + y.x)/2||; vanishes whenever {x,v,v} = x holds.
inline double symmetrization_residual(const ProductContext& ctx, const CMat& x, const CMat& y) {
    const CMat lhs = triple(x, ctx.v, y);
    const CMat rhs = 0.5 * (dot(ctx, x, y) + dot(ctx, y, x));
    return opnorm(lhs - rhs);
}

/// ||(x.y).z - x.(y.z)|| for the constructed product.
inline double associativity_residual(const ProductContext& ctx, const CMat& x, const CMat& y,
                                     const CMat& z) {
    const CMat left = dot(ctx, dot(ctx, x, y), z);
    const CMat right = dot(ctx, x, dot(ctx, y, z));
    return opnorm(left - right);
}

} // namespace oplab
