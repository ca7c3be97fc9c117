#pragma once

#include <string>

#include "oplab/matrix.hpp"
#include "oplab/space.hpp"

namespace oplab {

/// Ternary product {x,y,z} = (x y^* z + z y^* x)/2, linear in the outer
/// slots and conjugate-linear in the middle one. The 1/2 normalization
/// makes {x,v,v} = x equivalent to x v^*v = v v^*x = x.
inline CMat triple(const CMat& x, const CMat& y, const CMat& z) {
    if (x.rows() != y.rows() || x.cols() != y.cols() || x.rows() != z.rows() ||
        x.cols() != z.cols())
        throw ShapeError("triple: shapes " + shape_string(x) + ", " + shape_string(y) + ", " +
                         shape_string(z) + " do not match");
    const CMat ya = y.adjoint();
    return 0.5 * (x * ya * z + z * ya * x);
}

/// Operator-norm residual of
/// {a,b,{x,y,z}} = {{a,b,x},y,z} - {x,{b,a,y},z} + {x,y,{a,b,z}}.
/// Zero for any matrices, since the ambient product satisfies it.
inline double main_identity_residual(const CMat& a, const CMat& b, const CMat& x, const CMat& y,
                                     const CMat& z) {
    const CMat lhs = triple(a, b, triple(x, y, z));
    const CMat rhs = triple(triple(a, b, x), y, z) - triple(x, triple(b, a, y), z) +
                     triple(x, y, triple(a, b, z));
    return opnorm(lhs - rhs);
}

/// ||{x,a,y}|| - ||x|| ||a|| ||y||. Nonpositive for ambient products;
/// positive gaps over projected products are reported as findings, never
/// raised as errors.
inline double norm_inequality_gap(const CMat& x, const CMat& a, const CMat& y) {
    return opnorm(triple(x, a, y)) - opnorm(x) * opnorm(a) * opnorm(y);
}

/// Q_a(x,y) = (Q_a(x+y) - Q_a(x) - Q_a(y))/2 with Q_a(z) = {z,a,z};
/// agrees with triple(x,a,y).
inline CMat polarized_q(const CMat& a, const CMat& x, const CMat& y) {
    const CMat sum = x + y;
    return 0.5 * (triple(sum, a, sum) - triple(x, a, x) - triple(y, a, y));
}

/// Records the standing assumption that the partial triple product with
/// middle arguments from the designated set is the restriction of the
/// ambient product. `justification` is one of "tro", "intersection" or
/// "assumed"; the assumed case is only ever produced by an explicit user
/// assertion and is flagged in every report it reaches.
struct TripleContext {
    const OperatorSpace* space = nullptr;
    bool restriction_valid = false;
    std::string justification;  // "tro" | "intersection" | "assumed" | "unjustified"
};

inline TripleContext assume_restriction(const OperatorSpace& space) {
    return {&space, true, "assumed"};
}

} // namespace oplab
