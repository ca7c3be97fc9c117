#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <cstring>
#include <sstream>
#include <string>
#include <vector>

#include "oplab/errors.hpp"

namespace oplab {

using Complex = std::complex<double>;
using CMat    = Eigen::MatrixXcd;
using CVec    = Eigen::VectorXcd;

/// n-by-n grid of equally shaped blocks, row-major.
using BlockGrid = std::vector<std::vector<CMat>>;

/// Global tolerances. Residual comparisons are absolute on unit-scale data.
struct Tolerances {
    double equality   = 1e-9;
    double membership = 1e-9;
};

inline Tolerances& tolerances() {
    static Tolerances t;
    return t;
}

inline bool all_finite(const CMat& a) {
    return a.allFinite();
}

inline std::string shape_string(const CMat& a) {
    std::ostringstream os;
    os << a.rows() << "x" << a.cols();
    return os.str();
}

/// FNV-1a over the raw entry bytes; stable identifier for error messages
/// and report fingerprints.
inline std::string fingerprint(const CMat& a) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](double x) {
        std::uint64_t bits;
        static_assert(sizeof(bits) == sizeof(x));
        std::memcpy(&bits, &x, sizeof(bits));
        for (int k = 0; k < 8; ++k) {
            h ^= (bits >> (8 * k)) & 0xffu;
            h *= 1099511628211ull;
        }
    };
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            mix(a(i, j).real());
            mix(a(i, j).imag());
        }
    std::ostringstream os;
    os << a.rows() << "x" << a.cols() << ":" << std::hex << h;
    return os.str();
}

inline CMat matmul(const CMat& a, const CMat& b) {
    if (a.cols() != b.rows())
        throw ShapeError("matmul: cannot compose " + shape_string(a) + " with " + shape_string(b));
    return a * b;
}

inline CMat adjoint(const CMat& a) {
    return a.adjoint();
}

/// Largest singular value. Full SVD; matrices stay at desk scale so
/// determinism and accuracy win over speed.
inline double opnorm(const CMat& a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<CMat> svd(a);
    if (svd.info() != Eigen::Success)
        throw NumericalError("opnorm: SVD did not converge on input " + fingerprint(a));
    return svd.singularValues()(0);
}

inline double frobenius(const CMat& a) {
    return a.norm();
}

/// <a,b> = trace(b^* a), the inner product fixed for all least-squares work.
inline Complex frobenius_inner(const CMat& a, const CMat& b) {
    return (b.adjoint() * a).trace();
}

inline CVec vectorize(const CMat& a) {
    CVec v(a.size());
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) v(k++) = a(i, j);
    return v;
}

inline CMat unvectorize(const CVec& v, Eigen::Index rows, Eigen::Index cols) {
    CMat a(rows, cols);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = v(k++);
    return a;
}

/// Stacks vectorized basis members as columns; shared helper for the
/// least-squares paths.
inline CMat basis_columns(const std::vector<CMat>& basis) {
    if (basis.empty()) throw DegenerateBasisError("empty basis", 0);
    const Eigen::Index rows = basis.front().rows(), cols = basis.front().cols();
    CMat b(rows * cols, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t k = 0; k < basis.size(); ++k) {
        if (basis[k].rows() != rows || basis[k].cols() != cols)
            throw ShapeError("basis member " + std::to_string(k) + " has shape " +
                             shape_string(basis[k]) + ", expected " + shape_string(basis.front()));
        b.col(static_cast<Eigen::Index>(k)) = vectorize(basis[k]);
    }
    return b;
}

/// First index whose member lies in the span of its predecessors, or -1.
/// Modified Gram-Schmidt with one re-orthogonalization pass.
inline int dependent_index(const CMat& columns, double rel_tol = 1e-10) {
    std::vector<CVec> q;
    for (Eigen::Index k = 0; k < columns.cols(); ++k) {
        CVec w = columns.col(k);
        const double scale = w.norm();
        if (scale == 0.0) return static_cast<int>(k);
        for (int pass = 0; pass < 2; ++pass)
            for (const CVec& u : q) w -= u.dot(w) * u;
        if (w.norm() <= rel_tol * scale) return static_cast<int>(k);
        q.push_back(w.normalized());
    }
    return -1;
}

struct Projection {
    CVec coefficients;  ///< least-squares coefficients against the given basis
    double residual;    ///< Frobenius distance from x to the span
};

/// Least-squares projection of x onto span(basis) under the Frobenius
/// inner product. The basis must be linearly independent.
inline Projection project_onto_span(const CMat& x, const std::vector<CMat>& basis) {
    const CMat b = basis_columns(basis);
    if (x.rows() != basis.front().rows() || x.cols() != basis.front().cols())
        throw ShapeError("project_onto_span: x has shape " + shape_string(x) +
                         ", basis members are " + shape_string(basis.front()));
    const int dep = dependent_index(b);
    if (dep >= 0)
        throw DegenerateBasisError("project_onto_span: basis member " + std::to_string(dep) +
                                       " depends on its predecessors",
                                   dep);
    const CVec rhs = vectorize(x);
    const CVec c   = b.completeOrthogonalDecomposition().solve(rhs);
    const double r = (b * c - rhs).norm();
    return {c, r};
}

/// Assembles the np-by-nq matrix whose (i,j) block is blocks[i][j].
inline CMat block_embed(const BlockGrid& blocks) {
    if (blocks.empty()) throw ShapeError("block_embed: empty grid");
    const std::size_t n = blocks.size();
    for (const auto& row : blocks)
        if (row.size() != n)
            throw ShapeError("block_embed: ragged grid, expected " + std::to_string(n) +
                             " columns, got " + std::to_string(row.size()));
    const Eigen::Index p = blocks[0][0].rows(), q = blocks[0][0].cols();
    CMat out = CMat::Zero(static_cast<Eigen::Index>(n) * p, static_cast<Eigen::Index>(n) * q);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const CMat& blk = blocks[i][j];
            if (blk.rows() != p || blk.cols() != q)
                throw ShapeError("block_embed: block (" + std::to_string(i) + "," +
                                 std::to_string(j) + ") has shape " + shape_string(blk) +
                                 ", expected " + shape_string(blocks[0][0]));
            out.block(static_cast<Eigen::Index>(i) * p, static_cast<Eigen::Index>(j) * q, p, q) = blk;
        }
    return out;
}

inline CMat matrix_unit(Eigen::Index rows, Eigen::Index cols, Eigen::Index i, Eigen::Index j) {
    CMat e = CMat::Zero(rows, cols);
    e(i, j) = Complex(1, 0);
    return e;
}

} // namespace oplab
