#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "oplab/product.hpp"
#include "oplab/rng.hpp"
#include "oplab/space.hpp"
#include "oplab/triple.hpp"

namespace oplab {

struct UnitCandidate {
    CMat v;
    double norm = 0.0;
    double cond_i_residual = 0.0;  ///< max over the orthonormal basis, operator norm
    double objective = 0.0;        ///< sum of squared Frobenius residuals
    double rms_residual = 0.0;     ///< sqrt(objective / dim)
    struct Provenance {
        std::string kind;  // "user" | "search"
        std::uint64_t seed = 0;
        int restarts = 0;
    } provenance;
    bool converged = false;
    std::vector<double> descent_trace;  ///< objective per accepted step of the best restart
};

namespace detail {

inline double unit_objective(const OperatorSpace& space, const CMat& v) {
    double f = 0.0;
    for (const CMat& b : space.orthonormal_basis) {
        const double r = frobenius(triple(b, v, v) - b);
        f += r * r;
    }
    return f;
}

inline CMat coeffs_to_element(const OperatorSpace& space, const Eigen::VectorXd& theta) {
    CVec c(space.dim());
    for (int k = 0; k < space.dim(); ++k) c(k) = Complex(theta(2 * k), theta(2 * k + 1));
    return space.from_coefficients(c);
}

inline Eigen::VectorXd element_to_coeffs(const OperatorSpace& space, const CMat& v) {
    const CVec c = space.coefficients(v);
    Eigen::VectorXd theta(2 * space.dim());
    for (int k = 0; k < space.dim(); ++k) {
        theta(2 * k) = c(k).real();
        theta(2 * k + 1) = c(k).imag();
    }
    return theta;
}

/// Scale back into the operator-norm unit ball. Condition (i) forces
/// norm one at any exact solution, so the ball relaxation is safe and
/// keeps the feasible set convex.
inline Eigen::VectorXd project_to_ball(const OperatorSpace& space, Eigen::VectorXd theta) {
    const double n = opnorm(coeffs_to_element(space, theta));
    if (n > 1.0) theta /= n;
    return theta;
}

} // namespace detail

/// Searches for v minimizing f(v) = sum_i ||{b_i,v,v} - b_i||_F^2 over the
/// unit ball by projected gradient descent with numerical gradients and a
/// step-halving line search. Poor minima are reported, never raised.
inline UnitCandidate find_unit(const OperatorSpace& space, int restarts, int steps,
                               std::uint64_t seed) {
    Rng rng(seed);
    const int d = space.dim();
    const int params = 2 * d;
    const double h = 1e-6;

    double best_f = std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_theta;
    std::vector<double> best_trace;
    bool best_converged = false;

    std::vector<Eigen::VectorXd> starts;
    if (space.ambient_rows == space.ambient_cols) {
        // deterministic identity-like start: the ball projection of I
        const CMat id = CMat::Identity(space.ambient_rows, space.ambient_cols);
        CMat proj = CMat::Zero(space.ambient_rows, space.ambient_cols);
        for (const CMat& u : space.orthonormal_basis) proj += frobenius_inner(id, u) * u;
        if (frobenius(proj) > 1e-14)
            starts.push_back(detail::project_to_ball(space, detail::element_to_coeffs(space, proj)));
    }
    for (int r = 0; r < restarts; ++r) {
        Eigen::VectorXd theta(params);
        for (int k = 0; k < params; ++k) theta(k) = rng.gaussian();
        starts.push_back(detail::project_to_ball(space, theta));
    }

    for (const Eigen::VectorXd& start : starts) {
        Eigen::VectorXd theta = start;
        double f = detail::unit_objective(space, detail::coeffs_to_element(space, theta));
        std::vector<double> trace{f};
        double alpha = 0.25;
        bool converged = false;
        for (int it = 0; it < steps; ++it) {
            Eigen::VectorXd grad(params);
            for (int k = 0; k < params; ++k) {
                Eigen::VectorXd tp = theta, tm = theta;
                tp(k) += h;
                tm(k) -= h;
                grad(k) = (detail::unit_objective(space, detail::coeffs_to_element(space, tp)) -
                           detail::unit_objective(space, detail::coeffs_to_element(space, tm))) /
                          (2 * h);
            }
            const double gnorm = grad.norm();
            if (gnorm < 1e-13) {
                converged = true;
                break;
            }
            const Eigen::VectorXd dir = grad / gnorm;
            bool accepted = false;
            double a = alpha;
            for (int half = 0; half < 40; ++half) {
                const Eigen::VectorXd cand = detail::project_to_ball(space, theta - a * dir);
                const double fc = detail::unit_objective(space, detail::coeffs_to_element(space, cand));
                if (fc < f) {
                    theta = cand;
                    f = fc;
                    trace.push_back(f);
                    alpha = a * 2.0;
                    accepted = true;
                    break;
                }
                a *= 0.5;
            }
            if (!accepted) {
                converged = true;
                break;
            }
        }
        if (f < best_f) {
            best_f = f;
            best_theta = theta;
            best_trace = std::move(trace);
            best_converged = converged;
        }
    }

    UnitCandidate out;
    out.v = detail::coeffs_to_element(space, best_theta);
    out.norm = opnorm(out.v);
    const auto [res, wit] = condition_i_residual(space, out.v);
    (void)wit;
    out.cond_i_residual = res;
    out.objective = best_f;
    out.rms_residual = std::sqrt(best_f / d);
    out.provenance = {"search", seed, restarts};
    out.converged = best_converged;
    out.descent_trace = std::move(best_trace);
    return out;
}

struct ClosureReport {
    double max_triple_residual = 0.0;
    std::array<int, 3> worst_triple{-1, -1, -1};
    bool is_tro = false;
};

/// Tests all d^3 ordered basis triples b_i b_j^* b_k for membership; the
/// ternary condition is not symmetric, so ordered triples are required.
inline ClosureReport tro_closure(const OperatorSpace& space) {
    ClosureReport rep;
    const int d = space.dim();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                const CMat prod = space.basis[static_cast<std::size_t>(i)] *
                                  space.basis[static_cast<std::size_t>(j)].adjoint() *
                                  space.basis[static_cast<std::size_t>(k)];
                const double r = member(space, prod).residual;
                if (r > rep.max_triple_residual) {
                    rep.max_triple_residual = r;
                    rep.worst_triple = {i, j, k};
                }
            }
    rep.is_tro = rep.max_triple_residual <= tolerances().membership;
    return rep;
}

/// Basis of A intersected with A^*, extracted from the real null space of
/// the stacked adjoint-membership constraints.
inline OperatorSpace adjoint_intersection(const OperatorSpace& space) {
    if (space.ambient_rows != space.ambient_cols)
        throw ShapeError("adjoint_intersection: ambient must be square");
    const Eigen::Index p = space.ambient_rows;
    const int d = space.dim();
    const Eigen::Index pq = p * p;

    // G = (I - P) [vec(b_1^*) ... vec(b_d^*)] with P the orthogonal
    // projector onto A. x = sum c_k b_k has x^* in A iff G conj(c) = 0.
    CMat onb_cols(pq, d);
    CMat adj_cols(pq, d);
    for (int k = 0; k < d; ++k) {
        onb_cols.col(k) = vectorize(space.orthonormal_basis[static_cast<std::size_t>(k)]);
        adj_cols.col(k) = vectorize(space.orthonormal_basis[static_cast<std::size_t>(k)].adjoint());
    }
    const CMat g = adj_cols - onb_cols * (onb_cols.adjoint() * adj_cols);

    Eigen::MatrixXd m(2 * pq, 2 * d);
    m.block(0, 0, pq, d) = g.real();
    m.block(0, d, pq, d) = g.imag();
    m.block(pq, 0, pq, d) = g.imag();
    m.block(pq, d, pq, d) = -g.real();

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cutoff = 1e-10 * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
    std::vector<CMat> raw;
    for (Eigen::Index c = 0; c < svd.matrixV().cols(); ++c) {
        if (c < sv.size() && sv(c) > cutoff) continue;
        const Eigen::VectorXd null_vec = svd.matrixV().col(c);
        CVec coeff(d);
        for (int k = 0; k < d; ++k) coeff(k) = Complex(null_vec(k), null_vec(d + k));
        const CMat x = space.from_coefficients(coeff);
        if (frobenius(x) > 1e-10) raw.push_back(x);
    }

    // The real null space double-counts the complex directions; keep a
    // maximal complex-independent subset.
    std::vector<CMat> basis;
    for (const CMat& x : raw) {
        std::vector<CMat> trial = basis;
        trial.push_back(x);
        if (dependent_index(basis_columns(trial)) < 0) basis = std::move(trial);
    }
    return detail::make_space_unchecked(space.name + " ∩ adjoint", space.ambient_rows,
                                        space.ambient_cols, std::move(basis));
}

namespace detail {

inline CMat pauli(char which) {
    CMat m(2, 2);
    switch (which) {
        case 'I': m << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(1, 0); break;
        case 'X': m << Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0); break;
        case 'Y': m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0); break;
        default:  m << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0); break;
    }
    return m;
}

inline CMat kron(const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline CMat word(const std::string& letters) {
    CMat m = pauli(letters[0]);
    for (std::size_t k = 1; k < letters.size(); ++k) m = kron(m, pauli(letters[k]));
    return m;
}

} // namespace detail

/// Cartan factor constructors.
///   kind 1: full p-by-q matrices (dims = p, q)
///   kind 2: antisymmetric n-by-n (basis E_ij - E_ji)
///   kind 3: symmetric n-by-n (basis E_ii and E_ij + E_ji)
///   kind 4: spin system of n pairwise anti-commuting self-adjoint
///           unitaries on ceil(n/2) qubits, n <= 6
inline OperatorSpace cartan(int kind, int a, int b = -1) {
    std::vector<CMat> basis;
    switch (kind) {
        case 1: {
            if (a < 1 || b < 1) throw ShapeError("cartan(1): needs p, q >= 1");
            for (int i = 0; i < a; ++i)
                for (int j = 0; j < b; ++j) basis.push_back(matrix_unit(a, b, i, j));
            return make_space("cartan1_" + std::to_string(a) + "x" + std::to_string(b), a, b,
                              basis);
        }
        case 2: {
            if (a < 2) throw ShapeError("cartan(2): needs n >= 2");
            for (int i = 0; i < a; ++i)
                for (int j = i + 1; j < a; ++j)
                    basis.push_back(matrix_unit(a, a, i, j) - matrix_unit(a, a, j, i));
            return make_space("cartan2_" + std::to_string(a), a, a, basis);
        }
        case 3: {
            if (a < 1) throw ShapeError("cartan(3): needs n >= 1");
            for (int i = 0; i < a; ++i) basis.push_back(matrix_unit(a, a, i, i));
            for (int i = 0; i < a; ++i)
                for (int j = i + 1; j < a; ++j)
                    basis.push_back(matrix_unit(a, a, i, j) + matrix_unit(a, a, j, i));
            return make_space("cartan3_" + std::to_string(a), a, a, basis);
        }
        case 4: {
            if (a < 1 || a > 6)
                throw ShapeError("cartan(4): supports 1 to 6 generators at desk scale");
            const int qubits = (a + 1) / 2;
            for (int g = 0; g < a; ++g) {
                std::string letters(static_cast<std::size_t>(qubits), 'I');
                const int slot = g / 2;
                for (int s = 0; s < slot; ++s) letters[static_cast<std::size_t>(s)] = 'Z';
                letters[static_cast<std::size_t>(slot)] = (g % 2 == 0) ? 'X' : 'Y';
                basis.push_back(detail::word(letters));
            }
            const int dim = 1 << qubits;
            // generator sanity: s_i s_j + s_j s_i = 2 delta_ij I
            for (std::size_t i = 0; i < basis.size(); ++i)
                for (std::size_t j = 0; j < basis.size(); ++j) {
                    const CMat anti = basis[i] * basis[j] + basis[j] * basis[i];
                    const CMat expect =
                        (i == j) ? CMat(2.0 * CMat::Identity(dim, dim)) : CMat(CMat::Zero(dim, dim));
                    if (opnorm(anti - expect) > 1e-12)
                        throw NumericalError("cartan(4): generator pair (" + std::to_string(i) +
                                             "," + std::to_string(j) +
                                             ") fails the anti-commutation relations");
                }
            return make_space("cartan4_" + std::to_string(a), dim, dim, basis);
        }
        default:
            throw ShapeError("cartan: kind must be 1, 2, 3 or 4");
    }
}

/// Justifies treating the partial triple product as the ambient
/// restriction: the space is a TRO, or the middle element lies in the
/// adjoint intersection of a square space.
inline TripleContext make_triple_context(const OperatorSpace& space, const CMat& v) {
    if (tro_closure(space).is_tro) return {&space, true, "tro"};
    if (space.ambient_rows == space.ambient_cols) {
        const OperatorSpace inter = adjoint_intersection(space);
        if (inter.dim() > 0 && member(inter, v).member) return {&space, true, "intersection"};
    }
    return {&space, false, "unjustified"};
}

} // namespace oplab
