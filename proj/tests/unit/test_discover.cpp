#include <catch2/catch_amalgamated.hpp>

#include "oplab/discover.hpp"
#include "oplab/verify.hpp"
#include "support/oracles.hpp"

using namespace oplab;
using Catch::Approx;

TEST_CASE("find_unit recovers a unitary on full M2", "[discover]") {
    const OperatorSpace m2 = oracles::full_m2();
    const UnitCandidate u = find_unit(m2, 8, 400, 101);
    REQUIRE(u.rms_residual <= 1e-8);
    REQUIRE(u.norm == Approx(1.0).margin(1e-6));
    const CMat id = CMat::Identity(2, 2);
    REQUIRE(opnorm(u.v.adjoint() * u.v - id) <= 1e-6);
    REQUIRE(opnorm(u.v * u.v.adjoint() - id) <= 1e-6);
    REQUIRE(u.provenance.kind == "search");
    REQUIRE(u.provenance.seed == 101);
}

TEST_CASE("find_unit on the upper-triangular algebra acts as the identity", "[discover]") {
    const OperatorSpace upper = oracles::upper2();
    const UnitCandidate u = find_unit(upper, 8, 400, 7);
    REQUIRE(u.rms_residual <= 1e-8);
    REQUIRE(u.cond_i_residual <= 1e-7);
    for (const CMat& b : upper.basis) {
        REQUIRE(opnorm(b * u.v.adjoint() * u.v - b) <= 1e-6);
        REQUIRE(opnorm(u.v * u.v.adjoint() * b - b) <= 1e-6);
    }
}

TEST_CASE("find_unit hits the analytic floor on the column space", "[discover]") {
    const OperatorSpace col = oracles::column21();
    const UnitCandidate u = find_unit(col, 12, 300, 13);
    REQUIRE(u.objective == Approx(0.25).margin(1e-6));
    REQUIRE(u.objective == Approx(oracles::column_space_grid_minimum()).margin(1e-6));
    REQUIRE(u.rms_residual == Approx(std::sqrt(0.25 / 2)).margin(1e-6));
    REQUIRE(u.norm == Approx(1.0).margin(1e-6));
}

TEST_CASE("find_unit descent is monotone", "[discover]") {
    for (const OperatorSpace& s : {oracles::full_m2(), oracles::column21()}) {
        const UnitCandidate u = find_unit(s, 4, 150, 23);
        REQUIRE_FALSE(u.descent_trace.empty());
        for (std::size_t k = 1; k < u.descent_trace.size(); ++k)
            REQUIRE(u.descent_trace[k] <= u.descent_trace[k - 1]);
    }
}

TEST_CASE("tro_closure on full rectangular matrices", "[discover]") {
    const ClosureReport r = tro_closure(cartan(1, 2, 3));
    REQUIRE(r.is_tro);
    REQUIRE(r.max_triple_residual <= 1e-12);
}

TEST_CASE("tro_closure on symmetric 2x2 finds the 1/sqrt(2) witness", "[discover]") {
    const OperatorSpace sym = cartan(3, 2);
    const ClosureReport r = tro_closure(sym);
    REQUIRE_FALSE(r.is_tro);
    REQUIRE(r.max_triple_residual == Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));

    const oracles::ClosureScan scan = oracles::brute_force_closure(sym);
    REQUIRE(r.max_triple_residual == Approx(scan.max_residual).margin(1e-10));
    // the worst triple reproduces its residual
    const CMat prod = sym.basis[static_cast<std::size_t>(r.worst_triple[0])] *
                      sym.basis[static_cast<std::size_t>(r.worst_triple[1])].adjoint() *
                      sym.basis[static_cast<std::size_t>(r.worst_triple[2])];
    REQUIRE(member(sym, prod).residual == Approx(r.max_triple_residual).margin(1e-12));
}

TEST_CASE("tro_closure on the upper-triangular algebra", "[discover]") {
    const OperatorSpace upper = oracles::upper2();
    const ClosureReport r = tro_closure(upper);
    REQUIRE_FALSE(r.is_tro);
    const oracles::ClosureScan scan = oracles::brute_force_closure(upper);
    REQUIRE(r.max_triple_residual == Approx(scan.max_residual).margin(1e-10));
    REQUIRE(r.max_triple_residual == Approx(1.0).epsilon(1e-12));  // E22 E12^* E11 = E21
}

TEST_CASE("adjoint_intersection of the corpus spaces", "[discover]") {
    const OperatorSpace diag = adjoint_intersection(oracles::upper2());
    REQUIRE(diag.dim() == 2);
    REQUIRE(member(diag, matrix_unit(2, 2, 0, 0)).member);
    REQUIRE(member(diag, matrix_unit(2, 2, 1, 1)).member);
    REQUIRE_FALSE(member(diag, matrix_unit(2, 2, 0, 1)).member);

    REQUIRE(adjoint_intersection(oracles::full_m2()).dim() == 4);

    const OperatorSpace strict = make_space("strict", 2, 2, {matrix_unit(2, 2, 0, 1)});
    REQUIRE(adjoint_intersection(strict).dim() == 0);

    REQUIRE_THROWS_AS(adjoint_intersection(oracles::column21()), ShapeError);
}

TEST_CASE("adjoint_intersection is idempotent", "[discover]") {
    for (const OperatorSpace& s : {oracles::upper2(), oracles::full_m2(), oracles::symmetric2()}) {
        const OperatorSpace once = adjoint_intersection(s);
        if (once.dim() == 0) continue;
        const OperatorSpace twice = adjoint_intersection(once);
        REQUIRE(twice.dim() == once.dim());
        for (const CMat& b : once.basis) REQUIRE(member(twice, b).residual <= 1e-10);
        for (const CMat& b : twice.basis) REQUIRE(member(once, b).residual <= 1e-10);
    }
}

TEST_CASE("cartan constructors", "[discover]") {
    REQUIRE(cartan(1, 2, 3).dim() == 6);
    REQUIRE(cartan(2, 3).dim() == 3);
    REQUIRE(cartan(3, 3).dim() == 6);

    const OperatorSpace spin2 = cartan(4, 2);
    REQUIRE(spin2.dim() == 2);
    REQUIRE(spin2.ambient_rows == 2);
    const CMat sx = spin2.basis[0], sy = spin2.basis[1];
    REQUIRE(opnorm(sx * sy + sy * sx) <= 1e-14);
    REQUIRE(opnorm(sx * sx - CMat::Identity(2, 2)) <= 1e-14);
    REQUIRE(opnorm(sx - sx.adjoint()) <= 1e-14);

    for (int n = 1; n <= 6; ++n) {
        const OperatorSpace spin = cartan(4, n);
        REQUIRE(spin.dim() == n);
        REQUIRE(spin.ambient_rows == (1 << ((n + 1) / 2)));
    }

    REQUIRE_THROWS_AS(cartan(4, 7), ShapeError);
    REQUIRE_THROWS_AS(cartan(1, 2), ShapeError);
    REQUIRE_THROWS_AS(cartan(5, 2), ShapeError);
}

TEST_CASE("non-TRO Cartan factors report strictly positive closure residuals", "[discover]") {
    for (int n = 4; n <= 5; ++n) {
        const ClosureReport r = tro_closure(cartan(2, n));
        REQUIRE_FALSE(r.is_tro);
        REQUIRE(r.max_triple_residual > 0.1);
    }
    for (int n = 2; n <= 3; ++n) {
        const ClosureReport r = tro_closure(cartan(3, n));
        REQUIRE_FALSE(r.is_tro);
        REQUIRE(r.max_triple_residual > 0.1);
    }
}

TEST_CASE("TRO-closed spaces with a found unit pass the verification machinery", "[discover]") {
    for (const OperatorSpace& s : {oracles::full_m2(), oracles::diag2()}) {
        REQUIRE(tro_closure(s).is_tro);
        const UnitCandidate u = find_unit(s, 6, 400, 31);
        REQUIRE(u.cond_i_residual <= 1e-8);
        const ProductContext ctx = make_product_context(s, u.v, "tro");
        REQUIRE(check_condition_i(ctx) <= 1e-8);
        const AscentOutcome ii = check_condition_ii(ctx, 2, {4, 60}, 33);
        REQUIRE(ii.best_ratio <= 1.0 + 1e-6);
        // residuals of the unit-law cases inherit the search tolerance on v
        for (const LemmaOutcome& o : run_lemma_suite(ctx, 50, 35))
            REQUIRE(o.max_residual <= 1e-7);
    }
}
