#include <catch2/catch_amalgamated.hpp>

#include "oplab/discover.hpp"
#include "oplab/triple.hpp"
#include "support/oracles.hpp"

using namespace oplab;
using Catch::Approx;

namespace {
CMat e(int i, int j) { return matrix_unit(2, 2, i, j); }

CMat random_m(int n, Rng& rng, double scale = 1.0) {
    CMat a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = scale * rng.complex_gaussian();
    return a;
}
} // namespace

TEST_CASE("triple product golden values", "[triple]") {
    REQUIRE(opnorm(triple(e(0, 0), e(0, 0), e(0, 0)) - e(0, 0)) == 0.0);

    Rng rng(2);
    const CMat x = random_m(2, rng);
    const CMat id = CMat::Identity(2, 2);
    REQUIRE(opnorm(triple(x, id, id) - x) <= 1e-15);

    // {E12, E12, E11} = (E12 E21 E11 + E11 E21 E12)/2 = E11/2 by direct matmul
    const CMat by_hand = 0.5 * (e(0, 1) * e(0, 1).adjoint() * e(0, 0) +
                                e(0, 0) * e(0, 1).adjoint() * e(0, 1));
    REQUIRE(opnorm(triple(e(0, 1), e(0, 1), e(0, 0)) - CMat(0.5 * e(0, 0))) <= 1e-15);
    REQUIRE(opnorm(triple(e(0, 1), e(0, 1), e(0, 0)) - by_hand) == 0.0);

    REQUIRE_THROWS_AS(triple(CMat::Zero(2, 2), CMat::Zero(2, 3), CMat::Zero(2, 2)), ShapeError);
}

TEST_CASE("outer symmetry and middle conjugate-linearity", "[triple]") {
    Rng rng(3);
    for (int t = 0; t < 100; ++t) {
        const CMat x = random_m(3, rng), y = random_m(3, rng), z = random_m(3, rng);
        REQUIRE(opnorm(triple(x, y, z) - triple(z, y, x)) <= 1e-14);
        const Complex lambda = rng.complex_gaussian();
        REQUIRE(opnorm(triple(x, CMat(lambda * y), z) - CMat(std::conj(lambda) * triple(x, y, z))) <=
                1e-12 * (1.0 + std::abs(lambda)) * opnorm(triple(x, y, z)) + 1e-12);
    }
}

TEST_CASE("main identity holds for the ambient product", "[triple]") {
    REQUIRE(main_identity_residual(e(0, 0), e(0, 0), e(0, 0), e(0, 0), e(0, 0)) == 0.0);

    Rng rng(7);
    for (int n : {2, 3}) {
        double worst = 0.0;
        for (int t = 0; t < 1000; ++t) {
            const CMat a = random_m(n, rng), b = random_m(n, rng), x = random_m(n, rng),
                       y = random_m(n, rng), z = random_m(n, rng);
            worst = std::max(worst, main_identity_residual(a, b, x, y, z));
        }
        REQUIRE(worst <= 1e-10);
    }
}

TEST_CASE("main identity residual under 1e3 scaling stays below 1e-6", "[triple]") {
    Rng rng(13);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const CMat a = random_m(2, rng, 1e3), b = random_m(2, rng, 1e3), x = random_m(2, rng, 1e3),
                   y = random_m(2, rng, 1e3), z = random_m(2, rng, 1e3);
        worst = std::max(worst, main_identity_residual(a, b, x, y, z));
    }
    REQUIRE(worst <= 1e-6);
    REQUIRE(worst > 0.0);  // cubic term growth makes exact zeros implausible
}

TEST_CASE("Gelfand-Naimark norm inequality", "[triple]") {
    REQUIRE(norm_inequality_gap(e(0, 0), e(0, 0), e(0, 0)) == Approx(0.0).margin(1e-14));

    Rng rng(19);
    for (int t = 0; t < 1000; ++t) {
        CMat x = random_m(2, rng), a = random_m(2, rng), y = random_m(2, rng);
        x /= opnorm(x);
        a /= opnorm(a);
        y /= opnorm(y);
        REQUIRE(norm_inequality_gap(x, a, y) <= 1e-10);
    }

    // {E12,E11,E21} = E22/2 by direct matmul, so the gap is exactly -1/2
    const CMat value = triple(e(0, 1), e(0, 0), e(1, 0));
    REQUIRE(opnorm(value - CMat(0.5 * e(1, 1))) <= 1e-15);
    REQUIRE(norm_inequality_gap(e(0, 1), e(0, 0), e(1, 0)) == Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("polarization recovers the triple product", "[triple]") {
    Rng rng(23);
    const CMat a = random_m(2, rng), x = random_m(2, rng);
    REQUIRE(opnorm(polarized_q(a, x, x) - triple(x, a, x)) <= 1e-13);
    REQUIRE(opnorm(polarized_q(a, x, CMat(CMat::Zero(2, 2)))) <= 1e-13);
    for (int t = 0; t < 1000; ++t) {
        const CMat m = random_m(2, rng), u = random_m(2, rng), w = random_m(2, rng);
        REQUIRE(opnorm(polarized_q(m, u, w) - triple(u, m, w)) <= 1e-10);
    }
}

TEST_CASE("restriction justification routes", "[triple]") {
    // full rectangular space: a TRO
    const TripleContext tro = make_triple_context(oracles::column21(), matrix_unit(2, 1, 0, 0));
    REQUIRE(tro.restriction_valid);
    REQUIRE(tro.justification == "tro");

    // upper-triangular algebra with the identity: justified through A ∩ A*
    const TripleContext inter = make_triple_context(oracles::upper2(), CMat::Identity(2, 2));
    REQUIRE(inter.restriction_valid);
    REQUIRE(inter.justification == "intersection");

    // strictly upper-triangular line with its own generator: no justification
    const OperatorSpace strict =
        make_space("strict_upper", 2, 2, {matrix_unit(2, 2, 0, 1)});
    const TripleContext none = make_triple_context(strict, matrix_unit(2, 2, 0, 1));
    REQUIRE_FALSE(none.restriction_valid);
    REQUIRE(none.justification == "unjustified");

    const TripleContext assumed = assume_restriction(strict);
    REQUIRE(assumed.restriction_valid);
    REQUIRE(assumed.justification == "assumed");
}
