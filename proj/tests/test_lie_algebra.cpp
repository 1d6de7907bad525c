#include <catch2/catch_amalgamated.hpp>

#include "dgred/lie_algebra.hpp"

#include <cmath>

using namespace dgred;

namespace {

// Rotation generator of so(2) acting on R^2.
LieAlgebra so2() {
    LieAlgebra L = LieAlgebra::abelian(1);
    L.tag = GroupTag::orthogonal;
    RatMat a(2, 2);
    a(0, 1) = -1;
    a(1, 0) = 1;
    L.rep = {a};
    return L;
}

// Vector representation of so(3): (L_i)_{ac} = epsilon_{a i c}.
std::vector<RatMat> so3_vector_rep() {
    std::vector<RatMat> rep(3, RatMat(3, 3));
    int e[3][3][3] = {};
    e[0][1][2] = 1; e[1][2][0] = 1; e[2][0][1] = 1;
    e[0][2][1] = -1; e[2][1][0] = -1; e[1][0][2] = -1;
    for (int i = 0; i < 3; ++i)
        for (int a = 0; a < 3; ++a)
            for (int c = 0; c < 3; ++c) rep[i](a, c) = e[a][i][c];
    return rep;
}

}  // namespace

TEST_CASE("axioms hold for the zero bracket") {
    LieAlgebra L = LieAlgebra::abelian(3);
    auto rep = check_lie_axioms(L);
    REQUIRE(rep.all_ok());
}

TEST_CASE("so(3) satisfies all axioms, with the vector representation") {
    LieAlgebra L = LieAlgebra::so3();
    L.rep = so3_vector_rep();
    auto rep = check_lie_axioms(L);
    INFO(rep.witness());
    REQUIRE(rep.antisymmetry_ok);
    REQUIRE(rep.jacobi_ok);
    REQUIRE(rep.rep_ok);
}

TEST_CASE("constructed antisymmetry violation is caught with a witness") {
    LieAlgebra L = LieAlgebra::abelian(2);
    L.structure(0, 0, 1) = 1;
    L.structure(0, 1, 0) = 1;  // symmetric on purpose
    auto rep = check_lie_axioms(L);
    REQUIRE_FALSE(rep.antisymmetry_ok);
    REQUIRE(rep.antisymmetry_witness.find("(1,1,2)") != std::string::npos);
}

TEST_CASE("adjoint and coadjoint operators") {
    LieAlgebra L = LieAlgebra::so3();

    SECTION("abelian algebras have zero ad and coad") {
        LieAlgebra A = LieAlgebra::abelian(2);
        std::vector<Rational> x = {Rational(3), Rational(-5)};
        REQUIRE(A.ad(x).is_zero());
        REQUIRE(A.coad(x).is_zero());
    }

    SECTION("ad_{E_1} rotates E_2 into E_3 on so(3)") {
        RatMat ad1 = L.ad_basis(0);
        // columns are images: E_2 -> E_3, E_3 -> -E_2
        REQUIRE(ad1(2, 1) == Rational(1));
        REQUIRE(ad1(1, 2) == Rational(-1));
        REQUIRE(ad1(0, 0) == Rational(0));
    }

    SECTION("defining pairing <coad_X s, Y> + <s, ad_X Y> = 0") {
        CounterRng rng(11);
        for (int iter = 0; iter < 30; ++iter) {
            std::vector<Rational> x(3), y(3), s(3);
            for (auto* v : {&x, &y, &s})
                for (auto& e : *v) e = rng.next_rational();
            RatMat ad = L.ad(x), coad = L.coad(x);
            auto ady = ad.apply(y);
            auto coads = coad.apply(s);
            Rational lhs = 0, rhs = 0;
            for (int i = 0; i < 3; ++i) {
                lhs += coads[i] * y[i];
                rhs += s[i] * ady[i];
            }
            REQUIRE(lhs + rhs == 0);
        }
    }

    SECTION("coadjoint bracket identity coad_[X,Y] = [coad_X, coad_Y]") {
        CounterRng rng(13);
        for (int iter = 0; iter < 30; ++iter) {
            std::vector<Rational> x(3), y(3);
            for (auto* v : {&x, &y})
                for (auto& e : *v) e = rng.next_rational();
            RatMat lhs = L.coad(L.bracket(x, y));
            RatMat rhs = L.coad(x) * L.coad(y) - L.coad(y) * L.coad(x);
            REQUIRE(lhs == rhs);
        }
    }

    SECTION("dimension mismatch is an error") {
        std::vector<Rational> bad = {Rational(1)};
        REQUIRE_THROWS_AS(L.ad(bad), std::invalid_argument);
    }
}

TEST_CASE("group sampling") {
    SECTION("exp(0) is the identity") {
        LieAlgebra L = so2();
        NumMat a(2, 2);
        NumMat g = expm(a);
        REQUIRE((g - NumMat::identity(2)).max_abs() == 0.0);
    }

    SECTION("so(2) exponential matches the closed-form rotation") {
        LieAlgebra L = so2();
        for (double t : {0.1, -0.7, 1.3, 3.0}) {
            NumMat a = L.rep_matrix_numeric(std::vector<double>{t});
            NumMat g = expm(a);
            REQUIRE(std::abs(g(0, 0) - std::cos(t)) < 1e-12);
            REQUIRE(std::abs(g(0, 1) + std::sin(t)) < 1e-12);
            REQUIRE(std::abs(g(1, 0) - std::sin(t)) < 1e-12);
            REQUIRE(std::abs(g(1, 1) - std::cos(t)) < 1e-12);
        }
    }

    SECTION("sampled so(3) elements are orthogonal") {
        LieAlgebra L = LieAlgebra::so3();
        L.rep = so3_vector_rep();
        auto gs = sample_group(L, 0, 20);
        REQUIRE(gs.size() == 20);
        for (const auto& g : gs) {
            double resid = (g.matrix.transpose() * g.matrix - NumMat::identity(3)).max_abs();
            REQUIRE(resid < 1e-10);
        }
    }

    SECTION("sampling without a representation is an error") {
        LieAlgebra L = LieAlgebra::abelian(2);
        REQUIRE_THROWS_AS(sample_group(L, 0, 1), std::invalid_argument);
    }

    SECTION("determinism: same seed, same matrices") {
        LieAlgebra L = LieAlgebra::so3();
        L.rep = so3_vector_rep();
        auto a = sample_group(L, 7, 5), b = sample_group(L, 7, 5);
        for (std::size_t i = 0; i < a.size(); ++i)
            REQUIRE((a[i].matrix - b[i].matrix).max_abs() == 0.0);
    }
}

TEST_CASE("two constructions of Ad agree: rep conjugation vs exp(ad)") {
    LieAlgebra L = LieAlgebra::so3();
    L.rep = so3_vector_rep();
    auto gs = sample_group(L, 3, 10);
    for (const auto& g : gs) {
        NumMat ad_route = L.adjoint_exp_numeric(g.source);  // exp(ad_X) on coordinates
        for (std::size_t k = 0; k < 3; ++k) {
            // rep matrix of exp(ad_X) E_k
            std::vector<double> coords(3);
            for (std::size_t m = 0; m < 3; ++m) coords[m] = ad_route(m, k);
            NumMat lhs = L.rep_matrix_numeric(coords);
            NumMat gm = g.matrix;
            NumMat rhs = gm * NumMat::from(L.rep[k]) * gm.transpose();  // g orthogonal
            REQUIRE((lhs - rhs).max_abs() < 1e-8);
        }
    }
}
