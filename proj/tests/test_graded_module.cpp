#include <catch2/catch_amalgamated.hpp>

#include "dgred/graded_module.hpp"
#include "dgred/rng.hpp"

using namespace dgred;

namespace {

// Ambient context: the unit circle level set, mu = (x^2 + y^2)/2 on R^2
// with a one-dimensional exterior factor.
const std::size_t NV = 2, GD = 1;
const std::vector<std::string> names = {"x", "y"};

std::vector<Polynomial> circle_mu() {
    return {parse_polynomial("1/2*x^2 + 1/2*y^2", names)};
}

SuperFunction sf(const std::string& s) {
    return SuperFunction::scalar(parse_polynomial(s, names), GD);
}

/// The unit dg-module: rank one in degree zero, zero matrix part. Its
/// fibers are the classical Koszul complexes of the values of mu.
DgModule unit_module() {
    FreeGradedModule m = FreeGradedModule::trivial({"1"}, 0);
    return {m, BlockMap(m, m, 1, NV, GD)};
}

BlockMap random_map(CounterRng& rng, const FreeGradedModule& src, const FreeGradedModule& tgt,
                    int degree, std::size_t gdim) {
    BlockMap f(src, tgt, degree, NV, gdim);
    for (std::size_t r = 0; r < tgt.rank(); ++r)
        for (std::size_t c = 0; c < src.rank(); ++c) {
            int e = f.forced_entry_degree(r, c);
            if (e > 0 || e < -(int)gdim) continue;
            SuperFunction v(NV, gdim);
            // any monomial basis of the right exterior size
            GenMask mask = (GenMask(1) << (-e)) - 1;
            if (rng.next_u64() % 4 == 0) mask = ((GenMask(1) << (-e)) - 1) << (rng.next_u64() % (gdim + e + 1));
            Polynomial p(NV);
            Monomial mono(NV, 0);
            mono[0] = (std::uint32_t)(rng.next_u64() % 2);
            p.add_term(mono, rng.next_rational(4, 3));
            v.set(mask, p);
            f.set(r, c, v);
        }
    return f;
}

}  // namespace

TEST_CASE("koszul differential on coefficients") {
    auto mu = circle_mu();
    SuperFunction e = SuperFunction::generator(0, NV, GD);
    REQUIRE(koszul_delta_coeff(e, mu) == sf("1/2*x^2 + 1/2*y^2"));
    REQUIRE(koszul_delta_coeff(koszul_delta_coeff(e, mu), mu).is_zero());
    REQUIRE(koszul_delta_coeff(sf("x"), mu).is_zero());
}

TEST_CASE("composition respects degrees and koszul signs") {
    CounterRng rng(17);
    std::size_t gd = 3;
    FreeGradedModule A = FreeGradedModule::trivial({"a1", "a2"}, 0);
    FreeGradedModule B{{"b1", "b2"}, {0, 1}};
    FreeGradedModule C{{"c1", "c2"}, {1, 2}};
    FreeGradedModule D{{"d1"}, {2}};
    for (int iter = 0; iter < 25; ++iter) {
        BlockMap f = random_map(rng, A, B, 1, gd);
        BlockMap g = random_map(rng, B, C, 1, gd);
        BlockMap h = random_map(rng, C, D, 0, gd);
        REQUIRE(g.compose(f).degree() == 2);
        REQUIRE(h.compose(g).compose(f) == h.compose(g.compose(f)));
    }
}

TEST_CASE("identity map composes neutrally") {
    CounterRng rng(23);
    FreeGradedModule A{{"a1", "a2"}, {0, 1}};
    FreeGradedModule B{{"b1", "b2"}, {1, 1}};
    BlockMap f = random_map(rng, A, B, 1, 2);
    BlockMap idA = BlockMap::identity(A, NV, 2);
    BlockMap idB = BlockMap::identity(B, NV, 2);
    REQUIRE(f.compose(idA) == f);
    REQUIRE(idB.compose(f) == f);
}

TEST_CASE("entry degree enforcement") {
    FreeGradedModule A = FreeGradedModule::trivial({"a"}, 0);
    FreeGradedModule B = FreeGradedModule::trivial({"b"}, 0);
    BlockMap f(A, B, 0, NV, GD);
    REQUIRE_THROWS_AS(f.set(0, 0, SuperFunction::generator(0, NV, GD)),
                      std::invalid_argument);
    f.set(0, 0, sf("x"));  // degree 0 entry is fine
}

TEST_CASE("cone and cocone of chain maps") {
    auto mu = circle_mu();

    SECTION("cone of the zero map keeps both differentials") {
        DgModule u = unit_module();
        BlockMap zero(u.module, u.module, 0, NV, GD);
        DgModule c = cone(zero, u, u, mu, names);
        REQUIRE(c.module.rank() == 2);
        REQUIRE(c.module.degrees[0] == -1);
        REQUIRE(c.module.degrees[1] == 0);
        REQUIRE(c.d.is_zero());
        REQUIRE(verify_square_zero(c, mu, names).ok);
    }

    SECTION("cone of the identity is pointwise acyclic everywhere") {
        DgModule u = unit_module();
        BlockMap id = BlockMap::identity(u.module, NV, GD);
        DgModule c = cone(id, u, u, mu, names);
        REQUIRE(verify_square_zero(c, mu, names).ok);
        CounterRng rng(3);
        for (int s = 0; s < 10; ++s) {
            std::vector<Rational> m = {rng.next_rational(), rng.next_rational()};
            auto h = pointwise_cohomology(c, mu, m);
            for (const auto& [deg, dim] : h) REQUIRE(dim == 0);
        }
    }

    SECTION("non-chain maps are rejected with a witness") {
        DgModule u = unit_module();
        // rank-one module in degree -1 with zero differential; the identity
        // entry map into the unit module fails the chain condition since
        // koszul_delta of the E_1 entry is mu != 0
        FreeGradedModule w = FreeGradedModule::trivial({"w"}, -1);
        DgModule wm{w, BlockMap(w, w, 1, NV, GD)};
        BlockMap f(w, u.module, 0, NV, GD);
        f.set(0, 0, SuperFunction::generator(0, NV, GD));
        REQUIRE_THROWS_WITH(cone(f, wm, u, mu, names),
                            Catch::Matchers::ContainsSubstring("not a chain map"));
    }
}

TEST_CASE("explicitly supplied block differentials are checked for square-zero") {
    // three-step tower a -> b -> w with mu = (xy); the correction entry
    // (w, a) = -E_1 is exactly what kills the composite path
    std::vector<Polynomial> mu = {parse_polynomial("x*y", names)};
    FreeGradedModule m{{"a", "b", "w"}, {-1, 0, 1}};
    SuperFunction e1 = SuperFunction::generator(0, NV, GD);

    BlockMap good(m, m, 1, NV, GD);
    good.set(1, 0, sf("x"));
    good.set(2, 1, sf("y"));
    good.set(2, 0, -e1);
    REQUIRE_NOTHROW(dg_from_blocks(m, good, mu, names));

    BlockMap bad = good;
    bad.set(2, 0, e1);  // wrong sign: defect 2xy at block (w, a)
    REQUIRE_THROWS_WITH(dg_from_blocks(m, bad, mu, names),
                        Catch::Matchers::ContainsSubstring("square"));
}

TEST_CASE("chain map verification") {
    auto mu = circle_mu();
    DgModule u = unit_module();

    SECTION("identity and differential are chain maps") {
        BlockMap id = BlockMap::identity(u.module, NV, GD);
        REQUIRE(verify_chain_map(id, u, u, mu, names).ok);
        REQUIRE(verify_chain_map(u.d, u, u, mu, names).ok);
    }

    SECTION("shape mismatch is an error") {
        FreeGradedModule other = FreeGradedModule::trivial({"z"}, 2);
        BlockMap f(other, other, 0, NV, GD);
        REQUIRE_THROWS_AS(verify_chain_map(f, u, u, mu, names), std::invalid_argument);
    }
}

TEST_CASE("pointwise cohomology of Koszul fibers") {
    auto mu = circle_mu();
    DgModule u = unit_module();

    SECTION("unit fiber at a point off the zero set is acyclic") {
        std::vector<Rational> m = {Rational(1), Rational(0)};  // mu = 1/2
        auto h = pointwise_cohomology(u, mu, m);
        REQUIRE(h.at(-1) == 0);
        REQUIRE(h.at(0) == 0);
    }

    SECTION("unit fiber at the singular origin has full cohomology") {
        std::vector<Rational> m = {Rational(0), Rational(0)};
        auto h = pointwise_cohomology(u, mu, m);
        REQUIRE(h.at(-1) == 1);
        REQUIRE(h.at(0) == 1);
    }

    SECTION("zero differential over a trivial exterior context reports ranks") {
        // d = 0 example needs gdim 0 so the fiber is the module itself
        FreeGradedModule m{{"a", "b"}, {-1, 0}};
        DgModule dm{m, BlockMap(m, m, 1, NV, 0)};
        std::vector<Polynomial> no_mu;
        std::vector<Rational> pt = {Rational(2), Rational(3)};
        auto h = pointwise_cohomology(dm, no_mu, pt);
        REQUIRE(h.at(-1) == 1);
        REQUIRE(h.at(0) == 1);
    }
}

TEST_CASE("fiber evaluation commutes with composition") {
    CounterRng rng(31);
    std::size_t gd = 2;
    std::vector<Polynomial> mu = {parse_polynomial("x*y", names),
                                  parse_polynomial("x^2 - y", names)};
    FreeGradedModule A{{"a1", "a2"}, {0, 0}};
    FreeGradedModule B{{"b1", "b2"}, {0, 1}};
    FreeGradedModule C{{"c1"}, {1}};
    for (int iter = 0; iter < 20; ++iter) {
        BlockMap f = random_map(rng, A, B, 0, gd);
        BlockMap g = random_map(rng, B, C, 1, gd);
        std::vector<Rational> m = {rng.next_rational(), rng.next_rational()};
        RatMat lhs = fiber_matrix(g.compose(f), m);
        RatMat rhs = fiber_matrix(g, m) * fiber_matrix(f, m);
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("full differential satisfies the module Leibniz rule") {
    // delta(f m) = delta_Z(f) m + (-1)^{|f|} f delta(m) for parity-
    // homogeneous coefficients, exercised on the circle tangent module
    std::vector<Polynomial> mu = {parse_polynomial("1/2*x^2 + 1/2*y^2", names)};
    FreeGradedModule m{{"d/dx", "d/dy", "iota"}, {0, 0, 1}};
    BlockMap d(m, m, 1, NV, GD);
    d.set(2, 0, sf("x"));
    d.set(2, 1, sf("y"));
    DgModule t{m, d};
    REQUIRE(verify_square_zero(t, mu, names).ok);

    CounterRng rng(97);
    for (int iter = 0; iter < 30; ++iter) {
        // element with a single homogeneous coefficient on one basis vector
        std::size_t c = rng.next_u64() % 3;
        GenMask mask = (GenMask)(rng.next_u64() % 2);
        Polynomial p(NV);
        Monomial mono(NV, 0);
        mono[rng.next_u64() % NV] = (std::uint32_t)(rng.next_u64() % 3);
        p.add_term(mono, rng.next_rational());
        SuperFunction f(NV, GD);
        f.set(mask, p);

        std::vector<SuperFunction> elem(3, SuperFunction(NV, GD));
        elem[c] = SuperFunction::constant(1, NV, GD);
        std::vector<SuperFunction> f_elem(3, SuperFunction(NV, GD));
        f_elem[c] = f;

        auto lhs = dg_apply(t, mu, f_elem);
        auto dm = dg_apply(t, mu, elem);
        SuperFunction df = koszul_delta_coeff(f, mu);
        for (std::size_t r = 0; r < 3; ++r) {
            SuperFunction rhs = df * elem[r] + (mask_size(mask) % 2 == 0
                                                    ? f * dm[r]
                                                    : -(f * dm[r]));
            REQUIRE(lhs[r] == rhs);
        }
    }
}
