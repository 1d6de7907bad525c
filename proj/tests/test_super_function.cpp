#include <catch2/catch_amalgamated.hpp>

#include "dgred/rng.hpp"
#include "dgred/super_function.hpp"

using namespace dgred;

namespace {

const std::size_t NV = 2, GD = 3;

SuperFunction E(std::size_t j) { return SuperFunction::generator(j, NV, GD); }
SuperFunction pol(const std::string& s) {
    static const std::vector<std::string> names = {"x", "y"};
    return SuperFunction::scalar(parse_polynomial(s, names), GD);
}

SuperFunction random_sf(CounterRng& rng) {
    SuperFunction f(NV, GD);
    for (int t = 0; t < 5; ++t) {
        GenMask m = (GenMask)(rng.next_u64() % (GenMask(1) << GD));
        Monomial mono(NV, 0);
        mono[0] = (std::uint32_t)(rng.next_u64() % 3);
        mono[1] = (std::uint32_t)(rng.next_u64() % 3);
        Polynomial p(NV);
        p.add_term(mono, rng.next_rational());
        f.add(m, p);
    }
    return f;
}

}  // namespace

TEST_CASE("odd generators anticommute and square to zero") {
    REQUIRE(E(0) * E(1) == -(E(1) * E(0)));
    REQUIRE((E(0) * E(0)).is_zero());

    SuperFunction e12 = E(0) * E(1);
    REQUIRE(e12.component(0b011) == Polynomial::constant(1, NV));
    REQUIRE(e12.degree() == -2);
}

TEST_CASE("odd square of an odd element vanishes") {
    // (x E_1 + y E_2)^2 = xy E_1 E_2 + yx E_2 E_1 = 0
    SuperFunction f = pol("x") * E(0) + pol("y") * E(1);
    REQUIRE((f * f).is_zero());
}

TEST_CASE("graded commutativity on random elements") {
    CounterRng rng(5);
    auto part = [](const SuperFunction& f, int parity) {
        SuperFunction r(f.nvars(), f.gdim());
        for (const auto& [m, p] : f.components())
            if (mask_size(m) % 2 == parity) r.add(m, p);
        return r;
    };
    for (int iter = 0; iter < 50; ++iter) {
        SuperFunction a = random_sf(rng), b = random_sf(rng), c = random_sf(rng);
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE(a * (b + c) == a * b + a * c);
        // a b = (-1)^{|a||b|} b a on parity-homogeneous parts
        for (int pa : {0, 1})
            for (int pb : {0, 1}) {
                SuperFunction ha = part(a, pa), hb = part(b, pb);
                SuperFunction rhs = hb * ha;
                if (pa * pb % 2 != 0) rhs = -rhs;
                REQUIRE(ha * hb == rhs);
            }
    }
}

TEST_CASE("contraction by dual generators") {
    SuperFunction e123 = E(0) * E(1) * E(2);
    // iota_{s_2} removes E_2 with one transposition
    SuperFunction r = e123.contract_sigma(1);
    REQUIRE(r == -(E(0) * E(2)));
    REQUIRE(e123.contract_sigma(0) == E(1) * E(2));
    REQUIRE((E(0) * E(2)).contract_sigma(1).is_zero());
}

TEST_CASE("degree bookkeeping") {
    REQUIRE(pol("x").degree() == 0);
    REQUIRE(E(2).degree() == -1);
    REQUIRE_FALSE((pol("x") + E(0)).degree().has_value());
    REQUIRE(SuperFunction(NV, GD).is_zero());
}
