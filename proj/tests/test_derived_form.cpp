#include <catch2/catch_amalgamated.hpp>

#include "dgred/derived_form.hpp"
#include "dgred/examples.hpp"
#include "dgred/rng.hpp"

using namespace dgred;

namespace {

QuasiSmoothSpace circle() { return builtin_example("s1_r2").space.z; }
QuasiSmoothSpace body() { return builtin_example("so3_cotangent_r3").space.z; }

DerivedForm gen(const QuasiSmoothSpace& z, Gen g, std::size_t i) {
    return DerivedForm::generator(g, i, z.n, z.lie.dim);
}

DerivedForm random_form(CounterRng& rng, const QuasiSmoothSpace& z) {
    DerivedForm f(z.n, z.lie.dim);
    for (int t = 0; t < 5; ++t) {
        FormKey k;
        k.e = (GenMask)(rng.next_u64() % (GenMask(1) << z.lie.dim));
        k.dx = (GenMask)(rng.next_u64() % (GenMask(1) << std::min<std::size_t>(z.n, 4)));
        for (std::size_t j = 0; j < z.lie.dim; ++j)
            if (rng.next_u64() % 3 == 0) k.de.push_back((std::uint8_t)j);
        std::sort(k.de.begin(), k.de.end());
        Polynomial p(z.n);
        Monomial mono(z.n, 0);
        mono[rng.next_u64() % z.n] = (std::uint32_t)(rng.next_u64() % 3);
        p.add_term(mono, rng.next_rational());
        f.add(k, p);
    }
    return f;
}

VectorFieldOnZ random_field(CounterRng& rng, const QuasiSmoothSpace& z) {
    VectorFieldOnZ x;
    x.smooth.assign(z.n, SuperFunction(z.n, z.lie.dim));
    x.contraction.assign(z.lie.dim, SuperFunction(z.n, z.lie.dim));
    for (auto& v : x.smooth) {
        Polynomial p(z.n);
        Monomial mono(z.n, 0);
        mono[rng.next_u64() % z.n] = (std::uint32_t)(rng.next_u64() % 2);
        p.add_term(mono, rng.next_rational(3, 2));
        v = SuperFunction::scalar(p, z.lie.dim);
    }
    for (auto& c : x.contraction)
        c = SuperFunction::constant(rng.next_rational(3, 2), z.n, z.lie.dim);
    return x;
}

}  // namespace

TEST_CASE("generator sign table") {
    QuasiSmoothSpace z = body();
    DerivedForm e1 = gen(z, Gen::E, 0), e2 = gen(z, Gen::E, 1);
    DerivedForm dx1 = gen(z, Gen::dx, 0), dx2 = gen(z, Gen::dx, 1);
    DerivedForm de1 = gen(z, Gen::dE, 0), de2 = gen(z, Gen::dE, 1);

    REQUIRE(e1 * e2 == -(e2 * e1));
    REQUIRE(dx1 * dx2 == -(dx2 * dx1));
    REQUIRE(de1 * de2 == de2 * de1);
    REQUIRE((de1 * de1).is_zero() == false);  // dE generators are even, repeats allowed
    REQUIRE(e1 * dx1 == dx1 * e1);
    REQUIRE(e1 * de1 == -(de1 * e1));
    REQUIRE(dx1 * de1 == -(de1 * dx1));
    REQUIRE((e1 * e1).is_zero());
    REQUIRE((dx1 * dx1).is_zero());
}

TEST_CASE("de Rham differential") {
    QuasiSmoothSpace z = circle();
    auto pol = [&](const std::string& s) {
        return DerivedForm::from_superfunction(z.scalar(parse_polynomial(s, z.variables)));
    };

    SECTION("Leibniz on x y") {
        DerivedForm d = derham_d(z, pol("x*y"));
        DerivedForm want =
            parse_polynomial("y", z.variables) * gen(z, Gen::dx, 0) +
            parse_polynomial("x", z.variables) * gen(z, Gen::dx, 1);
        REQUIRE(d == want);
    }
    SECTION("generator rules") {
        DerivedForm e1 = DerivedForm::from_superfunction(z.generator(0));
        REQUIRE(derham_d(z, e1) == gen(z, Gen::dE, 0));
        REQUIRE(derham_d(z, gen(z, Gen::dE, 0)).is_zero());
        REQUIRE(derham_d(z, gen(z, Gen::dx, 0)).is_zero());
    }
    SECTION("product rule sample: d(x E_1) = dx E_1 + x dE_1") {
        DerivedForm xe = pol("x") * DerivedForm::from_superfunction(z.generator(0));
        DerivedForm d = derham_d(z, xe);
        DerivedForm want = gen(z, Gen::dx, 0) * DerivedForm::from_superfunction(z.generator(0)) +
                           parse_polynomial("x", z.variables) * gen(z, Gen::dE, 0);
        REQUIRE(d == want);
    }
}

TEST_CASE("inner differential") {
    QuasiSmoothSpace z = circle();

    SECTION("delta(dE_1) = d mu = x dx + y dy") {
        DerivedForm d = form_inner_delta(z, gen(z, Gen::dE, 0));
        DerivedForm want = parse_polynomial("x", z.variables) * gen(z, Gen::dx, 0) +
                           parse_polynomial("y", z.variables) * gen(z, Gen::dx, 1);
        REQUIRE(d == want);
    }
    SECTION("delta kills dx and x") {
        REQUIRE(form_inner_delta(z, gen(z, Gen::dx, 0)).is_zero());
        DerivedForm x = DerivedForm::from_superfunction(
            z.scalar(parse_polynomial("x", z.variables)));
        REQUIRE(form_inner_delta(z, x).is_zero());
    }
    SECTION("delta extends the koszul differential on 0-forms") {
        CounterRng rng(41);
        QuasiSmoothSpace b = body();
        for (int i = 0; i < 30; ++i) {
            // random 0-form
            SuperFunction f(b.n, b.lie.dim);
            f.add((GenMask)(rng.next_u64() % 8), Polynomial::variable(rng.next_u64() % 6, 6));
            DerivedForm df = form_inner_delta(b, DerivedForm::from_superfunction(f));
            REQUIRE(df.zero_form_part() == b.koszul_delta(f));
            REQUIRE(df == DerivedForm::from_superfunction(b.koszul_delta(f)));
        }
    }
}

TEST_CASE("d^2 = 0, delta^2 = 0, and the two commute") {
    for (auto name : {"s1_r2", "so3_cotangent_r3", "t2_c2"}) {
        QuasiSmoothSpace z = builtin_example(name).space.z;
        CounterRng rng(59);
        for (int i = 0; i < 200; ++i) {
            DerivedForm f = random_form(rng, z);
            REQUIRE(derham_d(z, derham_d(z, f)).is_zero());
            REQUIRE(form_inner_delta(z, form_inner_delta(z, f)).is_zero());
            REQUIRE(derham_d(z, form_inner_delta(z, f)) ==
                    form_inner_delta(z, derham_d(z, f)));
        }
    }
}

TEST_CASE("both differentials commute on E_1 explicitly") {
    QuasiSmoothSpace z = circle();
    DerivedForm e1 = DerivedForm::from_superfunction(z.generator(0));
    REQUIRE((derham_d(z, form_inner_delta(z, e1)) -
             form_inner_delta(z, derham_d(z, e1)))
                .is_zero());
}

TEST_CASE("contractions") {
    QuasiSmoothSpace z = circle();
    VectorFieldOnZ ddx{{z.scalar(Polynomial::constant(1, z.n)), SuperFunction(z.n, 1)},
                       {SuperFunction(z.n, 1)}};
    VectorFieldOnZ sigma{{SuperFunction(z.n, 1), SuperFunction(z.n, 1)},
                         {z.scalar(Polynomial::constant(1, z.n))}};

    SECTION("iota_{d/dx}(dx ^ dy) = dy") {
        DerivedForm w = gen(z, Gen::dx, 0) * gen(z, Gen::dx, 1);
        REQUIRE(contract(z, ddx, w) == gen(z, Gen::dx, 1));
    }
    SECTION("dual pairings of generators") {
        REQUIRE(contract(z, sigma, gen(z, Gen::dE, 0)) ==
                DerivedForm::from_superfunction(SuperFunction::constant(1, z.n, 1)));
        REQUIRE(contract(z, sigma, gen(z, Gen::dx, 0)).is_zero());
        REQUIRE(contract(z, ddx, gen(z, Gen::dE, 0)).is_zero());
    }
    SECTION("contracting a 0-form is an error") {
        DerivedForm f = DerivedForm::from_superfunction(z.generator(0));
        REQUIRE_THROWS_AS(contract(z, ddx, f), std::invalid_argument);
    }
    SECTION("linearity over coefficients: iota_{fX} = f iota_X") {
        CounterRng rng(71);
        QuasiSmoothSpace b = body();
        for (int i = 0; i < 20; ++i) {
            VectorFieldOnZ x = random_field(rng, b);
            DerivedForm w = random_form(rng, b);
            if (w.max_form_degree() == 0) continue;
            Polynomial fpol = Polynomial::variable(rng.next_u64() % b.n, b.n);
            VectorFieldOnZ fx = x;
            for (auto& v : fx.smooth) v = fpol * v;
            for (auto& c : fx.contraction) c = fpol * c;
            REQUIRE(contract(b, fx, w) == fpol * contract(b, x, w));
        }
    }
}

TEST_CASE("cartan formula reproduces the vector field action on functions") {
    for (auto name : {"s1_r2", "so3_cotangent_r3"}) {
        QuasiSmoothSpace z = builtin_example(name).space.z;
        CounterRng rng(83);
        for (int i = 0; i < 40; ++i) {
            VectorFieldOnZ x = random_field(rng, z);
            SuperFunction f(z.n, z.lie.dim);
            f.add((GenMask)(rng.next_u64() % (GenMask(1) << z.lie.dim)),
                  Polynomial::variable(rng.next_u64() % z.n, z.n));
            DerivedForm lf = lie_derivative(z, x, DerivedForm::from_superfunction(f));
            REQUIRE(lf == DerivedForm::from_superfunction(x.apply(z, f)));
        }
    }
}

TEST_CASE("closure ingredients: d omega = 0 and delta omega = 0") {
    for (auto name : {"s1_r2", "so3_cotangent_r3", "t2_c2", "trivial_group"}) {
        HamiltonianSpace h = builtin_example(name).space;
        DerivedForm w = omega_form(h.z, h.omega);
        REQUIRE(derham_d(h.z, w).is_zero());
        REQUIRE(form_inner_delta(h.z, w).is_zero());
    }
}
