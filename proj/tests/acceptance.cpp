// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances and sample counts are pinned here, not configurable.

#include "dgred/suite.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

using namespace dgred;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& title, const std::function<bool()>& body,
               double time_budget_seconds = 0.0) {
    bool ok = false;
    std::string error;
    auto t0 = std::chrono::steady_clock::now();
    try {
        ok = body();
    } catch (const std::exception& e) {
        error = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ok && time_budget_seconds > 0.0 && secs > time_budget_seconds) {
        ok = false;
        error = "exceeded time budget of " + std::to_string(time_budget_seconds) + "s";
    }
    std::printf("[%s] criterion %d: %s (%.2fs)%s\n", ok ? "PASS" : "FAIL", number, title.c_str(),
                secs, error.empty() ? "" : ("  error: " + error).c_str());
    if (!ok) ++g_failures;
}

bool expect(bool cond, const std::string& what) {
    if (!cond) std::printf("       failed: %s\n", what.c_str());
    return cond;
}

const std::vector<std::string> kAll = {"s1_r2", "s1_r2_shifted", "so3_cotangent_r3", "t2_c2",
                                       "trivial_group"};

SuperFunction random_sf(CounterRng& rng, const QuasiSmoothSpace& z) {
    SuperFunction f(z.n, z.lie.dim);
    for (int t = 0; t < 4; ++t) {
        GenMask m = (GenMask)(rng.next_u64() % (GenMask(1) << z.lie.dim));
        Polynomial p(z.n);
        Monomial mono(z.n, 0);
        mono[rng.next_u64() % z.n] = (std::uint32_t)(rng.next_u64() % 3);
        p.add_term(mono, rng.next_rational());
        f.add(m, p);
    }
    return f;
}

DerivedForm random_form(CounterRng& rng, const QuasiSmoothSpace& z) {
    DerivedForm f(z.n, z.lie.dim);
    for (int t = 0; t < 4; ++t) {
        FormKey k;
        k.e = (GenMask)(rng.next_u64() % (GenMask(1) << z.lie.dim));
        k.dx = (GenMask)(rng.next_u64() % (GenMask(1) << std::min<std::size_t>(z.n, 4)));
        for (std::size_t j = 0; j < z.lie.dim; ++j)
            if (rng.next_u64() % 3 == 0) k.de.push_back((std::uint8_t)j);
        std::sort(k.de.begin(), k.de.end());
        Polynomial p(z.n);
        Monomial mono(z.n, 0);
        mono[rng.next_u64() % z.n] = (std::uint32_t)(rng.next_u64() % 2);
        p.add_term(mono, rng.next_rational(5, 3));
        f.add(k, p);
    }
    return f;
}
const std::vector<std::string> kTheorem = {"s1_r2", "s1_r2_shifted", "t2_c2",
                                           "so3_cotangent_r3"};

// --- independent oracle for criterion 7 -----------------------------------
// Koszul fiber of the unit module, assembled from scratch: basis Lambda g
// enumerated by subset masks, differential delta(E_S) = sum_{j in S}
// (-1)^{#{i in S : i < j}} mu^j(m) E_{S \ j}. Rank by plain rational
// Gaussian elimination (not Bareiss).
std::size_t oracle_rank(std::vector<std::vector<Rational>> m) {
    std::size_t rank = 0;
    std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[rank]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][c] == 0) continue;
            Rational f = m[r][c] / m[rank][c];
            for (std::size_t cc = c; cc < cols; ++cc) m[r][cc] -= f * m[rank][cc];
        }
        ++rank;
    }
    return rank;
}

std::map<int, std::size_t> oracle_koszul_cohomology(const QuasiSmoothSpace& z,
                                                    std::span<const Rational> point) {
    const std::size_t d = z.lie.dim;
    std::vector<Rational> mu_val(d);
    for (std::size_t j = 0; j < d; ++j) mu_val[j] = z.mu[j].eval(point);
    const std::size_t dim = std::size_t(1) << d;
    std::vector<std::vector<Rational>> full(dim, std::vector<Rational>(dim, Rational(0)));
    for (std::size_t s = 0; s < dim; ++s) {
        int before = 0;
        for (std::size_t j = 0; j < d; ++j) {
            if (!(s & (std::size_t(1) << j))) continue;
            Rational v = (before % 2 == 0) ? mu_val[j] : -mu_val[j];
            full[s ^ (std::size_t(1) << j)][s] += v;
            ++before;
        }
    }
    // split by degree -|S|
    std::map<int, std::vector<std::size_t>> by_deg;
    for (std::size_t s = 0; s < dim; ++s) by_deg[-(int)std::popcount(s)].push_back(s);
    auto block_rank = [&](int deg) -> std::size_t {
        if (!by_deg.count(deg) || !by_deg.count(deg + 1)) return 0;
        const auto& src = by_deg[deg];
        const auto& tgt = by_deg[deg + 1];
        std::vector<std::vector<Rational>> b(tgt.size(), std::vector<Rational>(src.size()));
        for (std::size_t c = 0; c < src.size(); ++c)
            for (std::size_t r = 0; r < tgt.size(); ++r) b[r][c] = full[tgt[r]][src[c]];
        return oracle_rank(std::move(b));
    };
    std::map<int, std::size_t> h;
    for (const auto& [deg, idx] : by_deg)
        h[deg] = idx.size() - block_rank(deg) - block_rank(deg - 1);
    return h;
}

}  // namespace

int main() {
    criterion(1, "exactness suite: koszul^2, d^2, delta^2, d delta = delta d, totals", [] {
        bool ok = true;
        for (const auto& name : kAll) {
            HamiltonianSpace h = builtin_example(name).space;
            const QuasiSmoothSpace& z = h.z;
            CounterRng rng(1);
            for (int i = 0; i < 200 && ok; ++i) {
                SuperFunction f = random_sf(rng, z);
                ok = expect(z.koszul_delta(z.koszul_delta(f)).is_zero(),
                            name + ": koszul delta^2 != 0");
            }
            for (int i = 0; i < 200 && ok; ++i) {
                DerivedForm w = random_form(rng, z);
                ok = ok && expect(derham_d(z, derham_d(z, w)).is_zero(), name + ": d^2 != 0");
                ok = ok && expect(form_inner_delta(z, form_inner_delta(z, w)).is_zero(),
                                  name + ": delta^2 != 0");
                ok = ok && expect(derham_d(z, form_inner_delta(z, w)) ==
                                      form_inner_delta(z, derham_d(z, w)),
                                  name + ": d delta != delta d");
            }
            TotalComplexes tc = build_total_complexes(h);
            ok = ok && expect(verify_square_zero(tc.tot_t, z.mu, z.variables).ok,
                              name + ": Tot(T) differential does not square to zero");
            ok = ok && expect(verify_square_zero(tc.tot_tstar, z.mu, z.variables).ok,
                              name + ": Tot(T*) differential does not square to zero");
        }
        return ok;
    }, 5.0);

    criterion(2, "main theorem: three identities, chain map, two-sided inverse", [] {
        bool ok = true;
        for (const auto& name : kTheorem) {
            HamiltonianSpace h = builtin_example(name).space;
            TotalComplexes tc = build_total_complexes(h);
            TheoremReport rep = verify_theorem(h, tc);
            ok = ok && expect(rep.identity_hamilton.ok, name + ": identity 1");
            ok = ok && expect(rep.identity_dual.ok, name + ": identity 2");
            ok = ok && expect(rep.identity_homotopy.ok, name + ": identity 3");
            ok = ok && expect(rep.chain_map.ok, name + ": chain map");
            ok = ok && expect(rep.routes_agree.ok, name + ": two verification routes");
            ok = ok && expect(rep.inverse.ok, name + ": inverse compositions");
            if (name == "so3_cotangent_r3")
                ok = ok && expect(rep.eta_nonzero, "so3 must exercise nonzero eta");
        }
        return ok;
    });

    criterion(3, "closure: exact reductions everywhere, sampled residual < 1e-8", [] {
        bool ok = true;
        for (const auto& name : kAll) {
            HamiltonianSpace h = builtin_example(name).space;
            auto v = validate_hamiltonian(h);
            ok = ok && expect(v.hamilton.ok && v.pairing.ok, name + ": exact reduction");
            DerivedForm w = omega_form(h.z, h.omega);
            ok = ok && expect(derham_d(h.z, w).is_zero(), name + ": d omega != 0");
        }
        for (const auto& name : {"s1_r2", "so3_cotangent_r3"}) {
            HamiltonianSpace h = builtin_example(name).space;
            auto r = check_closure_numeric(h, 100, 0);
            ok = ok && expect(!r.skipped && r.samples >= 100, std::string(name) + ": samples");
            ok = ok && expect(r.max_residual < 1e-8,
                              std::string(name) + ": closure residual " +
                                  std::to_string(r.max_residual));
        }
        return ok;
    }, 2.0);

    criterion(4, "multiplicativity: Ad cocycle < 1e-9 on so3, exact for abelian", [] {
        HamiltonianSpace so3 = builtin_example("so3_cotangent_r3").space;
        auto r = check_multiplicativity_numeric(so3, 100, 0);
        bool ok = expect(!r.skipped && r.samples >= 100, "so3 sample count");
        ok = ok && expect(r.max_residual < 1e-9,
                          "so3 cocycle residual " + std::to_string(r.max_residual));
        for (const auto& name : {"s1_r2", "t2_c2"}) {
            HamiltonianSpace h = builtin_example(name).space;
            auto ab = check_multiplicativity_numeric(h, 100, 0);
            ok = ok && expect(ab.max_residual < 1e-13,
                              std::string(name) + ": abelian adjoint not exact");
        }
        return ok;
    });

    criterion(5, "reduction property: u* d theta = 0 on every example", [] {
        bool ok = true;
        for (const auto& name : kAll) {
            HamiltonianSpace h = builtin_example(name).space;
            ok = ok && expect(unit_pullback_dtheta_vanishes(h.d()), name);
        }
        return ok;
    });

    criterion(6, "equivariance: exact infinitesimal everywhere, finite < 1e-9 on so3", [] {
        bool ok = true;
        for (const auto& name : kAll) {
            HamiltonianSpace h = builtin_example(name).space;
            ok = ok && expect(validate_hamiltonian(h).equivariance.ok,
                              name + ": infinitesimal equivariance");
            TotalComplexes tc = build_total_complexes(h);
            ok = ok && expect(verify_theorem(h, tc).equivariance.ok,
                              name + ": operator-level equivariance");
        }
        HamiltonianSpace so3 = builtin_example("so3_cotangent_r3").space;
        auto r = check_equivariance_finite(so3, 100, 0);
        ok = ok && expect(r.pushforward.max_residual < 1e-9, "pushforward residual");
        ok = ok && expect(r.coadjoint.max_residual < 1e-9, "coadjoint residual");
        ok = ok && expect(r.omega_invariance.max_residual < 1e-9, "omega invariance residual");
        return ok;
    });

    criterion(7, "singularity detection with brute-force rank oracle agreement", [] {
        HamiltonianSpace shifted = builtin_example("s1_r2_shifted").space;
        std::vector<Rational> unit_x = {Rational(1), Rational(0)};
        PointAnalysis a = analyze_point(shifted, "unit_x", unit_x);
        bool ok = expect(a.regular, "(1,0) must be regular for the shifted circle");
        ok = ok && expect(a.kernel_dim == 1 && a.cokernel_dim == 0,
                          "shifted circle tangent dims must be (1, 0)");

        HamiltonianSpace circle = builtin_example("s1_r2").space;
        std::vector<Rational> origin = {Rational(0), Rational(0)};
        PointAnalysis b = analyze_point(circle, "origin", origin);
        ok = ok && expect(!b.regular, "(0,0) must be singular for the circle");
        ok = ok && expect(b.kernel_dim == 2 && b.cokernel_dim == 1,
                          "circle tangent dims must be (2, 1)");
        ok = ok && expect(!b.koszul_cohomology.empty() &&
                              b.koszul_cohomology.at(0) > 0 && b.koszul_cohomology.at(-1) > 0,
                          "fiber cohomology must be nonvanishing at the singular point");

        // oracle agreement plus vanishing off the zero set, on so3
        HamiltonianSpace so3 = builtin_example("so3_cotangent_r3").space;
        FreeGradedModule unit = FreeGradedModule::trivial({"1"}, 0);
        DgModule u{unit, BlockMap(unit, unit, 1, so3.z.n, so3.d())};
        CounterRng rng(5);
        int off_zero = 0;
        while (off_zero < 20 && ok) {
            std::vector<Rational> m(so3.z.n);
            for (auto& c : m) c = rng.next_rational(3, 2);
            if (so3.z.in_zero_set(m)) continue;
            ++off_zero;
            auto impl = pointwise_cohomology(u, so3.z.mu, m);
            auto orac = oracle_koszul_cohomology(so3.z, m);
            ok = ok && expect(impl == orac, "oracle disagreement off the zero set");
            for (const auto& [deg, dim] : impl)
                ok = ok && expect(dim == 0, "fiber cohomology must vanish off the zero set");
        }
        std::vector<Rational> aligned = {Rational(1), Rational(0), Rational(0),
                                         Rational(1), Rational(0), Rational(0)};
        auto impl = pointwise_cohomology(u, so3.z.mu, aligned);
        auto orac = oracle_koszul_cohomology(so3.z, aligned);
        ok = ok && expect(impl == orac, "oracle disagreement at the aligned point");
        PointAnalysis c = analyze_point(so3, "aligned", aligned);
        ok = ok && expect(!c.regular, "aligned q = p point must be singular (rank 2)");
        return ok;
    });

    criterion(8, "fault injection flips checks to fail, with witnesses", [] {
        SuiteOptions opt;
        opt.samples = 100;

        LoadedSpace rep_fault = load_space("so3_cotangent_r3");
        rep_fault.example.space.z.lie.rep[0](0, 1) += Rational(1, 1000);
        ReportDocument doc1 = run_suite(rep_fault, opt);
        bool ok = expect(!doc1.all_passed(), "rep perturbation must fail at least one check");
        bool witnessed = false;
        for (const auto& row : doc1.rows)
            if (row.status == CheckStatus::fail &&
                ((row.witness && !row.witness->empty()) || row.residual))
                witnessed = true;
        ok = ok && expect(witnessed, "rep perturbation failure must carry a witness");

        LoadedSpace sc_fault = load_space("so3_cotangent_r3");
        sc_fault.example.space.z.lie.structure(2, 0, 1) += 1;
        ReportDocument doc2 = run_suite(sc_fault, opt);
        ok = ok && expect(!doc2.all_passed(),
                          "structure constant perturbation must fail at least one check");
        witnessed = false;
        for (const auto& row : doc2.rows)
            if (row.status == CheckStatus::fail && row.witness && !row.witness->empty())
                witnessed = true;
        ok = ok && expect(witnessed, "structure constant failure must carry a witness");
        return ok;
    });

    criterion(9, "determinism: byte-identical JSON reports for equal config and seed", [] {
        SuiteOptions opt;
        opt.samples = 100;
        opt.seed = 42;
        std::string a = run_suite(load_space("so3_cotangent_r3"), opt).to_json().dump(2);
        std::string b = run_suite(load_space("so3_cotangent_r3"), opt).to_json().dump(2);
        return expect(a == b, "JSON reports differ between identical runs");
    });

    if (g_failures == 0) std::printf("acceptance: all 9 criteria passed\n");
    return g_failures == 0 ? 0 : 1;
}
