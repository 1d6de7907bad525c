#pragma once

#include "dgred/config.hpp"
#include "dgred/derived_form.hpp"
#include "dgred/numeric_checks.hpp"
#include "dgred/version.hpp"

#include <chrono>
#include <string>
#include <vector>

namespace dgred {

/// Identity catalogue: check_id -> the identity it verifies. The same
/// strings are documented in docs/identities.md and quoted verbatim in
/// report rows.
inline std::string identity_for(const std::string& check_id) {
    static const std::map<std::string, std::string> catalogue = {
        {"lie.antisymmetry", "c^k_ij = -c^k_ji"},
        {"lie.jacobi", "sum_m (c^m_ij c^l_mk + c^m_jk c^l_mi + c^m_ki c^l_mj) = 0"},
        {"lie.rep_bracket", "[A_i, A_j] = sum_k c^k_ij A_k"},
        {"ham.omega_shape", "omega^T = -omega, det(omega) != 0"},
        {"ham.omega_invariance", "A_i^T omega + omega A_i = 0"},
        {"ham.hamilton", "iota_{E_i#} omega = d mu^i"},
        {"ham.pairing", "omega(E_i#, E_j#) = mu^{[E_i, E_j]}"},
        {"ham.equivariance", "E_i#(mu^j) = (ad*_{E_i} mu)^j"},
        {"koszul.square_zero", "iota_mu o iota_mu = 0 on C(Z)"},
        {"derham.d_square_zero", "d o d = 0 on derived forms"},
        {"derham.delta_square_zero", "iota_mu o iota_mu = 0 on derived forms"},
        {"derham.d_delta_commute", "d o iota_mu = iota_mu o d"},
        {"derham.cartan", "d iota_X + iota_X d = X on functions"},
        {"modules.tangent_square_zero", "delta_{T_Z}^2 = 0"},
        {"modules.cotangent_square_zero", "delta_{T*_Z}^2 = 0"},
        {"modules.pairing_chain",
         "<delta v, xi> - (-1)^(deg v) <v, delta xi> = iota_mu <v, xi>"},
        {"anchor.chain_map", "delta_{T_Z} o rho = rho o delta_{g_Z}"},
        {"alpha.structure",
         "alpha kills the base tangent block; alpha* kills the base cotangent block"},
        {"alpha.star_chain_map", "delta_g o alpha* + alpha* o delta_{T*_Z} = 0"},
        {"alpha.homotopy",
         "delta_{g*} o alpha + alpha o delta_{T_Z} = (alpha sign) dmu"},
        {"total.tangent_square_zero", "delta_{Tot(T_{Z/G})}^2 = 0"},
        {"total.cotangent_square_zero", "delta_{Tot(T*_{Z/G})}^2 = 0"},
        {"theorem.identity_hamilton", "(iota* omega)^flat rho_0 = dmu* alpha*"},
        {"theorem.identity_dual", "alpha dmu = rho_0* (iota* omega)^flat"},
        {"theorem.identity_homotopy", "alpha eta = eta* alpha*"},
        {"theorem.chain_map",
         "omega_red^flat delta_{Tot(T_{Z/G})} = delta_{Tot(T*_{Z/G})} omega_red^flat"},
        {"theorem.routes_agree",
         "componentwise identities <=> full chain-map commutation"},
        {"theorem.inverse", "omega_red^flat is a two-sided isomorphism"},
        {"theorem.equivariance",
         "L_{E_k} commutes with both total differentials and omega_red^flat"},
        {"closure.d_omega", "d omega = 0"},
        {"closure.delta_omega", "iota_mu omega = 0"},
        {"closure.exact_reduction",
         "(s* - t*) iota*_Z omega = iota_mu d theta (base-level reduction)"},
        {"closure.numeric", "(s* - t*) iota*_Z omega = iota_mu d theta (sampled)"},
        {"mult.theta_simplicial", "d_1* theta = d_0* theta + d_2* theta (sampled)"},
        {"mult.ad_cocycle", "Ad_{(g1 g2)^{-1}} = Ad_{g2^{-1}} Ad_{g1^{-1}} (sampled)"},
        {"reduced.unit_pullback", "u* d theta = 0"},
        {"equiv.pushforward", "rep(Ad_{g^{-1}} X) = g^{-1} rep(X) g (sampled)"},
        {"equiv.coadjoint", "ad*_{Ad_{g^{-1}} X} = Ad*_{g^{-1}} ad*_X Ad*_g (sampled)"},
        {"equiv.omega_invariance", "g^T omega g = omega (sampled)"},
        {"point.in_zero_set", "mu(m) = 0"},
        {"point.koszul_cohomology", "fiber Koszul cohomology dimensions"},
        {"point.tangent_complex", "T_m M --D_m mu--> g* kernel/cokernel dimensions"},
        {"point.classification", "regular iff D_m mu has full rank"},
    };
    auto it = catalogue.find(check_id);
    return it == catalogue.end() ? "" : it->second;
}

inline std::map<std::string, std::string> sign_convention_record() {
    return {
        {"coadjoint", "ad*_X = -(ad_X)^T, so <ad*_X s, Y> = -<s, [X, Y]>"},
        {"module_shift",
         "[n] shift multiplies matrix entries of degree e by (-1)^(n(e+1)); module action "
         "twisted so the standard Leibniz rule holds"},
        {"eta", "eta(e_j) = sum_l [E_j, E_l] (x) iota_sigma_l"},
        {"alpha_contraction_block", "alpha(iota_sigma_l) = -s_l in the twisted basis"},
        {"form_commutation", "(-1)^(p p' + q q') componentwise on (form, derived) bidegrees"},
        {"contraction_slot", "iota_V omega contracts the first slot"},
    };
}

struct SuiteOptions {
    std::size_t samples = 100;
    std::uint64_t seed = 0;
    double tol = 1e-8;
    std::vector<std::string> checks;  // substring filters; empty = run everything
};

struct PointAnalysis {
    std::string label;
    bool in_zero_set = false;
    std::vector<Rational> mu_values;
    std::map<int, std::size_t> koszul_cohomology;
    std::size_t kernel_dim = 0, cokernel_dim = 0;
    bool regular = false;
};

/// Pointwise analysis at a configured zero-set point: fiberwise Koszul
/// cohomology, the Jacobian two-term tangent complex, and the
/// regular/singular classification (full-rank Jacobian iff regular).
inline PointAnalysis analyze_point(const HamiltonianSpace& h, const std::string& label,
                                   std::span<const Rational> m) {
    PointAnalysis out;
    out.label = label;
    out.mu_values = h.z.mu_at(m);
    out.in_zero_set = h.z.in_zero_set(m);
    if (!out.in_zero_set) {
        std::string vals;
        for (const auto& x : out.mu_values) vals += (vals.empty() ? "" : ", ") + to_string(x);
        throw std::invalid_argument("analyze_point: '" + label +
                                    "' is not in the zero set, mu = (" + vals + ")");
    }
    FreeGradedModule unit = FreeGradedModule::trivial({"1"}, 0);
    DgModule u{unit, BlockMap(unit, unit, 1, h.z.n, h.d())};
    out.koszul_cohomology = pointwise_cohomology(u, h.z.mu, m);
    auto ptc = point_tangent_complex(h.z, m);
    out.kernel_dim = ptc.kernel_dim;
    out.cokernel_dim = ptc.cokernel_dim;
    out.regular = bareiss_rank(ptc.jacobian) == h.d();
    return out;
}

namespace detail {

inline SuperFunction random_suite_sf(CounterRng& rng, const QuasiSmoothSpace& z) {
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

inline DerivedForm random_suite_form(CounterRng& rng, const QuasiSmoothSpace& z) {
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

}  // namespace detail

/// The artifact does not carry symbolic forms on G; d theta is represented
/// structurally by its term shapes. In a left-invariant frame,
///   d theta = sum_i (d theta_i (x) E_i  +  theta_i (x) dE_i),
/// with theta_i one-forms on G. Each term records how many of its form legs
/// live along G.
struct ThetaTermShape {
    std::size_t generator;  // which E_i the term is attached to
    int g_form_legs;        // form legs along G
    int de_legs;            // derived dE legs
};

inline std::vector<ThetaTermShape> dtheta_term_shapes(std::size_t d) {
    std::vector<ThetaTermShape> terms;
    terms.reserve(2 * d);
    for (std::size_t i = 0; i < d; ++i) {
        terms.push_back({i, 2, 0});  // d theta_i (x) E_i
        terms.push_back({i, 1, 1});  // theta_i (x) dE_i
    }
    return terms;
}

/// u: Z -> G x Z embeds at the constant identity of G, so the pullback of
/// any term with at least one form leg along G is zero. u* d theta = 0 iff
/// no term is purely Z-legged.
inline bool unit_pullback_dtheta_vanishes(std::size_t d) {
    for (const auto& term : dtheta_term_shapes(d))
        if (term.g_form_legs == 0) return false;
    return true;
}

/// Runs every check of the verification suite on one space and assembles
/// the report document. Deterministic for fixed (config, options).
inline ReportDocument run_suite(const LoadedSpace& loaded, const SuiteOptions& opt = {}) {
    auto t0 = std::chrono::steady_clock::now();
    const HamiltonianSpace& h = loaded.example.space;
    const QuasiSmoothSpace& z = h.z;

    ReportDocument doc;
    doc.tool_version = kVersion;
    doc.example = h.name;
    doc.config_hash = loaded.config_hash;
    doc.seed = opt.seed;
    doc.samples = opt.samples;
    doc.tolerance = opt.tol;
    doc.sign_conventions = sign_convention_record();

    auto wanted = [&](const std::string& id) {
        if (opt.checks.empty()) return true;
        for (const auto& f : opt.checks)
            if (id.find(f) != std::string::npos) return true;
        return false;
    };
    auto push = [&](CheckRow row) {
        if (row.identity.empty()) row.identity = identity_for(row.check_id);
        if (wanted(row.check_id)) doc.rows.push_back(std::move(row));
    };

    // Lie algebra axioms
    auto lie = check_lie_axioms(z.lie);
    push(CheckRow::exact("lie.antisymmetry", lie.antisymmetry_ok, "", lie.antisymmetry_witness));
    push(CheckRow::exact("lie.jacobi", lie.jacobi_ok, "", lie.jacobi_witness));
    push(CheckRow::exact("lie.rep_bracket", lie.rep_ok, "", lie.rep_witness));

    // Hamiltonian structure
    auto v = validate_hamiltonian(h);
    push(CheckRow::exact("ham.omega_shape", v.omega_shape.ok, "", v.omega_shape.witness));
    push(CheckRow::exact("ham.omega_invariance", v.omega_invariance.ok, "",
                         v.omega_invariance.witness));
    push(CheckRow::exact("ham.hamilton", v.hamilton.ok, "", v.hamilton.witness));
    push(CheckRow::exact("ham.pairing", v.pairing.ok, "", v.pairing.witness));
    push(CheckRow::exact("ham.equivariance", v.equivariance.ok, "", v.equivariance.witness));

    // Koszul differential squares to zero (generators + random elements)
    {
        bool ok = true;
        std::string witness;
        for (std::size_t j = 0; j < h.d() && ok; ++j) {
            SuperFunction r = z.koszul_delta(z.koszul_delta(z.generator(j)));
            if (!r.is_zero()) {
                ok = false;
                witness = "delta^2(E_" + std::to_string(j + 1) + ") != 0";
            }
        }
        CounterRng rng(opt.seed ^ 0x11u);
        for (int i = 0; i < 200 && ok; ++i) {
            SuperFunction f = detail::random_suite_sf(rng, z);
            if (!z.koszul_delta(z.koszul_delta(f)).is_zero()) {
                ok = false;
                witness = "delta^2 != 0 on a random element";
            }
        }
        push(CheckRow::exact("koszul.square_zero", ok, "", witness));
    }

    // de Rham layer
    {
        bool d2 = true, i2 = true, comm = true;
        CounterRng rng(opt.seed ^ 0x22u);
        for (int i = 0; i < 200 && d2 && i2 && comm; ++i) {
            DerivedForm f = detail::random_suite_form(rng, z);
            if (!derham_d(z, derham_d(z, f)).is_zero()) d2 = false;
            if (!form_inner_delta(z, form_inner_delta(z, f)).is_zero()) i2 = false;
            if (derham_d(z, form_inner_delta(z, f)) != form_inner_delta(z, derham_d(z, f)))
                comm = false;
        }
        push(CheckRow::exact("derham.d_square_zero", d2, ""));
        push(CheckRow::exact("derham.delta_square_zero", i2, ""));
        push(CheckRow::exact("derham.d_delta_commute", comm, ""));

        bool cartan = true;
        CounterRng rng2(opt.seed ^ 0x33u);
        for (int i = 0; i < 50 && cartan; ++i) {
            VectorFieldOnZ x;
            x.smooth.assign(z.n, SuperFunction(z.n, z.lie.dim));
            x.contraction.assign(z.lie.dim, SuperFunction(z.n, z.lie.dim));
            for (auto& s : x.smooth)
                s = SuperFunction::scalar(
                    Polynomial::constant(rng2.next_rational(3, 2), z.n), z.lie.dim);
            for (auto& c : x.contraction)
                c = SuperFunction::constant(rng2.next_rational(3, 2), z.n, z.lie.dim);
            SuperFunction f = detail::random_suite_sf(rng2, z);
            DerivedForm lf = lie_derivative(z, x, DerivedForm::from_superfunction(f));
            if (lf != DerivedForm::from_superfunction(x.apply(z, f))) cartan = false;
        }
        push(CheckRow::exact("derham.cartan", cartan, ""));
    }

    // tangent / cotangent modules
    DgModule t = tangent_module(z), ts = cotangent_module(z);
    {
        auto sz1 = verify_square_zero(t, z.mu, z.variables);
        auto sz2 = verify_square_zero(ts, z.mu, z.variables);
        auto pair = verify_pairing_chain(z, t, ts);
        push(CheckRow::exact("modules.tangent_square_zero", sz1.ok, "", sz1.witness));
        push(CheckRow::exact("modules.cotangent_square_zero", sz2.ok, "", sz2.witness));
        push(CheckRow::exact("modules.pairing_chain", pair.ok, "", pair.witness));
    }

    // Anchor, totals, theorem -- only when the structure validates
    if (v.all_ok()) {
        TotalComplexes tc = build_total_complexes(h);
        push(CheckRow::exact("anchor.chain_map", tc.rho.chain.ok, "", tc.rho.chain.witness));
        AlphaMaps am = alpha_maps(h);
        push(CheckRow::exact("alpha.structure", am.structure.ok, "", am.structure.witness));
        push(CheckRow::exact("alpha.star_chain_map", am.alpha_star_chain.ok, "",
                             am.alpha_star_chain.witness));
        push(CheckRow::exact("alpha.homotopy", am.alpha_homotopy.ok, "",
                             am.alpha_homotopy.witness));
        auto sz1 = verify_square_zero(tc.tot_t, z.mu, z.variables);
        auto sz2 = verify_square_zero(tc.tot_tstar, z.mu, z.variables);
        push(CheckRow::exact("total.tangent_square_zero", sz1.ok, "", sz1.witness));
        push(CheckRow::exact("total.cotangent_square_zero", sz2.ok, "", sz2.witness));

        TheoremReport thm = verify_theorem(h, tc);
        push(CheckRow::exact("theorem.identity_hamilton", thm.identity_hamilton.ok, "",
                             thm.identity_hamilton.witness));
        push(CheckRow::exact("theorem.identity_dual", thm.identity_dual.ok, "",
                             thm.identity_dual.witness));
        push(CheckRow::exact("theorem.identity_homotopy", thm.identity_homotopy.ok, "",
                             thm.identity_homotopy.witness));
        push(CheckRow::exact("theorem.chain_map", thm.chain_map.ok, "", thm.chain_map.witness));
        push(CheckRow::exact("theorem.routes_agree", thm.routes_agree.ok, "",
                             thm.routes_agree.witness));
        push(CheckRow::exact("theorem.inverse", thm.inverse.ok, "", thm.inverse.witness));
        push(CheckRow::exact("theorem.equivariance", thm.equivariance.ok, "",
                             thm.equivariance.witness));
    } else {
        const char* reason = "hamiltonian validation failed";
        for (const char* id : {"anchor.chain_map", "alpha.structure", "alpha.star_chain_map",
                               "alpha.homotopy", "total.tangent_square_zero",
                               "total.cotangent_square_zero", "theorem.identity_hamilton",
                               "theorem.identity_dual", "theorem.identity_homotopy",
                               "theorem.chain_map", "theorem.routes_agree", "theorem.inverse",
                               "theorem.equivariance"})
            push(CheckRow::skipped(id, CheckKind::exact, reason, ""));
    }

    // closure: exact base-level reductions plus the sampled identity
    {
        DerivedForm w = omega_form(z, h.omega);
        push(CheckRow::exact("closure.d_omega", derham_d(z, w).is_zero(), ""));
        push(CheckRow::exact("closure.delta_omega", form_inner_delta(z, w).is_zero(), ""));
        bool reduction = v.hamilton.ok && v.pairing.ok;
        push(CheckRow::exact("closure.exact_reduction", reduction, "",
                             reduction ? "" : "hamilton/pairing identities failed"));
        auto res = check_closure_numeric(h, opt.samples, opt.seed);
        if (res.skipped)
            push(CheckRow::skipped("closure.numeric", CheckKind::numeric, res.skip_reason, ""));
        else
            push(CheckRow::numeric("closure.numeric", res.max_residual, opt.tol, ""));
    }

    // multiplicativity
    {
        auto res = check_multiplicativity_numeric(h, opt.samples, opt.seed);
        if (res.skipped) {
            push(CheckRow::skipped("mult.theta_simplicial", CheckKind::numeric, res.skip_reason,
                                   ""));
            push(CheckRow::skipped("mult.ad_cocycle", CheckKind::numeric, res.skip_reason, ""));
        } else {
            push(CheckRow::numeric("mult.theta_simplicial", res.max_residual, opt.tol, ""));
            push(CheckRow::numeric("mult.ad_cocycle", res.max_residual, opt.tol, ""));
        }
    }

    // reduction property u* d theta = 0: every term of d theta carries a
    // G-form leg
    push(CheckRow::exact("reduced.unit_pullback", unit_pullback_dtheta_vanishes(h.d()), ""));

    // finite equivariance
    {
        auto res = check_equivariance_finite(h, opt.samples, opt.seed);
        auto emit = [&](const char* id, const NumericCheck& c) {
            if (c.skipped)
                push(CheckRow::skipped(id, CheckKind::numeric, c.skip_reason, ""));
            else
                push(CheckRow::numeric(id, c.max_residual, opt.tol, ""));
        };
        emit("equiv.pushforward", res.pushforward);
        emit("equiv.coadjoint", res.coadjoint);
        emit("equiv.omega_invariance", res.omega_invariance);
    }

    // configured points
    for (const auto& p : loaded.example.points) {
        std::string prefix = "point." + p.label;
        if (!h.z.in_zero_set(p.coords)) {
            std::string vals;
            for (const auto& x : h.z.mu_at(p.coords))
                vals += (vals.empty() ? "" : ", ") + to_string(x);
            push(CheckRow::exact(prefix + ".in_zero_set", false,
                                 identity_for("point.in_zero_set"), "mu = (" + vals + ")"));
            continue;
        }
        PointAnalysis pa = analyze_point(h, p.label, p.coords);
        push(CheckRow::exact(prefix + ".in_zero_set", true, identity_for("point.in_zero_set")));
        std::string dims;
        for (const auto& [deg, dim] : pa.koszul_cohomology)
            if (dim > 0) dims += (dims.empty() ? "" : ", ") + ("H^" + std::to_string(deg) +
                                                               "=" + std::to_string(dim));
        CheckRow kos = CheckRow::exact(prefix + ".koszul_cohomology", true,
                                       identity_for("point.koszul_cohomology"));
        kos.witness = dims.empty() ? "acyclic" : dims;
        push(std::move(kos));
        CheckRow tcx = CheckRow::exact(prefix + ".tangent_complex", true,
                                       identity_for("point.tangent_complex"));
        tcx.witness = "ker=" + std::to_string(pa.kernel_dim) +
                      ", coker=" + std::to_string(pa.cokernel_dim);
        push(std::move(tcx));
        CheckRow cls = CheckRow::exact(prefix + ".classification", true,
                                       identity_for("point.classification"));
        cls.witness = pa.regular ? "regular" : "singular";
        push(std::move(cls));
    }

    doc.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return doc;
}

inline ReportDocument run_suite(const std::string& name_or_path, const SuiteOptions& opt = {}) {
    return run_suite(load_space(name_or_path), opt);
}

}  // namespace dgred
