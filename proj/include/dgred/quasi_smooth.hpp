#pragma once

#include "dgred/graded_module.hpp"
#include "dgred/lie_algebra.hpp"

#include <span>
#include <string>
#include <vector>

namespace dgred {

/// The derived zero locus of mu: the base R^n with functions
/// C(Z) = Poly(x_1..x_n) (x) Lambda(E_1..E_d) and Koszul differential
/// delta(E_j) = mu^j.
struct QuasiSmoothSpace {
    std::size_t n = 0;
    std::vector<std::string> variables;
    LieAlgebra lie;
    std::vector<Polynomial> mu;  // one component per algebra generator

    std::size_t dim_g() const { return lie.dim; }

    SuperFunction scalar(const Polynomial& p) const {
        return SuperFunction::scalar(p, lie.dim);
    }
    SuperFunction generator(std::size_t j) const {
        return SuperFunction::generator(j, n, lie.dim);
    }

    /// Koszul differential on functions: odd derivation with
    /// delta(x_i) = 0, delta(E_j) = mu^j.
    SuperFunction koszul_delta(const SuperFunction& f) const {
        if (f.gdim() != lie.dim && !f.is_zero())
            throw std::invalid_argument("koszul_delta: function from another context");
        return koszul_delta_coeff(f, mu);
    }

    /// E_i-sharp = sum_{a,b} (A_i)_{ab} x_b d/dx_a, as polynomial
    /// coefficients of d/dx_a.
    Polynomial infinitesimal_coeff(std::size_t i, std::size_t a) const {
        Polynomial p(n);
        const RatMat& A = lie.rep.at(i);
        for (std::size_t b = 0; b < n; ++b) {
            if (A(a, b) == 0) continue;
            p += A(a, b) * Polynomial::variable(b, n);
        }
        return p;
    }

    /// Exact Jacobian D_m mu (d x n) at a rational point.
    RatMat jacobian_at(std::span<const Rational> m) const {
        RatMat j(lie.dim, n);
        for (std::size_t r = 0; r < lie.dim; ++r)
            for (std::size_t c = 0; c < n; ++c) j(r, c) = mu[r].partial(c).eval(m);
        return j;
    }

    std::vector<Rational> mu_at(std::span<const Rational> m) const {
        std::vector<Rational> v(lie.dim);
        for (std::size_t j = 0; j < lie.dim; ++j) v[j] = mu[j].eval(m);
        return v;
    }
    bool in_zero_set(std::span<const Rational> m) const {
        for (const auto& v : mu_at(m))
            if (v != 0) return false;
        return true;
    }
};

/// Degree-mixed vector field on Z: smooth part sum v_a d/dx_a plus
/// contraction part sum c_j iota_{sigma_j}; acts as a derivation on C(Z).
struct VectorFieldOnZ {
    std::vector<SuperFunction> smooth;       // size n
    std::vector<SuperFunction> contraction;  // size d

    SuperFunction apply(const QuasiSmoothSpace& z, const SuperFunction& f) const {
        SuperFunction out(z.n, z.lie.dim);
        for (std::size_t a = 0; a < smooth.size(); ++a) {
            if (smooth[a].is_zero()) continue;
            SuperFunction df(z.n, z.lie.dim);
            for (const auto& [mask, p] : f.components()) df.add(mask, p.partial(a));
            out = out + smooth[a] * df;
        }
        for (std::size_t j = 0; j < contraction.size(); ++j) {
            if (contraction[j].is_zero()) continue;
            out = out + contraction[j] * f.contract_sigma(j);
        }
        return out;
    }
};

/// Trivial dg-modules over C(Z): basis in degree 0, zero matrix part (the
/// differential is the Koszul action on coefficients alone).
inline DgModule trivial_dg_module(const QuasiSmoothSpace& z, const std::string& stem,
                                  std::size_t rank, int degree = 0) {
    std::vector<std::string> names;
    names.reserve(rank);
    for (std::size_t i = 0; i < rank; ++i) names.push_back(stem + std::to_string(i + 1));
    FreeGradedModule m = FreeGradedModule::trivial(names, degree);
    return {m, BlockMap(m, m, 1, z.n, z.lie.dim)};
}

inline DgModule g_module(const QuasiSmoothSpace& z) { return trivial_dg_module(z, "e", z.lie.dim); }
inline DgModule g_dual_module(const QuasiSmoothSpace& z) {
    return trivial_dg_module(z, "s", z.lie.dim);
}
inline DgModule pullback_tangent_M(const QuasiSmoothSpace& z) {
    std::vector<std::string> names;
    for (std::size_t a = 0; a < z.n; ++a) names.push_back("d/d" + z.variables.at(a));
    FreeGradedModule m = FreeGradedModule::trivial(names, 0);
    return {m, BlockMap(m, m, 1, z.n, z.lie.dim)};
}
inline DgModule pullback_cotangent_M(const QuasiSmoothSpace& z) {
    std::vector<std::string> names;
    for (std::size_t a = 0; a < z.n; ++a) names.push_back("d" + z.variables.at(a));
    FreeGradedModule m = FreeGradedModule::trivial(names, 0);
    return {m, BlockMap(m, m, 1, z.n, z.lie.dim)};
}

/// d mu : pullback of T_M -> g*_Z, d/dx_a -> sum_j (dmu^j/dx_a) s_j.
inline BlockMap dmu_map(const QuasiSmoothSpace& z, const DgModule& tm, const DgModule& gstar) {
    BlockMap f(tm.module, gstar.module, 0, z.n, z.lie.dim);
    for (std::size_t j = 0; j < z.lie.dim; ++j)
        for (std::size_t a = 0; a < z.n; ++a) {
            Polynomial p = z.mu[j].partial(a);
            if (!p.is_zero()) f.set(j, a, z.scalar(p));
        }
    return f;
}

/// (d mu)* : g_Z -> pullback of T*_M, e_j -> sum_i (dmu^j/dx_i) dx_i.
inline BlockMap dmu_dual_map(const QuasiSmoothSpace& z, const DgModule& g,
                             const DgModule& tstarm) {
    BlockMap f(g.module, tstarm.module, 0, z.n, z.lie.dim);
    for (std::size_t j = 0; j < z.lie.dim; ++j)
        for (std::size_t i = 0; i < z.n; ++i) {
            Polynomial p = z.mu[j].partial(i);
            if (!p.is_zero()) f.set(i, j, z.scalar(p));
        }
    return f;
}

/// Tangent module T_Z = cocone(pullback T_M --dmu--> g*_Z): basis d/dx_a in
/// degree 0 and iota_{sigma_j} in degree +1, differential
/// d/dx_a -> sum_j (dmu^j/dx_a) iota_{sigma_j}.
inline DgModule tangent_module(const QuasiSmoothSpace& z) {
    DgModule tm = pullback_tangent_M(z);
    DgModule gs = g_dual_module(z);
    // rename the shifted dual basis to the contraction fields it represents
    DgModule out = cocone(dmu_map(z, tm, gs), tm, gs, z.mu, z.variables);
    for (std::size_t j = 0; j < z.lie.dim; ++j)
        out.module.names[z.n + j] = "iota_s" + std::to_string(j + 1);
    BlockMap renamed(out.module, out.module, 1, z.n, z.lie.dim);
    for (std::size_t r = 0; r < out.module.rank(); ++r)
        for (std::size_t c = 0; c < out.module.rank(); ++c)
            renamed.set(r, c, out.d.entry(r, c));
    out.d = renamed;
    return out;
}

/// Cotangent module T*_Z = cone(g_Z --(dmu)*--> pullback T*_M): basis dE_j
/// in degree -1 and dx_i in degree 0, differential
/// dE_j -> sum_i (dmu^j/dx_i) dx_i.
inline DgModule cotangent_module(const QuasiSmoothSpace& z) {
    DgModule g = g_module(z);
    DgModule tsm = pullback_cotangent_M(z);
    DgModule out = cone(dmu_dual_map(z, g, tsm), g, tsm, z.mu, z.variables);
    for (std::size_t j = 0; j < z.lie.dim; ++j)
        out.module.names[j] = "dE" + std::to_string(j + 1);
    BlockMap renamed(out.module, out.module, 1, z.n, z.lie.dim);
    for (std::size_t r = 0; r < out.module.rank(); ++r)
        for (std::size_t c = 0; c < out.module.rank(); ++c)
            renamed.set(r, c, out.d.entry(r, c));
    out.d = renamed;
    return out;
}

/// The tangent/cotangent duality pairing is the identity on matched basis
/// elements (d/dx_a with dx_a, iota_{sigma_j} with dE_j). This checks that
/// it is a chain pairing: on basis pairs,
///   <delta v, xi> - (-1)^{|v|} <v, delta xi> = delta_Z <v, xi> (= 0).
inline ChainMapReport verify_pairing_chain(const QuasiSmoothSpace& z, const DgModule& t,
                                           const DgModule& tstar) {
    const std::size_t n = z.n, d = z.lie.dim;
    auto pairing = [&](std::size_t vr, std::size_t xs) -> int {
        // tangent basis: d/dx_a (0..n-1), iota_j (n..n+d-1)
        // cotangent basis: dE_j (0..d-1), dx_a (d..d+n-1)
        if (vr < n && xs >= d) return vr == xs - d ? 1 : 0;
        if (vr >= n && xs < d) return vr - n == xs ? 1 : 0;
        return 0;
    };
    ChainMapReport rep;
    for (std::size_t c = 0; c < n + d && rep.ok; ++c)
        for (std::size_t k = 0; k < n + d && rep.ok; ++k) {
            SuperFunction acc(z.n, d);
            for (std::size_t r = 0; r < n + d; ++r)
                if (int p = pairing(r, k); p != 0)
                    acc = acc + Rational(p) * t.d.entry(r, c);
            int vdeg = t.module.degrees[c];
            for (std::size_t s = 0; s < n + d; ++s) {
                if (int p = pairing(c, s); p == 0) continue;
                const SuperFunction& e = tstar.d.entry(s, k);
                if (e.is_zero()) continue;
                int edeg = tstar.d.forced_entry_degree(s, k);
                // <v, a xi_s> = (-1)^{|v||a|} a <v, xi_s>, then the chain
                // identity subtracts with (-1)^{|v|}
                bool flip = ((vdeg * edeg) + vdeg) % 2 != 0;
                acc = flip ? acc + e : acc - e;
            }
            if (!acc.is_zero()) {
                rep.ok = false;
                rep.witness = "pairing defect at (tangent " + t.module.names[c] +
                              ", cotangent " + tstar.module.names[k] +
                              "): " + acc.to_string(z.variables);
            }
        }
    return rep;
}

/// The tangent space at a zero of mu is the two-term complex
/// R^n --D_m mu--> R^d; returns (dim ker, dim coker) of the Jacobian.
struct PointTangentComplex {
    RatMat jacobian;
    std::size_t kernel_dim = 0;
    std::size_t cokernel_dim = 0;
};

inline PointTangentComplex point_tangent_complex(const QuasiSmoothSpace& z,
                                                 std::span<const Rational> m) {
    if (!z.in_zero_set(m)) {
        std::string vals;
        for (const auto& v : z.mu_at(m)) vals += (vals.empty() ? "" : ", ") + to_string(v);
        throw std::invalid_argument("point_tangent_complex: point is not in the zero set, mu = (" +
                                    vals + ")");
    }
    PointTangentComplex out;
    out.jacobian = z.jacobian_at(m);
    std::size_t rank = bareiss_rank(out.jacobian);
    out.kernel_dim = z.n - rank;
    out.cokernel_dim = z.lie.dim - rank;
    return out;
}

}  // namespace dgred
