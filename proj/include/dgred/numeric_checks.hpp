#pragma once

#include "dgred/hamiltonian.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace dgred {

/// Outcome of a sampled finite-group check.
struct NumericCheck {
    bool skipped = false;
    std::string skip_reason;
    double max_residual = 0.0;
    std::size_t samples = 0;
    bool within(double tol) const { return !skipped && max_residual < tol; }
};

namespace detail {

inline bool numeric_layer_available(const HamiltonianSpace& h) {
    return h.d() > 0 && h.z.lie.has_rep() && h.z.lie.tag != GroupTag::none;
}

inline std::vector<double> random_vector(CounterRng& rng, std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = rng.next_unit();
    return v;
}

inline double omega_pair(const RatMat& w, const std::vector<double>& u,
                         const std::vector<double>& v) {
    double acc = 0.0;
    for (std::size_t a = 0; a < u.size(); ++a)
        for (std::size_t b = 0; b < v.size(); ++b) {
            if (w(a, b) == 0) continue;
            acc += to_double(w(a, b)) * u[a] * v[b];
        }
    return acc;
}

inline NumMat group_inverse(const LieAlgebra& lie, const NumericGroupElement& g) {
    if (lie.tag == GroupTag::orthogonal) return g.matrix.transpose();
    NumMat a = lie.rep_matrix_numeric(g.source);
    return expm(-1.0 * a);
}

}  // namespace detail

/// Numeric layer of the closure identity: at sampled (g, m, v1, v2, X1, X2),
///   omega(v1, v2) - omega(g (X1# m + v1), g (X2# m + v2))
///     = d mu^{X2}(m) v1 - d mu^{X1}(m) v2 - mu^{[X1, X2]}(m).
/// The left side is the source-minus-target pullback of the restricted
/// form, the right side the evaluated contraction of d theta with mu.
inline NumericCheck check_closure_numeric(const HamiltonianSpace& h, std::size_t samples,
                                          std::uint64_t seed, double /*tol*/ = 0.0) {
    NumericCheck out;
    if (!detail::numeric_layer_available(h)) {
        out.skipped = true;
        out.skip_reason =
            "no finite group layer (missing representation, no group tag, or trivial group)";
        return out;
    }
    const QuasiSmoothSpace& z = h.z;
    auto group = sample_group(z.lie, seed, samples);
    CounterRng rng(seed ^ 0x5bd1e995u);

    // evaluated partials cache is cheap enough to recompute per sample
    std::vector<std::vector<Polynomial>> dmu(h.d());
    for (std::size_t j = 0; j < h.d(); ++j)
        for (std::size_t a = 0; a < h.n(); ++a) dmu[j].push_back(z.mu[j].partial(a));

    for (std::size_t s = 0; s < samples; ++s) {
        const NumMat& g = group[s].matrix;
        auto m = detail::random_vector(rng, h.n());
        auto v1 = detail::random_vector(rng, h.n());
        auto v2 = detail::random_vector(rng, h.n());
        auto x1 = detail::random_vector(rng, h.d());
        auto x2 = detail::random_vector(rng, h.d());

        auto sharp = [&](const std::vector<double>& x) {
            return h.z.lie.rep_matrix_numeric(x).apply(m);
        };
        auto plus = [](std::vector<double> a, const std::vector<double>& b) {
            for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
            return a;
        };
        std::vector<double> u1 = g.apply(plus(sharp(x1), v1));
        std::vector<double> u2 = g.apply(plus(sharp(x2), v2));
        double lhs = detail::omega_pair(h.omega, v1, v2) - detail::omega_pair(h.omega, u1, u2);

        auto mu_eval = [&](std::size_t j) {
            double acc = 0.0;
            for (const auto& [mono, c] : z.mu[j].terms()) {
                double t = to_double(c);
                for (std::size_t i = 0; i < h.n(); ++i)
                    for (std::uint32_t e = 0; e < mono[i]; ++e) t *= m[i];
                acc += t;
            }
            return acc;
        };
        auto dmu_pair = [&](const std::vector<double>& x, const std::vector<double>& v) {
            double acc = 0.0;
            for (std::size_t j = 0; j < h.d(); ++j) {
                if (x[j] == 0.0) continue;
                for (std::size_t a = 0; a < h.n(); ++a) {
                    double pd = 0.0;
                    for (const auto& [mono, c] : dmu[j][a].terms()) {
                        double t = to_double(c);
                        for (std::size_t i = 0; i < h.n(); ++i)
                            for (std::uint32_t e = 0; e < mono[i]; ++e) t *= m[i];
                        pd += t;
                    }
                    acc += x[j] * pd * v[a];
                }
            }
            return acc;
        };
        // bracket coordinates of [X1, X2]
        std::vector<double> brk(h.d(), 0.0);
        for (std::size_t k = 0; k < h.d(); ++k)
            for (std::size_t i = 0; i < h.d(); ++i)
                for (std::size_t j = 0; j < h.d(); ++j) {
                    const Rational& c = z.lie.structure(k, i, j);
                    if (c != 0) brk[k] += to_double(c) * x1[i] * x2[j];
                }
        double rhs = dmu_pair(x2, v1) - dmu_pair(x1, v2);
        for (std::size_t k = 0; k < h.d(); ++k) rhs -= brk[k] * mu_eval(k);

        out.max_residual = std::max(out.max_residual, std::abs(lhs - rhs));
        ++out.samples;
    }
    return out;
}

/// Multiplicativity of the Maurer-Cartan layer at sampled pairs:
/// the simplicial identity for theta,
///   (g1 g2)^{-1} (g1 X1 g2 + g1 g2 X2) = Ad_{g2^{-1}} X1 + X2,
/// with the right side routed through exp(-ad) on coordinates, and the
/// Ad-cocycle Ad_{(g1 g2)^{-1}} = Ad_{g2^{-1}} Ad_{g1^{-1}} with the left
/// side conjugated in the representation.
inline NumericCheck check_multiplicativity_numeric(const HamiltonianSpace& h,
                                                   std::size_t samples, std::uint64_t seed,
                                                   double /*tol*/ = 0.0) {
    NumericCheck out;
    if (!detail::numeric_layer_available(h)) {
        out.skipped = true;
        out.skip_reason =
            "no finite group layer (missing representation, no group tag, or trivial group)";
        return out;
    }
    const LieAlgebra& lie = h.z.lie;
    auto g1s = sample_group(lie, seed, samples);
    auto g2s = sample_group(lie, seed ^ 0x9e3779b9u, samples);
    CounterRng rng(seed ^ 0xa5a5a5a5u);

    for (std::size_t s = 0; s < samples; ++s) {
        const NumMat& g1 = g1s[s].matrix;
        const NumMat& g2 = g2s[s].matrix;
        NumMat g12 = g1 * g2;
        NumMat g1i = detail::group_inverse(lie, g1s[s]);
        NumMat g2i = detail::group_inverse(lie, g2s[s]);
        NumMat g12i = g2i * g1i;

        auto x1 = detail::random_vector(rng, h.d());
        auto x2 = detail::random_vector(rng, h.d());
        NumMat a1 = lie.rep_matrix_numeric(x1), a2 = lie.rep_matrix_numeric(x2);

        // theta identity, both routes in the representation
        NumMat lhs = g12i * (g1 * a1 * g2 + g12 * a2);
        std::vector<double> neg2(h.d());
        for (std::size_t i = 0; i < h.d(); ++i) neg2[i] = -g2s[s].source[i];
        NumMat ad2 = lie.adjoint_exp_numeric(neg2);  // Ad_{g2^{-1}} on coordinates
        std::vector<double> y = ad2.apply(x1);
        NumMat rhs = lie.rep_matrix_numeric(y) + a2;
        out.max_residual = std::max(out.max_residual, (lhs - rhs).max_abs());

        // Ad-cocycle on the basis
        std::vector<double> neg1(h.d());
        for (std::size_t i = 0; i < h.d(); ++i) neg1[i] = -g1s[s].source[i];
        NumMat ad1 = lie.adjoint_exp_numeric(neg1);
        NumMat composed = ad2 * ad1;  // Ad_{g2^{-1}} Ad_{g1^{-1}}
        for (std::size_t k = 0; k < h.d(); ++k) {
            NumMat conj = g12i * NumMat::from(lie.rep[k]) * g12;
            std::vector<double> coords(h.d());
            for (std::size_t mm = 0; mm < h.d(); ++mm) coords[mm] = composed(mm, k);
            NumMat routed = lie.rep_matrix_numeric(coords);
            out.max_residual = std::max(out.max_residual, (conj - routed).max_abs());
        }
        ++out.samples;
    }
    return out;
}

struct EquivarianceNumeric {
    NumericCheck pushforward;      // rep(Ad_{g^{-1}} X) = g^{-1} rep(X) g
    NumericCheck coadjoint;        // ad*_{Ad_{g^{-1}} X} = Ad*_{g^{-1}} ad*_X Ad*_g
    NumericCheck omega_invariance; // g^T omega g = omega
};

inline EquivarianceNumeric check_equivariance_finite(const HamiltonianSpace& h,
                                                     std::size_t samples, std::uint64_t seed,
                                                     double /*tol*/ = 0.0) {
    EquivarianceNumeric out;
    if (!detail::numeric_layer_available(h)) {
        NumericCheck sk;
        sk.skipped = true;
        sk.skip_reason =
            "no finite group layer (missing representation, no group tag, or trivial group)";
        out.pushforward = out.coadjoint = out.omega_invariance = sk;
        return out;
    }
    const LieAlgebra& lie = h.z.lie;
    auto group = sample_group(lie, seed, samples);
    NumMat womega = NumMat::from(h.omega);

    std::vector<NumMat> coad_basis;
    for (std::size_t k = 0; k < h.d(); ++k) coad_basis.push_back(NumMat::from(lie.coad_basis(k)));

    for (const auto& g : group) {
        NumMat gi = detail::group_inverse(lie, g);
        std::vector<double> neg(h.d()), pos = g.source;
        for (std::size_t i = 0; i < h.d(); ++i) neg[i] = -g.source[i];
        NumMat ad_inv = lie.adjoint_exp_numeric(neg);  // Ad_{g^{-1}}
        NumMat ad_fwd = lie.adjoint_exp_numeric(pos);  // Ad_g

        for (std::size_t k = 0; k < h.d(); ++k) {
            std::vector<double> y(h.d());
            for (std::size_t mm = 0; mm < h.d(); ++mm) y[mm] = ad_inv(mm, k);
            // infinitesimal field of Ad_{g^{-1}} E_k vs conjugated field
            NumMat lhs = lie.rep_matrix_numeric(y);
            NumMat rhs = gi * NumMat::from(lie.rep[k]) * g.matrix;
            out.pushforward.max_residual =
                std::max(out.pushforward.max_residual, (lhs - rhs).max_abs());

            NumMat coad_y(h.d(), h.d());
            for (std::size_t mm = 0; mm < h.d(); ++mm)
                coad_y = coad_y + y[mm] * coad_basis[mm];
            NumMat rhs2 = ad_fwd.transpose() * coad_basis[k] * ad_inv.transpose();
            out.coadjoint.max_residual =
                std::max(out.coadjoint.max_residual, (coad_y - rhs2).max_abs());
        }
        NumMat womega_resid = g.matrix.transpose() * womega * g.matrix - womega;
        out.omega_invariance.max_residual =
            std::max(out.omega_invariance.max_residual, womega_resid.max_abs());
        out.pushforward.samples = out.coadjoint.samples = out.omega_invariance.samples =
            group.size();
    }
    return out;
}

}  // namespace dgred
