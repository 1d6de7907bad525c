#pragma once

#include "dgred/numat.hpp"
#include "dgred/ratmat.hpp"
#include "dgred/rng.hpp"

#include <span>
#include <string>
#include <vector>

namespace dgred {

enum class GroupTag { none, orthogonal, unitary_real_form, abelian };

inline std::string to_string(GroupTag t) {
    switch (t) {
        case GroupTag::orthogonal: return "orthogonal";
        case GroupTag::unitary_real_form: return "unitary-real-form";
        case GroupTag::abelian: return "abelian";
        default: return "none";
    }
}

/// Coadjoint sign convention. The default -(ad_X)^T realizes
/// <ad*_X s, Y> = -<s, [X, Y]>; the opposite convention is kept around so
/// the equivariance identity can arbitrate (and the report can record the
/// one in force).
enum class CoadConvention { minus_transpose, plus_transpose };

/// Finite-dimensional Lie algebra given by structure constants
/// [E_i, E_j] = sum_k c^k_{ij} E_k, with an optional matrix representation
/// A_1..A_d acting on R^n.
struct LieAlgebra {
    std::size_t dim = 0;
    std::vector<Rational> c;    // dense, c[(k*dim + i)*dim + j]
    std::vector<RatMat> rep;    // empty or dim matrices, all n x n
    GroupTag tag = GroupTag::none;
    CoadConvention coad_convention = CoadConvention::minus_transpose;

    static LieAlgebra abelian(std::size_t d) {
        LieAlgebra L;
        L.dim = d;
        L.c.assign(d * d * d, Rational(0));
        L.tag = GroupTag::abelian;
        return L;
    }

    /// so(3) with c^k_{ij} = epsilon_{ijk}.
    static LieAlgebra so3() {
        LieAlgebra L;
        L.dim = 3;
        L.c.assign(27, Rational(0));
        auto set = [&](std::size_t i, std::size_t j, std::size_t k, int v) {
            L.structure(k, i, j) = v;
        };
        set(0, 1, 2, 1); set(1, 0, 2, -1);
        set(1, 2, 0, 1); set(2, 1, 0, -1);
        set(2, 0, 1, 1); set(0, 2, 1, -1);
        L.tag = GroupTag::orthogonal;
        return L;
    }

    Rational& structure(std::size_t k, std::size_t i, std::size_t j) {
        return c.at((k * dim + i) * dim + j);
    }
    const Rational& structure(std::size_t k, std::size_t i, std::size_t j) const {
        return c.at((k * dim + i) * dim + j);
    }

    bool has_rep() const { return !rep.empty(); }
    std::size_t rep_dim() const { return rep.empty() ? 0 : rep.front().rows(); }

    std::vector<Rational> bracket(std::span<const Rational> x,
                                  std::span<const Rational> y) const {
        std::vector<Rational> z(dim, Rational(0));
        for (std::size_t k = 0; k < dim; ++k)
            for (std::size_t i = 0; i < dim; ++i) {
                if (x[i] == 0) continue;
                for (std::size_t j = 0; j < dim; ++j)
                    z[k] += x[i] * y[j] * structure(k, i, j);
            }
        return z;
    }

    /// Adjoint operator: (ad_X)^k_j = sum_i X^i c^k_{ij}.
    RatMat ad(std::span<const Rational> x) const {
        if (x.size() != dim) throw std::invalid_argument("ad: vector has wrong dimension");
        RatMat m(dim, dim);
        for (std::size_t k = 0; k < dim; ++k)
            for (std::size_t j = 0; j < dim; ++j)
                for (std::size_t i = 0; i < dim; ++i)
                    m(k, j) += x[i] * structure(k, i, j);
        return m;
    }
    RatMat ad_basis(std::size_t i) const {
        std::vector<Rational> e(dim, Rational(0));
        e.at(i) = 1;
        return ad(e);
    }

    /// Coadjoint operator in the dual basis, per the convention in force.
    RatMat coad(std::span<const Rational> x) const {
        RatMat t = ad(x).transpose();
        return (coad_convention == CoadConvention::minus_transpose) ? Rational(-1) * t : t;
    }
    RatMat coad_basis(std::size_t i) const {
        std::vector<Rational> e(dim, Rational(0));
        e.at(i) = 1;
        return coad(e);
    }

    /// Representation matrix of an algebra vector, as doubles.
    NumMat rep_matrix_numeric(std::span<const double> x) const {
        NumMat m(rep_dim(), rep_dim());
        for (std::size_t i = 0; i < dim; ++i) {
            NumMat ai = NumMat::from(rep[i]);
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (std::size_t cidx = 0; cidx < m.cols(); ++cidx)
                    m(r, cidx) += x[i] * ai(r, cidx);
        }
        return m;
    }

    /// exp(ad_X) on coordinates, as doubles.
    NumMat adjoint_exp_numeric(std::span<const double> x) const {
        NumMat adm(dim, dim);
        for (std::size_t i = 0; i < dim; ++i) {
            RatMat ai = ad_basis(i);
            for (std::size_t r = 0; r < dim; ++r)
                for (std::size_t cidx = 0; cidx < dim; ++cidx)
                    adm(r, cidx) += x[i] * to_double(ai(r, cidx));
        }
        return expm(adm);
    }
};

struct LieAxiomReport {
    bool antisymmetry_ok = true;
    bool jacobi_ok = true;
    bool rep_ok = true;
    std::string antisymmetry_witness;
    std::string jacobi_witness;
    std::string rep_witness;
    bool all_ok() const { return antisymmetry_ok && jacobi_ok && rep_ok; }
    /// First violation across the three axioms, if any.
    std::string witness() const {
        if (!antisymmetry_witness.empty()) return antisymmetry_witness;
        if (!jacobi_witness.empty()) return jacobi_witness;
        return rep_witness;
    }
};

/// Brute-force validation of antisymmetry, the Jacobi identity, and (when a
/// representation is supplied) the exact bracket relation of the rep.
inline LieAxiomReport check_lie_axioms(const LieAlgebra& L) {
    LieAxiomReport rep;
    const std::size_t d = L.dim;
    for (std::size_t k = 0; k < d && rep.antisymmetry_ok; ++k)
        for (std::size_t i = 0; i < d && rep.antisymmetry_ok; ++i)
            for (std::size_t j = 0; j < d && rep.antisymmetry_ok; ++j) {
                Rational r = L.structure(k, i, j) + L.structure(k, j, i);
                if (r != 0) {
                    rep.antisymmetry_ok = false;
                    rep.antisymmetry_witness =
                        "antisymmetry violated at (k,i,j)=(" + std::to_string(k + 1) + "," +
                        std::to_string(i + 1) + "," + std::to_string(j + 1) + "), residual " +
                        to_string(r);
                }
            }
    for (std::size_t i = 0; i < d && rep.jacobi_ok; ++i)
        for (std::size_t j = 0; j < d && rep.jacobi_ok; ++j)
            for (std::size_t k = 0; k < d && rep.jacobi_ok; ++k)
                for (std::size_t l = 0; l < d && rep.jacobi_ok; ++l) {
                    Rational r = 0;
                    for (std::size_t m = 0; m < d; ++m)
                        r += L.structure(m, i, j) * L.structure(l, m, k) +
                             L.structure(m, j, k) * L.structure(l, m, i) +
                             L.structure(m, k, i) * L.structure(l, m, j);
                    if (r != 0) {
                        rep.jacobi_ok = false;
                        rep.jacobi_witness =
                            "jacobi violated at (i,j,k,l)=(" + std::to_string(i + 1) + "," +
                            std::to_string(j + 1) + "," + std::to_string(k + 1) + "," +
                            std::to_string(l + 1) + "), residual " + to_string(r);
                    }
                }
    if (L.has_rep()) {
        for (std::size_t i = 0; i < d && rep.rep_ok; ++i)
            for (std::size_t j = 0; j < d && rep.rep_ok; ++j) {
                RatMat want(L.rep_dim(), L.rep_dim());
                for (std::size_t k = 0; k < d; ++k)
                    if (L.structure(k, i, j) != 0) want = want + L.structure(k, i, j) * L.rep[k];
                RatMat got = L.rep[i] * L.rep[j] - L.rep[j] * L.rep[i];
                if (!(got == want)) {
                    rep.rep_ok = false;
                    rep.rep_witness = "rep bracket violated at (i,j)=(" + std::to_string(i + 1) +
                                      "," + std::to_string(j + 1) + ")";
                }
            }
    }
    return rep;
}

struct NumericGroupElement {
    NumMat matrix;
    std::vector<double> source;  // Lie algebra coordinates it was exponentiated from
};

/// Deterministic sampling of group elements: pseudo-random algebra vectors
/// with entries in [-1, 1], exponentiated in the representation. The
/// exponential is validated via exp(A) exp(-A) = I; orthogonal-tagged
/// groups are re-orthonormalized and checked.
inline std::vector<NumericGroupElement> sample_group(const LieAlgebra& L, std::uint64_t seed,
                                                     std::size_t count) {
    if (!L.has_rep())
        throw std::invalid_argument("sample_group: Lie algebra carries no representation");
    std::vector<NumericGroupElement> out;
    out.reserve(count);
    CounterRng rng(seed);
    for (std::size_t s = 0; s < count; ++s) {
        std::vector<double> x(L.dim);
        for (auto& xi : x) xi = rng.next_unit();
        NumMat a = L.rep_matrix_numeric(x);
        NumMat g = expm(a);
        NumMat ginv = expm(-1.0 * a);
        double resid = (g * ginv - NumMat::identity(g.rows())).max_abs();
        if (resid > 1e-13)
            throw std::runtime_error("sample_group: exponential residual " +
                                     std::to_string(resid) + " above 1e-13");
        if (L.tag == GroupTag::orthogonal) {
            g = orthonormalize_columns(g);
            double ortho = (g.transpose() * g - NumMat::identity(g.rows())).max_abs();
            if (ortho > 1e-12)
                throw std::runtime_error("sample_group: orthogonality residual " +
                                         std::to_string(ortho) + " above 1e-12");
        }
        out.push_back({std::move(g), std::move(x)});
    }
    return out;
}

}  // namespace dgred
