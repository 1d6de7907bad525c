#pragma once

#include "dgred/quasi_smooth.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace dgred {

/// Generator species of the bigraded form algebra on Z, with bidegrees
/// (form degree p, derived degree q):
///   E_j  : (0, -1)   algebra generators of the exterior factor
///   dx_i : (1,  0)   one-forms of the base
///   dE_j : (1, -1)   derived one-forms
/// Two generators commute up to (-1)^{p p' + q q'} (componentwise Koszul
/// rule); in particular dE's commute among themselves and may repeat, and
/// the two differentials d (odd in p) and delta (odd in q) commute on the
/// nose. The table is frozen here and reported by the suite.
enum class Gen : std::uint8_t { E, dx, dE };

inline int p_parity(Gen g) { return g == Gen::E ? 0 : 1; }
inline int q_parity(Gen g) { return g == Gen::dx ? 0 : 1; }

inline int swap_parity(Gen a, Gen b) {
    return (p_parity(a) * p_parity(b) + q_parity(a) * q_parity(b)) % 2;
}

/// Canonical monomial: ascending E indices, ascending dx indices, ascending
/// dE indices (repeats allowed only for dE).
struct FormKey {
    GenMask e = 0;
    GenMask dx = 0;
    std::vector<std::uint8_t> de;  // sorted multiset

    int form_degree() const { return std::popcount(dx) + (int)de.size(); }
    int derived_degree() const { return -std::popcount(e) - (int)de.size(); }

    friend bool operator<(const FormKey& a, const FormKey& b) {
        if (a.e != b.e) return a.e < b.e;
        if (a.dx != b.dx) return a.dx < b.dx;
        return a.de < b.de;
    }
    friend bool operator==(const FormKey& a, const FormKey& b) {
        return a.e == b.e && a.dx == b.dx && a.de == b.de;
    }

    std::vector<std::pair<Gen, std::uint8_t>> word() const {
        std::vector<std::pair<Gen, std::uint8_t>> w;
        for (GenMask t = e; t; t &= t - 1) w.emplace_back(Gen::E, (std::uint8_t)std::countr_zero(t));
        for (GenMask t = dx; t; t &= t - 1)
            w.emplace_back(Gen::dx, (std::uint8_t)std::countr_zero(t));
        for (auto j : de) w.emplace_back(Gen::dE, j);
        return w;
    }
};

/// Element of the bigraded de Rham complex of Z with polynomial
/// coefficients.
class DerivedForm {
  public:
    DerivedForm() : nvars_(0), gdim_(0) {}
    DerivedForm(std::size_t nvars, std::size_t gdim) : nvars_(nvars), gdim_(gdim) {}

    static DerivedForm from_superfunction(const SuperFunction& f) {
        DerivedForm out(f.nvars(), f.gdim());
        for (const auto& [mask, p] : f.components()) out.add({mask, 0, {}}, p);
        return out;
    }
    static DerivedForm generator(Gen g, std::size_t index, std::size_t nvars, std::size_t gdim) {
        DerivedForm out(nvars, gdim);
        FormKey k;
        if (g == Gen::E) k.e = GenMask(1) << index;
        if (g == Gen::dx) k.dx = GenMask(1) << index;
        if (g == Gen::dE) k.de = {(std::uint8_t)index};
        out.add(k, Polynomial::constant(1, nvars));
        return out;
    }

    std::size_t nvars() const { return nvars_; }
    std::size_t gdim() const { return gdim_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<FormKey, Polynomial>& terms() const { return terms_; }

    void add(const FormKey& k, const Polynomial& p) {
        if (p.is_zero()) return;
        auto [it, fresh] = terms_.try_emplace(k, p);
        if (!fresh) {
            it->second += p;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    /// Restriction to the 0-form part, as a superfunction.
    SuperFunction zero_form_part() const {
        SuperFunction f(nvars_, gdim_);
        for (const auto& [k, p] : terms_)
            if (k.form_degree() == 0) f.add(k.e, p);
        return f;
    }

    int max_form_degree() const {
        int m = 0;
        for (const auto& [k, p] : terms_) m = std::max(m, k.form_degree());
        return m;
    }

    friend DerivedForm operator+(DerivedForm a, const DerivedForm& b) {
        for (const auto& [k, p] : b.terms_) a.add(k, p);
        return a;
    }
    friend DerivedForm operator-(DerivedForm a, const DerivedForm& b) {
        for (const auto& [k, p] : b.terms_) a.add(k, -p);
        return a;
    }
    DerivedForm operator-() const {
        DerivedForm r(nvars_, gdim_);
        for (const auto& [k, p] : terms_) r.terms_[k] = -p;
        return r;
    }
    friend bool operator==(const DerivedForm& a, const DerivedForm& b) {
        if (a.terms_.empty() && b.terms_.empty()) return true;
        return a.gdim_ == b.gdim_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const DerivedForm& a, const DerivedForm& b) { return !(a == b); }

    friend DerivedForm operator*(const Polynomial& q, const DerivedForm& f) {
        DerivedForm r(f.nvars_, f.gdim_);
        for (const auto& [k, p] : f.terms_) r.add(k, q * p);
        return r;
    }
    friend DerivedForm operator*(const Rational& c, const DerivedForm& f) {
        return Polynomial::constant(c, f.nvars_) * f;
    }

    friend DerivedForm operator*(const DerivedForm& a, const DerivedForm& b) {
        DerivedForm r(std::max(a.nvars_, b.nvars_), std::max(a.gdim_, b.gdim_));
        for (const auto& [ka, pa] : a.terms_)
            for (const auto& [kb, pb] : b.terms_) {
                if ((ka.e & kb.e) || (ka.dx & kb.dx)) continue;
                int sign = merge_key_sign(ka, kb);
                FormKey k{ka.e | kb.e, ka.dx | kb.dx, {}};
                k.de.reserve(ka.de.size() + kb.de.size());
                std::merge(ka.de.begin(), ka.de.end(), kb.de.begin(), kb.de.end(),
                           std::back_inserter(k.de));
                Polynomial prod = pa * pb;
                r.add(k, sign < 0 ? -prod : prod);
            }
        return r;
    }

    std::string to_string(std::span<const std::string> names) const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [k, p] : terms_) {
            if (!out.empty()) out += " + ";
            bool simple = p.terms().size() == 1;
            std::string poly = p.to_string(names);
            out += simple ? poly : "(" + poly + ")";
            for (GenMask t = k.e; t; t &= t - 1)
                out += "*E" + std::to_string(std::countr_zero(t) + 1);
            for (GenMask t = k.dx; t; t &= t - 1) {
                std::size_t i = (std::size_t)std::countr_zero(t);
                out += "*d" + (i < names.size() ? names[i] : "x" + std::to_string(i + 1));
            }
            for (auto j : k.de) out += "*dE" + std::to_string(j + 1);
        }
        return out;
    }

  private:
    /// Sign for concatenating two canonical words: product over crossing
    /// pairs of the componentwise swap parities.
    static int merge_key_sign(const FormKey& a, const FormKey& b) {
        auto wa = a.word(), wb = b.word();
        int parity = 0;
        for (const auto& [gb, ib] : wb)
            for (const auto& [ga, ia] : wa) {
                bool a_after_b = (ga > gb) || (ga == gb && ia > ib);
                if (a_after_b) parity += swap_parity(ga, gb);
            }
        return parity % 2 == 0 ? 1 : -1;
    }

    std::size_t nvars_, gdim_;
    std::map<FormKey, Polynomial> terms_;
};

namespace detail {

inline void append_gen(FormKey& k, const std::pair<Gen, std::uint8_t>& g) {
    switch (g.first) {
        case Gen::E: k.e |= GenMask(1) << g.second; break;
        case Gen::dx: k.dx |= GenMask(1) << g.second; break;
        case Gen::dE: k.de.push_back(g.second); break;
    }
}

/// Generic bigraded derivation of bidegree (s, t): walks each canonical
/// word, replaces one generator by its image with the Leibniz sign
/// (-1)^{sum_{l<i} (s p_l + t q_l)}, and adds the coefficient image
/// multiplied from the left.
inline DerivedForm apply_bigraded_derivation(
    const DerivedForm& f, int s, int t,
    const std::function<DerivedForm(Gen, std::size_t)>& gen_image,
    const std::function<DerivedForm(const Polynomial&)>& coeff_image) {
    DerivedForm out(f.nvars(), f.gdim());
    for (const auto& [key, p] : f.terms()) {
        auto word = key.word();
        {
            DerivedForm ci = coeff_image(p);
            if (!ci.is_zero()) {
                DerivedForm mono(f.nvars(), f.gdim());
                mono.add(key, Polynomial::constant(1, f.nvars()));
                out = out + ci * mono;
            }
        }
        int prefix_parity = 0;
        for (std::size_t i = 0; i < word.size(); ++i) {
            auto [g, idx] = word[i];
            DerivedForm gi = gen_image(g, idx);
            if (!gi.is_zero()) {
                FormKey prefix, suffix;
                for (std::size_t l = 0; l < i; ++l) append_gen(prefix, word[l]);
                for (std::size_t l = i + 1; l < word.size(); ++l) append_gen(suffix, word[l]);
                DerivedForm pre(f.nvars(), f.gdim()), suf(f.nvars(), f.gdim());
                pre.add(prefix, p);
                suf.add(suffix, Polynomial::constant(1, f.nvars()));
                DerivedForm term = pre * gi * suf;
                out = out + (prefix_parity % 2 == 0 ? term : -term);
            }
            prefix_parity += s * p_parity(g) + t * q_parity(g);
        }
    }
    return out;
}

}  // namespace detail

/// de Rham differential: d(x_i) = dx_i, d(E_j) = dE_j, d(dx) = d(dE) = 0;
/// odd in form degree, even in derived degree.
inline DerivedForm derham_d(const QuasiSmoothSpace& z, const DerivedForm& f) {
    return detail::apply_bigraded_derivation(
        f, 1, 0,
        [&](Gen g, std::size_t idx) {
            if (g == Gen::E) return DerivedForm::generator(Gen::dE, idx, z.n, z.lie.dim);
            return DerivedForm(z.n, z.lie.dim);
        },
        [&](const Polynomial& p) {
            DerivedForm out(z.n, z.lie.dim);
            for (std::size_t i = 0; i < z.n; ++i) {
                Polynomial pi = p.partial(i);
                if (pi.is_zero()) continue;
                out.add(FormKey{0, GenMask(1) << i, {}}, pi);
            }
            return out;
        });
}

/// Inner (Koszul) differential on forms: delta(E_j) = mu^j,
/// delta(dE_j) = d mu^j, delta(x) = delta(dx) = 0; odd in derived degree,
/// even in form degree. Commutes with derham_d exactly.
inline DerivedForm form_inner_delta(const QuasiSmoothSpace& z, const DerivedForm& f) {
    return detail::apply_bigraded_derivation(
        f, 0, 1,
        [&](Gen g, std::size_t idx) {
            DerivedForm out(z.n, z.lie.dim);
            if (g == Gen::E) {
                out.add(FormKey{}, z.mu[idx]);
            } else if (g == Gen::dE) {
                for (std::size_t i = 0; i < z.n; ++i) {
                    Polynomial pi = z.mu[idx].partial(i);
                    if (!pi.is_zero()) out.add(FormKey{0, GenMask(1) << i, {}}, pi);
                }
            }
            return out;
        },
        [&](const Polynomial&) { return DerivedForm(z.n, z.lie.dim); });
}

/// Contraction with a vector field on Z:
/// iota_X = sum_a v_a iota_{d/dx_a} + sum_j c_j iota_{sigma_j}, each
/// elementary contraction a bigraded derivation killing all generators
/// except its dual one-form.
inline DerivedForm contract(const QuasiSmoothSpace& z, const VectorFieldOnZ& x,
                            const DerivedForm& f) {
    if (!f.is_zero() && f.max_form_degree() == 0)
        throw std::invalid_argument("contract: cannot contract a 0-form");
    DerivedForm out(z.n, z.lie.dim);
    auto none = [&](const Polynomial&) { return DerivedForm(z.n, z.lie.dim); };
    for (std::size_t a = 0; a < z.n; ++a) {
        if (x.smooth[a].is_zero()) continue;
        DerivedForm part = detail::apply_bigraded_derivation(
            f, 1, 0,
            [&](Gen g, std::size_t idx) {
                DerivedForm r(z.n, z.lie.dim);
                if (g == Gen::dx && idx == a) r.add(FormKey{}, Polynomial::constant(1, z.n));
                return r;
            },
            none);
        out = out + DerivedForm::from_superfunction(x.smooth[a]) * part;
    }
    for (std::size_t j = 0; j < z.lie.dim; ++j) {
        if (x.contraction[j].is_zero()) continue;
        DerivedForm part = detail::apply_bigraded_derivation(
            f, 1, 1,
            [&](Gen g, std::size_t idx) {
                DerivedForm r(z.n, z.lie.dim);
                if (g == Gen::dE && idx == j) r.add(FormKey{}, Polynomial::constant(1, z.n));
                return r;
            },
            none);
        out = out + DerivedForm::from_superfunction(x.contraction[j]) * part;
    }
    return out;
}

/// Cartan Lie derivative L_X = d iota_X + iota_X d; on 0-forms the first
/// term is absent.
inline DerivedForm lie_derivative(const QuasiSmoothSpace& z, const VectorFieldOnZ& x,
                                  const DerivedForm& f) {
    DerivedForm second = contract(z, x, derham_d(z, f));
    if (f.max_form_degree() == 0) return second;
    return derham_d(z, contract(z, x, f)) + second;
}

/// The constant symplectic form (1/2) sum omega_{ij} dx_i dx_j.
inline DerivedForm omega_form(const QuasiSmoothSpace& z, const RatMat& omega) {
    DerivedForm out(z.n, z.lie.dim);
    for (std::size_t i = 0; i < z.n; ++i)
        for (std::size_t j = i + 1; j < z.n; ++j) {
            if (omega(i, j) == 0) continue;
            FormKey k{0, (GenMask(1) << i) | (GenMask(1) << j), {}};
            out.add(k, Polynomial::constant(omega(i, j), z.n));
        }
    return out;
}

}  // namespace dgred
