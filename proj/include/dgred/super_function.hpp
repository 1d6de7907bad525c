#pragma once

#include "dgred/polynomial.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>

namespace dgred {

/// Generator subsets of the exterior factor are bitmasks over {0..d-1};
/// E_S means E_{s_1} ^ ... ^ E_{s_k} with ascending indices.
using GenMask = std::uint32_t;

inline int mask_size(GenMask m) { return std::popcount(m); }

/// Sign produced when E_{S1} meets E_{S2} (odd generators anticommute):
/// (-1)^{# inversions between the two ascending index words}. Zero overlap
/// is the caller's concern.
inline int merge_sign(GenMask left, GenMask right) {
    int inversions = 0;
    for (GenMask m = right; m; m &= m - 1) {
        int j = std::countr_zero(m);
        inversions += std::popcount(left >> (j + 1));
    }
    return (inversions % 2 == 0) ? 1 : -1;
}

/// Element of C(Z) = Poly (x) Lambda g: a finite sum of polynomial
/// coefficients indexed by exterior monomials E_S of degree -|S|.
class SuperFunction {
  public:
    SuperFunction() : nvars_(0), gdim_(0) {}
    SuperFunction(std::size_t nvars, std::size_t gdim) : nvars_(nvars), gdim_(gdim) {}

    static SuperFunction scalar(const Polynomial& p, std::size_t gdim) {
        SuperFunction f(p.nvars(), gdim);
        f.set(0, p);
        return f;
    }
    static SuperFunction constant(const Rational& c, std::size_t nvars, std::size_t gdim) {
        return scalar(Polynomial::constant(c, nvars), gdim);
    }
    static SuperFunction generator(std::size_t j, std::size_t nvars, std::size_t gdim) {
        SuperFunction f(nvars, gdim);
        f.set(GenMask(1) << j, Polynomial::constant(1, nvars));
        return f;
    }
    /// Algebra element of g embedded in degree -1.
    static SuperFunction from_algebra_vector(std::span<const Rational> x, std::size_t nvars) {
        SuperFunction f(nvars, x.size());
        for (std::size_t j = 0; j < x.size(); ++j)
            f.set(GenMask(1) << j, Polynomial::constant(x[j], nvars));
        return f;
    }

    std::size_t nvars() const { return nvars_; }
    std::size_t gdim() const { return gdim_; }
    bool is_zero() const { return comps_.empty(); }
    const std::map<GenMask, Polynomial>& components() const { return comps_; }

    Polynomial component(GenMask m) const {
        auto it = comps_.find(m);
        return it == comps_.end() ? Polynomial(nvars_) : it->second;
    }

    void set(GenMask m, const Polynomial& p) {
        if (p.is_zero())
            comps_.erase(m);
        else
            comps_[m] = p;
    }
    void add(GenMask m, const Polynomial& p) {
        if (p.is_zero()) return;
        auto [it, fresh] = comps_.try_emplace(m, p);
        if (!fresh) {
            it->second += p;
            if (it->second.is_zero()) comps_.erase(it);
        }
    }

    /// Degree if homogeneous (all components with the same |S|), else empty.
    std::optional<int> degree() const {
        std::optional<int> deg;
        for (const auto& [m, p] : comps_) {
            int d = -mask_size(m);
            if (!deg)
                deg = d;
            else if (*deg != d)
                return std::nullopt;
        }
        return deg;
    }

    friend SuperFunction operator+(SuperFunction a, const SuperFunction& b) {
        a.check_context(b);
        for (const auto& [m, p] : b.comps_) a.add(m, p);
        return a;
    }
    friend SuperFunction operator-(SuperFunction a, const SuperFunction& b) {
        a.check_context(b);
        for (const auto& [m, p] : b.comps_) a.add(m, -p);
        return a;
    }
    SuperFunction operator-() const {
        SuperFunction r(nvars_, gdim_);
        for (const auto& [m, p] : comps_) r.comps_[m] = -p;
        return r;
    }

    /// Graded-commutative product; the sign comes from merging the two
    /// exterior words, terms with overlapping generators vanish.
    friend SuperFunction operator*(const SuperFunction& a, const SuperFunction& b) {
        a.check_context(b);
        SuperFunction r(std::max(a.nvars_, b.nvars_), std::max(a.gdim_, b.gdim_));
        for (const auto& [ma, pa] : a.comps_)
            for (const auto& [mb, pb] : b.comps_) {
                if (ma & mb) continue;
                Polynomial prod = pa * pb;
                if (merge_sign(ma, mb) < 0) prod = -prod;
                r.add(ma | mb, prod);
            }
        return r;
    }
    friend SuperFunction operator*(const Rational& c, const SuperFunction& f) {
        SuperFunction r(f.nvars_, f.gdim_);
        if (c == 0) return r;
        for (const auto& [m, p] : f.comps_) r.comps_[m] = c * p;
        return r;
    }
    friend SuperFunction operator*(const Polynomial& q, const SuperFunction& f) {
        SuperFunction r(f.nvars_, f.gdim_);
        for (const auto& [m, p] : f.comps_) r.add(m, q * p);
        return r;
    }

    friend bool operator==(const SuperFunction& a, const SuperFunction& b) {
        if (a.comps_.empty() && b.comps_.empty()) return true;
        return a.gdim_ == b.gdim_ && a.comps_ == b.comps_;
    }
    friend bool operator!=(const SuperFunction& a, const SuperFunction& b) { return !(a == b); }

    /// Contraction with the dual generator sigma_j: iota(E_S) removes E_j
    /// with the sign (-1)^{position of j in S}.
    SuperFunction contract_sigma(std::size_t j) const {
        SuperFunction r(nvars_, gdim_);
        GenMask bit = GenMask(1) << j;
        for (const auto& [m, p] : comps_) {
            if (!(m & bit)) continue;
            int pos = std::popcount(m & (bit - 1));
            r.add(m ^ bit, (pos % 2 == 0) ? p : -p);
        }
        return r;
    }

    std::string to_string(std::span<const std::string> names) const {
        if (comps_.empty()) return "0";
        std::string out;
        for (const auto& [m, p] : comps_) {
            if (!out.empty()) out += " + ";
            std::string poly = p.to_string(names);
            if (m == 0) {
                out += poly;
                continue;
            }
            bool simple = p.terms().size() == 1;
            out += simple ? poly : "(" + poly + ")";
            for (GenMask t = m; t; t &= t - 1)
                out += "*E" + std::to_string(std::countr_zero(t) + 1);
        }
        return out;
    }

  private:
    void check_context(const SuperFunction& o) const {
        if (gdim_ != o.gdim_ && !comps_.empty() && !o.comps_.empty())
            throw std::invalid_argument("superfunction: mismatched exterior contexts (" +
                                        std::to_string(gdim_) + " vs " +
                                        std::to_string(o.gdim_) + " generators)");
    }

    std::size_t nvars_, gdim_;
    std::map<GenMask, Polynomial> comps_;
};

}  // namespace dgred
