#pragma once

#include "dgred/rational.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

namespace dgred {

/// Exponent vector, one entry per variable of the ambient space.
using Monomial = std::vector<std::uint32_t>;

inline std::uint32_t monomial_degree(const Monomial& m) {
    return std::accumulate(m.begin(), m.end(), std::uint32_t{0});
}

/// Graded lexicographic order; fixes the canonical term order so that
/// polynomial equality is structural equality.
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        auto da = monomial_degree(a), db = monomial_degree(b);
        if (da != db) return da < db;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

/// Exact multivariate polynomial over the rationals. Variables are
/// identified by index; the ambient ordered variable list lives with the
/// space that owns the polynomial. No zero coefficients are ever stored.
class Polynomial {
  public:
    Polynomial() : nvars_(0) {}
    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

    static Polynomial constant(const Rational& c, std::size_t nvars) {
        Polynomial p(nvars);
        if (c != 0) p.terms_[Monomial(nvars, 0)] = c;
        return p;
    }

    static Polynomial variable(std::size_t i, std::size_t nvars) {
        Polynomial p(nvars);
        Monomial m(nvars, 0);
        m.at(i) = 1;
        p.terms_[m] = 1;
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && monomial_degree(terms_.begin()->first) == 0);
    }

    Rational constant_term() const {
        auto it = terms_.find(Monomial(nvars_, 0));
        return it == terms_.end() ? Rational(0) : it->second;
    }

    std::uint32_t total_degree() const {
        std::uint32_t d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, monomial_degree(m));
        return d;
    }

    const std::map<Monomial, Rational, GrlexLess>& terms() const { return terms_; }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.try_emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Polynomial operator-() const {
        Polynomial r(nvars_);
        for (const auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::size_t nv = joint_nvars(a, b);
        Polynomial r = promoted(a, nv);
        for (const auto& [m, c] : promoted(b, nv).terms_) r.add_term(m, c);
        return r;
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        std::size_t nv = joint_nvars(a, b);
        Polynomial r = promoted(a, nv);
        for (const auto& [m, c] : promoted(b, nv).terms_) r.add_term(m, -c);
        return r;
    }
    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        std::size_t nv = joint_nvars(a, b);
        Polynomial lhs = promoted(a, nv), rhs = promoted(b, nv);
        Polynomial r(nv);
        for (const auto& [ma, ca] : lhs.terms_)
            for (const auto& [mb, cb] : rhs.terms_) {
                Monomial m(ma);
                for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
                r.add_term(m, ca * cb);
            }
        return r;
    }

    friend Polynomial operator*(const Rational& c, const Polynomial& p) {
        Polynomial r(p.nvars_);
        if (c == 0) return r;
        for (const auto& [m, k] : p.terms_) r.terms_[m] = c * k;
        return r;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (a.terms_.empty() && b.terms_.empty()) return true;
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    /// Formal partial derivative with respect to variable `var`.
    Polynomial partial(std::size_t var) const {
        if (var >= nvars_)
            throw std::invalid_argument("partial: variable index " + std::to_string(var) +
                                        " out of range for " + std::to_string(nvars_) +
                                        " variables");
        Polynomial r(nvars_);
        for (const auto& [m, c] : terms_) {
            if (m[var] == 0) continue;
            Monomial d(m);
            d[var] -= 1;
            r.add_term(d, c * Rational(m[var]));
        }
        return r;
    }

    /// Exact evaluation at a rational point.
    Rational eval(std::span<const Rational> point) const {
        if (point.size() != nvars_)
            throw std::invalid_argument("eval: point has " + std::to_string(point.size()) +
                                        " coordinates, polynomial has " +
                                        std::to_string(nvars_) + " variables");
        Rational acc = 0;
        for (const auto& [m, c] : terms_) {
            Rational t = c;
            for (std::size_t i = 0; i < nvars_; ++i)
                for (std::uint32_t e = 0; e < m[i]; ++e) t *= point[i];
            acc += t;
        }
        return acc;
    }

    std::string to_string(std::span<const std::string> names) const;

  private:
    // Constants mix freely with any variable list; everything else must match.
    static std::size_t joint_nvars(const Polynomial& a, const Polynomial& b) {
        if (a.nvars_ == b.nvars_) return a.nvars_;
        if (a.is_constant()) return b.nvars_;
        if (b.is_constant()) return a.nvars_;
        throw std::invalid_argument("polynomial: variable lists differ (" +
                                    std::to_string(a.nvars_) + " vs " +
                                    std::to_string(b.nvars_) + " variables)");
    }
    static Polynomial promoted(const Polynomial& p, std::size_t nv) {
        if (p.nvars_ == nv) return p;
        return Polynomial::constant(p.constant_term(), nv);
    }

    std::size_t nvars_;
    std::map<Monomial, Rational, GrlexLess> terms_;
};

inline std::string Polynomial::to_string(std::span<const std::string> names) const {
    if (terms_.empty()) return "0";
    std::string out;
    // leading terms first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        Rational a = c;
        if (out.empty()) {
            if (a < 0) { out += "-"; a = -a; }
        } else {
            out += (a < 0) ? " - " : " + ";
            if (a < 0) a = -a;
        }
        bool has_vars = monomial_degree(m) > 0;
        bool coef_shown = (a != 1) || !has_vars;
        if (coef_shown) out += dgred::to_string(a);
        bool first = !coef_shown;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!first) out += "*";
            out += (i < names.size()) ? names[i] : ("x" + std::to_string(i + 1));
            if (m[i] > 1) out += "^" + std::to_string(m[i]);
            first = false;
        }
    }
    return out;
}

/// Parses the polynomial grammar used in config files: terms joined by
/// `+`/`-`, each term a `*`-separated product of a rational coefficient and
/// powers `name^k`. Example: "1/2*x^2 + 1/2*y^2 - 1/2".
inline Polynomial parse_polynomial(const std::string& text,
                                   std::span<const std::string> names) {
    const std::size_t nvars = names.size();
    std::size_t pos = 0;
    auto skip_ws = [&] { while (pos < text.size() && std::isspace((unsigned char)text[pos])) ++pos; };
    auto fail = [&](const std::string& what) -> std::invalid_argument {
        return std::invalid_argument("polynomial parse error at position " +
                                     std::to_string(pos) + " in '" + text + "': " + what);
    };

    Polynomial result(nvars);
    skip_ws();
    if (pos == text.size()) throw fail("empty input");
    bool first_term = true;
    while (pos < text.size()) {
        int sign = 1;
        skip_ws();
        if (text[pos] == '+' || text[pos] == '-') {
            sign = (text[pos] == '-') ? -1 : 1;
            ++pos;
        } else if (!first_term) {
            throw fail("expected '+' or '-' between terms");
        }
        first_term = false;
        skip_ws();

        Rational coef = sign;
        Monomial mono(nvars, 0);
        bool factor_expected = true;
        while (factor_expected) {
            skip_ws();
            if (pos >= text.size()) throw fail("unexpected end of input");
            char ch = text[pos];
            if (std::isdigit((unsigned char)ch)) {
                std::size_t start = pos;
                while (pos < text.size() &&
                       (std::isdigit((unsigned char)text[pos]) || text[pos] == '/'))
                    ++pos;
                coef *= rational_from_string(text.substr(start, pos - start));
            } else if (std::isalpha((unsigned char)ch) || ch == '_') {
                std::size_t start = pos;
                while (pos < text.size() &&
                       (std::isalnum((unsigned char)text[pos]) || text[pos] == '_'))
                    ++pos;
                std::string name = text.substr(start, pos - start);
                auto it = std::find(names.begin(), names.end(), name);
                if (it == names.end()) throw fail("unknown variable '" + name + "'");
                std::uint32_t exp = 1;
                skip_ws();
                if (pos < text.size() && text[pos] == '^') {
                    ++pos;
                    skip_ws();
                    std::size_t start2 = pos;
                    while (pos < text.size() && std::isdigit((unsigned char)text[pos])) ++pos;
                    if (start2 == pos) throw fail("expected exponent after '^'");
                    exp = (std::uint32_t)std::stoul(text.substr(start2, pos - start2));
                }
                mono[(std::size_t)(it - names.begin())] += exp;
            } else {
                throw fail(std::string("unexpected character '") + ch + "'");
            }
            skip_ws();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                factor_expected = true;
            } else {
                factor_expected = false;
            }
        }
        result.add_term(mono, coef);
        skip_ws();
    }
    return result;
}

}  // namespace dgred
