#pragma once

#include "dgred/ratmat.hpp"
#include "dgred/super_function.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dgred {

/// Free graded module over C(Z): an ordered basis with integer degrees.
struct FreeGradedModule {
    std::vector<std::string> names;
    std::vector<int> degrees;

    std::size_t rank() const { return names.size(); }

    static FreeGradedModule trivial(std::vector<std::string> names, int degree) {
        FreeGradedModule m;
        m.degrees.assign(names.size(), degree);
        m.names = std::move(names);
        return m;
    }

    friend bool operator==(const FreeGradedModule& a, const FreeGradedModule& b) {
        return a.names == b.names && a.degrees == b.degrees;
    }
};

/// Koszul differential applied to a coefficient: delta(E_j) = mu^j,
/// extended as an odd derivation; polynomials are annihilated.
inline SuperFunction koszul_delta_coeff(const SuperFunction& f, std::span<const Polynomial> mu) {
    SuperFunction r(f.nvars(), f.gdim());
    for (const auto& [mask, p] : f.components()) {
        int pos = 0;
        for (GenMask t = mask; t; t &= t - 1, ++pos) {
            int j = std::countr_zero(t);
            Polynomial term = p * mu[(std::size_t)j];
            r.add(mask ^ (GenMask(1) << j), (pos % 2 == 0) ? term : -term);
        }
    }
    return r;
}

/// Degree-homogeneous C(Z)-linear map between free graded modules, stored
/// as a matrix of SuperFunction entries: entry (r, c) multiplies source
/// basis element c into target basis element r. A map of degree k acts on
/// coefficients by f(a.m) = (-1)^{k|a|} a.f(m); all composition signs are
/// derived from basis degrees at composition time.
class BlockMap {
  public:
    BlockMap() : degree_(0), nvars_(0), gdim_(0) {}
    BlockMap(FreeGradedModule source, FreeGradedModule target, int degree, std::size_t nvars,
             std::size_t gdim)
        : source_(std::move(source)),
          target_(std::move(target)),
          degree_(degree),
          nvars_(nvars),
          gdim_(gdim),
          entries_(source_.rank() * target_.rank(), SuperFunction(nvars, gdim)) {}

    static BlockMap identity(const FreeGradedModule& m, std::size_t nvars, std::size_t gdim) {
        BlockMap f(m, m, 0, nvars, gdim);
        for (std::size_t i = 0; i < m.rank(); ++i)
            f.set(i, i, SuperFunction::constant(1, nvars, gdim));
        return f;
    }

    const FreeGradedModule& source() const { return source_; }
    const FreeGradedModule& target() const { return target_; }
    int degree() const { return degree_; }
    std::size_t nvars() const { return nvars_; }
    std::size_t gdim() const { return gdim_; }

    const SuperFunction& entry(std::size_t r, std::size_t c) const {
        return entries_.at(r * source_.rank() + c);
    }

    /// Degree every nonzero entry at (r, c) must have.
    int forced_entry_degree(std::size_t r, std::size_t c) const {
        return source_.degrees[c] + degree_ - target_.degrees[r];
    }

    void set(std::size_t r, std::size_t c, const SuperFunction& v) {
        if (!v.is_zero()) {
            auto deg = v.degree();
            if (!deg || *deg != forced_entry_degree(r, c))
                throw std::invalid_argument(
                    "blockmap: entry (" + target_.names[r] + ", " + source_.names[c] +
                    ") must be homogeneous of degree " +
                    std::to_string(forced_entry_degree(r, c)));
        }
        entries_.at(r * source_.rank() + c) = v;
    }
    void add_to(std::size_t r, std::size_t c, const SuperFunction& v) {
        set(r, c, entry(r, c) + v);
    }

    bool is_zero() const {
        for (const auto& e : entries_)
            if (!e.is_zero()) return false;
        return true;
    }

    /// First nonzero entry as "(row, col): value", for witnesses.
    std::optional<std::string> first_nonzero(std::span<const std::string> varnames) const {
        for (std::size_t r = 0; r < target_.rank(); ++r)
            for (std::size_t c = 0; c < source_.rank(); ++c)
                if (!entry(r, c).is_zero())
                    return "(" + target_.names[r] + ", " + source_.names[c] +
                           "): " + entry(r, c).to_string(varnames);
        return std::nullopt;
    }

    friend BlockMap operator+(BlockMap a, const BlockMap& b) {
        a.require_same_shape(b);
        for (std::size_t i = 0; i < a.entries_.size(); ++i)
            a.entries_[i] = a.entries_[i] + b.entries_[i];
        return a;
    }
    friend BlockMap operator-(BlockMap a, const BlockMap& b) {
        a.require_same_shape(b);
        for (std::size_t i = 0; i < a.entries_.size(); ++i)
            a.entries_[i] = a.entries_[i] - b.entries_[i];
        return a;
    }
    friend BlockMap operator*(const Rational& c, BlockMap f) {
        for (auto& e : f.entries_) e = c * e;
        return f;
    }
    friend bool operator==(const BlockMap& a, const BlockMap& b) {
        return a.source_ == b.source_ && a.target_ == b.target_ && a.degree_ == b.degree_ &&
               a.entries_ == b.entries_;
    }

    /// Action on a module element given by its coefficient vector:
    /// f(sum a_c e_c) = sum_c (-1)^{deg(f) |a_c|} a_c f(e_c), applied per
    /// parity-homogeneous component of each coefficient.
    std::vector<SuperFunction> apply(std::span<const SuperFunction> coeffs) const {
        if (coeffs.size() != source_.rank())
            throw std::invalid_argument("blockmap apply: coefficient count mismatch");
        std::vector<SuperFunction> out(target_.rank(), SuperFunction(nvars_, gdim_));
        for (std::size_t c = 0; c < source_.rank(); ++c) {
            if (coeffs[c].is_zero()) continue;
            for (std::size_t r = 0; r < target_.rank(); ++r) {
                const SuperFunction& e = entry(r, c);
                if (e.is_zero()) continue;
                for (const auto& [mask, poly] : coeffs[c].components()) {
                    SuperFunction piece(nvars_, gdim_);
                    piece.set(mask, poly);
                    SuperFunction term = piece * e;
                    if ((degree_ * mask_size(mask)) % 2 != 0) term = -term;
                    out[r] = out[r] + term;
                }
            }
        }
        return out;
    }

    /// Composition this o f with Koszul signs:
    /// (g o f)_{rc} = sum_b (-1)^{deg(g) |f_{bc}|} f_{bc} g_{rb}.
    BlockMap compose(const BlockMap& f) const {
        if (!(f.target_ == source_))
            throw std::invalid_argument("blockmap compose: middle modules differ");
        BlockMap out(f.source_, target_, degree_ + f.degree_, nvars_, gdim_);
        for (std::size_t r = 0; r < target_.rank(); ++r)
            for (std::size_t c = 0; c < f.source_.rank(); ++c) {
                SuperFunction acc(nvars_, gdim_);
                for (std::size_t b = 0; b < source_.rank(); ++b) {
                    const SuperFunction& fbc = f.entry(b, c);
                    const SuperFunction& grb = entry(r, b);
                    if (fbc.is_zero() || grb.is_zero()) continue;
                    SuperFunction term = fbc * grb;
                    if ((degree_ * f.forced_entry_degree(b, c)) % 2 != 0) term = -term;
                    acc = acc + term;
                }
                out.set(r, c, acc);
            }
        return out;
    }

    /// Entrywise Koszul differential; the result has map degree + 1.
    BlockMap koszul_of_entries(std::span<const Polynomial> mu) const {
        BlockMap out(source_, target_, degree_ + 1, nvars_, gdim_);
        for (std::size_t r = 0; r < target_.rank(); ++r)
            for (std::size_t c = 0; c < source_.rank(); ++c)
                out.set(r, c, koszul_delta_coeff(entry(r, c), mu));
        return out;
    }

    /// Shift by [n]: degrees drop by n; entries of degree e pick up
    /// (-1)^{n(e+1)} so the standard Leibniz rule keeps holding.
    BlockMap shifted(int n) const {
        FreeGradedModule src = source_, tgt = target_;
        for (auto& d : src.degrees) d -= n;
        for (auto& d : tgt.degrees) d -= n;
        BlockMap out(src, tgt, degree_, nvars_, gdim_);
        for (std::size_t r = 0; r < target_.rank(); ++r)
            for (std::size_t c = 0; c < source_.rank(); ++c) {
                int e = forced_entry_degree(r, c);
                bool flip = (n * (e + 1)) % 2 != 0;
                out.set(r, c, flip ? -entry(r, c) : entry(r, c));
            }
        return out;
    }

  private:
    void require_same_shape(const BlockMap& o) const {
        if (!(source_ == o.source_) || !(target_ == o.target_) || degree_ != o.degree_)
            throw std::invalid_argument("blockmap: shape or degree mismatch");
    }

    FreeGradedModule source_, target_;
    int degree_;
    std::size_t nvars_, gdim_;
    std::vector<SuperFunction> entries_;
};

/// Free dg-module over C(Z). The full differential acts as
///   delta(sum a_c e_c) = sum koszul(a_c) e_c + (-1)^{|a_c|} a_c d(e_c),
/// i.e. the Koszul differential on coefficients plus the stored degree-1
/// matrix part.
struct DgModule {
    FreeGradedModule module;
    BlockMap d;  // degree +1, module -> module
};

/// Full differential applied to an element: the Koszul action on the
/// coefficients plus the matrix part.
inline std::vector<SuperFunction> dg_apply(const DgModule& m, std::span<const Polynomial> mu,
                                           std::span<const SuperFunction> coeffs) {
    std::vector<SuperFunction> out = m.d.apply(coeffs);
    for (std::size_t c = 0; c < coeffs.size(); ++c)
        out[c] = out[c] + koszul_delta_coeff(coeffs[c], mu);
    return out;
}

/// delta^2 as a matrix: koszul(d) + d o d. Identically zero iff the module
/// differential squares to zero.
inline BlockMap square_zero_defect(const DgModule& m, std::span<const Polynomial> mu) {
    return m.d.koszul_of_entries(mu) + m.d.compose(m.d);
}

/// Chain-map defect delta_tgt o f - (-1)^{deg f} f o delta_src as a matrix:
/// koszul(f) + d_tgt o f - (-1)^{deg f} f o d_src.
inline BlockMap chain_map_defect(const BlockMap& f, const DgModule& src, const DgModule& tgt,
                                 std::span<const Polynomial> mu) {
    if (!(f.source() == src.module) || !(f.target() == tgt.module))
        throw std::invalid_argument("chain map: source/target modules do not match");
    BlockMap defect = f.koszul_of_entries(mu) + tgt.d.compose(f);
    BlockMap right = f.compose(src.d);
    return (f.degree() % 2 == 0) ? defect - right : defect + right;
}

struct ChainMapReport {
    bool ok = true;
    std::string witness;
};

inline ChainMapReport verify_chain_map(const BlockMap& f, const DgModule& src,
                                       const DgModule& tgt, std::span<const Polynomial> mu,
                                       std::span<const std::string> varnames = {}) {
    ChainMapReport rep;
    BlockMap defect = chain_map_defect(f, src, tgt, mu);
    if (auto w = defect.first_nonzero(varnames)) {
        rep.ok = false;
        rep.witness = *w;
    }
    return rep;
}

struct SquareZeroReport {
    bool ok = true;
    std::string witness;
};

inline SquareZeroReport verify_square_zero(const DgModule& m, std::span<const Polynomial> mu,
                                           std::span<const std::string> varnames = {}) {
    SquareZeroReport rep;
    if (auto w = square_zero_defect(m, mu).first_nonzero(varnames)) {
        rep.ok = false;
        rep.witness = *w;
    }
    return rep;
}

namespace detail {
inline FreeGradedModule concat(const FreeGradedModule& a, const FreeGradedModule& b) {
    FreeGradedModule m = a;
    for (std::size_t i = 0; i < b.rank(); ++i) {
        std::string name = b.names[i];
        while (std::find(m.names.begin(), m.names.end(), name) != m.names.end()) name += "'";
        m.names.push_back(name);
        m.degrees.push_back(b.degrees[i]);
    }
    return m;
}

inline FreeGradedModule shifted_module(FreeGradedModule m, int n) {
    for (auto& d : m.degrees) d -= n;
    return m;
}
}  // namespace detail

/// cone(f: M -> N) = M[1] (+) N. In the basis presentation the M-block
/// differential carries the shift twist, the f-block passes unchanged.
inline DgModule cone(const BlockMap& f, const DgModule& m, const DgModule& n,
                     std::span<const Polynomial> mu, std::span<const std::string> varnames = {}) {
    if (f.degree() != 0) throw std::invalid_argument("cone: map must have degree 0");
    auto chain = verify_chain_map(f, m, n, mu, varnames);
    if (!chain.ok)
        throw std::invalid_argument("cone: map is not a chain map, first defect at " +
                                    chain.witness);
    FreeGradedModule total = detail::concat(detail::shifted_module(m.module, 1), n.module);
    BlockMap d(total, total, 1, f.nvars(), f.gdim());
    const std::size_t mr = m.module.rank();
    BlockMap md = m.d.shifted(1);
    for (std::size_t r = 0; r < mr; ++r)
        for (std::size_t c = 0; c < mr; ++c) d.set(r, c, md.entry(r, c));
    for (std::size_t r = 0; r < n.module.rank(); ++r)
        for (std::size_t c = 0; c < mr; ++c) d.set(mr + r, c, f.entry(r, c));
    for (std::size_t r = 0; r < n.module.rank(); ++r)
        for (std::size_t c = 0; c < n.module.rank(); ++c) d.set(mr + r, mr + c, n.d.entry(r, c));
    DgModule out{total, d};
    if (auto w = square_zero_defect(out, mu).first_nonzero(varnames))
        throw std::logic_error("cone: assembled differential does not square to zero at " + *w);
    return out;
}

/// cocone(f: M -> N) = M (+) N[-1]; the f-block entries pick up the parity
/// twist (-1)^{|entry|} of the shifted target block.
inline DgModule cocone(const BlockMap& f, const DgModule& m, const DgModule& n,
                       std::span<const Polynomial> mu,
                       std::span<const std::string> varnames = {}) {
    if (f.degree() != 0) throw std::invalid_argument("cocone: map must have degree 0");
    auto chain = verify_chain_map(f, m, n, mu, varnames);
    if (!chain.ok)
        throw std::invalid_argument("cocone: map is not a chain map, first defect at " +
                                    chain.witness);
    FreeGradedModule total = detail::concat(m.module, detail::shifted_module(n.module, -1));
    BlockMap d(total, total, 1, f.nvars(), f.gdim());
    const std::size_t mr = m.module.rank();
    for (std::size_t r = 0; r < mr; ++r)
        for (std::size_t c = 0; c < mr; ++c) d.set(r, c, m.d.entry(r, c));
    for (std::size_t r = 0; r < n.module.rank(); ++r)
        for (std::size_t c = 0; c < mr; ++c) {
            const SuperFunction& v = f.entry(r, c);
            if (v.is_zero()) continue;
            bool flip = f.forced_entry_degree(r, c) % 2 != 0;
            d.set(mr + r, c, flip ? -v : v);
        }
    BlockMap nd = n.d.shifted(-1);
    for (std::size_t r = 0; r < n.module.rank(); ++r)
        for (std::size_t c = 0; c < n.module.rank(); ++c) d.set(mr + r, mr + c, nd.entry(r, c));
    DgModule out{total, d};
    if (auto w = square_zero_defect(out, mu).first_nonzero(varnames))
        throw std::logic_error("cocone: assembled differential does not square to zero at " + *w);
    return out;
}

/// Collapse of a two-term complex of dg-modules A -> B into one dg-module.
/// With A in degree -1 the total is cone(g); with A in degree 0 (B in +1)
/// it is cocone(g). Square-zero of the assembled block differential is
/// verified exactly either way.
inline DgModule total_complex(const BlockMap& g, const DgModule& a, const DgModule& b,
                              int degree_of_a, std::span<const Polynomial> mu,
                              std::span<const std::string> varnames = {}) {
    if (degree_of_a == -1) return cone(g, a, b, mu, varnames);
    if (degree_of_a == 0) return cocone(g, a, b, mu, varnames);
    throw std::invalid_argument("total_complex: outer complex must sit in degrees (-1,0) or (0,1)");
}

/// Assemble a dg-module from an explicitly supplied block differential and
/// verify square-zero, reporting the offending block on failure.
inline DgModule dg_from_blocks(FreeGradedModule module, BlockMap d,
                               std::span<const Polynomial> mu,
                               std::span<const std::string> varnames = {}) {
    DgModule out{std::move(module), std::move(d)};
    if (auto w = square_zero_defect(out, mu).first_nonzero(varnames))
        throw std::invalid_argument("supplied block differential does not square to zero at " +
                                    *w);
    return out;
}

// ---------------------------------------------------------------------------
// Pointwise fibers. C(Z) is free over the polynomial ring with basis E_S, so
// evaluating polynomials at a rational point m turns a rank-r dg-module into
// a complex of dimension r 2^d with an exact rational differential.

struct FiberBasis {
    std::vector<std::pair<std::size_t, GenMask>> elems;  // (module basis index, E_S mask)
    std::vector<int> degrees;

    static FiberBasis of(const FreeGradedModule& m, std::size_t gdim) {
        FiberBasis b;
        for (std::size_t c = 0; c < m.rank(); ++c)
            for (GenMask s = 0; s < (GenMask(1) << gdim); ++s) {
                b.elems.emplace_back(c, s);
                b.degrees.push_back(m.degrees[c] - mask_size(s));
            }
        return b;
    }

    std::size_t index(std::size_t c, GenMask s, std::size_t gdim) const {
        return c * (std::size_t(1) << gdim) + s;
    }
};

/// Rational matrix of a block map on the pointwise fiber at m.
inline RatMat fiber_matrix(const BlockMap& f, std::span<const Rational> m) {
    const std::size_t gdim = f.gdim();
    FiberBasis src = FiberBasis::of(f.source(), gdim);
    FiberBasis tgt = FiberBasis::of(f.target(), gdim);
    RatMat out(tgt.elems.size(), src.elems.size());
    for (std::size_t c = 0; c < f.source().rank(); ++c)
        for (GenMask s = 0; s < (GenMask(1) << gdim); ++s) {
            // f(E_S e_c) = (-1)^{deg(f) |S|} E_S f(e_c)
            int sign = (f.degree() * mask_size(s)) % 2 != 0 ? -1 : 1;
            SuperFunction es(f.nvars(), gdim);
            es.set(s, Polynomial::constant(sign, f.nvars()));
            for (std::size_t r = 0; r < f.target().rank(); ++r) {
                const SuperFunction& e = f.entry(r, c);
                if (e.is_zero()) continue;
                SuperFunction prod = es * e;
                for (const auto& [mask, poly] : prod.components())
                    out(tgt.index(r, mask, gdim), src.index(c, s, gdim)) += poly.eval(m);
            }
        }
    return out;
}

/// Rational matrix of the full differential (Koszul coefficient part plus
/// matrix part) on the fiber at m.
inline RatMat fiber_differential(const DgModule& dg, std::span<const Polynomial> mu,
                                 std::span<const Rational> m) {
    const std::size_t gdim = dg.d.gdim();
    FiberBasis basis = FiberBasis::of(dg.module, gdim);
    RatMat out = fiber_matrix(dg.d, m);
    std::vector<Rational> muval(mu.size());
    for (std::size_t j = 0; j < mu.size(); ++j) muval[j] = mu[j].eval(m);
    for (std::size_t c = 0; c < dg.module.rank(); ++c)
        for (GenMask s = 0; s < (GenMask(1) << gdim); ++s) {
            int pos = 0;
            for (GenMask t = s; t; t &= t - 1, ++pos) {
                int j = std::countr_zero(t);
                Rational v = (pos % 2 == 0) ? muval[(std::size_t)j] : -muval[(std::size_t)j];
                out(basis.index(c, s ^ (GenMask(1) << j), gdim), basis.index(c, s, gdim)) += v;
            }
        }
    return out;
}

/// Cohomology dimensions of the fiber complex at m, degree by degree, via
/// exact fraction-free ranks. Degrees with zero-dimensional fiber are
/// omitted.
inline std::map<int, std::size_t> pointwise_cohomology(const DgModule& dg,
                                                       std::span<const Polynomial> mu,
                                                       std::span<const Rational> m) {
    const std::size_t gdim = dg.d.gdim();
    FiberBasis basis = FiberBasis::of(dg.module, gdim);
    RatMat d = fiber_differential(dg, mu, m);
    if (!(d * d).is_zero())
        throw std::logic_error(
            "pointwise_cohomology: evaluated differential does not square to zero");

    std::map<int, std::vector<std::size_t>> by_degree;
    for (std::size_t i = 0; i < basis.elems.size(); ++i)
        by_degree[basis.degrees[i]].push_back(i);

    auto block = [&](int from_deg) -> RatMat {
        auto it = by_degree.find(from_deg);
        auto jt = by_degree.find(from_deg + 1);
        std::size_t nc = it == by_degree.end() ? 0 : it->second.size();
        std::size_t nr = jt == by_degree.end() ? 0 : jt->second.size();
        RatMat b(nr, nc);
        for (std::size_t cc = 0; cc < nc; ++cc)
            for (std::size_t rr = 0; rr < nr; ++rr)
                b(rr, cc) = d(jt->second[rr], it->second[cc]);
        return b;
    };

    std::map<int, std::size_t> h;
    for (const auto& [deg, idx] : by_degree) {
        std::size_t dim = idx.size();
        std::size_t out_rank = bareiss_rank(block(deg));
        std::size_t in_rank = by_degree.count(deg - 1) ? bareiss_rank(block(deg - 1)) : 0;
        h[deg] = dim - out_rank - in_rank;
    }
    return h;
}

}  // namespace dgred
