#pragma once

#include "dgred/rational.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dgred {

/// Dense matrix of exact rationals; sized for the small operators that
/// appear here (d <= 6, n <= 8).
class RatMat {
  public:
    RatMat() : rows_(0), cols_(0) {}
    RatMat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}

    static RatMat identity(std::size_t n) {
        RatMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return a_.at(r * cols_ + c); }
    const Rational& operator()(std::size_t r, std::size_t c) const { return a_.at(r * cols_ + c); }

    bool is_zero() const {
        for (const auto& x : a_)
            if (x != 0) return false;
        return true;
    }

    RatMat transpose() const {
        RatMat t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    friend RatMat operator*(const RatMat& a, const RatMat& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("RatMat: shape mismatch in product");
        RatMat r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += a(i, k) * b(k, j);
            }
        return r;
    }
    friend RatMat operator+(const RatMat& a, const RatMat& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("RatMat: shape mismatch in sum");
        RatMat r = a;
        for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += b.a_[i];
        return r;
    }
    friend RatMat operator-(const RatMat& a, const RatMat& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("RatMat: shape mismatch in difference");
        RatMat r = a;
        for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= b.a_[i];
        return r;
    }
    friend RatMat operator*(const Rational& c, const RatMat& m) {
        RatMat r = m;
        for (auto& x : r.a_) x *= c;
        return r;
    }
    friend bool operator==(const RatMat& a, const RatMat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    std::vector<Rational> apply(std::span<const Rational> v) const {
        if (v.size() != cols_) throw std::invalid_argument("RatMat: vector length mismatch");
        std::vector<Rational> out(rows_, Rational(0));
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
        return out;
    }

  private:
    std::size_t rows_, cols_;
    std::vector<Rational> a_;
};

namespace detail {
// Integer matrix sharing the rank with the rational input: each row is
// scaled by its common denominator.
inline std::vector<std::vector<Integer>> clear_denominators(const RatMat& m) {
    std::vector<std::vector<Integer>> z(m.rows(), std::vector<Integer>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Integer lcm = 1;
        for (std::size_t c = 0; c < m.cols(); ++c) {
            Integer den = denominator(m(r, c));
            lcm = boost::multiprecision::lcm(lcm, den);
        }
        for (std::size_t c = 0; c < m.cols(); ++c)
            z[r][c] = numerator(m(r, c)) * (lcm / denominator(m(r, c)));
    }
    return z;
}
}  // namespace detail

/// Exact rank by fraction-free (Bareiss) elimination.
inline std::size_t bareiss_rank(const RatMat& m) {
    auto z = detail::clear_denominators(m);
    std::size_t rows = m.rows(), cols = m.cols();
    std::size_t rank = 0;
    Integer prev = 1;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && z[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(z[pivot], z[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            for (std::size_t c = col + 1; c < cols; ++c)
                z[r][c] = (z[rank][col] * z[r][c] - z[r][col] * z[rank][c]) / prev;
            z[r][col] = 0;
        }
        prev = z[rank][col];
        ++rank;
    }
    return rank;
}

/// Exact determinant (Bareiss on the cleared-denominator matrix, divided
/// back by the row scales).
inline Rational bareiss_determinant(const RatMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
    std::size_t n = m.rows();
    if (n == 0) return 1;
    Rational scale = 1;
    auto z = detail::clear_denominators(m);
    for (std::size_t r = 0; r < n; ++r) {
        Integer lcm = 1;
        for (std::size_t c = 0; c < n; ++c) lcm = boost::multiprecision::lcm(lcm, denominator(m(r, c)));
        scale *= Rational(1, lcm);
    }
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && z[pivot][k] == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != k) {
            std::swap(z[pivot], z[k]);
            sign = -sign;
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            for (std::size_t c = k + 1; c < n; ++c)
                z[r][c] = (z[k][k] * z[r][c] - z[r][k] * z[k][c]) / prev;
            z[r][k] = 0;
        }
        prev = z[k][k];
    }
    return sign * Rational(z[n - 1][n - 1]) * scale;
}

/// Exact inverse via Gauss-Jordan; throws if singular.
inline RatMat inverse(const RatMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
    std::size_t n = m.rows();
    RatMat a = m, inv = RatMat::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a(pivot, col) == 0) ++pivot;
        if (pivot == n) throw std::invalid_argument("inverse: matrix is singular");
        if (pivot != col)
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(a(pivot, c), a(col, c));
                std::swap(inv(pivot, c), inv(col, c));
            }
        Rational p = a(col, col);
        for (std::size_t c = 0; c < n; ++c) {
            a(col, c) /= p;
            inv(col, c) /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a(r, col) == 0) continue;
            Rational f = a(r, col);
            for (std::size_t c = 0; c < n; ++c) {
                a(r, c) -= f * a(col, c);
                inv(r, c) -= f * inv(col, c);
            }
        }
    }
    return inv;
}

}  // namespace dgred
