#pragma once

#include "dgred/ratmat.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace dgred {

/// Small dense double-precision matrix for the finite group-element layer.
class NumMat {
  public:
    NumMat() : rows_(0), cols_(0) {}
    NumMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0.0) {}

    static NumMat identity(std::size_t n) {
        NumMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
    static NumMat from(const RatMat& r) {
        NumMat m(r.rows(), r.cols());
        for (std::size_t i = 0; i < r.rows(); ++i)
            for (std::size_t j = 0; j < r.cols(); ++j) m(i, j) = to_double(r(i, j));
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    NumMat transpose() const {
        NumMat t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    friend NumMat operator*(const NumMat& a, const NumMat& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("NumMat: shape mismatch");
        NumMat r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                double v = a(i, k);
                if (v == 0.0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += v * b(k, j);
            }
        return r;
    }
    friend NumMat operator+(NumMat a, const NumMat& b) {
        for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] += b.a_[i];
        return a;
    }
    friend NumMat operator-(NumMat a, const NumMat& b) {
        for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] -= b.a_[i];
        return a;
    }
    friend NumMat operator*(double c, NumMat m) {
        for (auto& x : m.a_) x *= c;
        return m;
    }

    std::vector<double> apply(const std::vector<double>& v) const {
        std::vector<double> out(rows_, 0.0);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
        return out;
    }

    double inf_norm() const {
        double best = 0.0;
        for (std::size_t r = 0; r < rows_; ++r) {
            double s = 0.0;
            for (std::size_t c = 0; c < cols_; ++c) s += std::abs((*this)(r, c));
            best = std::max(best, s);
        }
        return best;
    }
    double max_abs() const {
        double best = 0.0;
        for (double x : a_) best = std::max(best, std::abs(x));
        return best;
    }

  private:
    std::size_t rows_, cols_;
    std::vector<double> a_;
};

/// Matrix exponential by scaling-and-squaring with a truncated Taylor
/// series (terms below 1e-16 relative are dropped); adequate at d <= 8.
inline NumMat expm(const NumMat& a) {
    std::size_t n = a.rows();
    if (n != a.cols()) throw std::invalid_argument("expm: matrix not square");
    double norm = a.inf_norm();
    int s = 0;
    while (norm > 0.5) {
        norm /= 2.0;
        ++s;
    }
    NumMat b = std::pow(0.5, s) * a;
    NumMat sum = NumMat::identity(n), term = NumMat::identity(n);
    for (int k = 1; k < 64; ++k) {
        term = (1.0 / k) * (term * b);
        sum = sum + term;
        if (term.max_abs() < 1e-16 * (1.0 + sum.max_abs())) break;
    }
    for (int i = 0; i < s; ++i) sum = sum * sum;
    return sum;
}

/// Modified Gram-Schmidt on columns; used to re-orthonormalize sampled
/// orthogonal group elements.
inline NumMat orthonormalize_columns(const NumMat& m) {
    std::size_t n = m.rows();
    NumMat q = m;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += q(i, k) * q(i, j);
            for (std::size_t i = 0; i < n; ++i) q(i, j) -= dot * q(i, k);
        }
        double nrm = 0.0;
        for (std::size_t i = 0; i < n; ++i) nrm += q(i, j) * q(i, j);
        nrm = std::sqrt(nrm);
        if (nrm == 0.0) throw std::runtime_error("orthonormalize: rank-deficient input");
        for (std::size_t i = 0; i < n; ++i) q(i, j) /= nrm;
    }
    return q;
}

}  // namespace dgred
