#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "quiverforge/rational.hpp"

namespace quiverforge {

using Vec = std::vector<Rational>;

inline Vec zero_vec(std::size_t n) { return Vec(n, Rational(0)); }

inline Vec unit_vec(std::size_t n, std::size_t i) {
    Vec v(n, Rational(0));
    v.at(i) = 1;
    return v;
}

inline bool is_zero_vec(const Vec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

inline void axpy(Vec& y, const Rational& c, const Vec& x) {
    if (y.size() != x.size()) throw std::invalid_argument("axpy: size mismatch");
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += c * x[i];
}

inline Vec scaled(const Vec& x, const Rational& c) {
    Vec y(x);
    for (auto& e : y) e *= c;
    return y;
}

/// Dense matrix of exact rationals, row-major.
class ExactMatrix {
public:
    ExactMatrix() : rows_(0), cols_(0) {}
    ExactMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

    static ExactMatrix identity(std::size_t n) {
        ExactMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static ExactMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows) {
        std::size_t r = rows.size();
        std::size_t c = r ? rows.begin()->size() : 0;
        ExactMatrix m(r, c);
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != c) throw std::invalid_argument("ragged rows");
            std::size_t j = 0;
            for (long e : row) m(i, j++) = e;
            ++i;
        }
        return m;
    }

    static ExactMatrix from_row_vectors(const std::vector<Vec>& rows, std::size_t cols) {
        ExactMatrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw std::invalid_argument("ragged rows");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_.at(i * cols_ + j); }
    const Rational& operator()(std::size_t i, std::size_t j) const {
        return data_.at(i * cols_ + j);
    }

    Vec row(std::size_t i) const {
        Vec v(cols_);
        for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
        return v;
    }

    Vec col(std::size_t j) const {
        Vec v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    ExactMatrix transpose() const {
        ExactMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    /// Matrix-vector product (column vector).
    Vec apply(const Vec& x) const {
        if (x.size() != cols_) throw std::invalid_argument("apply: size mismatch");
        Vec y(rows_, Rational(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != 0) y[i] += (*this)(i, j) * x[j];
        return y;
    }

    friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matmul: size mismatch");
        ExactMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Rational& aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (b(k, j) != 0) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("matadd: size mismatch");
        ExactMatrix c(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) c.data_[i] = a.data_[i] + b.data_[i];
        return c;
    }

    friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("matsub: size mismatch");
        ExactMatrix c(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) c.data_[i] = a.data_[i] - b.data_[i];
        return c;
    }

    friend ExactMatrix operator*(const Rational& c, const ExactMatrix& a) {
        ExactMatrix b(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) b.data_[i] = c * a.data_[i];
        return b;
    }

    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (x != 0) return false;
        return true;
    }

    Rational trace() const {
        if (rows_ != cols_) throw std::invalid_argument("trace of non-square matrix");
        Rational t(0);
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    std::string str() const {
        std::ostringstream os;
        os << "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            os << (i ? "; " : "");
            for (std::size_t j = 0; j < cols_; ++j)
                os << (j ? " " : "") << rational_str((*this)(i, j));
        }
        os << "]";
        return os.str();
    }

private:
    std::size_t rows_, cols_;
    std::vector<Rational> data_;
};

struct RrefResult {
    ExactMatrix reduced;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

/// Gauss-Jordan over the rationals. Pivot entries become 1, pivot columns are
/// cleared above and below.
inline RrefResult rref(const ExactMatrix& m) {
    RrefResult res{m, 0, {}};
    ExactMatrix& a = res.reduced;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a(p, c) == 0) ++p;
        if (p == a.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
        Rational inv = 1 / a(r, c);
        for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c) == 0) continue;
            Rational f = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
        }
        res.pivots.push_back(c);
        ++r;
    }
    res.rank = r;
    return res;
}

inline std::size_t rank(const ExactMatrix& m) { return rref(m).rank; }

/// Basis of {x : m x = 0} as column vectors, one per free column.
inline std::vector<Vec> nullspace(const ExactMatrix& m) {
    RrefResult rr = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : rr.pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec x(m.cols(), Rational(0));
        x[free] = 1;
        for (std::size_t k = 0; k < rr.pivots.size(); ++k) x[rr.pivots[k]] = -rr.reduced(k, free);
        basis.push_back(std::move(x));
    }
    return basis;
}

/// Any solution of m x = rhs, or nullopt when inconsistent.
/// rhs length must equal m.rows(); anything else is a caller bug.
inline std::optional<Vec> solve(const ExactMatrix& m, const Vec& rhs) {
    if (rhs.size() != m.rows()) throw std::invalid_argument("solve: rhs length != rows");
    ExactMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = rhs[i];
    }
    RrefResult rr = rref(aug);
    for (std::size_t k = 0; k < rr.pivots.size(); ++k)
        if (rr.pivots[k] == m.cols()) return std::nullopt;
    Vec x(m.cols(), Rational(0));
    for (std::size_t k = 0; k < rr.pivots.size(); ++k)
        x[rr.pivots[k]] = rr.reduced(k, m.cols());
    return x;
}

/// Row space kept in reduced echelon form; supports incremental insertion,
/// membership tests and reduction modulo the space.
class RowSpace {
public:
    explicit RowSpace(std::size_t ambient) : ambient_(ambient) {}

    RowSpace(std::size_t ambient, const std::vector<Vec>& vectors) : ambient_(ambient) {
        for (const auto& v : vectors) insert(v);
    }

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return rows_.size(); }
    const std::vector<Vec>& rows() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    bool is_pivot(std::size_t col) const {
        for (std::size_t p : pivots_)
            if (p == col) return true;
        return false;
    }

    /// v minus its projection onto the space: zero at every pivot column.
    Vec reduce(Vec v) const {
        if (v.size() != ambient_) throw std::invalid_argument("RowSpace::reduce: bad length");
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            const Rational& c = v[pivots_[k]];
            if (c != 0) {
                Rational f = c;
                axpy(v, -f, rows_[k]);
            }
        }
        return v;
    }

    bool contains(const Vec& v) const { return is_zero_vec(reduce(v)); }

    /// Returns true when v enlarges the space.
    bool insert(const Vec& v) {
        Vec w = reduce(v);
        std::size_t lead = 0;
        while (lead < ambient_ && w[lead] == 0) ++lead;
        if (lead == ambient_) return false;
        Rational inv = 1 / w[lead];
        for (auto& e : w) e *= inv;
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            Rational c = rows_[k][lead];
            if (c != 0) axpy(rows_[k], -c, w);
        }
        std::size_t pos = 0;
        while (pos < pivots_.size() && pivots_[pos] < lead) ++pos;
        rows_.insert(rows_.begin() + pos, std::move(w));
        pivots_.insert(pivots_.begin() + pos, lead);
        return true;
    }

private:
    std::size_t ambient_;
    std::vector<Vec> rows_;
    std::vector<std::size_t> pivots_;
};

/// Quotient of k^n by a RowSpace; coordinates live on the non-pivot columns.
class QuotientSpace {
public:
    explicit QuotientSpace(RowSpace sub) : sub_(std::move(sub)) {
        for (std::size_t c = 0; c < sub_.ambient(); ++c)
            if (!sub_.is_pivot(c)) basis_cols_.push_back(c);
    }

    std::size_t ambient() const { return sub_.ambient(); }
    std::size_t dim() const { return basis_cols_.size(); }
    const RowSpace& subspace() const { return sub_; }
    const std::vector<std::size_t>& basis_columns() const { return basis_cols_; }

    Vec coords(const Vec& ambient_vec) const {
        Vec r = sub_.reduce(ambient_vec);
        Vec q(basis_cols_.size());
        for (std::size_t k = 0; k < basis_cols_.size(); ++k) q[k] = r[basis_cols_[k]];
        return q;
    }

    /// Canonical representative of a quotient coordinate vector.
    Vec lift(const Vec& q) const {
        if (q.size() != basis_cols_.size())
            throw std::invalid_argument("QuotientSpace::lift: bad length");
        Vec v(sub_.ambient(), Rational(0));
        for (std::size_t k = 0; k < basis_cols_.size(); ++k) v[basis_cols_[k]] = q[k];
        return v;
    }

private:
    RowSpace sub_;
    std::vector<std::size_t> basis_cols_;
};

/// Kronecker product with row-major (left-factor-major) index flattening:
/// (a (x) b)[(i,k),(j,l)] = a(i,j) b(k,l).
inline ExactMatrix kronecker(const ExactMatrix& a, const ExactMatrix& b) {
    ExactMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j) == 0) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    if (b(k, l) != 0) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    return out;
}

inline std::optional<ExactMatrix> inverse(const ExactMatrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    std::size_t n = m.rows();
    ExactMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    RrefResult rr = rref(aug);
    for (std::size_t i = 0; i < n; ++i)
        if (rr.reduced(i, i) != 1) return std::nullopt;
    ExactMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = rr.reduced(i, n + j);
    return inv;
}

/// Coordinates of v in the span of the given (independent or not) vectors,
/// or nullopt when v lies outside the span.
inline std::optional<Vec> coords_in_span(const std::vector<Vec>& spanning, const Vec& v) {
    if (spanning.empty()) return is_zero_vec(v) ? std::optional<Vec>(Vec{}) : std::nullopt;
    std::size_t n = spanning.front().size();
    ExactMatrix m(n, spanning.size());
    for (std::size_t j = 0; j < spanning.size(); ++j) {
        if (spanning[j].size() != n) throw std::invalid_argument("coords_in_span: ragged input");
        for (std::size_t i = 0; i < n; ++i) m(i, j) = spanning[j][i];
    }
    return solve(m, v);
}

}  // namespace quiverforge
