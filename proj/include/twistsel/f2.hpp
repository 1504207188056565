#pragma once

// Dense linear algebra over F2 with bit-packed rows. Matrices here stay
// around a hundred columns, so plain word-XOR elimination is enough.

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "twistsel/arith.hpp"

namespace twistsel::f2 {

class F2Vector {
  public:
    F2Vector() = default;
    explicit F2Vector(std::size_t len) : len_(len), w_((len + 63) / 64, 0) {}
    F2Vector(std::initializer_list<int> bits) : F2Vector(bits.size()) {
        std::size_t i = 0;
        for (int b : bits) set(i++, b != 0);
    }

    std::size_t size() const { return len_; }
    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i, bool b) {
        if (b)
            w_[i >> 6] |= u64{1} << (i & 63);
        else
            w_[i >> 6] &= ~(u64{1} << (i & 63));
    }
    void flip(std::size_t i) { w_[i >> 6] ^= u64{1} << (i & 63); }

    F2Vector& operator^=(const F2Vector& o) {
        if (o.len_ != len_) throw std::invalid_argument("F2Vector xor: length mismatch");
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
        return *this;
    }

    bool dot(const F2Vector& o) const {
        if (o.len_ != len_) throw std::invalid_argument("F2Vector dot: length mismatch");
        u64 acc = 0;
        for (std::size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & o.w_[i];
        return __builtin_parityll(acc);
    }

    bool is_zero() const {
        for (u64 w : w_)
            if (w) return false;
        return true;
    }
    bool operator==(const F2Vector&) const = default;

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < len_; ++i) s += get(i) ? '1' : '0';
        return s;
    }

  private:
    std::size_t len_ = 0;
    std::vector<u64> w_;
};

class F2Matrix {
  public:
    F2Matrix() = default;
    F2Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), stride_((cols + 63) / 64), w_(rows * stride_, 0) {}
    F2Matrix(std::initializer_list<std::initializer_list<int>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        stride_ = (cols_ + 63) / 64;
        w_.assign(rows_ * stride_, 0);
        std::size_t r = 0;
        for (auto& row : rows) {
            if (row.size() != cols_) throw std::invalid_argument("ragged F2Matrix literal");
            std::size_t c = 0;
            for (int b : row) set(r, c++, b != 0);
            ++r;
        }
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const { return (w_[r * stride_ + (c >> 6)] >> (c & 63)) & 1; }
    void set(std::size_t r, std::size_t c, bool b) {
        if (b)
            w_[r * stride_ + (c >> 6)] |= u64{1} << (c & 63);
        else
            w_[r * stride_ + (c >> 6)] &= ~(u64{1} << (c & 63));
    }

    F2Vector row(std::size_t r) const {
        F2Vector v(cols_);
        for (std::size_t c = 0; c < cols_; ++c)
            if (get(r, c)) v.set(c, true);
        return v;
    }

    void xor_row_into(std::size_t dst, std::size_t src) {
        for (std::size_t i = 0; i < stride_; ++i) w_[dst * stride_ + i] ^= w_[src * stride_ + i];
    }
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < stride_; ++i) std::swap(w_[a * stride_ + i], w_[b * stride_ + i]);
    }

    void set_block(std::size_t r0, std::size_t c0, const F2Matrix& sub) {
        if (r0 + sub.rows() > rows_ || c0 + sub.cols() > cols_)
            throw std::invalid_argument("set_block out of range");
        for (std::size_t r = 0; r < sub.rows(); ++r)
            for (std::size_t c = 0; c < sub.cols(); ++c)
                if (sub.get(r, c)) set(r0 + r, c0 + c, true);
    }

    F2Vector mul(const F2Vector& x) const {
        if (x.size() != cols_) throw std::invalid_argument("F2Matrix::mul: size mismatch");
        F2Vector y(rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            u64 acc = 0;
            for (std::size_t c = 0; c < cols_; ++c) acc ^= (get(r, c) & x.get(c)) ? 1 : 0;
            y.set(r, acc & 1);
        }
        return y;
    }

    F2Matrix transpose() const {
        F2Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (get(r, c)) t.set(c, r, true);
        return t;
    }

    bool operator==(const F2Matrix&) const = default;

    std::string to_string() const {
        std::string s;
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) s += get(r, c) ? '1' : '0';
            s += '\n';
        }
        return s;
    }

  private:
    std::size_t rows_ = 0, cols_ = 0, stride_ = 0;
    std::vector<u64> w_;
};

inline F2Matrix identity(std::size_t n) {
    F2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

namespace detail {

// Reduced row echelon form with leftmost pivots; returns pivot columns.
inline std::vector<std::size_t> rref(F2Matrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t pr = r;
        while (pr < m.rows() && !m.get(pr, c)) ++pr;
        if (pr == m.rows()) continue;
        m.swap_rows(r, pr);
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (i != r && m.get(i, c)) m.xor_row_into(i, r);
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace detail

inline std::size_t rank(F2Matrix m) { return detail::rref(m).size(); }

// Basis of the right null space, free columns in ascending order.
inline std::vector<F2Vector> kernel_basis(F2Matrix m) {
    auto pivots = detail::rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<F2Vector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        F2Vector v(m.cols());
        v.set(f, true);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            if (m.get(r, f)) v.set(pivots[r], true);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Any solution of Mx = b (free variables zero, leftmost pivots), or empty.
inline std::optional<F2Vector> solve(const F2Matrix& m, const F2Vector& b) {
    if (b.size() != m.rows()) throw std::invalid_argument("solve: rhs size mismatch");
    F2Matrix aug(m.rows(), m.cols() + 1);
    aug.set_block(0, 0, m);
    for (std::size_t r = 0; r < m.rows(); ++r)
        if (b.get(r)) aug.set(r, m.cols(), true);
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t pr = r;
        while (pr < m.rows() && !aug.get(pr, c)) ++pr;
        if (pr == m.rows()) continue;
        aug.swap_rows(r, pr);
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (i != r && aug.get(i, c)) aug.xor_row_into(i, r);
        pivots.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < m.rows(); ++i)
        if (aug.get(i, m.cols())) return std::nullopt;
    F2Vector x(m.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i)
        if (aug.get(i, m.cols())) x.set(pivots[i], true);
    return x;
}

inline bool in_image(const F2Matrix& m, const F2Vector& b) { return solve(m, b).has_value(); }

}  // namespace twistsel::f2
