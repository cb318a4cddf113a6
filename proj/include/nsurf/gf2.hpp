#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "nsurf/errors.hpp"

namespace nsurf {

/// Vector over GF(2), bit-packed into 64-bit words. Bit i of the value
/// encoding is entry i, so the induced integer order (operator<=>) is the
/// order used for deterministic enumeration everywhere in the library.
class Gf2Vector {
  public:
    explicit Gf2Vector(int dim) : dim_(dim), words_((dim + 63) / 64, 0) {
        if (dim < 1) throw DimensionMismatch("Gf2Vector: dim must be >= 1");
    }

    Gf2Vector(int dim, std::initializer_list<int> bits) : Gf2Vector(dim) {
        int i = 0;
        for (int b : bits) set(i++, b);
    }

    static Gf2Vector unit(int dim, int i) {
        Gf2Vector v(dim);
        v.set(i, 1);
        return v;
    }

    /// Vector whose bit i is bit i of `code` (code < 2^dim).
    static Gf2Vector from_code(int dim, std::uint64_t code) {
        Gf2Vector v(dim);
        v.words_[0] = code;
        return v;
    }

    int dim() const { return dim_; }

    int bit(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    void set(int i, int value) {
        check_index(i);
        std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (value & 1)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }

    void flip(int i) {
        check_index(i);
        words_[i >> 6] ^= std::uint64_t{1} << (i & 63);
    }

    Gf2Vector& operator^=(const Gf2Vector& o) {
        if (o.dim_ != dim_) throw DimensionMismatch("Gf2Vector: xor dims differ");
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
        return *this;
    }

    friend Gf2Vector operator^(Gf2Vector a, const Gf2Vector& b) { return a ^= b; }

    /// Parity of the pointwise AND: the standard GF(2) dot product.
    int dot(const Gf2Vector& o) const {
        if (o.dim_ != dim_) throw DimensionMismatch("Gf2Vector: dot dims differ");
        std::uint64_t acc = 0;
        for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & o.words_[w];
        return std::popcount(acc) & 1;
    }

    int weight() const {
        int c = 0;
        for (std::uint64_t w : words_) c += std::popcount(w);
        return c;
    }

    bool is_zero() const {
        for (std::uint64_t w : words_)
            if (w) return false;
        return true;
    }

    std::vector<int> support() const {
        std::vector<int> s;
        for (int i = 0; i < dim_; ++i)
            if (bit(i)) s.push_back(i);
        return s;
    }

    bool operator==(const Gf2Vector& o) const = default;

    std::strong_ordering operator<=>(const Gf2Vector& o) const {
        if (auto c = dim_ <=> o.dim_; c != 0) return c;
        for (std::size_t w = words_.size(); w-- > 0;)
            if (auto c = words_[w] <=> o.words_[w]; c != 0) return c;
        return std::strong_ordering::equal;
    }

    /// Entries as a compact string, entry 0 first: "1101".
    std::string to_string() const {
        std::string s(dim_, '0');
        for (int i = 0; i < dim_; ++i) s[i] = char('0' + bit(i));
        return s;
    }

  private:
    void check_index(int i) const {
        if (i < 0 || i >= dim_) throw DimensionMismatch("Gf2Vector: index out of range");
    }

    int dim_;
    std::vector<std::uint64_t> words_;
};

/// Dense matrix over GF(2); rows are bit-packed Gf2Vectors. All arithmetic
/// is exact mod 2 and all pivot choices are lowest-index, so every derived
/// quantity is reproducible.
class Gf2Matrix {
  public:
    Gf2Matrix(int rows, int cols)
        : rows_(checked_dim(rows)), cols_(checked_dim(cols)),
          row_data_(rows_, Gf2Vector(cols_)) {}

    Gf2Matrix(std::initializer_list<std::initializer_list<int>> rows)
        : Gf2Matrix(static_cast<int>(rows.size()),
                    rows.size() ? static_cast<int>(rows.begin()->size()) : 0) {
        int r = 0;
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != cols_)
                throw DimensionMismatch("Gf2Matrix: ragged initializer");
            int c = 0;
            for (int v : row) row_data_[r].set(c++, v);
            ++r;
        }
    }

    static Gf2Matrix identity(int n) {
        Gf2Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.set(i, i, 1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    int at(int r, int c) const { return row_data_[r].bit(c); }
    void set(int r, int c, int v) { row_data_[r].set(c, v); }

    const Gf2Vector& row(int r) const { return row_data_[r]; }
    Gf2Vector& row(int r) { return row_data_[r]; }

    Gf2Vector column(int c) const {
        Gf2Vector v(rows_);
        for (int r = 0; r < rows_; ++r) v.set(r, at(r, c));
        return v;
    }

    /// Matrix-vector product over GF(2).
    Gf2Vector apply(const Gf2Vector& x) const {
        if (x.dim() != cols_) throw DimensionMismatch("Gf2Matrix: apply dim mismatch");
        Gf2Vector y(rows_);
        for (int r = 0; r < rows_; ++r) y.set(r, row_data_[r].dot(x));
        return y;
    }

    friend Gf2Matrix operator*(const Gf2Matrix& a, const Gf2Matrix& b) {
        if (a.cols_ != b.rows_) throw DimensionMismatch("Gf2Matrix: product dim mismatch");
        Gf2Matrix c(a.rows_, b.cols_);
        for (int r = 0; r < a.rows_; ++r)
            for (int k = 0; k < a.cols_; ++k)
                if (a.at(r, k)) c.row_data_[r] ^= b.row_data_[k];
        return c;
    }

    friend Gf2Matrix operator+(const Gf2Matrix& a, const Gf2Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw DimensionMismatch("Gf2Matrix: sum dim mismatch");
        Gf2Matrix c = a;
        for (int r = 0; r < a.rows_; ++r) c.row_data_[r] ^= b.row_data_[r];
        return c;
    }

    Gf2Matrix transposed() const {
        Gf2Matrix t(cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) t.set(c, r, at(r, c));
        return t;
    }

    bool is_identity() const {
        if (rows_ != cols_) return false;
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c)
                if (at(r, c) != (r == c)) return false;
        return true;
    }

    bool operator==(const Gf2Matrix& o) const = default;

    std::strong_ordering operator<=>(const Gf2Matrix& o) const {
        if (auto c = rows_ <=> o.rows_; c != 0) return c;
        if (auto c = cols_ <=> o.cols_; c != 0) return c;
        for (int r = 0; r < rows_; ++r)
            if (auto c = row_data_[r] <=> o.row_data_[r]; c != 0) return c;
        return std::strong_ordering::equal;
    }

    std::string to_string() const {
        std::string s;
        for (int r = 0; r < rows_; ++r) {
            s += row_data_[r].to_string();
            if (r + 1 < rows_) s += '\n';
        }
        return s;
    }

  private:
    static int checked_dim(int v) {
        if (v < 1) throw DimensionMismatch("Gf2Matrix: rows, cols must be >= 1");
        return v;
    }

    int rows_, cols_;
    std::vector<Gf2Vector> row_data_;
};

/// GF(2) row rank by forward elimination, lowest-index pivots.
inline int rank(Gf2Matrix m) {
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int pivot = -1;
        for (int i = r; i < m.rows(); ++i)
            if (m.at(i, c)) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        std::swap(m.row(r), m.row(pivot));
        for (int i = r + 1; i < m.rows(); ++i)
            if (m.at(i, c)) m.row(i) ^= m.row(r);
        ++r;
    }
    return r;
}

inline Gf2Matrix mat_mul(const Gf2Matrix& a, const Gf2Matrix& b) { return a * b; }

/// Inverse of a square GF(2) matrix (Gauss-Jordan).
inline Gf2Matrix inverse(const Gf2Matrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("inverse: matrix not square");
    int n = m.rows();
    Gf2Matrix a = m;
    Gf2Matrix inv = Gf2Matrix::identity(n);
    for (int c = 0; c < n; ++c) {
        int pivot = -1;
        for (int r = c; r < n; ++r)
            if (a.at(r, c)) {
                pivot = r;
                break;
            }
        if (pivot < 0) throw SingularMatrix("inverse: matrix singular over GF(2)");
        std::swap(a.row(c), a.row(pivot));
        std::swap(inv.row(c), inv.row(pivot));
        for (int r = 0; r < n; ++r)
            if (r != c && a.at(r, c)) {
                a.row(r) ^= a.row(c);
                inv.row(r) ^= inv.row(c);
            }
    }
    return inv;
}

} // namespace nsurf
