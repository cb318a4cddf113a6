#pragma once

#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "nsurf/errors.hpp"

namespace nsurf {

using BigInt = boost::multiprecision::cpp_int;

/// Square matrix with exact arbitrary-precision integer entries. Holds the
/// rational homology action h_**, whose entries are unbounded; nothing here
/// ever touches floating point. n = 0 is allowed (empty action, det = 1).
class IntMatrix {
  public:
    explicit IntMatrix(int n) : n_(checked_dim(n)), entries_(std::size_t(n) * n, 0) {}

    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows)
        : IntMatrix(static_cast<int>(rows.size())) {
        int r = 0;
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != n_)
                throw DimensionMismatch("IntMatrix: ragged initializer");
            int c = 0;
            for (long long v : row) at(r, c++) = v;
            ++r;
        }
    }

    static IntMatrix identity(int n) {
        IntMatrix m(n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int size() const { return n_; }

    BigInt& at(int r, int c) { return entries_[std::size_t(r) * n_ + c]; }
    const BigInt& at(int r, int c) const { return entries_[std::size_t(r) * n_ + c]; }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        if (a.n_ != b.n_) throw DimensionMismatch("IntMatrix: product dim mismatch");
        IntMatrix c(a.n_);
        for (int i = 0; i < a.n_; ++i)
            for (int k = 0; k < a.n_; ++k) {
                if (a.at(i, k) == 0) continue;
                for (int j = 0; j < a.n_; ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        return c;
    }

    bool operator==(const IntMatrix& o) const = default;

  private:
    static int checked_dim(int n) {
        if (n < 0) throw DimensionMismatch("IntMatrix: n must be >= 0");
        return n;
    }

    int n_;
    std::vector<BigInt> entries_;
};

/// Exact sign of det(m) in {+1, -1} by Bareiss fraction-free elimination.
/// Throws SingularMatrix when the determinant vanishes. The empty matrix
/// has determinant 1 (empty product), hence sign +1.
inline int det_sign(const IntMatrix& m) {
    int n = m.size();
    if (n == 0) return +1;
    IntMatrix a = m;
    int swap_sign = 1;
    BigInt prev = 1;
    for (int k = 0; k < n; ++k) {
        if (a.at(k, k) == 0) {
            int pivot = -1;
            for (int r = k + 1; r < n; ++r)
                if (a.at(r, k) != 0) {
                    pivot = r;
                    break;
                }
            if (pivot < 0) throw SingularMatrix("det_sign: determinant is zero");
            for (int c = k; c < n; ++c) std::swap(a.at(k, c), a.at(pivot, c));
            swap_sign = -swap_sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                // Exact by the Bareiss division lemma: prev divides the bracket.
                a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
            }
            a.at(i, k) = 0;
        }
        prev = a.at(k, k);
    }
    int s = a.at(n - 1, n - 1) > 0 ? +1 : -1;
    return s * swap_sign;
}

} // namespace nsurf
