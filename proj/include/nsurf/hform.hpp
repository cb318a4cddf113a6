#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nsurf/errors.hpp"
#include "nsurf/gf2.hpp"

namespace nsurf {

/// Element of H = (1/2 Z)/2Z, a cyclic group of order 4, stored in
/// quarter units: 0 <-> 0, 1 <-> 1/2, 2 <-> 1, 3 <-> -1/2. The subgroup
/// Z/2 of H is {0, 2}. Storing quarter units keeps every computation in
/// exact integer arithmetic; halves appear only when rendering.
class HValue {
  public:
    constexpr HValue() : qu_(0) {}
    constexpr explicit HValue(int quarter_units) : qu_(((quarter_units % 4) + 4) % 4) {}

    static constexpr HValue zero() { return HValue(0); }
    static constexpr HValue half() { return HValue(1); }
    static constexpr HValue one() { return HValue(2); }
    static constexpr HValue minus_half() { return HValue(3); }

    constexpr int quarter_units() const { return qu_; }

    /// True when the value lies outside Z/2, i.e. equals +-1/2.
    constexpr bool is_odd() const { return qu_ & 1; }

    friend constexpr HValue operator+(HValue a, HValue b) { return HValue(a.qu_ + b.qu_); }
    friend constexpr HValue operator-(HValue a, HValue b) { return HValue(a.qu_ - b.qu_); }
    constexpr HValue doubled() const { return HValue(2 * qu_); }

    constexpr bool operator==(const HValue&) const = default;

    std::string to_string() const {
        switch (qu_) {
            case 0: return "0";
            case 1: return "1/2";
            case 2: return "1";
            default: return "-1/2";
        }
    }

  private:
    int qu_;
};

/// Why an HForm candidate is not a valid H-form; `violation` is one of
/// "dimension mismatch", "not symmetric", "degenerate", "parity link",
/// "no odd vector".
struct HFormViolation {
    std::string violation;
    std::string detail;
};

/// An H-form g : E -> H on a GF(2) vector space E, presented by a chosen
/// basis: the Gram matrix of the associated bilinear form C and the value
/// of g on each basis vector. The basis need not be orthonormal (forms
/// ingested from a topological basis usually are not); orthonormalize()
/// produces one.
///
/// Validity means: gram symmetric and nondegenerate, values[i] odd exactly
/// when gram[i][i] = 1 (the parity link 2g(x) = C(x,x)), and at least one
/// basis vector with C(b,b) = 1 so that g takes a value outside Z/2.
struct HForm {
    int dim;
    Gf2Matrix gram;
    std::vector<HValue> values;

    HForm(Gf2Matrix gram_, std::vector<HValue> values_)
        : dim(gram_.rows()), gram(std::move(gram_)), values(std::move(values_)) {
        if (gram.cols() != dim || static_cast<int>(values.size()) != dim)
            throw DimensionMismatch("HForm: gram/values sizes disagree");
    }

    /// Form on an orthonormal basis: gram = Id, all values must be odd.
    static HForm orthonormal(const std::vector<HValue>& d) {
        return HForm(Gf2Matrix::identity(static_cast<int>(d.size())), d);
    }

    bool operator==(const HForm&) const = default;
};

/// C(x, y) = x^T gram y over GF(2).
inline int bilinear(const HForm& g, const Gf2Vector& x, const Gf2Vector& y) {
    return g.gram.apply(y).dot(x);
}

/// g(x), expanded over the stored basis: for x = sum of basis vectors b_i
/// over a support S, g(x) = sum_{i in S} g(b_i) + sum_{i<j in S} C(b_i,b_j),
/// the second sum landing in Z/2 = {0,2} quarter units.
inline HValue evaluate(const HForm& g, const Gf2Vector& x) {
    if (x.dim() != g.dim) throw DimensionMismatch("evaluate: vector dim mismatch");
    int qu = 0;
    const auto supp = x.support();
    for (std::size_t a = 0; a < supp.size(); ++a) {
        qu += g.values[supp[a]].quarter_units();
        for (std::size_t b = a + 1; b < supp.size(); ++b)
            qu += 2 * g.gram.at(supp[a], supp[b]);
    }
    return HValue(qu);
}

/// Checks the H-form conditions in a fixed order and reports the first
/// violation; std::nullopt means the form is valid.
inline std::optional<HFormViolation> validate(const HForm& g) {
    for (int i = 0; i < g.dim; ++i)
        for (int j = i + 1; j < g.dim; ++j)
            if (g.gram.at(i, j) != g.gram.at(j, i))
                return HFormViolation{"not symmetric",
                                      "gram[" + std::to_string(i) + "][" + std::to_string(j) +
                                          "] != gram[" + std::to_string(j) + "][" +
                                          std::to_string(i) + "]"};
    if (int r = rank(g.gram); r != g.dim)
        return HFormViolation{"degenerate", "gram has GF(2) rank " + std::to_string(r) +
                                                " < " + std::to_string(g.dim)};
    for (int i = 0; i < g.dim; ++i)
        if (g.values[i].is_odd() != (g.gram.at(i, i) == 1))
            return HFormViolation{"parity link",
                                  "2 g(b_" + std::to_string(i) + ") != C(b_" + std::to_string(i) +
                                      ", b_" + std::to_string(i) + ")"};
    for (int i = 0; i < g.dim; ++i)
        if (g.gram.at(i, i) == 1) return std::nullopt;
    return HFormViolation{"no odd vector",
                          "C(x,x) = 0 for all x: the bilinear form is alternating, so g maps "
                          "into Z/2"};
}

inline void ensure_valid(const HForm& g) {
    if (auto v = validate(g))
        throw InvalidForm("invalid H-form: " + v->violation + " (" + v->detail + ")");
}

/// An orthonormal basis e_1..e_n (C(e_i,e_j) = delta_ij) together with the
/// values d_i = g(e_i), each +-1/2. Vectors are coordinates in the form's
/// stored basis.
struct OrthonormalBasis {
    std::vector<Gf2Vector> basis;
    std::vector<HValue> d;
};

/// Diagonalizes the bilinear form. Greedy phase: repeatedly split off the
/// lowest-index remaining vector with C(v,v) = 1 and project the rest onto
/// its orthogonal complement; when no such vector remains, split off a
/// hyperbolic pair instead. Fix-up phase: each leftover hyperbolic pair
/// {u,w} is absorbed using an odd vector e already found, replacing
/// {e,u,w} by the pairwise-orthogonal odd triple {e+u, e+w, e+u+w}. A valid
/// H-form guarantees the first phase finds at least one odd vector, so the
/// fix-up always completes.
inline OrthonormalBasis orthonormalize(const HForm& g) {
    ensure_valid(g);
    std::vector<Gf2Vector> pending;
    for (int i = 0; i < g.dim; ++i) pending.push_back(Gf2Vector::unit(g.dim, i));
    std::vector<Gf2Vector> ortho;
    std::vector<std::pair<Gf2Vector, Gf2Vector>> hyperbolic;

    while (!pending.empty()) {
        std::size_t pick = pending.size();
        for (std::size_t i = 0; i < pending.size(); ++i)
            if (bilinear(g, pending[i], pending[i]) == 1) {
                pick = i;
                break;
            }
        if (pick < pending.size()) {
            Gf2Vector e = pending[pick];
            pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(pick));
            for (auto& w : pending)
                if (bilinear(g, w, e)) w ^= e;
            ortho.push_back(e);
        } else {
            // Alternating remainder: pair the first vector with the first
            // partner it meets nondegenerately.
            Gf2Vector u = pending.front();
            pending.erase(pending.begin());
            std::size_t j = 0;
            while (j < pending.size() && bilinear(g, u, pending[j]) == 0) ++j;
            if (j == pending.size())
                throw InvalidForm("orthonormalize: degenerate restriction (unreachable on a "
                                  "validated form)");
            Gf2Vector w = pending[j];
            pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(j));
            for (auto& x : pending) {
                if (bilinear(g, x, w)) x ^= u;
                if (bilinear(g, x, u)) x ^= w;
            }
            hyperbolic.emplace_back(u, w);
        }
    }

    for (const auto& [u, w] : hyperbolic) {
        if (ortho.empty())
            throw InvalidForm("orthonormalize: no odd vector to absorb a hyperbolic pair "
                              "(unreachable on a validated form)");
        Gf2Vector e = ortho.back();
        ortho.pop_back();
        ortho.push_back(e ^ u);
        ortho.push_back(e ^ w);
        ortho.push_back(e ^ u ^ w);
    }

    OrthonormalBasis result{std::move(ortho), {}};
    result.d.reserve(result.basis.size());
    for (const auto& e : result.basis) result.d.push_back(evaluate(g, e));
    return result;
}

/// A transvection generator: T_a : x -> x + C(x,a) a, orthogonal iff
/// g(a) = 1 or a = 0; or S_{a,b} : x -> x + C(x,b) a + C(x,a) b, orthogonal
/// iff g(a) = g(b) = g(a+b) = 0.
struct Transvection {
    enum class Kind { T, S };

    Kind kind;
    Gf2Vector a;
    Gf2Vector b; // ignored when kind == T

    static Transvection t(Gf2Vector a) {
        int d = a.dim();
        return Transvection{Kind::T, std::move(a), Gf2Vector(d)};
    }
    static Transvection s(Gf2Vector a, Gf2Vector b) {
        return Transvection{Kind::S, std::move(a), std::move(b)};
    }

    bool operator==(const Transvection& o) const {
        if (kind != o.kind || a != o.a) return false;
        return kind == Kind::T || b == o.b;
    }
};

inline void check_legal(const HForm& g, const Transvection& t) {
    if (t.a.dim() != g.dim || (t.kind == Transvection::Kind::S && t.b.dim() != g.dim))
        throw DimensionMismatch("transvection: vector dim mismatch");
    if (t.kind == Transvection::Kind::T) {
        if (!t.a.is_zero() && evaluate(g, t.a) != HValue::one())
            throw IllegalGenerator("T_a requires g(a) = 1 or a = 0");
    } else {
        if (evaluate(g, t.a) != HValue::zero() || evaluate(g, t.b) != HValue::zero() ||
            evaluate(g, t.a ^ t.b) != HValue::zero())
            throw IllegalGenerator("S_{a,b} requires g(a) = g(b) = g(a+b) = 0");
    }
}

/// Matrix of the transvection in the form's stored basis. Column j is the
/// image of basis vector b_j.
inline Gf2Matrix apply_transvection(const HForm& g, const Transvection& t) {
    check_legal(g, t);
    Gf2Matrix m = Gf2Matrix::identity(g.dim);
    if (t.kind == Transvection::Kind::T) {
        Gf2Vector ga = g.gram.apply(t.a); // C(b_j, a) = ga[j]
        for (int j = 0; j < g.dim; ++j)
            if (ga.bit(j))
                for (int i = 0; i < g.dim; ++i)
                    if (t.a.bit(i)) m.set(i, j, m.at(i, j) ^ 1);
    } else {
        Gf2Vector ga = g.gram.apply(t.a);
        Gf2Vector gb = g.gram.apply(t.b);
        for (int j = 0; j < g.dim; ++j) {
            if (gb.bit(j))
                for (int i = 0; i < g.dim; ++i)
                    if (t.a.bit(i)) m.set(i, j, m.at(i, j) ^ 1);
            if (ga.bit(j))
                for (int i = 0; i < g.dim; ++i)
                    if (t.b.bit(i)) m.set(i, j, m.at(i, j) ^ 1);
        }
    }
    return m;
}

/// Membership test for O(E,g): every basis image must keep its g-value and
/// the images must reproduce the Gram matrix. By polarization this implies
/// g(mx) = g(x) for all x, and nondegeneracy of C makes m invertible.
inline bool is_orthogonal(const HForm& g, const Gf2Matrix& m) {
    if (m.rows() != g.dim || m.cols() != g.dim)
        throw DimensionMismatch("is_orthogonal: matrix dim mismatch");
    std::vector<Gf2Vector> images;
    images.reserve(g.dim);
    for (int j = 0; j < g.dim; ++j) images.push_back(m.column(j));
    for (int j = 0; j < g.dim; ++j)
        if (evaluate(g, images[j]) != g.values[j]) return false;
    for (int i = 0; i < g.dim; ++i)
        for (int j = i + 1; j < g.dim; ++j)
            if (bilinear(g, images[i], images[j]) != g.gram.at(i, j)) return false;
    return true;
}

inline constexpr int kEnumerationDimCap = 6;

/// All elements of O(E,g), as matrices in the stored basis, sorted. Works
/// by backtracking over images of an orthonormal basis: the image of e_i
/// may be any vector with the same g-value that is C-orthogonal to the
/// images already chosen. Exhaustive, so capped at dim 6.
inline std::vector<Gf2Matrix> enumerate_group(const HForm& g) {
    if (g.dim > kEnumerationDimCap)
        throw DimensionTooLarge("enumerate_group: dim " + std::to_string(g.dim) +
                                " exceeds cap " + std::to_string(kEnumerationDimCap));
    OrthonormalBasis on = orthonormalize(g);
    const int n = g.dim;

    std::vector<Gf2Vector> all;
    all.reserve(std::size_t(1) << n);
    for (std::uint64_t code = 0; code < (std::uint64_t(1) << n); ++code)
        all.push_back(Gf2Vector::from_code(n, code));

    // Candidate images per slot, in vector-code order.
    std::vector<std::vector<Gf2Vector>> candidates(n);
    for (int i = 0; i < n; ++i)
        for (const auto& v : all)
            if (evaluate(g, v) == on.d[i]) candidates[i].push_back(v);

    Gf2Matrix basis_mat(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) basis_mat.set(i, j, on.basis[j].bit(i));
    Gf2Matrix basis_inv = inverse(basis_mat);

    std::vector<Gf2Matrix> group;
    std::vector<Gf2Vector> chosen;
    auto backtrack = [&](auto&& self, int slot) -> void {
        if (slot == n) {
            Gf2Matrix images(n, n);
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i) images.set(i, j, chosen[j].bit(i));
            group.push_back(images * basis_inv);
            return;
        }
        for (const auto& v : candidates[slot]) {
            bool ok = true;
            for (const auto& u : chosen)
                if (bilinear(g, v, u)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            chosen.push_back(v);
            self(self, slot + 1);
            chosen.pop_back();
        }
    };
    backtrack(backtrack, 0);

    std::sort(group.begin(), group.end());
    return group;
}

} // namespace nsurf
