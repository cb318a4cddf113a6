#pragma once

#include <algorithm>
#include <cassert>
#include <string>
#include <vector>

#include "nsurf/errors.hpp"
#include "nsurf/gf2.hpp"
#include "nsurf/hform.hpp"

namespace nsurf {

/// An ordered list of transvection generators. Letters apply left to
/// right: letters[0] acts first on a vector, so the product matrix is
/// mat(letters[k-1]) * ... * mat(letters[0]).
struct GeneratorWord {
    std::vector<Transvection> letters;
    int dim = 0;

    std::size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }

    bool operator==(const GeneratorWord&) const = default;
};

inline Gf2Matrix word_product(const HForm& g, const GeneratorWord& w) {
    if (w.dim != g.dim) throw DimensionMismatch("word_product: word dim mismatch");
    Gf2Matrix p = Gf2Matrix::identity(g.dim);
    for (const auto& letter : w.letters) p = apply_transvection(g, letter) * p;
    return p;
}

/// Decomposes m in O(E,g) into transvection generators, following the
/// inductive scheme of the generation theorem: in an orthonormal basis
/// e_1..e_n, fix e_k for k = n down to 1. With v the current image of e_k:
///
///   Case A, C(v,e_k) = 0: one transvection T_{e_k+v} sends v to e_k.
///   Case B, C(v,e_k) = 1: pick the lowest-index e_m outside supp(v) with
///     m <= k. If some such e_m has g(e_m) = g(e_k), route v -> e_m -> e_k
///     by two Case-A transvections. Otherwise an S_{a,b} built from
///     supp(v) sends v to a Case-A position first. The three (a,b)
///     configurations below exhaust all value distributions on supp(v),
///     so the final branch is unreachable on orthogonal input.
///
/// The collected corrections are involutions, so reversing their order
/// yields a word whose product is exactly m. Every emitted S-letter
/// touches at most 6 orthonormal basis vectors.
inline GeneratorWord decompose(const HForm& g, const Gf2Matrix& m) {
    if (!is_orthogonal(g, m)) throw NotOrthogonal("decompose: matrix is not in O(E,g)");
    const OrthonormalBasis on = orthonormalize(g);
    const int n = g.dim;

    Gf2Matrix current = m;
    std::vector<Transvection> applied;

    auto apply_letter = [&](Transvection t) {
        current = apply_transvection(g, t) * current;
        applied.push_back(std::move(t));
    };

    for (int k = n - 1; k >= 0; --k) {
        Gf2Vector v = current.apply(on.basis[k]);
        if (v == on.basis[k]) continue;

        if (bilinear(g, v, on.basis[k]) == 0) {
            apply_letter(Transvection::t(v ^ on.basis[k])); // Case A
            continue;
        }

        // Case B. Support of v in the orthonormal basis: C(v, e_j) = 1.
        std::vector<int> supp, outside;
        for (int j = 0; j <= k; ++j)
            (bilinear(g, v, on.basis[j]) ? supp : outside).push_back(j);

        int matching = -1;
        for (int j : outside)
            if (on.d[j] == on.d[k]) {
                matching = j;
                break;
            }
        if (matching >= 0) {
            apply_letter(Transvection::t(v ^ on.basis[matching]));
            apply_letter(Transvection::t(on.basis[matching] ^ on.basis[k]));
            continue;
        }
        if (outside.empty())
            throw std::logic_error("decompose: supp(v) covers e_1..e_k (impossible for "
                                   "orthogonal input)");
        const int m0 = outside.front(); // necessarily g(e_m0) = -g(e_k)

        std::vector<int> same, opposite; // supp(v) minus e_k, split by value
        for (int j : supp)
            if (j != k) (on.d[j] == on.d[k] ? same : opposite).push_back(j);

        Gf2Vector a(n), b(n);
        if (!same.empty() && !opposite.empty()) {
            a = on.basis[m0] ^ on.basis[same[0]];
            b = on.basis[opposite[0]] ^ on.basis[k];
        } else if (same.size() >= 4) {
            a = on.basis[m0] ^ on.basis[same[0]];
            b = on.basis[same[1]] ^ on.basis[same[2]] ^ on.basis[same[3]] ^ on.basis[k];
        } else if (opposite.size() >= 4) {
            a = on.basis[m0] ^ on.basis[opposite[0]] ^ on.basis[opposite[1]] ^
                on.basis[opposite[2]];
            b = on.basis[opposite[3]] ^ on.basis[k];
        } else {
            throw std::logic_error("decompose: no S-configuration matches (impossible for "
                                   "orthogonal input)");
        }
        apply_letter(Transvection::s(a, b)); // sends v to v + b
        Gf2Vector moved = current.apply(on.basis[k]);
        assert(moved == (v ^ b));
        apply_letter(Transvection::t(moved ^ on.basis[k]));
    }

    assert(current.is_identity());
    std::reverse(applied.begin(), applied.end());
    return GeneratorWord{std::move(applied), n};
}

inline constexpr int kSFreeMinDim = 9;

/// Replaces every S_{a,b} letter by four T-letters using an auxiliary s
/// with g(s) = 1 supported on basis vectors free of supp(a) and supp(b):
/// S_{a,b} = T_s T_{s+a} T_{s+b} T_{s+a+b}. Needs dim >= 9 so that three
/// free orthonormal vectors always exist for the decomposition's own
/// words; arbitrary words with wider S-support raise NoSupportRoom.
inline GeneratorWord rewrite_s_free(const HForm& g, const GeneratorWord& w) {
    if (g.dim < kSFreeMinDim)
        throw DimensionTooSmall("rewrite_s_free: needs dim >= " + std::to_string(kSFreeMinDim));
    if (w.dim != g.dim) throw DimensionMismatch("rewrite_s_free: word dim mismatch");
    const OrthonormalBasis on = orthonormalize(g);
    const int n = g.dim;

    GeneratorWord out{{}, n};
    for (const auto& letter : w.letters) {
        if (letter.kind == Transvection::Kind::T) {
            out.letters.push_back(letter);
            continue;
        }
        check_legal(g, letter);
        std::vector<int> free_idx;
        for (int j = 0; j < n; ++j)
            if (bilinear(g, letter.a, on.basis[j]) == 0 &&
                bilinear(g, letter.b, on.basis[j]) == 0)
                free_idx.push_back(j);
        if (free_idx.size() < 3)
            throw NoSupportRoom("rewrite_s_free: S-letter leaves fewer than 3 free basis "
                                "vectors");
        // Among any three +-1/2 values two are equal; their sum is 1.
        Gf2Vector s(n);
        bool found = false;
        for (int x = 0; x < 3 && !found; ++x)
            for (int y = x + 1; y < 3 && !found; ++y)
                if (on.d[free_idx[x]] == on.d[free_idx[y]]) {
                    s = on.basis[free_idx[x]] ^ on.basis[free_idx[y]];
                    found = true;
                }
        assert(found && evaluate(g, s) == HValue::one());

        // T_{s+a+b} acts first.
        out.letters.push_back(Transvection::t(s ^ letter.a ^ letter.b));
        out.letters.push_back(Transvection::t(s ^ letter.b));
        out.letters.push_back(Transvection::t(s ^ letter.a));
        out.letters.push_back(Transvection::t(s));
    }
    return out;
}

/// psi(m) = rank(m - Id) mod 2, a homomorphism O(E,g) -> Z/2.
inline int psi(const Gf2Matrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("psi: matrix not square");
    return rank(m + Gf2Matrix::identity(m.rows())) & 1;
}

} // namespace nsurf
