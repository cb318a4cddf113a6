#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nsurf/decomp.hpp"
#include "nsurf/errors.hpp"
#include "nsurf/gf2.hpp"
#include "nsurf/hform.hpp"
#include "nsurf/intmat.hpp"

namespace nsurf {

/// A closed non-orientable surface of genus k has dim H_1(F;Z/2) = k and
/// Euler characteristic 2 - k, so the parity c used by the triple-point
/// formula is k mod 2.
struct SurfaceDescriptor {
    int genus;
    int euler_char_parity;

    explicit SurfaceDescriptor(int genus_)
        : genus(genus_), euler_char_parity(genus_ & 1) {
        if (genus_ < 1) throw DimensionMismatch("SurfaceDescriptor: genus must be >= 1");
    }
};

/// The homology data of a mapping class: h_star is the action on
/// H_1(F;Z/2) (genus x genus, invertible), h_starstar the action on
/// H_1(F;Q) ((genus-1) x (genus-1), nonzero determinant). The rational
/// action is caller-supplied; no general formula recovers it from h_star.
struct MappingClassData {
    Gf2Matrix h_star;
    std::optional<IntMatrix> h_starstar;
};

/// h lies in N_g exactly when its Z/2 homology action preserves g; by the
/// regular-homotopy criterion this decides whether i and i.h are regularly
/// homotopic for an immersion i inducing g.
inline bool is_in_ng(const HForm& g, const MappingClassData& h) {
    return is_orthogonal(g, h.h_star);
}

inline int epsilon_sign(int sign) { return sign > 0 ? 0 : 1; }

/// Omega(h) = ( rank(h_* - Id) + eps(det h_**) ) mod 2, the common parity
/// of tangency and quadruple points of any generic regular homotopy from
/// i to i.h (defined when they are regularly homotopic, i.e. h in N_g).
inline int omega(const MappingClassData& h) {
    if (!h.h_starstar)
        throw MissingRationalAction("omega: h_** (rational homology action) is required");
    return (psi(h.h_star) + epsilon_sign(det_sign(*h.h_starstar))) & 1;
}

enum class GoodMapKind {
    SquaredTwist = 1,   // (T_c)^2, any A-circle c
    TwistOddCircle = 2, // T_c with g([c]) = 1
    TwistNullCircle = 3,// T_c with [c] = 0
    BoundaryTriple = 4, // S_P on a disc with two holes, g-values 0
    YMap = 5,           // crosscap slide
};

/// The GF(2) homology action of a good map. Kinds 1, 3 and 5 act
/// trivially on H_1(F;Z/2); kind 2 acts as the transvection T_[c], kind 4
/// as S_{[c],[d]}. Circles enter only through their homology classes.
inline Gf2Matrix good_map_z2_action(const HForm& g, GoodMapKind kind,
                                    const std::vector<Gf2Vector>& circles) {
    auto need = [&](std::size_t count) {
        if (circles.size() != count)
            throw IllegalGenerator("good_map_z2_action: kind " +
                                   std::to_string(static_cast<int>(kind)) + " takes " +
                                   std::to_string(count) + " circle class(es)");
        for (const auto& c : circles)
            if (c.dim() != g.dim)
                throw DimensionMismatch("good_map_z2_action: circle class dim mismatch");
    };
    switch (kind) {
        case GoodMapKind::SquaredTwist:
            need(1);
            if (bilinear(g, circles[0], circles[0]) != 0)
                throw IllegalGenerator("squared twist needs an A-circle: [c].[c] = 0");
            return Gf2Matrix::identity(g.dim);
        case GoodMapKind::TwistOddCircle:
            need(1);
            return apply_transvection(g, Transvection::t(circles[0]));
        case GoodMapKind::TwistNullCircle:
            need(1);
            if (!circles[0].is_zero())
                throw IllegalGenerator("null-circle twist needs [c] = 0");
            return Gf2Matrix::identity(g.dim);
        case GoodMapKind::BoundaryTriple:
            need(2);
            return apply_transvection(g, Transvection::s(circles[0], circles[1]));
        case GoodMapKind::YMap:
            need(0);
            return Gf2Matrix::identity(g.dim);
    }
    throw IllegalGenerator("good_map_z2_action: unknown kind");
}

struct KleinBottleClass {
    std::string name;
    MappingClassData data;
    int expected_omega;
};

/// The four mapping classes of the Klein bottle, with their homology data
/// and Omega values. h -> (h_*, h_**) identifies N(Kl) with Z/2 + Z/2:
/// u is the Y-map (crosscap slide), v the rotation exchanging the two
/// crosscap generators.
inline std::vector<KleinBottleClass> klein_bottle_catalog() {
    const Gf2Matrix id2 = Gf2Matrix::identity(2);
    const Gf2Matrix swap{{0, 1}, {1, 0}};
    const IntMatrix plus{{1}};
    const IntMatrix minus{{-1}};
    return {
        {"id", {id2, plus}, 0},
        {"u", {id2, minus}, 1},
        {"v", {swap, minus}, 0},
        {"vu", {swap, plus}, 1},
    };
}

/// T(i) = (N - c) / 2 for a stable immersion with N triple points on a
/// surface of Euler characteristic parity c; N and c always agree mod 2.
inline long long triple_invariant(long long n_triple, const SurfaceDescriptor& surface) {
    if (n_triple < 0) throw ParityViolation("triple_invariant: N must be >= 0");
    if ((n_triple & 1) != surface.euler_char_parity)
        throw ParityViolation("triple_invariant: N = " + std::to_string(n_triple) +
                              " has wrong parity for c = " +
                              std::to_string(surface.euler_char_parity));
    return (n_triple - surface.euler_char_parity) / 2;
}

} // namespace nsurf
