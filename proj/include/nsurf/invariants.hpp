#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nsurf/errors.hpp"
#include "nsurf/intmat.hpp"

namespace nsurf {

// ---------------------------------------------------------------------------
// Codimension-1 events and the universal order-1 value group
// ---------------------------------------------------------------------------

/// The four codimension-1 self-intersection events of a generic regular
/// homotopy: E (elliptic tangency), H (hyperbolic tangency), T (triple
/// point birth), Q (quadruple point). E and T strata carry a permanent
/// co-orientation; H and Q do not, so their crossing sign is meaningless.
enum class CEKind { E, H, T, Q };

struct CEEvent {
    CEKind kind;
    int sign = +1; // crossing direction; consumed only for T

    bool operator==(const CEEvent&) const = default;
};

/// Element of G_U = Zt + (Z/2)p + (Z/2)q: t counts signed triple-point
/// events, p the tangency parity, q the quadruple-point parity.
struct UniversalValue {
    long long t_coeff = 0;
    int p_coeff = 0;
    int q_coeff = 0;

    UniversalValue() = default;
    UniversalValue(long long t, int p, int q)
        : t_coeff(t), p_coeff(p & 1), q_coeff(q & 1) {}

    friend UniversalValue operator+(const UniversalValue& a, const UniversalValue& b) {
        return {a.t_coeff + b.t_coeff, a.p_coeff ^ b.p_coeff, a.q_coeff ^ b.q_coeff};
    }
    friend UniversalValue operator-(const UniversalValue& a, const UniversalValue& b) {
        return {a.t_coeff - b.t_coeff, a.p_coeff ^ b.p_coeff, a.q_coeff ^ b.q_coeff};
    }
    bool operator==(const UniversalValue&) const = default;

    std::string to_string() const {
        std::vector<std::string> parts;
        if (t_coeff == 1)
            parts.push_back("t");
        else if (t_coeff == -1)
            parts.push_back("-t");
        else if (t_coeff != 0)
            parts.push_back(std::to_string(t_coeff) + "t");
        if (p_coeff) parts.push_back("p");
        if (q_coeff) parts.push_back("q");
        if (parts.empty()) return "0";
        std::string s = parts[0];
        for (std::size_t i = 1; i < parts.size(); ++i) s += " + " + parts[i];
        return s;
    }
};

/// The value of the universal order-1 invariant on an event log, relative
/// to the log's starting immersion: signed T count, tangency parity
/// (types E and H), quadruple parity. Additive under log concatenation.
inline UniversalValue f1u(const std::vector<CEEvent>& events) {
    UniversalValue v;
    for (const auto& ev : events) {
        switch (ev.kind) {
            case CEKind::T:
                v.t_coeff += (ev.sign < 0 ? -1 : +1);
                break;
            case CEKind::E:
            case CEKind::H:
                v.p_coeff ^= 1;
                break;
            case CEKind::Q:
                v.q_coeff ^= 1;
                break;
        }
    }
    return v;
}

// ---------------------------------------------------------------------------
// Monomial classes of L = Z[[t,p,q]] / (2p, 2q, p^2 q - p q^2)
// ---------------------------------------------------------------------------

/// Equivalence class of a monomial t^a p^b q^c under p^2 q = p q^2, stored
/// in canonical form: whenever b >= 1 and c >= 1 the class representative
/// is (a, 1, b+c-1). The repetition r = max(0,b-1) + max(0,c-1) is
/// constant on each class.
struct MonomialClass {
    int a = 0, b = 0, c = 0;

    int degree() const { return a + b + c; }
    bool pure_t() const { return b == 0 && c == 0; }

    bool operator==(const MonomialClass&) const = default;

    // Order: by degree, then t-degree descending, then p descending; this
    // is the rendering order (t^2 before tp before pq before q^2).
    std::strong_ordering operator<=>(const MonomialClass& o) const {
        if (auto cmp = degree() <=> o.degree(); cmp != 0) return cmp;
        if (auto cmp = o.a <=> a; cmp != 0) return cmp;
        return o.b <=> b;
    }

    std::string to_string() const {
        if (degree() == 0) return "1";
        std::string s;
        auto pow = [&](const char* var, int e) {
            if (e == 0) return;
            s += var;
            if (e > 1) s += "^" + std::to_string(e);
        };
        pow("t", a);
        pow("p", b);
        pow("q", c);
        return s;
    }
};

inline MonomialClass canonicalize(int a, int b, int c) {
    if (a < 0 || b < 0 || c < 0)
        throw DomainError("canonicalize: exponents must be nonnegative");
    if (b >= 1 && c >= 1) return MonomialClass{a, 1, b + c - 1};
    return MonomialClass{a, b, c};
}

inline int repetition(const MonomialClass& cls) {
    return std::max(0, cls.b - 1) + std::max(0, cls.c - 1);
}

// ---------------------------------------------------------------------------
// The module M: truncated sums of t-monomials and zeta generators
// ---------------------------------------------------------------------------

/// Truncated element of M. A pure-t class t^a carries an integer
/// coefficient; every other class cls carries the coefficient of its
/// generator zeta_cls, reduced mod 2^(r+1) (since 2^r zeta = cls and
/// 2 cls = 0). The plain monomial cls is therefore stored as 2^r zeta_cls.
class MElement {
  public:
    explicit MElement(int truncation_degree) : degree_(truncation_degree) {
        if (truncation_degree < 0)
            throw DomainError("MElement: truncation degree must be >= 0");
    }

    static MElement zero(int degree) { return MElement(degree); }

    static MElement one(int degree) {
        MElement m(degree);
        m.add_term(MonomialClass{0, 0, 0}, 1);
        return m;
    }

    int truncation_degree() const { return degree_; }
    const std::map<MonomialClass, BigInt>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Adds coeff * zeta_cls (for pure-t classes: coeff * t^a); terms above
    /// the truncation degree are dropped, coefficients reduced.
    void add_term(const MonomialClass& cls, const BigInt& coeff) {
        if (cls.degree() > degree_) return;
        auto [it, inserted] = terms_.try_emplace(cls, 0);
        it->second = reduce(cls, it->second + coeff);
        if (it->second == 0) terms_.erase(it);
    }

    /// Coefficient of zeta_cls (0 when absent).
    BigInt coeff(const MonomialClass& cls) const {
        auto it = terms_.find(cls);
        return it == terms_.end() ? BigInt(0) : it->second;
    }

    MElement& operator+=(const MElement& o) {
        if (o.degree_ != degree_)
            throw DimensionMismatch("MElement: truncation degrees differ");
        for (const auto& [cls, c] : o.terms_) add_term(cls, c);
        return *this;
    }
    friend MElement operator+(MElement a, const MElement& b) { return a += b; }

    MElement scaled(const BigInt& k) const {
        MElement r(degree_);
        for (const auto& [cls, c] : terms_) r.add_term(cls, c * k);
        return r;
    }

    MElement truncated(int new_degree) const {
        MElement r(new_degree);
        for (const auto& [cls, c] : terms_) r.add_term(cls, c);
        return r;
    }

    /// The homogeneous part of degree n, kept at truncation n.
    MElement degree_part(int n) const {
        MElement r(n);
        for (const auto& [cls, c] : terms_)
            if (cls.degree() == n) r.add_term(cls, c);
        return r;
    }

    bool operator==(const MElement&) const = default;

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream out;
        bool first = true;
        for (const auto& [cls, c] : terms_) {
            if (!first) out << " + ";
            first = false;
            int r = repetition(cls);
            if (cls.pure_t()) {
                out << c;
                if (cls.degree() > 0) out << "*" << cls.to_string();
            } else if (r == 0) {
                out << c << "*" << cls.to_string();
            } else {
                out << c << "*zeta[" << cls.to_string() << "] (mod " << (1LL << (r + 1))
                    << ")";
            }
        }
        return out.str();
    }

  private:
    static BigInt reduce(const MonomialClass& cls, BigInt c) {
        if (cls.pure_t()) return c;
        BigInt modulus = BigInt(1) << (repetition(cls) + 1);
        c %= modulus;
        if (c < 0) c += modulus;
        return c;
    }

    int degree_;
    std::map<MonomialClass, BigInt> terms_;
};

/// t^m . zeta_f = zeta_{t^m f}: shifts every class by t^m, dropping what
/// overflows the truncation. Coefficients ride along unchanged because the
/// repetition of a class does not involve the t-degree.
inline MElement k_action(int m, const MElement& elem) {
    if (m < 0) throw DomainError("k_action: exponent must be >= 0");
    MElement r(elem.truncation_degree());
    for (const auto& [cls, c] : elem.terms())
        r.add_term(MonomialClass{cls.a + m, cls.b, cls.c}, c);
    return r;
}

/// Truncated power series in t alone (element of the subring K).
class KSeries {
  public:
    explicit KSeries(int degree) : coeffs_(std::size_t(degree) + 1, 0) {
        if (degree < 0) throw DomainError("KSeries: degree must be >= 0");
    }

    static KSeries one(int degree) {
        KSeries s(degree);
        s.coeffs_[0] = 1;
        return s;
    }

    /// F(t) = 1 + t + t^2 + ...
    static KSeries geometric(int degree) {
        KSeries s(degree);
        for (auto& c : s.coeffs_) c = 1;
        return s;
    }

    /// F(-t) = 1 - t.
    static KSeries one_minus_t(int degree) {
        KSeries s = one(degree);
        if (degree >= 1) s.coeffs_[1] = -1;
        return s;
    }

    /// F(n1 t) as the truncated |n1|-fold product of F(t) or F(-t).
    static KSeries f_power(long long n1, int degree) {
        KSeries acc = one(degree);
        const KSeries base = n1 >= 0 ? geometric(degree) : one_minus_t(degree);
        for (long long i = 0, reps = n1 >= 0 ? n1 : -n1; i < reps; ++i)
            acc = acc.mul(base);
        return acc;
    }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const BigInt& operator[](int j) const { return coeffs_[std::size_t(j)]; }
    BigInt& operator[](int j) { return coeffs_[std::size_t(j)]; }

    KSeries mul(const KSeries& o) const {
        int d = std::min(degree(), o.degree());
        KSeries r(d);
        for (int i = 0; i <= d; ++i) {
            if (coeffs_[std::size_t(i)] == 0) continue;
            for (int j = 0; i + j <= d; ++j)
                r.coeffs_[std::size_t(i + j)] += coeffs_[std::size_t(i)] * o[j];
        }
        return r;
    }

    MElement to_melement() const {
        MElement m(degree());
        for (int j = 0; j <= degree(); ++j) m.add_term(MonomialClass{j, 0, 0}, coeffs_[std::size_t(j)]);
        return m;
    }

    bool operator==(const KSeries&) const = default;

  private:
    std::vector<BigInt> coeffs_;
};

/// The action of a K-series on an M-element, term by term.
inline MElement k_apply(const KSeries& k, const MElement& elem) {
    MElement r(elem.truncation_degree());
    for (int j = 0; j <= std::min(k.degree(), elem.truncation_degree()); ++j) {
        if (k[j] == 0) continue;
        r += k_action(j, elem).scaled(k[j]);
    }
    return r;
}

// ---------------------------------------------------------------------------
// The structure of M_n
// ---------------------------------------------------------------------------

struct MnFactor {
    long long modulus; // 0 denotes Z
    MonomialClass generator;

    bool operator==(const MnFactor&) const = default;
};

struct MnStructure {
    int n = 0;
    std::vector<MnFactor> factors;

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (i) s += " + ";
            s += factors[i].modulus == 0 ? "Z" : "Z/" + std::to_string(factors[i].modulus);
        }
        return s.empty() ? "0" : s;
    }
};

inline constexpr int kMStructureDegreeCap = 12;

/// Invariant factors of M_n: one Z generated by t^n plus, for every
/// canonical class of degree n involving p or q, a Z/2^(r+1) generated by
/// its zeta. Sorted Z first, then by ascending modulus, then by class.
inline MnStructure m_structure(int n) {
    if (n < 0 || n > kMStructureDegreeCap)
        throw GuardViolation("m_structure: n must lie in [0, " +
                             std::to_string(kMStructureDegreeCap) + "]");
    MnStructure s;
    s.n = n;
    s.factors.push_back({0, MonomialClass{n, 0, 0}});
    for (int a = 0; a < n; ++a) {
        int m = n - a;
        std::vector<MonomialClass> classes;
        classes.push_back(MonomialClass{a, m, 0});
        classes.push_back(MonomialClass{a, 0, m});
        if (m >= 2) classes.push_back(MonomialClass{a, 1, m - 1});
        for (const auto& cls : classes)
            s.factors.push_back({1LL << (repetition(cls) + 1), cls});
    }
    std::sort(s.factors.begin(), s.factors.end(), [](const MnFactor& x, const MnFactor& y) {
        if (x.modulus != y.modulus) {
            if (x.modulus == 0) return true;
            if (y.modulus == 0) return false;
            return x.modulus < y.modulus;
        }
        return x.generator < y.generator;
    });
    return s;
}

// ---------------------------------------------------------------------------
// The universal power series F and its projections
// ---------------------------------------------------------------------------

/// F applied to the torsion part s in {0, p, q, p+q}, truncated.
inline MElement f_series_torsion(int p_coeff, int q_coeff, int degree) {
    MElement m(degree);
    if (!p_coeff && !q_coeff) {
        m.add_term(MonomialClass{0, 0, 0}, 1);
    } else if (p_coeff && !q_coeff) {
        for (int j = 0; j <= degree; ++j) m.add_term(MonomialClass{0, j, 0}, 1);
    } else if (!p_coeff && q_coeff) {
        for (int j = 0; j <= degree; ++j) m.add_term(MonomialClass{0, 0, j}, 1);
    } else {
        m.add_term(MonomialClass{0, 0, 0}, 1);
        m.add_term(MonomialClass{0, 1, 0}, 1);
        m.add_term(MonomialClass{0, 0, 1}, 1);
        for (int j = 2; j <= degree; ++j) {
            m.add_term(MonomialClass{0, j, 0}, 1);
            m.add_term(MonomialClass{0, 0, j}, 1);
            m.add_term(MonomialClass{0, 1, j - 1}, 1);
        }
    }
    return m;
}

/// F(v) truncated at the given degree: split v = n1 t + s and return
/// F(n1 t) F(s), the product being the K-action on M.
inline MElement f_series(const UniversalValue& v, int degree) {
    if (degree < 0) throw DomainError("f_series: degree must be >= 0");
    const KSeries k = KSeries::f_power(v.t_coeff, degree);
    if (!v.p_coeff && !v.q_coeff) return k.to_melement();
    return k_apply(k, f_series_torsion(v.p_coeff, v.q_coeff, degree));
}

/// F_n(v): the degree-n homogeneous part of F(v).
inline MElement f_n(const UniversalValue& v, int n) {
    if (n < 0) throw DomainError("f_n: n must be >= 0");
    return f_series(v, n).degree_part(n);
}

/// The universal order-n invariant of an event log: F_n(f1u(events)).
inline MElement universal_invariant(const std::vector<CEEvent>& events, int n) {
    return f_n(f1u(events), n);
}

// ---------------------------------------------------------------------------
// Finitely generated abelian coefficient groups
// ---------------------------------------------------------------------------

struct GroupElement {
    std::vector<long long> comps;

    bool operator==(const GroupElement&) const = default;
    auto operator<=>(const GroupElement&) const = default;
};

/// Direct sum of cyclic groups Z/d_i, with d_i = 0 denoting Z. Elements
/// are residue tuples, one component per factor, always stored reduced.
class FinAbGroup {
  public:
    explicit FinAbGroup(std::vector<long long> factors) : factors_(std::move(factors)) {
        for (long long d : factors_)
            if (d < 0) throw DomainError("FinAbGroup: factors must be >= 0");
    }

    /// Parses "2,4" or "0,2,2" (0 = Z).
    static FinAbGroup parse(const std::string& text) {
        std::vector<long long> f;
        std::string tok;
        std::istringstream in(text);
        while (std::getline(in, tok, ',')) {
            if (tok.empty()) continue;
            f.push_back(std::stoll(tok));
        }
        if (f.empty()) throw DomainError("FinAbGroup: empty factor list");
        return FinAbGroup(std::move(f));
    }

    const std::vector<long long>& factors() const { return factors_; }
    std::size_t arity() const { return factors_.size(); }

    bool finite() const {
        return std::all_of(factors_.begin(), factors_.end(), [](long long d) { return d > 0; });
    }

    BigInt order() const {
        if (!finite()) throw GuardViolation("FinAbGroup: group is infinite");
        BigInt o = 1;
        for (long long d : factors_) o *= d;
        return o;
    }

    GroupElement zero() const { return GroupElement{std::vector<long long>(arity(), 0)}; }

    GroupElement element(std::vector<long long> comps) const {
        if (comps.size() != arity())
            throw DimensionMismatch("FinAbGroup: element arity mismatch");
        GroupElement e{std::move(comps)};
        reduce(e);
        return e;
    }

    GroupElement add(const GroupElement& a, const GroupElement& b) const {
        check(a);
        check(b);
        GroupElement r = a;
        for (std::size_t i = 0; i < arity(); ++i) r.comps[i] += b.comps[i];
        reduce(r);
        return r;
    }

    GroupElement neg(const GroupElement& a) const { return scale(-1, a); }

    GroupElement sub(const GroupElement& a, const GroupElement& b) const {
        return add(a, neg(b));
    }

    GroupElement scale(long long k, const GroupElement& a) const {
        check(a);
        GroupElement r = a;
        for (auto& c : r.comps) c *= k;
        reduce(r);
        return r;
    }

    bool is_zero(const GroupElement& a) const {
        check(a);
        return std::all_of(a.comps.begin(), a.comps.end(), [](long long c) { return c == 0; });
    }

    bool is_two_torsion(const GroupElement& a) const { return is_zero(scale(2, a)); }

    /// Whether x = 2^r y is solvable: componentwise, 2^min(r, v2(d)) | x
    /// (for the Z factor, 2^r | x).
    bool divisible_by_pow2(const GroupElement& a, int r) const {
        check(a);
        for (std::size_t i = 0; i < arity(); ++i) {
            long long d = factors_[i], x = a.comps[i];
            long long g = 1;
            if (d == 0) {
                for (int k = 0; k < r && g <= (1LL << 61); ++k) g <<= 1;
            } else {
                long long dd = d;
                for (int k = 0; k < r && dd % 2 == 0; ++k) {
                    g <<= 1;
                    dd /= 2;
                }
            }
            if (x % g != 0) return false;
        }
        return true;
    }

    std::vector<GroupElement> all_elements() const {
        if (!finite()) throw GuardViolation("FinAbGroup: cannot enumerate infinite group");
        std::vector<GroupElement> out;
        GroupElement cur = zero();
        while (true) {
            out.push_back(cur);
            std::size_t i = 0;
            while (i < arity() && ++cur.comps[i] == factors_[i]) cur.comps[i++] = 0;
            if (i == arity()) break;
        }
        return out;
    }

    std::vector<GroupElement> two_torsion_elements() const {
        std::vector<GroupElement> out;
        GroupElement cur = zero();
        std::size_t i = arity();
        // Per factor the 2-torsion residues are {0} or {0, d/2}.
        std::vector<std::vector<long long>> choices(arity());
        for (std::size_t k = 0; k < arity(); ++k) {
            choices[k] = {0};
            if (factors_[k] > 0 && factors_[k] % 2 == 0) choices[k].push_back(factors_[k] / 2);
        }
        std::vector<std::size_t> idx(arity(), 0);
        while (true) {
            for (std::size_t k = 0; k < arity(); ++k) cur.comps[k] = choices[k][idx[k]];
            out.push_back(cur);
            i = 0;
            while (i < arity() && ++idx[i] == choices[i].size()) idx[i++] = 0;
            if (i == arity()) break;
        }
        return out;
    }

    std::string render(const GroupElement& a) const {
        check(a);
        std::string s = "(";
        for (std::size_t i = 0; i < arity(); ++i) {
            if (i) s += ",";
            s += std::to_string(a.comps[i]);
        }
        return s + ")";
    }

    bool operator==(const FinAbGroup&) const = default;

  private:
    void check(const GroupElement& a) const {
        if (a.comps.size() != arity())
            throw DimensionMismatch("FinAbGroup: element arity mismatch");
    }

    void reduce(GroupElement& a) const {
        for (std::size_t i = 0; i < arity(); ++i) {
            long long d = factors_[i];
            if (d == 0) continue;
            a.comps[i] %= d;
            if (a.comps[i] < 0) a.comps[i] += d;
        }
    }

    std::vector<long long> factors_;
};

/// |Hom(M_n, G)| from the invariant factors of M_n: a Z factor contributes
/// |G|, a Z/m factor contributes the number of m-torsion elements of G.
inline BigInt hom_count(const MnStructure& mn, const FinAbGroup& group) {
    if (!group.finite()) throw GuardViolation("hom_count: group must be finite");
    BigInt total = 1;
    for (const auto& factor : mn.factors) {
        if (factor.modulus == 0) {
            total *= group.order();
        } else {
            BigInt torsion = 1;
            for (long long d : group.factors()) torsion *= std::gcd(factor.modulus, d);
            total *= torsion;
        }
    }
    return total;
}

// ---------------------------------------------------------------------------
// Symbol tuples and the spaces Delta_n, E_n
// ---------------------------------------------------------------------------

/// The eight codimension-1 symbols R_e with R in {E,H,T,Q}, e in {+,-}.
enum class CESymbol { EPlus, EMinus, HPlus, HMinus, TPlus, TMinus, QPlus, QMinus };

/// Unordered n-tuple over the reduced alphabet Y = {T+, H+, Q+}, stored as
/// multiplicities (the canonical form of a multiset over a fixed
/// three-letter alphabet).
struct SymbolTuple {
    int t_plus = 0;
    int h_plus = 0;
    int q_plus = 0;

    int order() const { return t_plus + h_plus + q_plus; }

    bool operator==(const SymbolTuple&) const = default;
    auto operator<=>(const SymbolTuple&) const = default;

    std::string to_string() const {
        std::string s;
        for (int i = 0; i < t_plus; ++i) s += s.empty() ? "T+" : " T+";
        for (int i = 0; i < h_plus; ++i) s += s.empty() ? "H+" : " H+";
        for (int i = 0; i < q_plus; ++i) s += s.empty() ? "Q+" : " Q+";
        return s.empty() ? "[]" : "[" + s + "]";
    }
};

/// Collapses raw C_1 symbols along the codimension-2 relations:
/// T+- -> T+, E+- and H+- -> H+, Q+- -> Q+.
inline SymbolTuple delta_reduce(const std::vector<CESymbol>& raw) {
    SymbolTuple z;
    for (CESymbol s : raw) {
        switch (s) {
            case CESymbol::TPlus:
            case CESymbol::TMinus:
                ++z.t_plus;
                break;
            case CESymbol::EPlus:
            case CESymbol::EMinus:
            case CESymbol::HPlus:
            case CESymbol::HMinus:
                ++z.h_plus;
                break;
            case CESymbol::QPlus:
            case CESymbol::QMinus:
                ++z.q_plus;
                break;
        }
    }
    return z;
}

inline int tuple_repetition(const SymbolTuple& z) {
    return std::max(0, z.h_plus - 1) + std::max(0, z.q_plus - 1);
}

/// All multisets of size n over Y, in a fixed order (t descending, then h
/// descending).
inline std::vector<SymbolTuple> all_symbol_tuples(int n) {
    std::vector<SymbolTuple> out;
    for (int t = n; t >= 0; --t)
        for (int h = n - t; h >= 0; --h) out.push_back(SymbolTuple{t, h, n - t - h});
    return out;
}

/// A function on unordered n-tuples of reduced symbols, with values in a
/// coefficient group; the table must be total. Members of Delta_n send
/// every tuple containing H+ or Q+ to a 2-torsion value.
struct SymbolFunction {
    int n = 0;
    FinAbGroup group;
    std::map<SymbolTuple, GroupElement> table;

    const GroupElement& value(const SymbolTuple& z) const {
        auto it = table.find(z);
        if (it == table.end())
            throw MalformedFunction("SymbolFunction: missing tuple " + z.to_string());
        return it->second;
    }
};

/// Membership in E_n: (1) for n >= 3 the substitution H+H+Q+ = H+Q+Q+
/// leaves the value unchanged, and (2) every value g(z) is divisible by
/// 2^r(z) in the group. Assumes the table already satisfies the Delta_n
/// torsion conditions.
inline bool is_in_en(const SymbolFunction& f) {
    for (const auto& z : all_symbol_tuples(f.n)) {
        const GroupElement& v = f.value(z); // throws MalformedFunction when absent
        if (!f.group.divisible_by_pow2(v, tuple_repetition(z))) return false;
        if (f.n >= 3 && z.h_plus >= 2 && z.q_plus >= 1) {
            SymbolTuple w{z.t_plus, z.h_plus - 1, z.q_plus + 1};
            if (!(v == f.value(w))) return false;
        }
    }
    return true;
}

inline constexpr int kCountEnOrderCap = 4;
inline constexpr int kCountEnGroupCap = 16;

/// |E_n(G)| by direct enumeration of all Delta_n-consistent tables
/// (arbitrary values on pure-T+ tuples, 2-torsion elsewhere), counting the
/// tables accepted by is_in_en. The enumeration prunes on the per-tuple
/// divisibility condition and on the H+H+Q+ = H+Q+Q+ chain as it assigns,
/// which does not change the count.
inline BigInt count_en(const FinAbGroup& group, int n) {
    if (n < 0 || n > kCountEnOrderCap)
        throw GuardViolation("count_en: n must lie in [0, " +
                             std::to_string(kCountEnOrderCap) + "]");
    if (!group.finite() || group.order() > kCountEnGroupCap)
        throw GuardViolation("count_en: group must be finite of order <= " +
                             std::to_string(kCountEnGroupCap));

    const auto tuples = all_symbol_tuples(n);
    const auto everything = group.all_elements();
    const auto torsion = group.two_torsion_elements();

    std::map<SymbolTuple, GroupElement> assigned;
    BigInt count = 0;
    auto recurse = [&](auto&& self, std::size_t i) -> void {
        if (i == tuples.size()) {
            ++count;
            return;
        }
        const SymbolTuple& z = tuples[i];
        const auto& pool = (z.h_plus + z.q_plus == 0) ? everything : torsion;
        const int r = tuple_repetition(z);
        // In generation order the (t, h+1, q-1) partner precedes z.
        const GroupElement* must_equal = nullptr;
        if (n >= 3 && z.h_plus >= 1 && z.q_plus >= 2)
            must_equal = &assigned.at(SymbolTuple{z.t_plus, z.h_plus + 1, z.q_plus - 1});
        for (const auto& v : pool) {
            if (must_equal && !(v == *must_equal)) continue;
            if (!group.divisible_by_pow2(v, r)) continue;
            assigned.insert_or_assign(z, v);
            self(self, i + 1);
        }
        assigned.erase(z);
    };
    recurse(recurse, 0);
    return count;
}

// ---------------------------------------------------------------------------
// The codimension-2 relation checker for order-1 assignments
// ---------------------------------------------------------------------------

/// An assignment of a group element to each of the eight C_1 symbols;
/// index 0 holds the '+' value, index 1 the '-' value.
struct Delta1Assignment {
    FinAbGroup group;
    std::array<GroupElement, 2> E, H, T, Q;
};

/// Verifies the six codimension-2 relation families (plus the order-2
/// relations for H and Q) for both values of the degree subscript and all
/// sign resolutions. Returns the first violated relation, or nullopt.
inline std::optional<std::string> codim2_violation(const Delta1Assignment& g1) {
    const FinAbGroup& G = g1.group;
    auto fail = [&](const std::string& name, int e) {
        return std::optional<std::string>(name + " at e=" + (e == 0 ? "+" : "-"));
    };
    for (int e = 0; e < 2; ++e) {
        int me = 1 - e;
        if (!G.is_zero(G.scale(2, g1.H[e]))) return fail("0 = 2H_e", e);
        if (!G.is_zero(G.scale(2, g1.Q[e]))) return fail("0 = 2Q_e", e);
        for (int s : {+1, -1})
            if (!G.is_zero(G.add(g1.E[e], G.scale(s, g1.H[e]))))
                return fail("0 = E_e +- H_e", e);
        if (!G.is_zero(G.sub(g1.T[e], g1.T[me]))) return fail("0 = T_e - T_-e", e);
        if (!G.is_zero(G.add(G.sub(g1.T[me], g1.T[e]), G.sub(g1.E[e], g1.E[me]))))
            return fail("0 = T_-e - T_e - E_-e + E_e", e);
        for (int s1 : {+1, -1})
            for (int s2 : {+1, -1}) {
                if (!G.is_zero(G.add(G.sub(g1.T[me], g1.T[e]),
                                     G.add(G.scale(s1, g1.H[me]), G.scale(s2, g1.H[e])))))
                    return fail("0 = -T_e + T_-e +- H_-e +- H_e", e);
                if (!G.is_zero(G.add(G.add(G.scale(s1, g1.Q[e]), G.scale(s2, g1.Q[me])),
                                     G.sub(g1.T[me], g1.T[e]))))
                    return fail("0 = +-Q_e +-Q_-e - T_e + T_-e", e);
                if (!G.is_zero(G.add(G.scale(5 * s1, g1.Q[e]), G.scale(5 * s2, g1.Q[me]))))
                    return fail("0 = 5(+-Q_e) + 5(+-Q_-e)", e);
            }
    }
    return std::nullopt;
}

inline bool codim2_relations_check(const Delta1Assignment& g1) {
    return !codim2_violation(g1).has_value();
}

/// The universal assignment g_1^U over G_U = Zt + (Z/2)p + (Z/2)q
/// (factors ordered 0,2,2 = t,p,q): T -> t, E and H -> p, Q -> q.
inline Delta1Assignment universal_delta1() {
    FinAbGroup gu({0, 2, 2});
    GroupElement t = gu.element({1, 0, 0});
    GroupElement p = gu.element({0, 1, 0});
    GroupElement q = gu.element({0, 0, 1});
    return Delta1Assignment{gu, {p, p}, {p, p}, {t, t}, {q, q}};
}

} // namespace nsurf
