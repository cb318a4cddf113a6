#pragma once

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nsurf/decomp.hpp"
#include "nsurf/gf2.hpp"
#include "nsurf/hform.hpp"
#include "nsurf/intmat.hpp"
#include "nsurf/invariants.hpp"
#include "nsurf/mcg.hpp"

namespace nsurf {

using Json = nlohmann::json;

/// Structurally invalid input (wrong shape, bad enum value, ...); the CLI
/// maps this to exit code 2 together with JSON syntax errors.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline const Json& member(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

inline int int_member(const Json& j, const char* key) {
    const Json& v = member(j, key);
    if (!v.is_number_integer()) throw ParseError(std::string("field \"") + key + "\" must be an integer");
    return v.get<int>();
}

} // namespace detail

// --- GF(2) matrices --------------------------------------------------------

inline Json gf2_matrix_to_json(const Gf2Matrix& m) {
    Json data = Json::array();
    for (int r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c));
        data.push_back(std::move(row));
    }
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline Gf2Matrix gf2_matrix_from_json(const Json& j) {
    int rows = detail::int_member(j, "rows");
    int cols = detail::int_member(j, "cols");
    const Json& data = detail::member(j, "data");
    if (rows < 1 || cols < 1) throw ParseError("matrix dims must be >= 1");
    if (!data.is_array() || static_cast<int>(data.size()) != rows)
        throw ParseError("\"data\" must hold `rows` rows");
    Gf2Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        const Json& row = data.at(std::size_t(r));
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw ParseError("row " + std::to_string(r) + " must hold `cols` entries");
        for (int c = 0; c < cols; ++c) {
            int v = row.at(std::size_t(c)).is_number_integer() ? row.at(std::size_t(c)).get<int>() : -1;
            if (v != 0 && v != 1) throw ParseError("GF(2) entries must be 0 or 1");
            m.set(r, c, v);
        }
    }
    return m;
}

// --- integer matrices (decimal-string entries) ------------------------------

inline Json int_matrix_to_json(const IntMatrix& m) {
    Json data = Json::array();
    for (int r = 0; r < m.size(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.size(); ++c) row.push_back(m.at(r, c).str());
        data.push_back(std::move(row));
    }
    return Json{{"rows", m.size()}, {"cols", m.size()}, {"data", std::move(data)}};
}

inline IntMatrix int_matrix_from_json(const Json& j) {
    int rows = detail::int_member(j, "rows");
    int cols = detail::int_member(j, "cols");
    if (rows != cols) throw ParseError("integer matrix must be square");
    if (rows < 0) throw ParseError("matrix size must be >= 0");
    const Json& data = detail::member(j, "data");
    if (!data.is_array() || static_cast<int>(data.size()) != rows)
        throw ParseError("\"data\" must hold `rows` rows");
    IntMatrix m(rows);
    for (int r = 0; r < rows; ++r) {
        const Json& row = data.at(std::size_t(r));
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw ParseError("row " + std::to_string(r) + " must hold `cols` entries");
        for (int c = 0; c < cols; ++c) {
            const Json& cell = row.at(std::size_t(c));
            try {
                if (cell.is_string())
                    m.at(r, c) = BigInt(cell.get<std::string>());
                else if (cell.is_number_integer())
                    m.at(r, c) = cell.get<long long>();
                else
                    throw ParseError("integer entries must be decimal strings or integers");
            } catch (const std::runtime_error& e) {
                throw ParseError("bad integer entry at (" + std::to_string(r) + "," +
                                 std::to_string(c) + "): " + e.what());
            }
        }
    }
    return m;
}

// --- H-forms ----------------------------------------------------------------

inline Json hform_to_json(const HForm& g) {
    Json gram = Json::array();
    for (int r = 0; r < g.dim; ++r) {
        Json row = Json::array();
        for (int c = 0; c < g.dim; ++c) row.push_back(g.gram.at(r, c));
        gram.push_back(std::move(row));
    }
    Json values = Json::array();
    for (const HValue& v : g.values) values.push_back(v.quarter_units());
    return Json{{"dim", g.dim}, {"gram", std::move(gram)}, {"values", std::move(values)}};
}

inline HForm hform_from_json(const Json& j) {
    int dim = detail::int_member(j, "dim");
    if (dim < 1) throw ParseError("H-form dim must be >= 1");
    const Json& gram_rows = detail::member(j, "gram");
    Json gram_obj{{"rows", dim}, {"cols", dim}, {"data", gram_rows}};
    Gf2Matrix gram = gf2_matrix_from_json(gram_obj);
    const Json& values = detail::member(j, "values");
    if (!values.is_array() || static_cast<int>(values.size()) != dim)
        throw ParseError("\"values\" must hold `dim` quarter-unit entries");
    std::vector<HValue> vals;
    for (const Json& v : values) {
        if (!v.is_number_integer() || v.get<int>() < 0 || v.get<int>() > 3)
            throw ParseError("H-form values must lie in {0,1,2,3} (quarter units)");
        vals.push_back(HValue(v.get<int>()));
    }
    return HForm(std::move(gram), std::move(vals));
}

// --- generator words ---------------------------------------------------------

inline Json bits_to_json(const Gf2Vector& v) {
    Json bits = Json::array();
    for (int i = 0; i < v.dim(); ++i) bits.push_back(v.bit(i));
    return bits;
}

inline Gf2Vector bits_from_json(const Json& j, int dim) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim)
        throw ParseError("bit vector must hold `dim` entries");
    Gf2Vector v(dim);
    for (int i = 0; i < dim; ++i) {
        const Json& b = j.at(std::size_t(i));
        if (!b.is_number_integer() || (b.get<int>() != 0 && b.get<int>() != 1))
            throw ParseError("bit entries must be 0 or 1");
        v.set(i, b.get<int>());
    }
    return v;
}

inline Json generator_word_to_json(const GeneratorWord& w) {
    Json letters = Json::array();
    for (const auto& t : w.letters) {
        Json letter{{"kind", t.kind == Transvection::Kind::T ? "T" : "S"},
                    {"a", bits_to_json(t.a)}};
        if (t.kind == Transvection::Kind::S) letter["b"] = bits_to_json(t.b);
        letters.push_back(std::move(letter));
    }
    return Json{{"letters", std::move(letters)}, {"dim", w.dim}};
}

inline GeneratorWord generator_word_from_json(const Json& j) {
    int dim = detail::int_member(j, "dim");
    if (dim < 1) throw ParseError("word dim must be >= 1");
    const Json& letters = detail::member(j, "letters");
    if (!letters.is_array()) throw ParseError("\"letters\" must be an array");
    GeneratorWord w{{}, dim};
    for (const Json& letter : letters) {
        std::string kind = detail::member(letter, "kind").get<std::string>();
        Gf2Vector a = bits_from_json(detail::member(letter, "a"), dim);
        if (kind == "T")
            w.letters.push_back(Transvection::t(std::move(a)));
        else if (kind == "S")
            w.letters.push_back(
                Transvection::s(std::move(a), bits_from_json(detail::member(letter, "b"), dim)));
        else
            throw ParseError("letter kind must be \"T\" or \"S\"");
    }
    return w;
}

// --- mapping class data -------------------------------------------------------

inline Json mapping_class_to_json(int genus, const MappingClassData& h) {
    Json j{{"genus", genus}, {"h_star", gf2_matrix_to_json(h.h_star)}};
    j["h_starstar"] = h.h_starstar ? int_matrix_to_json(*h.h_starstar) : Json(nullptr);
    return j;
}

inline std::pair<int, MappingClassData> mapping_class_from_json(const Json& j) {
    int genus = detail::int_member(j, "genus");
    if (genus < 1) throw ParseError("genus must be >= 1");
    Gf2Matrix h_star = gf2_matrix_from_json(detail::member(j, "h_star"));
    if (h_star.rows() != genus || h_star.cols() != genus)
        throw ParseError("h_star must be genus x genus");
    std::optional<IntMatrix> h_starstar;
    if (j.contains("h_starstar") && !j.at("h_starstar").is_null()) {
        h_starstar = int_matrix_from_json(j.at("h_starstar"));
        if (h_starstar->size() != genus - 1)
            throw ParseError("h_starstar must be (genus-1) x (genus-1)");
    }
    return {genus, MappingClassData{std::move(h_star), std::move(h_starstar)}};
}

// --- event logs ---------------------------------------------------------------

inline Json events_to_json(const std::vector<CEEvent>& events) {
    Json arr = Json::array();
    for (const CEEvent& e : events) {
        const char* k = e.kind == CEKind::E   ? "E"
                        : e.kind == CEKind::H ? "H"
                        : e.kind == CEKind::T ? "T"
                                              : "Q";
        Json ev{{"kind", k}};
        if (e.kind == CEKind::E || e.kind == CEKind::T) ev["sign"] = e.sign;
        arr.push_back(std::move(ev));
    }
    return Json{{"events", std::move(arr)}};
}

inline std::vector<CEEvent> events_from_json(const Json& j) {
    const Json& arr = detail::member(j, "events");
    if (!arr.is_array()) throw ParseError("\"events\" must be an array");
    std::vector<CEEvent> events;
    for (const Json& ev : arr) {
        std::string kind = detail::member(ev, "kind").get<std::string>();
        CEEvent e;
        if (kind == "E")
            e.kind = CEKind::E;
        else if (kind == "H")
            e.kind = CEKind::H;
        else if (kind == "T")
            e.kind = CEKind::T;
        else if (kind == "Q")
            e.kind = CEKind::Q;
        else
            throw ParseError("event kind must be one of E, H, T, Q");
        if (ev.contains("sign")) {
            const Json& s = ev.at("sign");
            if (!s.is_number_integer() || (s.get<int>() != 1 && s.get<int>() != -1))
                throw ParseError("event sign must be +1 or -1");
            e.sign = s.get<int>(); // ignored for H and Q
        }
        events.push_back(e);
    }
    return events;
}

// --- M elements ----------------------------------------------------------------

inline Json melement_to_json(const MElement& m) {
    Json terms = Json::array();
    for (const auto& [cls, coeff] : m.terms()) {
        Json term{{"a", cls.a}, {"b", cls.b}, {"c", cls.c}};
        if (coeff >= std::numeric_limits<long long>::min() &&
            coeff <= std::numeric_limits<long long>::max())
            term["coeff"] = coeff.convert_to<long long>();
        else
            term["coeff"] = coeff.str();
        terms.push_back(std::move(term));
    }
    return Json{{"degree", m.truncation_degree()}, {"terms", std::move(terms)}};
}

inline MElement melement_from_json(const Json& j) {
    int degree = detail::int_member(j, "degree");
    if (degree < 0) throw ParseError("degree must be >= 0");
    MElement m(degree);
    const Json& terms = detail::member(j, "terms");
    if (!terms.is_array()) throw ParseError("\"terms\" must be an array");
    for (const Json& term : terms) {
        int a = detail::int_member(term, "a");
        int b = detail::int_member(term, "b");
        int c = detail::int_member(term, "c");
        if (a < 0 || b < 0 || c < 0) throw ParseError("term exponents must be >= 0");
        const Json& coeff = detail::member(term, "coeff");
        BigInt value;
        if (coeff.is_string())
            value = BigInt(coeff.get<std::string>());
        else if (coeff.is_number_integer())
            value = coeff.get<long long>();
        else
            throw ParseError("term coeff must be an integer or decimal string");
        m.add_term(canonicalize(a, b, c), value);
    }
    return m;
}

// --- symbol assignments (relations-check input) ----------------------------------

inline Json group_to_json(const FinAbGroup& g) {
    Json f = Json::array();
    for (long long d : g.factors()) f.push_back(d);
    return f;
}

inline FinAbGroup group_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("\"group\" must be a nonempty array");
    std::vector<long long> factors;
    for (const Json& d : j) {
        if (!d.is_number_integer() || d.get<long long>() < 0)
            throw ParseError("group factors must be integers >= 0");
        factors.push_back(d.get<long long>());
    }
    return FinAbGroup(std::move(factors));
}

inline GroupElement group_element_from_json(const FinAbGroup& g, const Json& j) {
    if (!j.is_array() || j.size() != g.arity())
        throw ParseError("group element must hold one residue per factor");
    std::vector<long long> comps;
    for (const Json& c : j) {
        if (!c.is_number_integer()) throw ParseError("group element entries must be integers");
        comps.push_back(c.get<long long>());
    }
    return g.element(std::move(comps));
}

inline Json delta1_to_json(const Delta1Assignment& a) {
    auto elem = [&](const GroupElement& e) {
        Json arr = Json::array();
        for (long long c : e.comps) arr.push_back(c);
        return arr;
    };
    return Json{{"group", group_to_json(a.group)}, {"E+", elem(a.E[0])}, {"E-", elem(a.E[1])},
                {"H+", elem(a.H[0])}, {"H-", elem(a.H[1])}, {"T+", elem(a.T[0])},
                {"T-", elem(a.T[1])}, {"Q+", elem(a.Q[0])}, {"Q-", elem(a.Q[1])}};
}

inline Delta1Assignment delta1_from_json(const Json& j) {
    FinAbGroup group = group_from_json(detail::member(j, "group"));
    auto elem = [&](const char* key) {
        return group_element_from_json(group, detail::member(j, key));
    };
    Delta1Assignment a{group,
                       {elem("E+"), elem("E-")},
                       {elem("H+"), elem("H-")},
                       {elem("T+"), elem("T-")},
                       {elem("Q+"), elem("Q-")}};
    return a;
}

} // namespace nsurf
