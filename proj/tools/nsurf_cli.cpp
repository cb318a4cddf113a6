// nsurf: batch calculator for H-forms, orthogonal-group decompositions,
// mapping-class parity invariants and finite-order invariant structures.
//
// Exit codes: 0 success, 1 domain error or negative verdict, 2 I/O, JSON
// or usage error. Output is deterministic; pass --json for machine form.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nsurf/json_io.hpp"

using namespace nsurf;

namespace {

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return Json::parse(buf.str());
}

std::string matrix_text(const Gf2Matrix& m) { return m.to_string(); }

std::string word_text(const GeneratorWord& w) {
    if (w.empty()) return "(empty word)\n";
    std::string out;
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
        const auto& t = w.letters[i];
        out += std::to_string(i + 1) + ": ";
        if (t.kind == Transvection::Kind::T)
            out += "T a=" + t.a.to_string();
        else
            out += "S a=" + t.a.to_string() + " b=" + t.b.to_string();
        out += "\n";
    }
    return out;
}

void emit(bool as_json, const Json& j, const std::string& text) {
    if (as_json)
        std::cout << j.dump() << "\n";
    else
        std::cout << text;
}

int run_validate_form(bool as_json, const std::string& form_path) {
    HForm g = hform_from_json(read_json_file(form_path));
    auto violation = validate(g);
    if (!violation) {
        emit(as_json, Json{{"ok", true}}, "ok\n");
        return 0;
    }
    emit(as_json,
         Json{{"ok", false}, {"violation", violation->violation}, {"detail", violation->detail}},
         "violation: " + violation->violation + " (" + violation->detail + ")\n");
    return 1;
}

int run_orthonormalize(bool as_json, const std::string& form_path) {
    HForm g = hform_from_json(read_json_file(form_path));
    OrthonormalBasis on = orthonormalize(g);
    Json basis = Json::array(), values = Json::array();
    std::string text;
    for (std::size_t i = 0; i < on.basis.size(); ++i) {
        basis.push_back(bits_to_json(on.basis[i]));
        values.push_back(on.d[i].quarter_units());
        text += "e" + std::to_string(i + 1) + " = " + on.basis[i].to_string() +
                "  g = " + on.d[i].to_string() + "\n";
    }
    emit(as_json, Json{{"basis", basis}, {"values", values}}, text);
    return 0;
}

int run_decompose(bool as_json, const std::string& form_path, const std::string& matrix_path) {
    HForm g = hform_from_json(read_json_file(form_path));
    Gf2Matrix m = gf2_matrix_from_json(read_json_file(matrix_path));
    GeneratorWord w = decompose(g, m);
    emit(as_json, generator_word_to_json(w), word_text(w));
    return 0;
}

int run_rewrite(bool as_json, const std::string& form_path, const std::string& word_path) {
    HForm g = hform_from_json(read_json_file(form_path));
    GeneratorWord w = generator_word_from_json(read_json_file(word_path));
    GeneratorWord out = rewrite_s_free(g, w);
    emit(as_json, generator_word_to_json(out), word_text(out));
    return 0;
}

int run_psi(bool as_json, const std::string& matrix_path) {
    int value = psi(gf2_matrix_from_json(read_json_file(matrix_path)));
    emit(as_json, Json{{"psi", value}}, "psi = " + std::to_string(value) + "\n");
    return 0;
}

int run_omega(bool as_json, const std::string& file_path, const std::string& klein_name,
              const std::string& form_path) {
    MappingClassData h{Gf2Matrix::identity(1), {}};
    if (!klein_name.empty()) {
        bool found = false;
        for (auto& entry : klein_bottle_catalog())
            if (entry.name == klein_name) {
                h = entry.data;
                found = true;
            }
        if (!found)
            throw DomainError("omega: unknown Klein bottle class \"" + klein_name +
                              "\" (use id, u, v, vu)");
    } else if (!file_path.empty()) {
        h = mapping_class_from_json(read_json_file(file_path)).second;
    } else {
        throw ParseError("omega: pass --file FILE or --klein NAME");
    }
    if (!form_path.empty()) {
        HForm g = hform_from_json(read_json_file(form_path));
        if (!is_in_ng(g, h))
            std::cerr << "warning: h_* does not preserve the given form (h is not in N_g); "
                         "the formula value below is not a regular-homotopy parity\n";
    }
    int value = omega(h);
    emit(as_json, Json{{"omega", value}}, "Omega = " + std::to_string(value) + "\n");
    return 0;
}

int run_enumerate(bool as_json, const std::string& form_path) {
    HForm g = hform_from_json(read_json_file(form_path));
    auto grp = enumerate_group(g);
    Json elements = Json::array();
    std::string text = "order = " + std::to_string(grp.size()) + "\n";
    for (const auto& m : grp) {
        elements.push_back(gf2_matrix_to_json(m));
        text += "\n" + matrix_text(m) + "\n";
    }
    emit(as_json, Json{{"order", grp.size()}, {"elements", elements}}, text);
    return 0;
}

int run_f1u(bool as_json, const std::string& events_path) {
    UniversalValue v = f1u(events_from_json(read_json_file(events_path)));
    emit(as_json,
         Json{{"t", v.t_coeff}, {"p", v.p_coeff}, {"q", v.q_coeff}},
         "f1 = " + v.to_string() + "\n");
    return 0;
}

int run_universal(bool as_json, const std::string& events_path, int degree) {
    MElement m = universal_invariant(events_from_json(read_json_file(events_path)), degree);
    emit(as_json, melement_to_json(m), "F_" + std::to_string(degree) + " = " +
                                           m.to_string() + "\n");
    return 0;
}

int run_m_structure(bool as_json, int n) {
    MnStructure s = m_structure(n);
    Json factors = Json::array();
    std::string text = s.to_string() + "\n";
    for (const auto& f : s.factors) {
        factors.push_back(Json{{"modulus", f.modulus},
                               {"generator", f.generator.to_string()},
                               {"zeta", repetition(f.generator) > 0}});
        text += "  " + (f.modulus == 0 ? std::string("Z") : "Z/" + std::to_string(f.modulus)) +
                "  " +
                (repetition(f.generator) > 0 ? "zeta[" + f.generator.to_string() + "]"
                                             : f.generator.to_string()) +
                "\n";
    }
    emit(as_json, Json{{"n", n}, {"factors", factors}}, text);
    return 0;
}

int run_en_count(bool as_json, const std::string& group_text, int n) {
    FinAbGroup group = FinAbGroup::parse(group_text);
    BigInt count = count_en(group, n);
    emit(as_json,
         Json{{"n", n}, {"group", group_to_json(group)}, {"count", count.str()}},
         "count = " + count.str() + "\n");
    return 0;
}

int run_relations_check(bool as_json, const std::string& assignment_path, bool universal) {
    Delta1Assignment a = universal ? universal_delta1()
                                   : delta1_from_json(read_json_file(assignment_path));
    auto violation = codim2_violation(a);
    if (!violation) {
        emit(as_json, Json{{"ok", true}}, "ok\n");
        return 0;
    }
    emit(as_json, Json{{"ok", false}, {"violation", *violation}},
         "violation: " + *violation + "\n");
    return 1;
}

int run_klein_catalog(bool as_json) {
    Json entries = Json::array();
    std::string text;
    for (const auto& entry : klein_bottle_catalog()) {
        int value = omega(entry.data);
        Json j = mapping_class_to_json(2, entry.data);
        j["name"] = entry.name;
        j["omega"] = value;
        entries.push_back(std::move(j));
        const IntMatrix& hss = *entry.data.h_starstar;
        text += entry.name + ": h*=[" + entry.data.h_star.row(0).to_string() + ";" +
                entry.data.h_star.row(1).to_string() + "]  h**=[" + hss.at(0, 0).str() +
                "]  Omega=" + std::to_string(value) + "\n";
    }
    emit(as_json, Json{{"catalog", entries}}, text);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"immersion invariants of non-orientable surfaces: H-forms, orthogonal "
                 "decompositions, mapping-class parities, universal finite-order invariants"};
    app.require_subcommand(1);
    app.fallthrough();

    bool as_json = false;
    app.add_flag("--json", as_json, "emit strict JSON instead of text");

    std::string form_path, matrix_path, word_path, events_path, file_path;
    std::string klein_name, group_text, assignment_path;
    bool universal_assignment = false;
    int degree = 0, structure_n = 0;

    auto* validate_cmd = app.add_subcommand("validate-form", "check the H-form conditions");
    validate_cmd->add_option("--form", form_path, "H-form JSON file")->required();

    auto* ortho_cmd = app.add_subcommand("orthonormalize", "orthonormal basis and values");
    ortho_cmd->add_option("--form", form_path, "H-form JSON file")->required();

    auto* decomp_cmd =
        app.add_subcommand("decompose", "write an orthogonal map as transvection generators");
    decomp_cmd->add_option("--form", form_path, "H-form JSON file")->required();
    decomp_cmd->add_option("--matrix", matrix_path, "GF(2) matrix JSON file")->required();

    auto* rewrite_cmd =
        app.add_subcommand("rewrite-s-free", "replace S-letters by four T-letters (dim >= 9)");
    rewrite_cmd->add_option("--form", form_path, "H-form JSON file")->required();
    rewrite_cmd->add_option("--word", word_path, "generator word JSON file")->required();

    auto* psi_cmd = app.add_subcommand("psi", "rank(m - Id) mod 2");
    psi_cmd->add_option("--matrix", matrix_path, "GF(2) matrix JSON file")->required();

    auto* omega_cmd = app.add_subcommand("omega", "parity invariant of a mapping class");
    omega_cmd->add_option("--file", file_path, "mapping class JSON file");
    omega_cmd->add_option("--klein", klein_name, "built-in Klein bottle class: id, u, v, vu");
    omega_cmd->add_option("--form", form_path, "optional H-form; warns when h is not in N_g");

    auto* enum_cmd = app.add_subcommand("enumerate-group", "all elements of O(E,g), dim <= 6");
    enum_cmd->add_option("--form", form_path, "H-form JSON file")->required();

    auto* f1u_cmd = app.add_subcommand("f1u", "universal order-1 value of an event log");
    f1u_cmd->add_option("--events", events_path, "event log JSON file")->required();

    auto* universal_cmd =
        app.add_subcommand("universal", "universal order-n invariant of an event log");
    universal_cmd->add_option("--events", events_path, "event log JSON file")->required();
    universal_cmd->add_option("--degree", degree, "order n")->required();

    auto* mstruct_cmd = app.add_subcommand("m-structure", "invariant factors of M_n");
    mstruct_cmd->add_option("n", structure_n, "degree n")->required();

    auto* encount_cmd = app.add_subcommand("en-count", "|E_n(G)| by direct enumeration");
    encount_cmd->add_option("--group", group_text, "invariant factors, e.g. \"2,4\"")
        ->required();
    encount_cmd->add_option("--degree", degree, "order n")->required();

    auto* relations_cmd =
        app.add_subcommand("relations-check", "verify the codimension-2 relations");
    relations_cmd->add_option("--assignment", assignment_path, "assignment JSON file");
    relations_cmd->add_flag("--universal", universal_assignment,
                            "check the built-in universal assignment over G_U");

    auto* klein_cmd =
        app.add_subcommand("klein-catalog", "the four Klein bottle mapping classes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2; // usage problems are I/O-class errors
    }

    try {
        if (app.got_subcommand(validate_cmd)) return run_validate_form(as_json, form_path);
        if (app.got_subcommand(ortho_cmd)) return run_orthonormalize(as_json, form_path);
        if (app.got_subcommand(decomp_cmd)) return run_decompose(as_json, form_path, matrix_path);
        if (app.got_subcommand(rewrite_cmd)) return run_rewrite(as_json, form_path, word_path);
        if (app.got_subcommand(psi_cmd)) return run_psi(as_json, matrix_path);
        if (app.got_subcommand(omega_cmd))
            return run_omega(as_json, file_path, klein_name, form_path);
        if (app.got_subcommand(enum_cmd)) return run_enumerate(as_json, form_path);
        if (app.got_subcommand(f1u_cmd)) return run_f1u(as_json, events_path);
        if (app.got_subcommand(universal_cmd)) return run_universal(as_json, events_path, degree);
        if (app.got_subcommand(mstruct_cmd)) return run_m_structure(as_json, structure_n);
        if (app.got_subcommand(encount_cmd)) return run_en_count(as_json, group_text, degree);
        if (app.got_subcommand(relations_cmd))
            return run_relations_check(as_json, assignment_path, universal_assignment);
        if (app.got_subcommand(klein_cmd)) return run_klein_catalog(as_json);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: bad JSON: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
