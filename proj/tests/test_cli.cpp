#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "nsurf/json_io.hpp"
#include "test_helpers.hpp"

using namespace nsurf;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(NSURF_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

class Fixtures {
  public:
    Fixtures() {
        dir_ = fs::temp_directory_path() / ("nsurf-cli-test-" + std::to_string(::getpid()));
        fs::create_directories(dir_);
    }
    ~Fixtures() { fs::remove_all(dir_); }

    std::string write(const std::string& name, const Json& j) {
        fs::path p = dir_ / name;
        std::ofstream(p) << j.dump();
        return p.string();
    }

    std::string write_raw(const std::string& name, const std::string& text) {
        fs::path p = dir_ / name;
        std::ofstream(p) << text;
        return p.string();
    }

  private:
    fs::path dir_;
};

} // namespace

TEST_CASE("cli end to end") {
    Fixtures fx;
    HForm plus_plus = HForm::orthonormal({HValue::half(), HValue::half()});
    std::string form2 = fx.write("form2.json", hform_to_json(plus_plus));
    std::string swap = fx.write("swap.json", gf2_matrix_to_json(Gf2Matrix{{0, 1}, {1, 0}}));

    SECTION("validate-form verdicts and exit codes") {
        CHECK(run_cli("validate-form --form " + form2).code == 0);
        CHECK(run_cli("validate-form --form " + form2).out == "ok\n");

        std::string bad = fx.write(
            "bad.json",
            hform_to_json(HForm(Gf2Matrix{{1, 1}, {1, 1}}, {HValue::half(), HValue::half()})));
        auto r = run_cli("validate-form --form " + bad);
        CHECK(r.code == 1);
        CHECK(r.out.find("degenerate") != std::string::npos);

        CHECK(run_cli("validate-form --form /nonexistent.json").code == 2);
        std::string garbage = fx.write_raw("garbage.json", "{not json");
        CHECK(run_cli("validate-form --form " + garbage).code == 2);
        CHECK(run_cli("no-such-command").code == 2);
    }

    SECTION("orthonormalize") {
        auto r = run_cli("orthonormalize --form " + form2);
        CHECK(r.code == 0);
        CHECK(r.out == "e1 = 10  g = 1/2\ne2 = 01  g = 1/2\n");
    }

    SECTION("decompose text and json") {
        auto r = run_cli("decompose --form " + form2 + " --matrix " + swap);
        CHECK(r.code == 0);
        CHECK(r.out == "1: T a=11\n");

        auto rj = run_cli("--json decompose --form " + form2 + " --matrix " + swap);
        CHECK(rj.code == 0);
        GeneratorWord w = generator_word_from_json(Json::parse(rj.out));
        CHECK(word_product(plus_plus, w) == Gf2Matrix{{0, 1}, {1, 0}});

        std::string id = fx.write("id.json", gf2_matrix_to_json(Gf2Matrix::identity(2)));
        CHECK(run_cli("decompose --form " + form2 + " --matrix " + id).out ==
              "(empty word)\n");

        // Non-orthogonal input is a domain error.
        std::string shear = fx.write("shear.json", gf2_matrix_to_json(Gf2Matrix{{1, 1}, {0, 1}}));
        CHECK(run_cli("decompose --form " + form2 + " --matrix " + shear).code == 1);
    }

    SECTION("rewrite-s-free") {
        HForm g9 = HForm::orthonormal(nsurf::testing::value_pattern(9, 0b000000111));
        std::string form9 = fx.write("form9.json", hform_to_json(g9));
        Gf2Vector a(9, {1, 0, 0, 1, 0, 0, 0, 0, 0});
        Gf2Vector b(9, {0, 1, 0, 0, 1, 0, 0, 0, 0});
        GeneratorWord w{{Transvection::s(a, b)}, 9};
        std::string word = fx.write("word.json", generator_word_to_json(w));

        auto r = run_cli("--json rewrite-s-free --form " + form9 + " --word " + word);
        CHECK(r.code == 0);
        GeneratorWord out = generator_word_from_json(Json::parse(r.out));
        REQUIRE(out.size() == 4);
        for (const auto& letter : out.letters)
            CHECK(letter.kind == Transvection::Kind::T);
        CHECK(word_product(g9, out) == word_product(g9, w));

        // Too small a dimension is a domain error.
        std::string word2 = fx.write("word2.json", generator_word_to_json(GeneratorWord{{}, 2}));
        CHECK(run_cli("rewrite-s-free --form " + form2 + " --word " + word2).code == 1);
    }

    SECTION("psi") {
        auto r = run_cli("psi --matrix " + swap);
        CHECK(r.code == 0);
        CHECK(r.out == "psi = 1\n");
    }

    SECTION("omega") {
        CHECK(run_cli("omega --klein u").out == "Omega = 1\n");
        CHECK(run_cli("omega --klein v").out == "Omega = 0\n");
        CHECK(run_cli("omega --klein id").out == "Omega = 0\n");
        CHECK(run_cli("omega --klein vu").out == "Omega = 1\n");
        CHECK(run_cli("omega --klein nope").code == 1);
        CHECK(run_cli("omega").code == 2);

        auto u = klein_bottle_catalog()[1];
        std::string mc = fx.write("u.json", mapping_class_to_json(2, u.data));
        auto r = run_cli("--json omega --file " + mc);
        CHECK(r.code == 0);
        CHECK(Json::parse(r.out)["omega"] == 1);

        // Missing rational action is a domain error.
        MappingClassData bare{Gf2Matrix::identity(2), {}};
        std::string mc2 = fx.write("bare.json", mapping_class_to_json(2, bare));
        CHECK(run_cli("omega --file " + mc2).code == 1);

        // The N_g warning goes to stderr; stdout still carries the value.
        HForm mixed = HForm::orthonormal({HValue::half(), HValue::minus_half()});
        std::string mixed_form = fx.write("mixed.json", hform_to_json(mixed));
        auto v = klein_bottle_catalog()[2];
        std::string vc = fx.write("v.json", mapping_class_to_json(2, v.data));
        auto rw = run_cli("omega --file " + vc + " --form " + mixed_form);
        CHECK(rw.code == 0);
        CHECK(rw.out == "Omega = 0\n");
    }

    SECTION("enumerate-group") {
        auto r = run_cli("enumerate-group --form " + form2);
        CHECK(r.code == 0);
        CHECK(r.out.substr(0, 10) == "order = 2\n");

        auto rj = run_cli("--json enumerate-group --form " + form2);
        Json j = Json::parse(rj.out);
        CHECK(j["order"] == 2);
        CHECK(gf2_matrix_from_json(j["elements"][0]) == Gf2Matrix::identity(2));
    }

    SECTION("f1u and universal") {
        Json log = events_to_json({{CEKind::T, +1},
                                   {CEKind::E, +1},
                                   {CEKind::T, +1},
                                   {CEKind::Q},
                                   {CEKind::H}});
        std::string events = fx.write("events.json", log);
        CHECK(run_cli("f1u --events " + events).out == "f1 = 2t + q\n");

        Json single_e = events_to_json({{CEKind::E, +1}});
        std::string e1 = fx.write("e1.json", single_e);
        auto r = run_cli("universal --events " + e1 + " --degree 2");
        CHECK(r.code == 0);
        CHECK(r.out == "F_2 = 1*zeta[p^2] (mod 4)\n");

        auto rj = run_cli("--json universal --events " + e1 + " --degree 2");
        CHECK(melement_from_json(Json::parse(rj.out)) ==
              universal_invariant({{CEKind::E, +1}}, 2));
    }

    SECTION("m-structure") {
        auto r = run_cli("m-structure 2");
        CHECK(r.code == 0);
        CHECK(r.out.substr(0, r.out.find('\n')) == "Z + Z/2 + Z/2 + Z/2 + Z/4 + Z/4");
        CHECK(run_cli("m-structure 13").code == 1);
    }

    SECTION("en-count") {
        auto r = run_cli("en-count --group 2 --degree 1");
        CHECK(r.code == 0);
        CHECK(r.out == "count = 8\n");
        CHECK(run_cli("en-count --group 2,2,2,2,2 --degree 1").code == 1); // order 32 > cap
    }

    SECTION("relations-check") {
        CHECK(run_cli("relations-check --universal").out == "ok\n");
        CHECK(run_cli("relations-check --universal").code == 0);

        FinAbGroup z4({4});
        auto e = [&](long long x) { return z4.element({x}); };
        Delta1Assignment bad{z4, {e(2), e(2)}, {e(2), e(2)}, {e(1), e(2)}, {e(0), e(0)}};
        std::string path = fx.write("bad_assignment.json", delta1_to_json(bad));
        auto r = run_cli("relations-check --assignment " + path);
        CHECK(r.code == 1);
        CHECK(r.out.find("violation") == 0);
        CHECK(run_cli("relations-check").code == 2); // neither input given
    }

    SECTION("klein-catalog") {
        auto r = run_cli("klein-catalog");
        CHECK(r.code == 0);
        CHECK(r.out.find("u: h*=[10;01]  h**=[-1]  Omega=1") != std::string::npos);
        CHECK(r.out.find("v: h*=[01;10]  h**=[-1]  Omega=0") != std::string::npos);

        Json j = Json::parse(run_cli("--json klein-catalog").out);
        REQUIRE(j["catalog"].size() == 4);
        CHECK(j["catalog"][1]["name"] == "u");
        CHECK(j["catalog"][1]["omega"] == 1);
    }

    SECTION("identical invocations are byte-identical") {
        for (const std::string& cmd : std::vector<std::string>{
                 "klein-catalog", "--json enumerate-group --form " + form2,
                 "m-structure 3", "--json m-structure 3"}) {
            auto a = run_cli(cmd);
            auto b = run_cli(cmd);
            CHECK(a.code == b.code);
            CHECK(a.out == b.out);
        }
    }
}
