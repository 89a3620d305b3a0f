#include "doctest.h"

#include <fstream>
#include <random>
#include <sstream>

#include "qdt/quiver.hpp"

using namespace qdt;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

QuiverModel load(const std::string& name) {
    return parse_model(slurp(std::string(QDT_MODEL_DIR) + "/" + name));
}

} // namespace

TEST_CASE("parse the quantum model") {
    auto m = load("q1_quantum.qp");
    CHECK(m.vertices.size() == 1);
    CHECK(m.arrows.size() == 3);
    CHECK(m.potential.size() == 2);
    CHECK(m.params == std::vector<std::string>{"q"});
    REQUIRE(m.cut.has_value());
    CHECK(m.cut->size() == 1);
    CHECK(m.arrows[(*m.cut)[0]].name == "z");
}

TEST_CASE("parse the conifold model") {
    auto m = load("conifold.qp");
    CHECK(m.vertices == std::vector<std::string>{"v1", "v2"});
    CHECK(m.arrows.size() == 4);
    int a1 = m.arrow_index("a1");
    CHECK(m.arrows[a1].src == 0);
    CHECK(m.arrows[a1].dst == 1);
    int b1 = m.arrow_index("b1");
    CHECK(m.arrows[b1].src == 1);
    CHECK(m.arrows[b1].dst == 0);
}

TEST_CASE("parse errors carry position") {
    CHECK_THROWS_AS(parse_model("vertex v\nbogus line\n"), ParseError);
    // non-composable word on the conifold shape
    std::string text = "vertex v1\nvertex v2\n"
                       "arrow x: v1 -> v1\narrow b1: v2 -> v1\n"
                       "potential W = x*b1\n";
    CHECK_THROWS_AS(parse_model(text), ParseError);
    // non-cyclic word
    CHECK_THROWS_AS(parse_model("vertex v1\nvertex v2\narrow a: v1 -> v2\n"
                                "potential W = a\n"),
                    ParseError);
    // undeclared parameter
    CHECK_THROWS_AS(parse_model("vertex v\narrow x: v -> v\n"
                                "potential W = r*x\n"),
                    ParseError);
    try {
        parse_model("vertex v\narrow x: v -> v\npotential W = x*y\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
    }
}

TEST_CASE("powers expand into repeated letters") {
    auto m = parse_model("vertex v\narrow x: v -> v\npotential W = x^3\n");
    REQUIRE(m.potential.size() == 1);
    CHECK(m.potential[0].word.size() == 3);
}

TEST_CASE("cyclic derivative of the quantum potential") {
    auto m = load("q1_quantum.qp");
    auto d = cyclic_derivative(m, m.arrow_index("z"));
    CHECK(render_ncpoly(m, d) == "x*y - q*y*x");
}

TEST_CASE("cyclic derivative of the conifold potential") {
    auto m = load("conifold.qp");
    auto d = cyclic_derivative(m, m.arrow_index("a1"));
    CHECK(render_ncpoly(m, d) == "b1*a2*b2 - q*b2*a2*b1");
}

TEST_CASE("cyclic derivative of a commutator") {
    auto m = parse_model("vertex v\narrow x: v -> v\narrow y: v -> v\n"
                         "arrow z: v -> v\npotential W = x*y*z - x*z*y\n");
    auto d = cyclic_derivative(m, m.arrow_index("x"));
    CHECK(render_ncpoly(m, d) == "y*z - z*y");
}

TEST_CASE("cyclic derivative ignores rotation") {
    std::mt19937 rng(606);
    std::uniform_int_distribution<int> len(1, 5);
    std::uniform_int_distribution<int> pick(0, 2);
    const char* names[] = {"x", "y", "z"};
    auto model_for = [](const std::vector<std::string>& word, int rot) {
        std::ostringstream pot;
        pot << "potential W = ";
        for (size_t i = 0; i < word.size(); ++i) {
            if (i) pot << "*";
            pot << word[(i + rot) % word.size()];
        }
        return parse_model("vertex v\narrow x: v -> v\narrow y: v -> v\n"
                           "arrow z: v -> v\n" +
                           pot.str() + "\n");
    };
    for (int rep = 0; rep < 30; ++rep) {
        int n = len(rng);
        std::vector<std::string> word(n);
        for (auto& w : word) w = names[pick(rng)];
        auto ref = model_for(word, 0);
        for (int rot = 1; rot < n; ++rot) {
            auto m = model_for(word, rot);
            for (int a = 0; a < 3; ++a)
                CHECK(render_ncpoly(m, cyclic_derivative(m, a)) ==
                      render_ncpoly(ref, cyclic_derivative(ref, a)));
        }
    }
}

TEST_CASE("euler form") {
    auto q1 = load("q1_quantum.qp");
    CHECK(euler_form(q1, {1}, {1}) == -2);
    auto con = load("conifold.qp");
    CHECK(euler_form(con, {1, 1}, {1, 1}) == -2);
    CHECK(euler_form(con, {2, 2}, {1, 1}) == 2 * euler_form(con, {1, 1}, {1, 1}));
    CHECK(euler_form(con, {1, 2}, {2, 1}) + euler_form(con, {1, 0}, {2, 1}) ==
          euler_form(con, {2, 2}, {2, 1}));
    CHECK_THROWS_AS(euler_form(con, {1}, {1, 1}), ShapeMismatch);
}

TEST_CASE("cut validation") {
    auto q1 = load("q1_quantum.qp");
    CHECK(validate_cut(q1, {q1.arrow_index("z")}).valid);
    auto jordan = load("q1_jordan.qp");
    CHECK(validate_cut(jordan, {jordan.arrow_index("z")}).valid);
    auto bad = validate_cut(jordan, {jordan.arrow_index("x")});
    CHECK(!bad.valid);
    CHECK(!bad.reason.empty());
    // multiplicity counts: z*z*y has cut degree 2 for {z}
    auto m = parse_model("vertex v\narrow y: v -> v\narrow z: v -> v\n"
                         "potential W = z*z*y\n");
    CHECK(!validate_cut(m, {m.arrow_index("z")}).valid);
}

TEST_CASE("cut degree") {
    auto q1 = load("q1_quantum.qp");
    std::vector<int> I{q1.arrow_index("z")};
    CHECK(cut_degree(q1, I, {1}) == 1);
    CHECK(cut_degree(q1, I, {2}) == 4);
    auto con = load("conifold.qp");
    CHECK(cut_degree(con, {con.arrow_index("a1")}, {1, 1}) == 1);
}

TEST_CASE("reduced presentation of the quantum model") {
    auto m = load("q1_quantum.qp");
    auto red = reduced_presentation(m, *m.cut);
    CHECK(red.quiver.vertices.size() == 1);
    CHECK(red.quiver.arrows.size() == 2);
    REQUIRE(red.relations.size() == 1);
    CHECK(render_ncpoly(red.quiver, red.relations[0]) == "x*y - q*y*x");
}

TEST_CASE("reduced presentation of the conifold") {
    auto m = load("conifold.qp");
    auto red = reduced_presentation(m, *m.cut);
    CHECK(red.quiver.arrows.size() == 3);
    REQUIRE(red.relations.size() == 1);
    CHECK(render_ncpoly(red.quiver, red.relations[0]) == "b1*a2*b2 - q*b2*a2*b1");
}

TEST_CASE("relations of a valid cut never mention cut arrows") {
    for (int n = 1; n <= 3; ++n) {
        auto m = parse_model(cyclic_model_text(n));
        REQUIRE(m.cut.has_value());
        CHECK(validate_cut(m, *m.cut).valid);
        auto red = reduced_presentation(m, *m.cut);
        CHECK(red.relations.size() == static_cast<size_t>(n + 1));
        for (const auto& rel : red.relations)
            for (const auto& term : rel)
                for (int a : term.word) {
                    CHECK(red.quiver.arrows[a].name.find('b') == std::string::npos);
                }
    }
}

TEST_CASE("dsl round trip on the corpus") {
    const char* files[] = {"q1_quantum.qp", "q1_jordan.qp", "q1_weyl.qp",
                           "q1_sklyanin.qp", "conifold.qp", "cyclic_2.qp"};
    for (const auto* f : files) {
        auto m = load(f);
        auto again = parse_model(render_model(m));
        CHECK(again == m);
    }
}

TEST_CASE("golden renderings") {
    struct Case {
        const char* model;
        const char* golden;
    };
    const Case cases[] = {
        {"q1_quantum.qp", "q1_quantum.relations.txt"},
        {"q1_jordan.qp", "q1_jordan.relations.txt"},
        {"conifold.qp", "conifold.relations.txt"},
        {"cyclic_2.qp", "cyclic_2.relations.txt"},
    };
    for (const auto& c : cases) {
        auto m = load(c.model);
        REQUIRE(m.cut.has_value());
        auto red = reduced_presentation(m, *m.cut);
        std::ostringstream os;
        for (const auto& rel : red.relations)
            os << render_ncpoly(red.quiver, rel) << "\n";
        CHECK(os.str() == slurp(std::string(QDT_GOLDEN_DIR) + "/" + c.golden));
    }
}
