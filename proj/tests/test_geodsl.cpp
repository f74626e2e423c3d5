#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "sharq/geodsl.hpp"

using namespace sharq;
using namespace sharq::geodsl;

namespace {

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("parsing declarations") {
    Script s = parse("point A = (0, 0)\nline g = omega\n");
    REQUIRE(s.statements.size() == 2);
    const auto& p = std::get<PointDecl>(s.statements[0].node);
    CHECK(p.name == "A");
    CHECK(p.ctor == PointDecl::Ctor::coords);
    const auto& l = std::get<LineDecl>(s.statements[1].node);
    CHECK(l.ctor == LineDecl::Ctor::omega);
    CHECK(s.source_map.size() == 2);
    CHECK(s.source_map[1] == 17);  // byte offset of the second statement
}

TEST_CASE("parse diagnostics carry positions") {
    SECTION("use before declaration") {
        try {
            parse("point A = (0, 0)\nassert collinear(A, B, A)\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.diagnostic().kind == Diagnostic::Kind::use_before_decl);
            CHECK(e.diagnostic().pos.line == 2);
            CHECK(e.diagnostic().pos.col == 21);
        }
    }

    SECTION("redeclaration") {
        try {
            parse("point A = (0, 0)\npoint A = (1, 1)\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.diagnostic().kind == Diagnostic::Kind::redeclaration);
            CHECK(e.diagnostic().pos.line == 2);
        }
    }

    SECTION("arity mismatch") {
        try {
            parse("point A = (0,0)\npoint B = (1,1)\npoint C = (2,3)\nconic k = through(A, B, C)\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.diagnostic().kind == Diagnostic::Kind::arity_mismatch);
            CHECK(e.diagnostic().pos.line == 4);
        }
    }

    SECTION("syntax error") {
        try {
            parse("point A = (1, 2\npoint B = (0, 0)\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.diagnostic().kind == Diagnostic::Kind::syntax);
            CHECK(e.diagnostic().pos.line == 2);
            CHECK(e.diagnostic().pos.col == 1);
        }
    }

    SECTION("type mismatch is a positioned syntax error") {
        CHECK_THROWS_AS(parse("point A = (0,0)\npoint B = (1,1)\npoint P = meet(A, B)\n"),
                        ParseError);
    }
}

TEST_CASE("evaluating the parallel-chord construction") {
    Script s = parse(read_file(std::filesystem::path(SHARQ_SCRIPTS_DIR) / "problem1.geo"));
    EvalResult r = evaluate(s);
    REQUIRE_FALSE(r.error.has_value());
    CHECK(r.all_passed());

    const auto& m = std::get<HPoint>(r.env.at("M"));
    CHECK(m == HPoint(Integer(80), Integer(48), Integer(17)));
    const auto& n = std::get<HPoint>(r.env.at("N"));
    CHECK(n == HPoint(Integer(16), Integer(48), Integer(13)));
}

TEST_CASE("evaluation errors are positioned and stop the run") {
    Script s = parse(
        "point A = (0, 0)\n"
        "point B = (1, 0)\n"
        "line l = join(A, B)\n"
        "point P = meet(l, l)\n"
        "assert on(A, l)\n");
    EvalResult r = evaluate(s);
    REQUIRE(r.error.has_value());
    CHECK(r.error->pos.line == 4);
    CHECK(r.error->message.find("IdenticalLines") != std::string::npos);
    CHECK(r.assertions.empty());  // evaluation stopped before the assertion
}

TEST_CASE("assertion failures do not stop evaluation") {
    Script s = parse(
        "point A = (0, 0)\n"
        "point B = (2, 0)\n"
        "point C = (1, 1)\n"
        "assert collinear(A, B, C)\n"
        "point D = (1, 0)\n"
        "assert collinear(A, B, D)\n");
    EvalResult r = evaluate(s);
    REQUIRE_FALSE(r.error.has_value());
    REQUIRE(r.assertions.size() == 2);
    CHECK_FALSE(r.assertions[0].passed);
    CHECK(r.assertions[1].passed);
    CHECK_FALSE(r.all_passed());

    std::string diag = format_diagnostics(r);
    CHECK(diag.find("FAIL line 4") != std::string::npos);
    CHECK(diag.find("PASS line 6") != std::string::npos);
    CHECK(diag.find("C = (1 : 1 : 1)") != std::string::npos);  // operand values on failure
    CHECK(diag.find("2 assertions, 1 passed") != std::string::npos);
}

TEST_CASE("diagnostics formatting") {
    EvalResult empty = evaluate(parse(""));
    CHECK(format_diagnostics(empty) == "0 assertions, 0 passed\n");
}

TEST_CASE("parse-print round trip") {
    for (const char* name : {"problem1.geo", "problem1star.geo", "problem2.geo", "problem3.geo",
                             "problem4.geo", "thm6.geo", "thm7.geo", "thm8.geo"}) {
        Script original = parse(read_file(std::filesystem::path(SHARQ_SCRIPTS_DIR) / name));
        Script reparsed = parse(print_script(original));
        INFO(name);
        CHECK(reparsed == original);
    }
}

TEST_CASE("evaluation is deterministic") {
    std::string src = read_file(std::filesystem::path(SHARQ_SCRIPTS_DIR) / "thm7.geo");
    EvalResult a = evaluate(parse(src));
    EvalResult b = evaluate(parse(src));
    CHECK(format_diagnostics(a) == format_diagnostics(b));
    CHECK(a.env == b.env);
}

TEST_CASE("bundled corpus") {
    SECTION("well-formed scripts all pass") {
        for (const char* name : {"problem1.geo", "problem1star.geo", "problem2.geo",
                                 "problem3.geo", "problem4.geo", "thm6.geo", "thm7.geo",
                                 "thm8.geo"}) {
            INFO(name);
            EvalResult r =
                evaluate(parse(read_file(std::filesystem::path(SHARQ_SCRIPTS_DIR) / name)));
            CHECK_FALSE(r.error.has_value());
            CHECK(r.all_passed());
            CHECK(r.assertions.size() >= 1);
        }
    }

    SECTION("malformed scripts produce positioned diagnostics") {
        for (const char* name : {"bad_syntax.geo", "bad_undeclared.geo", "bad_arity.geo"}) {
            INFO(name);
            try {
                parse(read_file(std::filesystem::path(SHARQ_SCRIPTS_DIR) / name));
                FAIL("expected ParseError");
            } catch (const ParseError& e) {
                CHECK(e.diagnostic().pos.line >= 1);
                CHECK(e.diagnostic().pos.col >= 1);
            }
        }
    }
}
