#include <doctest.h>

#include <random>

#include "random_spec.hpp"
#include "stpnet/closed_form.hpp"
#include "stpnet/dsl.hpp"

using namespace stpnet;

TEST_CASE("bundled example parses to the expected shape") {
    NetworkSpec s = parse_network(closed_form::example_network_text());
    CHECK(s.n == 2);
    CHECK(s.m == 2);
    CHECK(to_string(s.f[0]) == "x2 | (u1 & d(g)/d(u2))");
    CHECK(to_string(s.f[1]) == "x1 & (u2 | d(g)/d(u1))");
    CHECK(to_string(s.g_update[0]) == "!u2");
    CHECK(to_string(s.g_update[1]) == "u1");
    CHECK(to_string(s.g) == "u1 & u2");
}

TEST_CASE("print then parse is a structural round trip") {
    std::mt19937 rng(71);
    for (int it = 0; it < 100; ++it) {
        NetworkSpec s = testutil::random_spec(rng, 3, 3);
        NetworkSpec back = parse_network(print_network(s));
        REQUIRE(back.n == s.n);
        REQUIRE(back.m == s.m);
        for (int i = 0; i < s.n; ++i)
            CHECK(structural_equal(back.f[static_cast<std::size_t>(i)],
                                   s.f[static_cast<std::size_t>(i)]));
        for (int j = 0; j < s.m; ++j)
            CHECK(structural_equal(back.g_update[static_cast<std::size_t>(j)],
                                   s.g_update[static_cast<std::size_t>(j)]));
        CHECK(structural_equal(back.g, s.g));
    }
}

TEST_CASE("comments and blank lines are ignored") {
    NetworkSpec s = parse_network(
        "# leading comment\n"
        "states 1\n"
        "\n"
        "controls 1   # trailing comment\n"
        "x1' = x1 ^ u1\n"
        "u1' = !u1\n");
    CHECK(s.n == 1);
    CHECK(to_string(s.f[0]) == "x1 ^ u1");
    // g was omitted and no derivative atom is used, so it defaults to 0.
    CHECK(to_string(s.g) == "0");
}

TEST_CASE("zero-control single-rule file compiles to the identity") {
    NetworkSpec s = parse_network("states 1\ncontrols 0\nx1' = x1\n");
    CompiledNetwork c = compile_truth_table(s);
    CHECK(c.L == LogicalMatrix(2, {1, 2}));
    CHECK(c.G == LogicalMatrix::identity(1));
    CHECK(compile_factored(s).L == c.L);
}

TEST_CASE("chained binary operators without parentheses are rejected") {
    CHECK_THROWS_AS(parse_network("states 1\ncontrols 1\n"
                                  "x1' = x1 & u1 | x1\n"
                                  "u1' = u1\n"),
                    parse_error);
    // Parenthesized forms of both associations are accepted.
    CHECK_NOTHROW(parse_network("states 1\ncontrols 1\n"
                                "x1' = (x1 & u1) | x1\n"
                                "u1' = u1\n"));
    CHECK_NOTHROW(parse_network("states 1\ncontrols 1\n"
                                "x1' = x1 & (u1 | x1)\n"
                                "u1' = u1\n"));
}

TEST_CASE("parse errors carry locations and reasons") {
    auto expect_error = [](const std::string& text, int line) {
        try {
            parse_network(text);
            FAIL_CHECK("expected parse_error for: " << text);
        } catch (const parse_error& e) {
            CHECK(e.line() == line);
            CHECK(e.column() >= 1);
        }
    };
    expect_error("states 1\ncontrols 1\nx1' = x9\nu1' = u1\n", 4);   // bad index -> validate
    expect_error("states 1\ncontrols 1\nx1' = x1 &\nu1' = u1\n", 3); // missing operand
    expect_error("states 1\ncontrols 1\nx1' = (x1\nu1' = u1\n", 3);  // unclosed paren
    expect_error("states 1\ncontrols 1\nx1' = d(g)/d(x1)\nu1' = u1\n", 3);  // bad deriv atom
    expect_error("states 1\nx1' = x1\n", 2);                          // missing controls header
}

TEST_CASE("derivative atoms require a g definition") {
    CHECK_THROWS_AS(parse_network("states 1\ncontrols 1\n"
                                  "x1' = d(g)/d(u1)\n"
                                  "u1' = u1\n"),
                    parse_error);
    CHECK_NOTHROW(parse_network("states 1\ncontrols 1\n"
                                "x1' = d(g)/d(u1)\n"
                                "u1' = u1\n"
                                "g = u1\n"));
}

TEST_CASE("duplicate and missing rules are rejected") {
    CHECK_THROWS_AS(parse_network("states 1\ncontrols 1\n"
                                  "x1' = x1\nx1' = u1\nu1' = u1\n"),
                    parse_error);
    CHECK_THROWS_AS(parse_network("states 2\ncontrols 1\n"
                                  "x1' = x1\nu1' = u1\n"),
                    parse_error);
    CHECK_THROWS_AS(parse_network("states 1\ncontrols 1\n"
                                  "x1' = x1\nx2' = x1\nu1' = u1\n"),
                    parse_error);
}

TEST_CASE("control rules may not mention states") {
    CHECK_THROWS_AS(parse_network("states 1\ncontrols 1\n"
                                  "x1' = x1\nu1' = x1\n"),
                    parse_error);
    CHECK_THROWS_AS(parse_network("states 1\ncontrols 1\n"
                                  "x1' = x1\nu1' = u1\ng = x1\n"),
                    parse_error);
}
