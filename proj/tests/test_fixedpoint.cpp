#include <catch2/catch_amalgamated.hpp>

#include <cobord/cobord.hpp>

using namespace cobord;

namespace
{

polynomial v(const var_symbol &s)
{
    return polynomial::variable(s);
}

const std::vector<std::uint64_t> z3{3};

character c3(std::int64_t r)
{
    return character(z3, {r});
}

// Value of both sides with X, Y -> 1, U^1 -> 2, U^2 -> 4, U^3 -> 3, from
// the scalar form of the recursion.
rational all_bad_oracle(unsigned n, unsigned m)
{
    auto sef = [](unsigned k) {
        rational e, f;
        for (unsigned j = 2; j <= k; ++j) {
            const auto base = rational(j - 1) + e;
            const auto e_next = e - base * rational(2) - f;
            f = f + base * rational(4 - 3);
            e = e_next;
        }
        return std::pair{rational(k) + e, f};
    };
    const auto [sx, fx] = sef(n);
    const auto [sy, fy] = sef(m);
    (void)fy;
    return sx + sy * fx;
}

} // namespace

TEST_CASE("characters")
{
    const auto a = c3(1);
    CHECK((a + a + a).is_trivial());
    CHECK(a.scaled(-1) == -a);
    CHECK(a.scaled(2) == c3(2));
    CHECK(character::identity(z3).is_trivial());
    CHECK_THROWS_AS(character(z3, {1, 2}), std::invalid_argument);
}

TEST_CASE("goodness")
{
    goodness_context ctx(z3);
    ctx.bind("A", c3(1));
    ctx.bind("B", c3(2));
    CHECK(is_good(ctx, {}));
    CHECK_FALSE(is_good(ctx, {{"A", 1}}));
    CHECK(is_good(ctx, {{"A", 1}, {"B", 1}}));
    CHECK_THROWS_AS(is_good(ctx, {{"Z", 1}}), unknown_divisor);
    CHECK_THROWS_AS(ctx.bind("C", character({2}, {1})), std::invalid_argument);
}

TEST_CASE("impossible case guard")
{
    goodness_context ctx(z3);
    ctx.bind("D", c3(0));
    ctx.bind("A", c3(1));
    ctx.bind("T", c3(0));
    CHECK(impossible_case_guard(ctx, {{"D", 1}}, "T"));
    CHECK(impossible_case_guard(ctx, {{"D", 1}}, "A"));

    const std::vector<std::uint64_t> g{2, 3};
    for (int a = 0; a < 6; ++a) {
        for (int d = 0; d < 6; ++d) {
            goodness_context c(g);
            c.bind("A", character(g, {a % 2, a % 3}));
            c.bind("D", character(g, {d % 2, d % 3}));
            CHECK(impossible_case_guard(c, {{"D", 1}}, "A"));
        }
    }
}

TEST_CASE("fixed point images of generators")
{
    const auto x = gdpr_side::X;
    // A1 bad, A2 bad, A1 + A2 bad.
    const auto all_bad = goodness_context::for_gdpr(z3, {c3(1), c3(1)}, {c3(2)});
    CHECK(fprime_of_var(sym_U(1, 1), all_bad, 2, 1) == polynomial(2));
    CHECK(fprime_of_var(sym_U(3, 2), all_bad, 2, 1) == polynomial(3));
    CHECK(fprime_of_var(sym_U(2, 2), all_bad, 2, 1) == polynomial(4));
    CHECK(fprime_of_var(sym_X(1), all_bad, 2, 1) == polynomial(1));
    // A1 good, A2 and A1 + A2 bad.
    const auto d_good = goodness_context::for_gdpr(z3, {c3(0), c3(1)}, {c3(1)});
    CHECK(fprime_of_var(sym_U(2, 2), d_good, 2, 1) == polynomial(2) * v(sigma1_prefix(x, 1, 2)));
    CHECK(fprime_of_var(sym_X(1), d_good, 2, 1) == v(chern_single(x, 1, 2)));
    CHECK(fprime_of_var(sym_X(5), d_good, 2, 1).is_zero());
    CHECK_THROWS_AS(fprime_of_var(sym_X(0), d_good, 2, 1), index_out_of_range);
    CHECK_THROWS_AS(fprime_of_var(var_symbol("q"), d_good, 2, 1), missing_image);
}

TEST_CASE("fixed point evaluation")
{
    const auto good_c = goodness_context::for_gdpr(z3, {c3(1), c3(2)}, {c3(0)});
    CHECK(fprime_eval(build_GY(1, 2), good_c, 2, 1) == v(var_symbol("cC")));
    const auto bad_c = goodness_context::for_gdpr(z3, {c3(1), c3(1)}, {c3(2)});
    CHECK(fprime_eval(build_GY(1, 2), bad_c, 2, 1) == polynomial(1));
    CHECK(fprime_eval(v(sym_X(1)) * v(sym_X(2)), bad_c, 2, 1) == polynomial(1));
    CHECK(fprime_eval(build_GX(2, 1), bad_c, 2, 1) == polynomial(1));
}

TEST_CASE("claim cases")
{
    for (int c = 1; c <= 5; ++c) {
        CHECK(claim1_case_check(c));
    }
    const auto r2 = claim1_case(2);
    CHECK(r2.lhs == polynomial(1));
    CHECK(r2.rhs == polynomial(1));
    const auto r4 = claim1_case(4);
    CHECK(r4.lhs == v(var_symbol("cC")));
    const auto j5 = to_json(claim1_case(5));
    CHECK(j5.dump() == R"({"case":5,"lhs":1,"rhs":1,"equal":true})");
    CHECK(to_json(r4)["lhs"] == "cC");
    CHECK_THROWS_AS(claim1_case(6), std::invalid_argument);
}

TEST_CASE("all-bad evaluation")
{
    for (unsigned n = 1; n <= 6; ++n) {
        for (unsigned m = 1; m <= 6; ++m) {
            const auto r = all_bad_values(n, m);
            CHECK(r.pass());
            CHECK(r.gx == all_bad_oracle(n, m));
        }
    }
    CHECK(all_bad_values(2, 1).gx == rational(1));
    CHECK(all_bad_values(2, 2).gx == rational(0));
}

TEST_CASE("integer evaluation falls back to rationals on overflow")
{
    const auto x = v(sym_X(1));
    const auto p = pow(x, 3) * polynomial(rational(big_int("4000000000000000000")));
    std::vector<std::optional<std::int64_t>> vals(intern(sym_X(1)) + 1);
    vals[intern(sym_X(1))] = 1000000;
    CHECK(detail::evaluate_integers(p, vals) == rational(big_int("4000000000000000000000000000000000000")));
}

TEST_CASE("group parsing and guard enumeration")
{
    CHECK(parse_group("2") == std::vector<std::uint64_t>{2});
    CHECK(parse_group("Z/2xZ/3") == std::vector<std::uint64_t>{2, 3});
    CHECK_THROWS_AS(parse_group("2x"), parse_error);
    CHECK_THROWS_AS(parse_group("Z/0"), parse_error);
    for (const char *g : {"2", "3", "2x2", "6"}) {
        const auto r = guard_enumeration(parse_group(g));
        CHECK(r.pass());
    }
    CHECK(guard_enumeration({2, 2}).contexts == 16u);
}

TEST_CASE("mixed contexts")
{
    sampling s;
    s.seed = 11;
    s.trials = 5;
    for (auto [n, m] : {std::pair{2u, 1u}, std::pair{3u, 2u}, std::pair{2u, 3u}}) {
        CHECK(mixed_context_check(n, m, 3, s).pass);
    }
}
