#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <limits>
#include <random>

#include <cobord/cobord.hpp>

using namespace cobord;

namespace
{

polynomial var(const char *name)
{
    return polynomial::variable(var_symbol(name));
}

polynomial random_poly(std::mt19937_64 &rng)
{
    const char *names[] = {"x", "y", "z"};
    polynomial p;
    const auto terms = rng() % 5;
    for (std::uint64_t t = 0; t < terms; ++t) {
        polynomial mono(static_cast<std::int64_t>(rng() % 21) - 10);
        for (auto *n : names) {
            mono *= pow(var(n), static_cast<unsigned>(rng() % 3));
        }
        p += mono;
    }
    return p;
}

} // namespace

TEST_CASE("rational arithmetic stays exact across the small/big boundary")
{
    const rational big_max(std::numeric_limits<std::int64_t>::max());
    const auto sum = big_max + rational(1);
    CHECK_FALSE(sum.is_small());
    CHECK(sum.to_string() == "9223372036854775808");
    CHECK(sum - rational(1) == big_max);
    CHECK((sum - rational(1)).is_small());

    CHECK(rational(6, -4) == rational(-3, 2));
    CHECK(rational(6, -4).den_str() == "2");
    CHECK(rational(1, 2) + rational(1, 3) == rational(5, 6));
    CHECK(rational(-7, 3).inverse() == rational(-3, 7));
    CHECK(rational::from_strings("-12", "8") == rational(-3, 2));
    CHECK_THROWS_AS(rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(rational(0).inverse(), std::domain_error);

    const rational huge(big_int("-123456789012345678901234567890"), big_int("-10"));
    CHECK(huge == rational(big_int("12345678901234567890123456789")));
}

TEST_CASE("polynomial addition")
{
    const auto x = var("x"), y = var("y");
    const auto p = x * y + polynomial(3);
    CHECK(p + polynomial() == p);
    CHECK((x + (-x)).is_zero());
    CHECK((x + y) + (x * y) == x + y + x * y);
    CHECK((x + y).size() == 2u);
}

TEST_CASE("polynomial multiplication")
{
    const auto x = var("x"), y = var("y");
    CHECK((x + y) * polynomial(1) == x + y);
    CHECK((x + y) * (x - y) == x * x - y * y);
    CHECK(pow(x + polynomial(1), 3) == x * x * x + polynomial(3) * x * x + polynomial(3) * x + polynomial(1));
}

TEST_CASE("products agree with pointwise evaluation and commute")
{
    // Evaluation is a ring map, so it checks the product independently.
    std::mt19937_64 rng(7);
    const std::map<var_symbol, rational> pt{{var_symbol("x"), rational(2, 3)},
                                            {var_symbol("y"), rational(-5)},
                                            {var_symbol("z"), rational(7, 2)}};
    for (int i = 0; i < 50; ++i) {
        const auto p = random_poly(rng);
        const auto q = random_poly(rng);
        const auto pq = p * q;
        CHECK(pq == q * p);
        CHECK(evaluate_rational(pq, pt) == evaluate_rational(p, pt) * evaluate_rational(q, pt));
    }
}

TEST_CASE("substitution")
{
    const auto x = var("x"), y = var("y");
    CHECK(substitute(x * x, {{var_symbol("x"), y + polynomial(1)}}) == y * y + polynomial(2) * y + polynomial(1));
    CHECK(substitute(x * y + x, {}) == x * y + x);
    CHECK(substitute(x * y, {{var_symbol("x"), polynomial()}}).is_zero());
}

TEST_CASE("evaluation")
{
    const auto x = var("x"), y = var("y");
    CHECK(evaluate_rational(x + y, {{var_symbol("x"), rational(1, 2)}, {var_symbol("y"), rational(1, 3)}})
          == rational(5, 6));
    CHECK(evaluate_rational(polynomial(), {}) == rational(0));
    CHECK(evaluate_rational(x * x, {{var_symbol("x"), rational(-3)}}) == rational(9));
    CHECK_THROWS_AS(evaluate_rational(x, {}), unbound_variable);
}

TEST_CASE("killing monomials")
{
    const auto x = var("x"), z = var("z");
    const auto zid = intern(var_symbol("z"));
    auto has_z = [zid](monomial_view m) {
        for (auto vp : m) {
            if (vp.var == zid) {
                return true;
            }
        }
        return false;
    };
    CHECK(kill_monomials(x + x * z, has_z) == x);
    CHECK(kill_monomials(x + z, [](monomial_view) { return false; }) == x + z);
    CHECK(kill_monomials(x + z, [](monomial_view) { return true; }).is_zero());
}

TEST_CASE("weighted degree")
{
    const auto one = polynomial(1);
    CHECK(weighted_degree(one.term(0).mono, std::map<var_symbol, std::int64_t>{}) == 0);
    const auto x = var("x"), y = var("y");
    const auto p = x * x * y;
    CHECK(weighted_degree(p.term(0).mono, {{var_symbol("x"), 1}, {var_symbol("y"), -1}}) == 1);
    const auto g = build_EX(2);
    CHECK(weighted_degree(g.term(0).mono, [](const var_symbol &s) { return s.family == "X" ? 1 : -1; }) == 1);
    CHECK_THROWS_AS(weighted_degree(p.term(0).mono, {{var_symbol("x"), 1}}), missing_weight);
}

TEST_CASE("coefficient rings")
{
    CHECK_THROWS_AS(polynomial(rational(1, 2)), ring_violation);
    const polynomial half(rational(1, 2), coeff_ring{2});
    CHECK((half + half) == polynomial(1));
    CHECK(coeff_ring{6}.admits(rational(1, 12)));
    CHECK_FALSE(coeff_ring{6}.admits(rational(1, 5)));
    CHECK_THROWS_AS(polynomial(rational(1, 2), coeff_ring{2}) + polynomial(rational(1, 3), coeff_ring{3}),
                    incompatible_rings);
}

TEST_CASE("polynomial text and json")
{
    const auto x = var("x"), y = var("y");
    const auto p = polynomial(3) - polynomial(2) * x * x * y + y;
    CHECK(to_text(p) == "3 + y - 2*x^2*y");
    CHECK(polynomial_from_json(to_json(p)) == p);
    CHECK(to_text(polynomial()) == "0");
    CHECK_THROWS_AS(polynomial_from_json(json::parse(R"({"ring":{"inverted":[]}})")), parse_error);
}

TEST_CASE("symbols render and parse")
{
    CHECK(render(var_symbol("U", {2, 3})) == "U[2][3]");
    CHECK(parse_symbol("a[1][2]") == var_symbol("a", {1, 2}));
    CHECK(parse_symbol("beta") == var_symbol("beta"));
    CHECK_THROWS_AS(parse_symbol("1x"), parse_error);
}
