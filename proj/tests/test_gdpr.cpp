#include <catch2/catch_amalgamated.hpp>

#include <cobord/cobord.hpp>

using namespace cobord;

namespace
{

polynomial v(const var_symbol &s)
{
    return polynomial::variable(s);
}

// Straight recursion with plain polynomial arithmetic and no caching.
std::pair<polynomial, polynomial> naive_EF(bool x_side, unsigned n)
{
    auto pt = [&](unsigned i) { return v(x_side ? sym_X(i) : sym_Y(i)); };
    auto tw = [&](unsigned p, unsigned k) { return v(x_side ? sym_U(p, k) : sym_V(p, k)); };
    polynomial e, f, s;
    if (n >= 1u) {
        s = pt(1);
    }
    for (unsigned k = 2; k <= n; ++k) {
        const auto se = s + e;
        const auto e_next = e - se * pt(k) * tw(1, k - 1) - pt(k) * f;
        const auto f_next = f + se * pt(k) * (tw(2, k) - tw(3, k));
        e = e_next;
        f = f_next;
        s += pt(k);
    }
    return {e, f};
}

polynomial naive_G(bool x_side, unsigned n, unsigned m)
{
    const auto [e, f] = naive_EF(x_side, n);
    const auto [eo, fo] = naive_EF(!x_side, m);
    (void)fo;
    polynomial s, so;
    for (unsigned i = 1; i <= n; ++i) {
        s += v(x_side ? sym_X(i) : sym_Y(i));
    }
    for (unsigned j = 1; j <= m; ++j) {
        so += v(x_side ? sym_Y(j) : sym_X(j));
    }
    return s + e + (so + eo) * f;
}

} // namespace

TEST_CASE("base cases")
{
    const auto x1 = v(sym_X(1)), x2 = v(sym_X(2)), y1 = v(sym_Y(1));
    CHECK(build_EX(1).is_zero());
    CHECK(build_FX(1).is_zero());
    CHECK(build_EX(2) == -(x1 * x2 * v(sym_U(1, 1))));
    CHECK(build_FX(2) == x1 * x2 * (v(sym_U(2, 2)) - v(sym_U(3, 2))));
    CHECK(build_GX(2, 1) == x1 + x2 - x1 * x2 * v(sym_U(1, 1)) + y1 * x1 * x2 * (v(sym_U(2, 2)) - v(sym_U(3, 2))));
    CHECK(build_GY(1, 2) == y1);
    CHECK(build_GX(1, 1) == x1);
    CHECK_THROWS_AS(build_GX(0, 1), std::invalid_argument);
}

TEST_CASE("builder matches a plain recursion")
{
    for (unsigned n = 1; n <= 4; ++n) {
        for (unsigned m = 1; m <= 4; ++m) {
            CHECK(build_GX(n, m) == naive_G(true, n, m));
            CHECK(build_GY(n, m) == naive_G(false, n, m));
        }
    }
}

TEST_CASE("multilinearity")
{
    CHECK(check_multilinear(build_GX(5, 4)));
    CHECK_FALSE(check_multilinear(v(sym_X(1)) * v(sym_X(1))));
    CHECK(check_multilinear(polynomial()));
}

TEST_CASE("index bounds")
{
    CHECK(check_index_bounds(build_GX(3, 2), 3, 2));
    CHECK_FALSE(check_index_bounds(v(sym_X(4)), 3, 2));
    CHECK(check_index_bounds(build_GX(2, 1), 2, 1));
    CHECK_FALSE(check_index_bounds(build_GX(3, 2), 2, 2));
}

TEST_CASE("weight homogeneity")
{
    for (unsigned n = 1; n <= 8; ++n) {
        for (unsigned m = 1; m <= 8; ++m) {
            CHECK(weight_check(build_GX(n, m)));
        }
    }
    CHECK(weight_check(v(sym_X(1)) * v(sym_X(2)) * v(sym_U(1, 1))));
    CHECK_FALSE(weight_check(v(sym_X(1)) * v(sym_X(2))));
    CHECK_THROWS_AS(weight_check(v(var_symbol("z"))), missing_weight);
}

TEST_CASE("mirror symmetry")
{
    CHECK(mirror_check(1, 1));
    CHECK(mirror_check(2, 1));
    CHECK(mirror_check(5, 5));
    CHECK(mirror(v(sym_U(2, 3))) == v(sym_V(2, 3)));
    CHECK_FALSE(mirror(build_GX(2, 1)) == build_GX(2, 1));
}

TEST_CASE("padding invariance")
{
    CHECK(padding_check(4, 3, 2, 1));
    CHECK(padding_check(3, 2, 3, 2));
    CHECK(padding_check(6, 6, 1, 1));
    CHECK(kill_out_of_range(build_GX(6, 6), 1, 1) == v(sym_X(1)));
}

TEST_CASE("gdpr json uses bracketed names")
{
    const auto j = to_json(build_GX(2, 1));
    CHECK(j.dump().find("\"U[2][2]\"") != std::string::npos);
}
