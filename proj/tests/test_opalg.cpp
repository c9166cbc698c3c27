#include <catch2/catch_amalgamated.hpp>

#include <cobord/cobord.hpp>

using namespace cobord;

namespace
{

polynomial v(const var_symbol &s)
{
    return polynomial::variable(s);
}

polynomial v(const char *s)
{
    return polynomial::variable(var_symbol(s));
}

} // namespace

TEST_CASE("generator images")
{
    CHECK(apply_G(v(sym_X(1)), {{sym_X(1), v("cA")}}) == v("cA"));
    CHECK(apply_G(polynomial(1), {}) == polynomial(1));
    const auto img = standard_images(2, 1);
    const auto x = gdpr_side::X;
    CHECK(apply_G(v(sym_X(1)) * v(sym_X(2)) * v(sym_U(1, 1)), img)
          == v(chern_single(x, 1, 2)) * v(chern_single(x, 2, 2)) * v(sigma1_prefix(x, 1, 2)));
    CHECK_THROWS_AS(apply_G(v(sym_X(3)), img), missing_image);
}

TEST_CASE("symbol naming")
{
    const auto x = gdpr_side::X, y = gdpr_side::Y;
    CHECK(chern_single(x, 1, 1) == var_symbol("cC"));
    CHECK(chern_single(y, 2, 3) == var_symbol("cB", {2}));
    CHECK(chern_prefix(x, 3, 3) == var_symbol("cC"));
    CHECK(chern_prefix(x, 1, 3) == var_symbol("cA", {1}));
    CHECK(chern_prefix(y, 2, 3) == var_symbol("cPB", {2}));
    CHECK(sigma2(y, 2) == var_symbol("sigma2B", {2}));
}

TEST_CASE("H relation")
{
    const auto h = h_expression();
    CHECK(substitute(h, {{var_symbol("cM"), polynomial()}, {var_symbol("cLM"), polynomial()}}) == v("cL"));
    CHECK(substitute(h, {{var_symbol("cL"), polynomial()}, {var_symbol("cM"), polynomial()}}) == -v("cLM"));
    // Additive degeneration.
    CHECK(substitute(h, {{var_symbol("sigma1"), polynomial()},
                         {var_symbol("sigma2"), v("sigma3")},
                         {var_symbol("cLM"), v("cL") + v("cM")}})
              .is_zero());
    // GDPR(2,1) under the images, renamed, is H itself.
    const auto x = gdpr_side::X;
    const auto img = standard_images(2, 1);
    const auto diff = apply_G(build_GX(2, 1), img) - apply_G(build_GY(1, 2), img);
    CHECK(rename(diff, {{chern_single(x, 1, 2), var_symbol("cL")},
                        {chern_single(x, 2, 2), var_symbol("cM")},
                        {chern_prefix(x, 2, 2), var_symbol("cLM")},
                        {sigma1_prefix(x, 1, 2), var_symbol("sigma1")},
                        {sigma2(x, 2), var_symbol("sigma2")},
                        {sigma3(x, 2), var_symbol("sigma3")}})
          == h);
}

TEST_CASE("sampling on the H relation separates true and false identities")
{
    relation_system sys;
    const auto h = h_expression();
    sys.add(var_symbol("cLM"), h);
    const auto wrong = h + v("cL") * v("cM");
    const auto free = sys.free_symbols({&h});
    CHECK(free.size() == 5u);
    sampling s;
    s.seed = 3;
    const auto good = run_trials(s, [&](std::mt19937_64 &rng) {
        const auto vals = sys.sample(rng, free, s.range);
        return detail::eval_at(h, vals).is_zero();
    });
    CHECK(good.first);
    const auto bad = run_trials(s, [&](std::mt19937_64 &rng) {
        const auto vals = sys.sample(rng, free, s.range);
        return detail::eval_at(wrong, vals).is_zero();
    });
    CHECK_FALSE(bad.first);
}

TEST_CASE("degenerate draws resample then give up")
{
    relation_system sys;
    sys.add(var_symbol("y"), v("x") * v("y") - polynomial(1));
    const std::vector<var_symbol> free{var_symbol("x")};
    sampling s;
    s.resample_limit = 4;
    CHECK_THROWS_AS(run_trials(s, [&](std::mt19937_64 &rng) { return !sys.sample(rng, free, 0).empty(); }),
                    resample_limit_exceeded);
    // Range 1 hits x = 0 a third of the time.
    s.resample_limit = 200;
    const auto [ok, resamples] = run_trials(s, [&](std::mt19937_64 &rng) {
        const auto vals = sys.sample(rng, free, 1);
        return detail::eval_at(v("x") * v("y"), vals) == rational(1);
    });
    CHECK(ok);
    CHECK(resamples > 0u);

    relation_system quad;
    quad.add(var_symbol("y"), v("y") * v("y") - v("x"));
    std::mt19937_64 rng(1);
    CHECK_THROWS_AS(quad.sample(rng, free, 5), std::invalid_argument);
}

TEST_CASE("step identity")
{
    sampling s;
    s.seed = 42;
    for (unsigned n = 2; n <= 5; ++n) {
        const auto r = verify_step_identity(n, s);
        CHECK(r.pass);
        CHECK(r.trials == 20u);
        CHECK(r.identity == "step");
    }
    CHECK_THROWS_AS(verify_step_identity(1, s), std::invalid_argument);
}

TEST_CASE("full identity")
{
    sampling s;
    s.seed = 42;
    const auto r11 = verify_full_identity(1, 1, s);
    CHECK(r11.pass);
    for (auto [n, m] : {std::pair{2u, 1u}, std::pair{1u, 2u}, std::pair{3u, 2u}, std::pair{2u, 4u}}) {
        const auto r = verify_full_identity(n, m, s);
        CHECK(r.pass);
        CHECK(r.inconsistent_solves == 0u);
    }
}

TEST_CASE("reports are deterministic for a seed")
{
    sampling s;
    s.seed = 9;
    s.trials = 5;
    const auto a = to_json(verify_full_identity(3, 3, s)).dump();
    const auto b = to_json(verify_full_identity(3, 3, s)).dump();
    CHECK(a == b);
    const auto j = json::parse(a);
    CHECK(j["seed"] == 9);
    CHECK(j["sample_range"] == json::array({-1000, 1000}));
    std::vector<std::string> keys;
    for (const auto &[k, val] : j.items()) {
        keys.push_back(k);
    }
    CHECK(keys == std::vector<std::string>{"identity", "n", "m", "trials", "resamples", "pass", "seed", "degree_bound",
                                           "sample_range", "inconsistent_solves"});
}
