#ifndef COBORD_ACCEPTANCE_HPP
#define COBORD_ACCEPTANCE_HPP

#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <cobord/fgl.hpp>
#include <cobord/fixedpoint.hpp>
#include <cobord/gdpr.hpp>
#include <cobord/opalg.hpp>
#include <cobord/polynomial_io.hpp>
#include <cobord/series.hpp>

// The acceptance suite, shared by `cobord selftest` and the timed
// acceptance runner. Every check is deterministic.
namespace cobord::acceptance
{

struct result {
    int id = 0;
    ::std::string name;
    bool pass = false;
    ::std::string detail;
};

struct criterion {
    int id;
    const char *name;
    double limit_seconds; // 0 means no limit
    ::std::function<result()> run;
};

namespace detail
{

inline result make(int id, const char *name, bool pass, ::std::string detail)
{
    return {id, name, pass, ::std::move(detail)};
}

struct tally {
    unsigned checked = 0;
    unsigned failed = 0;
    ::std::string first_failure;

    void check(bool ok, const ::std::string &what)
    {
        ++checked;
        if (!ok) {
            if (failed == 0u) {
                first_failure = what;
            }
            ++failed;
        }
    }
    bool ok() const
    {
        return failed == 0u;
    }
    ::std::string summary() const
    {
        auto s = ::std::to_string(checked - failed) + "/" + ::std::to_string(checked) + " checks";
        if (failed != 0u) {
            s += ", first failure: " + first_failure;
        }
        return s;
    }
};

inline polynomial v(const var_symbol &s)
{
    return polynomial::variable(s);
}

} // namespace detail

inline result base_cases()
{
    using detail::v;
    detail::tally t;
    const auto x1 = v(sym_X(1)), x2 = v(sym_X(2)), y1 = v(sym_Y(1));
    const auto u11 = v(sym_U(1, 1)), u22 = v(sym_U(2, 2)), u32 = v(sym_U(3, 2));
    t.check(build_EX(1).is_zero(), "E^X_1 = 0");
    t.check(build_FX(1).is_zero(), "F^X_1 = 0");
    t.check(build_EX(2) == -(x1 * x2 * u11), "E^X_2");
    t.check(build_FX(2) == x1 * x2 * (u22 - u32), "F^X_2");
    const auto gx = x1 + x2 - x1 * x2 * u11 + y1 * x1 * x2 * (u22 - u32);
    t.check(build_GX(2, 1) == gx, "G^X_{2,1}");
    t.check(to_text(build_GX(2, 1))
                == "X[1] + X[2] - X[1]*X[2]*U[1][1] + X[1]*X[2]*Y[1]*U[2][2] - X[1]*X[2]*Y[1]*U[3][2]",
            "G^X_{2,1} text");
    t.check(build_GY(1, 2) == y1, "G^Y_{1,2}");
    return detail::make(1, "GDPR base cases", t.ok(), t.summary());
}

inline result structural_suite()
{
    detail::tally t;
    for (unsigned n = 1; n <= 8; ++n) {
        for (unsigned m = 1; m <= 8; ++m) {
            const auto tag = "(" + ::std::to_string(n) + "," + ::std::to_string(m) + ")";
            auto gx = build_GX(n, m);
            t.check(scan_structure(gx, n, m).all(), "G^X" + tag + " structure");
            // G^Y_{n,m} has n Y variables and m X variables.
            const auto gy = build_GY(n, m);
            t.check(scan_structure(gy, m, n).all(), "G^Y" + tag + " structure");
            t.check(mirror(::std::move(gx)) == gy, "mirror" + tag);
        }
    }
    for (unsigned N = 1; N <= 6; ++N) {
        for (unsigned M = 1; M <= 6; ++M) {
            const auto gx = build_GX(N, M);
            const auto gy = build_GY(N, M);
            for (unsigned n = 1; n <= N; ++n) {
                for (unsigned m = 1; m <= M; ++m) {
                    t.check(padding_check(gx, gy, N, M, n, m), "padding (" + ::std::to_string(N) + ","
                                                                   + ::std::to_string(M) + ") -> ("
                                                                   + ::std::to_string(n) + "," + ::std::to_string(m)
                                                                   + ")");
                }
            }
        }
    }
    return detail::make(2, "structural suite", t.ok(), t.summary());
}

inline result fgl_suite()
{
    constexpr unsigned N = 10;
    const auto mode = fgl_mode::universal();
    const auto u = truncated_series::variable(series_var::u, N);
    const auto zero_u = truncated_series({series_var::u}, N);
    detail::tally t;

    const auto F = universal_fgl(mode, N);
    t.check(compose(F, series_var::v, zero_u) == u, "F(u,0) = u");
    t.check(relabel(F, {{series_var::u, series_var::v}, {series_var::v, series_var::u}}) == F, "F(u,v) = F(v,u)");
    t.check(compose(F, series_var::v, inverse_series(mode, N)).is_zero(), "F(u,gamma(u)) = 0");
    t.check(compose(f_minus(mode, N), series_var::v, u).is_zero(), "F-(u,u) = 0");
    for (unsigned n : {2u, 3u, 5u}) {
        const auto fn = n_fold_sum(n, mode, N);
        const auto b = division_series(n, mode, N, false);
        t.check(compose(b, series_var::u, fn) == u, "[1/" + ::std::to_string(n) + "](F^n(u)) = u");
        t.check(compose(fn, series_var::u, b) == u, "F^n([1/" + ::std::to_string(n) + "](u)) = u");
    }
    for (unsigned n = 1; n <= 7; ++n) {
        t.check(n_fold_sum(n, mode, N).coeff(1) == polynomial(n), "leading coefficient of F^" + ::std::to_string(n));
    }
    for (unsigned n : {2u, 3u, 5u}) {
        t.check(division_series(n, mode, 1).coeff(1) == polynomial(rational(1, n), coeff_ring{n}),
                "b_1 = 1/" + ::std::to_string(n));
    }
    for (unsigned n : {2u, 3u}) {
        const auto b = division_series(n, mode, 8);
        for (auto [i, k] : denominator_profile(b, n)) {
            t.check(k <= i * (i + 1) / 2, "denominator bound for n = " + ::std::to_string(n) + ", i = "
                                              + ::std::to_string(i));
        }
    }
    return detail::make(3, "FGL suite", t.ok(), t.summary());
}

inline result associativity_suite()
{
    detail::tally t;
    const auto rels = associativity_relations(6);
    ::std::map<var_symbol, polynomial> additive, multiplicative;
    for (unsigned i = 1; i <= 6; ++i) {
        for (unsigned j = i; i + j <= 6; ++j) {
            additive.emplace(fgl_mode::symbol(i, j), polynomial());
            multiplicative.emplace(fgl_mode::symbol(i, j),
                                   i == 1u && j == 1u ? detail::v(var_symbol("beta")) : polynomial());
        }
    }
    for (const auto &[e, c] : rels) {
        const auto tag = "u^" + ::std::to_string(e[0]) + " v^" + ::std::to_string(e[1]) + " w^" + ::std::to_string(e[2]);
        t.check(total(e) >= 3u, "relation in degree <= 2 at " + tag);
        t.check(substitute(c, additive).is_zero(), "additive specialisation at " + tag);
        t.check(substitute(c, multiplicative).is_zero(), "multiplicative specialisation at " + tag);
    }
    return detail::make(4, "associativity relations", t.ok() && !rels.empty(),
                        ::std::to_string(rels.size()) + " relations, " + t.summary());
}

inline result reduction_identities()
{
    detail::tally t;
    sampling s;
    s.seed = 42;
    unsigned resamples = 0;
    for (unsigned n = 2; n <= 8; ++n) {
        const auto r = verify_step_identity(n, s);
        resamples += r.resamples;
        t.check(r.pass, "step n = " + ::std::to_string(n));
    }
    unsigned inconsistent = 0;
    for (unsigned n = 1; n <= 5; ++n) {
        for (unsigned m = 1; m <= 5; ++m) {
            const auto r = verify_full_identity(n, m, s);
            resamples += r.resamples;
            inconsistent += r.inconsistent_solves;
            t.check(r.pass, "full (" + ::std::to_string(n) + "," + ::std::to_string(m) + ")");
        }
    }
    return detail::make(5, "reduction identities", t.ok() && inconsistent == 0u,
                        t.summary() + ", " + ::std::to_string(s.trials) + " trials each, seed 42, "
                            + ::std::to_string(resamples) + " resamples, " + ::std::to_string(inconsistent)
                            + " inconsistent solves");
}

// Common value of both G polynomials under the all-bad substitution, from
// the scalar form of the E/F recursion.
inline ::std::int64_t all_bad_expected(unsigned n, unsigned m)
{
    auto sef = [](unsigned k) {
        ::std::int64_t e = 0, f = 0;
        for (unsigned j = 2; j <= k; ++j) {
            const ::std::int64_t base = static_cast<::std::int64_t>(j - 1) + e;
            e = e - base * 2 - f;
            f = f + base * (4 - 3);
        }
        return ::std::pair{static_cast<::std::int64_t>(k) + e, f};
    };
    const auto [sx, fx] = sef(n);
    const auto [sy, fy] = sef(m);
    (void)fy;
    return sx + sy * fx;
}

inline result fixed_point_suite()
{
    detail::tally t;
    for (int c = 1; c <= 5; ++c) {
        t.check(claim1_case_check(c), "claim 1 case " + ::std::to_string(c));
    }
    for (unsigned n = 1; n <= 8; ++n) {
        for (unsigned m = 1; m <= 8; ++m) {
            const auto r = all_bad_values(n, m);
            t.check(r.pass() && r.gx == rational(all_bad_expected(n, m)),
                    "all-bad (" + ::std::to_string(n) + "," + ::std::to_string(m) + ")");
        }
    }
    for (const char *g : {"2", "3", "2x2", "6"}) {
        t.check(guard_enumeration(parse_group(g)).pass(), ::std::string("guard over ") + g);
    }
    sampling s;
    s.seed = 42;
    for (unsigned n = 1; n <= 4; ++n) {
        for (unsigned m = 1; m <= 4; ++m) {
            t.check(mixed_context_check(n, m, 3, s).pass,
                    "mixed contexts (" + ::std::to_string(n) + "," + ::std::to_string(m) + ")");
        }
    }
    return detail::make(6, "fixed point", t.ok(), t.summary());
}

inline result dimension_truncation()
{
    detail::tally t;
    const var_symbol c("c");
    const auto cp = detail::v(c);
    for (unsigned p = 1; p <= 7; ++p) {
        const auto fp = n_fold_sum(p, fgl_mode::universal(), 3);
        t.check(eval_dim_truncated(fp, 1, c) == polynomial(p) * cp, "F^" + ::std::to_string(p) + "(c) in dimension 1");
    }
    for (unsigned d = 0; d <= 4; ++d) {
        for (unsigned r = d + 1; r <= 6; ++r) {
            truncated_series cr({series_var::u}, 6);
            cr.set({r, 0, 0}, polynomial(1));
            t.check(eval_dim_truncated(cr, d, c).is_zero(),
                    "c^" + ::std::to_string(r) + " in dimension " + ::std::to_string(d));
        }
    }
    const auto c1 = detail::v(var_symbol("c", {1}));
    const auto c2 = detail::v(var_symbol("c", {2}));
    const auto fa = to_polynomial(universal_fgl(fgl_mode::additive(), 6),
                                  {{series_var::u, var_symbol("c", {1})}, {series_var::v, var_symbol("c", {2})}});
    t.check(fa == c1 + c2, "additive F(c1,c2) = c1 + c2");
    return detail::make(7, "dimension truncation", t.ok(), t.summary());
}

// Criteria 1-7. Determinism (8) compares two runs of the whole suite and
// is checked by the caller.
inline ::std::vector<criterion> criteria()
{
    return {
        {1, "GDPR base cases", 1.0, base_cases},
        {2, "structural suite", 10.0, structural_suite},
        {3, "FGL suite", 30.0, fgl_suite},
        {4, "associativity relations", 10.0, associativity_suite},
        {5, "reduction identities", 60.0, reduction_identities},
        {6, "fixed point", 10.0, fixed_point_suite},
        {7, "dimension truncation", 2.0, dimension_truncation},
    };
}

inline json to_json(const result &r)
{
    json j;
    j["id"] = r.id;
    j["name"] = r.name;
    j["pass"] = r.pass;
    j["detail"] = r.detail;
    return j;
}

} // namespace cobord::acceptance

#endif
