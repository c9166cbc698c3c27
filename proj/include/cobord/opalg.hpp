#ifndef COBORD_OPALG_HPP
#define COBORD_OPALG_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <cobord/errors.hpp>
#include <cobord/gdpr.hpp>
#include <cobord/polynomial.hpp>
#include <cobord/polynomial_io.hpp>

namespace cobord
{

// Operator expressions are polynomials in commuting operator symbols:
// Chern symbols c<D> for divisor classes and tower symbols sigma1<D>,
// sigma2A[k], sigma3A[k] (and the B side).
using operator_expr = polynomial;

// Divisor classes are named per side. In a setup A_1 + ... + A_n ~ C the
// full sum is C on both sides, a single A_i is A[i] and a longer prefix
// A_1 + ... + A_k is PA[k].
namespace detail
{

inline ::std::string side_letter(gdpr_side s)
{
    return s == gdpr_side::X ? "A" : "B";
}

inline var_symbol prefix_symbol(const ::std::string &prefix, gdpr_side s, unsigned k, unsigned total)
{
    if (k == total) {
        return var_symbol(prefix + "C");
    }
    if (k == 1u) {
        return var_symbol(prefix + side_letter(s), {k});
    }
    return var_symbol(prefix + "P" + side_letter(s), {k});
}

} // namespace detail

inline var_symbol chern_single(gdpr_side s, unsigned i, unsigned total)
{
    return total == 1u ? var_symbol("cC") : var_symbol("c" + detail::side_letter(s), {i});
}
inline var_symbol chern_prefix(gdpr_side s, unsigned k, unsigned total)
{
    return detail::prefix_symbol("c", s, k, total);
}
inline var_symbol sigma1_single(gdpr_side s, unsigned i, unsigned total)
{
    return total == 1u ? var_symbol("sigma1C") : var_symbol("sigma1" + detail::side_letter(s), {i});
}
// k = 0 names the tower over the zero divisor.
inline var_symbol sigma1_prefix(gdpr_side s, unsigned k, unsigned total)
{
    if (k == 0u) {
        return var_symbol("sigma1P" + detail::side_letter(s), {0});
    }
    return detail::prefix_symbol("sigma1", s, k, total);
}
inline var_symbol sigma2(gdpr_side s, unsigned k)
{
    return var_symbol("sigma2" + detail::side_letter(s), {k});
}
inline var_symbol sigma3(gdpr_side s, unsigned k)
{
    return var_symbol("sigma3" + detail::side_letter(s), {k});
}

using image_map = ::std::map<var_symbol, operator_expr>;

// X_i -> c(A_i), U^1_k -> sigma1 over A_1 + ... + A_k, U^2_k, U^3_k -> the
// two towers of step k; the same with Y, V and the B divisors.
inline image_map standard_images(unsigned n, unsigned m)
{
    image_map out;
    for (auto [s, total] : {::std::pair{gdpr_side::X, n}, ::std::pair{gdpr_side::Y, m}}) {
        for (unsigned k = 1; k <= total; ++k) {
            out.emplace(sym_point(s, k), polynomial::variable(chern_single(s, k, total)));
            out.emplace(sym_tower(s, 1, k), polynomial::variable(sigma1_prefix(s, k, total)));
            out.emplace(sym_tower(s, 2, k), polynomial::variable(sigma2(s, k)));
            out.emplace(sym_tower(s, 3, k), polynomial::variable(sigma3(s, k)));
        }
    }
    return out;
}

// Ring homomorphism extension of the generator images.
inline operator_expr apply_G(const polynomial &g, const image_map &images)
{
    for (const auto &v : variables(g)) {
        if (images.count(v) == 0u) {
            throw missing_image("no operator image for " + render(v));
        }
    }
    return substitute(g, images);
}

// H(L,M) = cL + cM - cL cM s1 + cL cM cLM (s2 - s3) - cLM.
inline operator_expr h_relation(const operator_expr &cl, const operator_expr &cm, const operator_expr &clm,
                                const operator_expr &s1, const operator_expr &s2, const operator_expr &s3)
{
    const auto lm = cl * cm;
    return cl + cm - lm * s1 + lm * clm * (s2 - s3) - clm;
}

inline operator_expr h_expression()
{
    auto v = [](const char *name) { return polynomial::variable(var_symbol(name)); };
    return h_relation(v("cL"), v("cM"), v("cLM"), v("sigma1"), v("sigma2"), v("sigma3"));
}

struct sampling {
    ::std::uint64_t seed = 0;
    unsigned trials = 20;
    ::std::int64_t range = 1000;
    unsigned resample_limit = 50;
};

namespace detail
{

inline ::std::uint64_t splitmix64(::std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline ::std::uint64_t trial_seed(::std::uint64_t seed, unsigned trial) noexcept
{
    return splitmix64(splitmix64(seed) ^ trial);
}

// Uniform integer in [-r, r]; the modulo bias is irrelevant here.
inline ::std::int64_t draw(::std::mt19937_64 &rng, ::std::int64_t r)
{
    const auto span = static_cast<::std::uint64_t>(2 * r + 1);
    return static_cast<::std::int64_t>(rng() % span) - r;
}

// eq = a + b x at the point, with every other variable bound.
inline ::std::pair<rational, rational> affine_parts(const polynomial &eq, const ::std::map<symbol_id, rational> &vals,
                                                   symbol_id x)
{
    rational a, b;
    for (const auto t : eq) {
        rational v = t.coeff;
        bool linear = false;
        for (auto vp : t.mono) {
            if (vp.var == x) {
                if (vp.exp != 1u) {
                    throw ::std::invalid_argument("relation is not affine in " + render(symbol_of(x)));
                }
                linear = true;
                continue;
            }
            auto it = vals.find(vp.var);
            if (it == vals.end()) {
                throw unbound_variable("no value for " + render(symbol_of(vp.var)));
            }
            v *= vp.exp == 1u ? it->second : pow(it->second, vp.exp);
        }
        (linear ? b : a) += v;
    }
    return {a, b};
}

} // namespace detail

// Ordered relations, each solved for one symbol once everything before it
// is known. Every other symbol is drawn at random.
class relation_system
{
public:
    struct relation {
        var_symbol solve_for;
        polynomial equation; // = 0
    };

    void add(var_symbol solve_for, polynomial equation)
    {
        rels_.push_back({::std::move(solve_for), ::std::move(equation)});
    }
    const ::std::vector<relation> &relations() const noexcept
    {
        return rels_;
    }

    // Free symbols of the relations and of extra, in var_symbol order.
    ::std::vector<var_symbol> free_symbols(const ::std::vector<const polynomial *> &extra) const
    {
        ::std::set<var_symbol> all;
        for (const auto &r : rels_) {
            for (auto &v : variables(r.equation)) {
                all.insert(v);
            }
        }
        for (const auto *p : extra) {
            for (auto &v : variables(*p)) {
                all.insert(v);
            }
        }
        for (const auto &r : rels_) {
            all.erase(r.solve_for);
        }
        return {all.begin(), all.end()};
    }

    // Draws the free symbols and solves the relations in order. Throws
    // degenerate_sample when a relation's slope vanishes at the draw.
    ::std::map<symbol_id, rational> sample(::std::mt19937_64 &rng, const ::std::vector<var_symbol> &free,
                                           ::std::int64_t range) const
    {
        ::std::map<symbol_id, rational> vals;
        for (const auto &v : free) {
            vals[intern(v)] = rational(detail::draw(rng, range));
        }
        for (const auto &r : rels_) {
            const auto x = intern(r.solve_for);
            auto [a, b] = detail::affine_parts(r.equation, vals, x);
            if (b.is_zero()) {
                throw degenerate_sample("slope of the relation for " + render(r.solve_for) + " vanished");
            }
            vals[x] = -a / b;
        }
        return vals;
    }

private:
    ::std::vector<relation> rels_;
};

// Runs attempt(rng) once per trial with a generator derived from the seed
// and the trial index. degenerate_sample restarts the trial on the same
// generator, at most resample_limit times. Returns whether all trials
// passed and the number of resamples.
template <class Attempt>
::std::pair<bool, unsigned> run_trials(const sampling &s, Attempt &&attempt)
{
    bool ok = true;
    unsigned resamples = 0;
    for (unsigned t = 0; t < s.trials; ++t) {
        ::std::mt19937_64 rng(detail::trial_seed(s.seed, t));
        unsigned here = 0;
        for (;;) {
            try {
                ok = attempt(rng) && ok;
                break;
            } catch (const degenerate_sample &) {
                if (++here > s.resample_limit) {
                    throw resample_limit_exceeded("trial " + ::std::to_string(t) + " exceeded "
                                                  + ::std::to_string(s.resample_limit) + " resamples");
                }
            }
        }
        resamples += here;
    }
    return {ok, resamples};
}

struct verification_report {
    ::std::string identity;
    unsigned n = 0;
    unsigned m = 0;
    unsigned trials = 0;
    unsigned resamples = 0;
    bool pass = false;
    ::std::uint64_t seed = 0;
    ::std::uint64_t degree_bound = 0;
    ::std::int64_t sample_range = 0;
    unsigned inconsistent_solves = 0;
};

inline json to_json(const verification_report &r)
{
    json j;
    j["identity"] = r.identity;
    j["n"] = r.n;
    j["m"] = r.m;
    j["trials"] = r.trials;
    j["resamples"] = r.resamples;
    j["pass"] = r.pass;
    j["seed"] = r.seed;
    j["degree_bound"] = r.degree_bound;
    j["sample_range"] = json::array({-r.sample_range, r.sample_range});
    j["inconsistent_solves"] = r.inconsistent_solves;
    return j;
}

namespace detail
{

inline rational eval_at(const polynomial &p, const ::std::map<symbol_id, rational> &vals)
{
    rational sum;
    for (const auto t : p) {
        rational v = t.coeff;
        for (auto vp : t.mono) {
            auto it = vals.find(vp.var);
            if (it == vals.end()) {
                throw unbound_variable("no value for " + render(symbol_of(vp.var)));
            }
            v *= vp.exp == 1u ? it->second : pow(it->second, vp.exp);
        }
        sum += v;
    }
    return sum;
}

// c = S + c F solved for c; degenerate when F = 1.
inline rational solve_one_sided(const rational &s, const rational &f)
{
    const auto slope = rational(1) - f;
    if (slope.is_zero()) {
        throw degenerate_sample("one-sided relation has zero slope");
    }
    return s / slope;
}

// The chain A_1 + ... + A_{k-1} + A_k ~ A_1 + ... + A_k for k = 2..total,
// each an H relation solved for the new prefix class. With last_tower set
// the final step is solved for its sigma2 symbol instead, the full class
// being known already.
inline void add_chain(relation_system &sys, gdpr_side s, unsigned total, bool last_tower)
{
    auto v = [](const var_symbol &x) { return polynomial::variable(x); };
    for (unsigned k = 2; k <= total; ++k) {
        auto eq = h_relation(v(chern_prefix(s, k - 1, total)), v(chern_single(s, k, total)),
                             v(chern_prefix(s, k, total)), v(sigma1_prefix(s, k - 1, total)), v(sigma2(s, k)),
                             v(sigma3(s, k)));
        sys.add(last_tower && k == total ? sigma2(s, k) : chern_prefix(s, k, total), ::std::move(eq));
    }
}

} // namespace detail

// One induction step: from GDPR(n-1,1) for A_1 + ... + A_{n-1} ~ C' and
// the H relation for C' + A_n ~ C, the class c(C) must satisfy
// c(C) = G(X_1 + ... + X_n + E_n) + c(C) G(F_n).
inline verification_report verify_step_identity(unsigned n, const sampling &s)
{
    if (n < 2u) {
        throw ::std::invalid_argument("step identity needs n >= 2");
    }
    const auto images = standard_images(n, 1);
    auto v = [](const var_symbol &x) { return polynomial::variable(x); };
    auto &b = gdpr_builder::shared();
    const auto side = gdpr_side::X;

    relation_system sys;
    if (n > 2u) {
        const auto cprev = v(chern_prefix(side, n - 1, n));
        const auto sp = apply_G(detail::point_sum(side, n - 1) + b.E(side, n - 1), images);
        const auto fp = apply_G(b.F(side, n - 1), images);
        sys.add(chern_prefix(side, n - 1, n), cprev - sp - cprev * fp);
    }
    const auto cc = chern_prefix(side, n, n);
    sys.add(cc, h_relation(v(chern_prefix(side, n - 1, n)), v(chern_single(side, n, n)), v(cc),
                           v(sigma1_prefix(side, n - 1, n)), v(sigma2(side, n)), v(sigma3(side, n))));

    const auto sn = apply_G(detail::point_sum(side, n) + b.E(side, n), images);
    const auto fn = apply_G(b.F(side, n), images);
    const auto free = sys.free_symbols({&sn, &fn});
    const auto ccid = intern(cc);

    auto [ok, resamples] = run_trials(s, [&](::std::mt19937_64 &rng) {
        const auto vals = sys.sample(rng, free, s.range);
        const auto &c = vals.at(ccid);
        return c == detail::eval_at(sn, vals) + c * detail::eval_at(fn, vals);
    });

    verification_report r;
    r.identity = "step";
    r.n = n;
    r.m = 1;
    r.trials = s.trials;
    r.resamples = resamples;
    r.pass = ok;
    r.seed = s.seed;
    r.degree_bound = ::std::max(sn.total_degree(), fn.total_degree() + 1);
    r.sample_range = s.range;
    return r;
}

// GDPR(n,m) under the relations of both chains: c(C) is reached through
// the A chain, the B chain is closed by solving its last sigma2 symbol.
// Both one-sided relations are solved for c(C) as a consistency check.
inline verification_report verify_full_identity(unsigned n, unsigned m, const sampling &s)
{
    if (n < 1u || m < 1u) {
        throw ::std::invalid_argument("full identity needs n, m >= 1");
    }
    const auto images = standard_images(n, m);
    auto &b = gdpr_builder::shared();

    relation_system sys;
    detail::add_chain(sys, gdpr_side::X, n, false);
    detail::add_chain(sys, gdpr_side::Y, m, true);

    const auto gx = apply_G(build_GX(n, m), images);
    const auto gy = apply_G(build_GY(m, n), images);
    const auto sx = apply_G(detail::point_sum(gdpr_side::X, n) + b.E(gdpr_side::X, n), images);
    const auto fx = apply_G(b.F(gdpr_side::X, n), images);
    const auto sy = apply_G(detail::point_sum(gdpr_side::Y, m) + b.E(gdpr_side::Y, m), images);
    const auto fy = apply_G(b.F(gdpr_side::Y, m), images);
    const auto free = sys.free_symbols({&gx, &gy, &sx, &fx, &sy, &fy});
    const auto ccid = intern(chern_prefix(gdpr_side::X, n, n));

    unsigned inconsistent = 0;
    auto [ok, resamples] = run_trials(s, [&](::std::mt19937_64 &rng) {
        auto vals = sys.sample(rng, free, s.range);
        const auto cx = detail::solve_one_sided(detail::eval_at(sx, vals), detail::eval_at(fx, vals));
        const auto cy = detail::solve_one_sided(detail::eval_at(sy, vals), detail::eval_at(fy, vals));
        auto it = vals.find(ccid);
        if (it == vals.end()) {
            it = vals.emplace(ccid, cx).first;
        }
        if (!(cx == cy && cx == it->second)) {
            ++inconsistent;
            return false;
        }
        return detail::eval_at(gx, vals) == detail::eval_at(gy, vals);
    });

    verification_report r;
    r.identity = "full";
    r.n = n;
    r.m = m;
    r.trials = s.trials;
    r.resamples = resamples;
    r.pass = ok && inconsistent == 0u;
    r.seed = s.seed;
    r.degree_bound = ::std::max(gx.total_degree(), gy.total_degree());
    r.sample_range = s.range;
    r.inconsistent_solves = inconsistent;
    return r;
}

} // namespace cobord

#endif
