#ifndef COBORD_FGL_HPP
#define COBORD_FGL_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <cobord/errors.hpp>
#include <cobord/polynomial.hpp>
#include <cobord/series.hpp>

namespace cobord
{

// Which coefficients a_ij (i, j >= 1) the formal group law carries.
class fgl_mode
{
public:
    enum class kind { universal, additive, multiplicative, custom };

    // a_ij as free symbols a[i][j] with a_ji identified with a_ij.
    static fgl_mode universal()
    {
        return fgl_mode(kind::universal);
    }
    // F(u,v) = u + v.
    static fgl_mode additive()
    {
        return fgl_mode(kind::additive);
    }
    // F(u,v) = u + v + beta*u*v.
    static fgl_mode multiplicative(polynomial beta = polynomial::variable(var_symbol("beta")))
    {
        fgl_mode m(kind::multiplicative);
        m.table_.emplace(::std::make_pair(1u, 1u), ::std::move(beta));
        return m;
    }
    // Explicit table of a_ij, i, j >= 1. An entry (i,j) without a (j,i)
    // counterpart is mirrored.
    static fgl_mode custom(::std::map<::std::pair<unsigned, unsigned>, polynomial> table)
    {
        fgl_mode m(kind::custom);
        for (auto &[ij, c] : table) {
            if (ij.first == 0u || ij.second == 0u) {
                throw ::std::invalid_argument("custom FGL table may only set a_ij with i, j >= 1");
            }
        }
        for (const auto &[ij, c] : table) {
            const auto ji = ::std::make_pair(ij.second, ij.first);
            if (table.count(ji) == 0u) {
                m.table_.emplace(ji, c);
            }
        }
        for (auto &[ij, c] : table) {
            m.table_.emplace(ij, ::std::move(c));
        }
        return m;
    }

    kind type() const noexcept
    {
        return kind_;
    }

    // Coefficient of u^i v^j for i, j >= 1.
    polynomial coefficient(unsigned i, unsigned j) const
    {
        switch (kind_) {
            case kind::universal:
                return polynomial::variable(symbol(i, j));
            case kind::additive:
                return polynomial();
            default: {
                auto it = table_.find({i, j});
                return it == table_.end() ? polynomial() : it->second;
            }
        }
    }

    // The symbol a[min(i,j)][max(i,j)].
    static var_symbol symbol(unsigned i, unsigned j)
    {
        return i <= j ? var_symbol("a", {i, j}) : var_symbol("a", {j, i});
    }

private:
    explicit fgl_mode(kind k) : kind_(k) {}

    kind kind_;
    ::std::map<::std::pair<unsigned, unsigned>, polynomial> table_;
};

// F(u,v) = u + v + sum a_ij u^i v^j through total degree N.
inline truncated_series universal_fgl(const fgl_mode &mode, unsigned N)
{
    truncated_series F({series_var::u, series_var::v}, N);
    F.set({1, 0, 0}, polynomial(1));
    F.set({0, 1, 0}, polynomial(1));
    for (unsigned d = 2; d <= N; ++d) {
        for (unsigned i = 1; i < d; ++i) {
            F.set({i, d - i, 0}, mode.coefficient(i, d - i));
        }
    }
    return F;
}

// gamma(u) with F(u, gamma(u)) = 0, solved one degree at a time.
inline truncated_series inverse_series(const fgl_mode &mode, unsigned N)
{
    const auto F = universal_fgl(mode, N);
    truncated_series g({series_var::u}, N);
    g.set({1, 0, 0}, polynomial(-1));
    for (unsigned k = 2; k <= N; ++k) {
        // The u^k coefficient of F(u, g) is linear in g_k with slope 1.
        const auto r = compose(F.truncate(k), series_var::v, g.truncate(k));
        g.set({k, 0, 0}, -r.coeff(k));
    }
    return g;
}

// F^-(u,v) = F(u, gamma(v)).
inline truncated_series f_minus(const fgl_mode &mode, unsigned N)
{
    const auto gv = relabel(inverse_series(mode, N), {{series_var::u, series_var::v}});
    return compose(universal_fgl(mode, N), series_var::v, gv);
}

// F^n(u) = F(u, F(u, ... F(u,u) ...)), bracketed to the right.
inline truncated_series n_fold_sum(unsigned n, const fgl_mode &mode, unsigned N)
{
    if (n < 1u) {
        throw ::std::invalid_argument("n-fold sum needs n >= 1");
    }
    const auto F = universal_fgl(mode, N);
    auto s = truncated_series::variable(series_var::u, N);
    for (unsigned k = 1; k < n; ++k) {
        s = compose(F, series_var::v, s);
    }
    return s;
}

// [1/n]_F(u) over Z[1/n]: the series b with b(F^n(u)) = u, from the
// triangular system sum_j b_j [u^i](F^n)^j = delta_i1. When check is set
// the other composite F^n(b(u)) = u is confirmed as well.
inline truncated_series division_series(unsigned n, const fgl_mode &mode, unsigned N, bool check = true)
{
    if (n < 1u) {
        throw ::std::invalid_argument("division series needs n >= 1");
    }
    const coeff_ring ring{n};
    const auto Fn = n_fold_sum(n, mode, N);

    // powers[j] = (F^n)^j
    ::std::vector<truncated_series> powers;
    powers.push_back(truncated_series::constant(polynomial(1), {series_var::u}, N));
    for (unsigned j = 1; j <= N; ++j) {
        powers.push_back(powers.back() * Fn);
    }

    truncated_series b({series_var::u}, N);
    for (unsigned i = 1; i <= N; ++i) {
        polynomial rhs = polynomial(i == 1u ? 1 : 0, ring);
        for (unsigned j = 1; j < i; ++j) {
            const auto bj = b.coeff(j);
            if (!bj.is_zero()) {
                rhs -= bj * powers[j].coeff(i);
            }
        }
        // [u^i](F^n)^i = n^i
        b.set({i, 0, 0}, ::std::move(rhs).with_ring(ring) * pow(rational(1, n), i));
    }
    if (check && !(compose(Fn, series_var::u, b) == truncated_series::variable(series_var::u, N))) {
        throw ::std::logic_error("division series fails F^n([1/n](u)) = u");
    }
    return b;
}

// Coefficients of F(F(u,v),w) - F(u,F(v,w)) for the universal law, one
// per exponent tuple with a nonzero coefficient.
inline ::std::vector<::std::pair<exponent3, polynomial>> associativity_relations(unsigned N)
{
    if (N < 3u) {
        throw ::std::invalid_argument("associativity relations need order >= 3");
    }
    const auto F = universal_fgl(fgl_mode::universal(), N);
    const auto Fuw = relabel(F, {{series_var::v, series_var::w}});
    const auto Fvw = relabel(F, {{series_var::u, series_var::v}, {series_var::v, series_var::w}});
    const auto left = compose(Fuw, series_var::u, F);
    const auto right = compose(F, series_var::v, Fvw);
    const auto diff = left - right;
    ::std::vector<::std::pair<exponent3, polynomial>> out;
    for (const auto &[e, c] : diff.coeffs()) {
        out.emplace_back(e, c);
    }
    return out;
}

// Reads a one-variable series as a polynomial in the symbol c and drops
// every power of c above d.
inline polynomial eval_dim_truncated(const truncated_series &s, unsigned d, const var_symbol &c = var_symbol("c"))
{
    if (s.vars().size() > 1u) {
        throw ::std::invalid_argument("dimension truncation needs a one-variable series");
    }
    if (d > s.order()) {
        throw ::std::invalid_argument("dimension bound " + ::std::to_string(d) + " exceeds the series order "
                                      + ::std::to_string(s.order()));
    }
    const auto cid = intern(c);
    polynomial out;
    for (const auto &[e, k] : s.coeffs()) {
        const auto i = total(e);
        if (i <= d) {
            out += k * polynomial::term(monomial(cid, i), rational(1), k.ring());
        }
    }
    return out;
}

// Turns a series into a polynomial by naming its formal variables.
inline polynomial to_polynomial(const truncated_series &s, const ::std::map<series_var, var_symbol> &names)
{
    polynomial out;
    for (const auto &[e, k] : s.coeffs()) {
        ::std::vector<var_power> ps;
        for (unsigned i = 0; i < 3; ++i) {
            if (e[i] != 0u) {
                ps.push_back({intern(names.at(static_cast<series_var>(i))), e[i]});
            }
        }
        out += k * polynomial::term(monomial(ps), rational(1), k.ring());
    }
    return out;
}

// For each nonzero coefficient b_i of a one-variable series, the least k
// such that n^k * b_i has integral coefficients.
inline ::std::vector<::std::pair<unsigned, unsigned>> denominator_profile(const truncated_series &s, unsigned n)
{
    ::std::vector<::std::pair<unsigned, unsigned>> out;
    const big_int bn(n);
    for (const auto &[e, c] : s.coeffs()) {
        unsigned kmax = 0;
        for (const auto t : c) {
            const auto den = t.coeff.denominator();
            unsigned k = 0;
            big_int nk = 1;
            while (nk % den != 0) {
                if (n < 2u || k > 64u * 64u) {
                    throw ring_violation("denominator " + den.str() + " is not a divisor of a power of "
                                         + ::std::to_string(n));
                }
                nk *= bn;
                ++k;
            }
            kmax = ::std::max(kmax, k);
        }
        out.emplace_back(total(e), kmax);
    }
    return out;
}

} // namespace cobord

#endif
