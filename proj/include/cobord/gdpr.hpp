#ifndef COBORD_GDPR_HPP
#define COBORD_GDPR_HPP

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <cobord/polynomial.hpp>
#include <cobord/symbol.hpp>

namespace cobord
{

// The generators X_i, Y_j, U^p_k, V^q_l of the free ring R.
inline var_symbol sym_X(unsigned i)
{
    return var_symbol("X", {i});
}
inline var_symbol sym_Y(unsigned j)
{
    return var_symbol("Y", {j});
}
inline var_symbol sym_U(unsigned p, unsigned k)
{
    return var_symbol("U", {p, k});
}
inline var_symbol sym_V(unsigned q, unsigned l)
{
    return var_symbol("V", {q, l});
}

// Which half of the alphabet a construction uses: X with U, or Y with V.
enum class gdpr_side { X, Y };

inline gdpr_side other(gdpr_side s) noexcept
{
    return s == gdpr_side::X ? gdpr_side::Y : gdpr_side::X;
}

inline var_symbol sym_point(gdpr_side s, unsigned i)
{
    return s == gdpr_side::X ? sym_X(i) : sym_Y(i);
}
inline var_symbol sym_tower(gdpr_side s, unsigned p, unsigned k)
{
    return s == gdpr_side::X ? sym_U(p, k) : sym_V(p, k);
}

namespace detail
{

// Decoded GDPR generator, cached per symbol id.
struct gdpr_var_info {
    char family = 0; // 'X', 'Y', 'U', 'V' or 0 for anything else
    unsigned sup = 0;
    unsigned index = 0;
};

// Decoded generators for every interned symbol, indexed by id.
inline const ::std::vector<gdpr_var_info> &gdpr_infos()
{
    thread_local ::std::vector<gdpr_var_info> cache;
    const auto n = symbol_table::instance().size();
    for (auto id = cache.size(); id < n; ++id) {
        const auto &s = symbol_of(static_cast<symbol_id>(id));
        gdpr_var_info info;
        if ((s.family == "X" || s.family == "Y") && s.indices.size() == 1u && s.indices[0] >= 1u) {
            info = {s.family[0], 0, s.indices[0]};
        } else if ((s.family == "U" || s.family == "V") && s.indices.size() == 2u && s.indices[0] >= 1u
                   && s.indices[0] <= 3u && s.indices[1] >= 1u) {
            info = {s.family[0], s.indices[0], s.indices[1]};
        }
        cache.push_back(info);
    }
    return cache;
}

inline const gdpr_var_info &gdpr_info(symbol_id id)
{
    return gdpr_infos()[id];
}

inline polynomial point_sum(gdpr_side s, unsigned n)
{
    polynomial out;
    for (unsigned i = 1; i <= n; ++i) {
        out += polynomial::variable(sym_point(s, i));
    }
    return out;
}

} // namespace detail

// Builds E_n, F_n and G_{n,m}. E and F are memoised per side; G is
// assembled on demand since it is large and rarely reused.
class gdpr_builder
{
public:
    const polynomial &E(gdpr_side s, unsigned n)
    {
        ::std::lock_guard lock(mtx_);
        extend(s, n);
        return e_[idx(s)][n];
    }
    const polynomial &F(gdpr_side s, unsigned n)
    {
        ::std::lock_guard lock(mtx_);
        extend(s, n);
        return f_[idx(s)][n];
    }

    // G^X_{n,m} = S_X(n) + E^X_n + S_Y(m) F^X_n + E^Y_m F^X_n and its
    // X <-> Y mirror G^Y_{n,m}, where the first index always counts the
    // side's own variables.
    polynomial G(gdpr_side s, unsigned n, unsigned m)
    {
        if (n < 1u || m < 1u) {
            throw ::std::invalid_argument("G needs n, m >= 1");
        }
        const auto o = other(s);
        const polynomial &fn = F(s, n);
        // The supports of S_o(m) + E_o(m) and F_s(n) are disjoint, so the
        // product needs no combining. Each of its terms contains a variable
        // of side o and no term of S_s(n) + E_s(n) does, so those are
        // appended as they are.
        polynomial_builder out((detail::point_sum(o, m) + E(o, m)) * fn);
        const auto own = detail::point_sum(s, n) + E(s, n);
        for (::std::size_t i = 0; i < own.size(); ++i) {
            const auto t = own.term(i);
            out.append_unique(t.mono, own.term_hash(i), t.coeff);
        }
        return ::std::move(out).finish();
    }

    static gdpr_builder &shared()
    {
        static gdpr_builder b;
        return b;
    }

private:
    static unsigned idx(gdpr_side s) noexcept
    {
        return s == gdpr_side::X ? 0u : 1u;
    }

    void extend(gdpr_side s, unsigned n)
    {
        if (n < 1u) {
            throw ::std::invalid_argument("E_n and F_n need n >= 1");
        }
        auto &e = e_[idx(s)];
        auto &f = f_[idx(s)];
        if (e.empty()) {
            // Slot 0 is unused; E_1 = F_1 = 0.
            e.resize(2);
            f.resize(2);
        }
        while (e.size() <= n) {
            const auto k = static_cast<unsigned>(e.size());
            auto [ek, fk] = step(s, k, e[k - 1], f[k - 1]);
            e.push_back(::std::move(ek));
            f.push_back(::std::move(fk));
        }
    }

public:
    // One step of the recursion: (E_n, F_n) from (E_{n-1}, F_{n-1}).
    static ::std::pair<polynomial, polynomial> step(gdpr_side s, unsigned n, const polynomial &e_prev,
                                                    const polynomial &f_prev)
    {
        const auto xn = polynomial::variable(sym_point(s, n));
        const auto base = (detail::point_sum(s, n - 1) + e_prev) * xn;
        polynomial en = e_prev - base * polynomial::variable(sym_tower(s, 1, n - 1)) - xn * f_prev;
        polynomial fn = f_prev
                        + base
                              * (polynomial::variable(sym_tower(s, 2, n))
                                 - polynomial::variable(sym_tower(s, 3, n)));
        return {::std::move(en), ::std::move(fn)};
    }

private:
    ::std::mutex mtx_;
    ::std::vector<polynomial> e_[2];
    ::std::vector<polynomial> f_[2];
};

inline polynomial build_EX(unsigned n)
{
    return gdpr_builder::shared().E(gdpr_side::X, n);
}
inline polynomial build_FX(unsigned n)
{
    return gdpr_builder::shared().F(gdpr_side::X, n);
}
inline polynomial build_EY(unsigned n)
{
    return gdpr_builder::shared().E(gdpr_side::Y, n);
}
inline polynomial build_FY(unsigned n)
{
    return gdpr_builder::shared().F(gdpr_side::Y, n);
}
inline polynomial build_GX(unsigned n, unsigned m)
{
    return gdpr_builder::shared().G(gdpr_side::X, n, m);
}
inline polynomial build_GY(unsigned n, unsigned m)
{
    return gdpr_builder::shared().G(gdpr_side::Y, n, m);
}

// E_n and F_n straight from the recursion, without the memo table.
inline ::std::pair<polynomial, polynomial> build_EF_unmemoized(gdpr_side s, unsigned n)
{
    if (n < 1u) {
        throw ::std::invalid_argument("E_n and F_n need n >= 1");
    }
    polynomial e, f;
    for (unsigned k = 2; k <= n; ++k) {
        auto [ek, fk] = gdpr_builder::step(s, k, e, f);
        e = ::std::move(ek);
        f = ::std::move(fk);
    }
    return {::std::move(e), ::std::move(f)};
}

// Every X_i and Y_j occurs with exponent at most 1.
inline bool check_multilinear(const polynomial &g)
{
    const auto &infos = detail::gdpr_infos();
    for (const auto t : g) {
        for (auto vp : t.mono) {
            if (vp.exp == 1u) {
                continue;
            }
            const auto &info = infos[vp.var];
            if ((info.family == 'X' || info.family == 'Y') && vp.exp > 1u) {
                return false;
            }
        }
    }
    return true;
}

// All X/U indices are at most n and all Y/V indices at most m.
inline bool check_index_bounds(const polynomial &g, unsigned n, unsigned m)
{
    const auto &infos = detail::gdpr_infos();
    for (const auto t : g) {
        for (auto vp : t.mono) {
            const auto &info = infos[vp.var];
            switch (info.family) {
                case 'X':
                case 'U':
                    if (info.index > n) {
                        return false;
                    }
                    break;
                case 'Y':
                case 'V':
                    if (info.index > m) {
                        return false;
                    }
                    break;
                default:
                    return false;
            }
        }
    }
    return true;
}

// Grading on R: X, Y have weight 1, U^1, V^1 weight -1, and U^2, U^3,
// V^2, V^3 weight -2.
inline ::std::optional<::std::int64_t> gdpr_weight(const var_symbol &s)
{
    const auto &info = detail::gdpr_info(intern(s));
    switch (info.family) {
        case 'X':
        case 'Y':
            return 1;
        case 'U':
        case 'V':
            return info.sup == 1u ? -1 : -2;
        default:
            return ::std::nullopt;
    }
}

// Every monomial has the given weight.
inline bool is_homogeneous(const polynomial &g, ::std::int64_t weight)
{
    const auto &infos = detail::gdpr_infos();
    for (const auto t : g) {
        ::std::int64_t w = 0;
        for (auto vp : t.mono) {
            const auto &info = infos[vp.var];
            switch (info.family) {
                case 'X':
                case 'Y':
                    w += vp.exp;
                    break;
                case 'U':
                case 'V':
                    w -= static_cast<::std::int64_t>(vp.exp) * (info.sup == 1u ? 1 : 2);
                    break;
                default:
                    throw missing_weight("no weight for " + render(symbol_of(vp.var)));
            }
        }
        if (w != weight) {
            return false;
        }
    }
    return true;
}

inline bool weight_check(const polynomial &g)
{
    return is_homogeneous(g, 1);
}

// Multilinearity, index bounds and homogeneity gathered in one pass.
struct structure_report {
    bool multilinear = true;
    bool index_bounds = true;
    bool homogeneous = true;

    bool all() const noexcept
    {
        return multilinear && index_bounds && homogeneous;
    }
};

inline structure_report scan_structure(const polynomial &g, unsigned n, unsigned m, ::std::int64_t weight = 1)
{
    // Per-id lookup tables keep the inner loop to a few loads.
    const auto &infos = detail::gdpr_infos();
    const auto count = infos.size();
    ::std::vector<::std::int32_t> wt(count);
    ::std::vector<::std::uint8_t> point(count), in_range(count), known(count);
    for (::std::size_t i = 0; i < count; ++i) {
        const auto &info = infos[i];
        const bool x_side = info.family == 'X' || info.family == 'U';
        point[i] = info.family == 'X' || info.family == 'Y';
        known[i] = info.family != 0;
        wt[i] = point[i] != 0u ? 1 : (info.sup == 1u ? -1 : -2);
        in_range[i] = info.index <= (x_side ? n : m);
    }
    bool multilinear = true;
    bool bounds = true;
    bool homogeneous = true;
    for (::std::size_t i = 0; i < g.size(); ++i) {
        const auto mono = g.term(i).mono;
        const auto *w = mono.data();
        const auto *end = w + mono.word_count();
        ::std::int64_t total = 0;
        while (w != end) {
            const auto id = *w >> 8;
            ::std::uint32_t e = *w & 0xffu;
            ++w;
            if (e == detail::exp_escape) {
                e = *w++;
            }
            if (known[id] == 0u) {
                throw missing_weight("no weight for " + render(symbol_of(id)));
            }
            multilinear &= point[id] == 0u || e == 1u;
            bounds &= in_range[id] != 0u;
            total += static_cast<::std::int64_t>(wt[id]) * e;
        }
        homogeneous &= total == weight;
    }
    return {multilinear, bounds, homogeneous};
}

// Swaps X <-> Y and U <-> V throughout.
inline polynomial mirror(polynomial &&g)
{
    // Intern every partner first so the id table below is complete.
    const auto n = symbol_table::instance().size();
    ::std::vector<::std::pair<symbol_id, var_symbol>> partners;
    for (symbol_id id = 0; id < n; ++id) {
        const auto info = detail::gdpr_info(id);
        switch (info.family) {
            case 'X':
                partners.emplace_back(id, sym_Y(info.index));
                break;
            case 'Y':
                partners.emplace_back(id, sym_X(info.index));
                break;
            case 'U':
                partners.emplace_back(id, sym_V(info.sup, info.index));
                break;
            case 'V':
                partners.emplace_back(id, sym_U(info.sup, info.index));
                break;
            default:
                break;
        }
    }
    ::std::vector<::std::pair<symbol_id, symbol_id>> pairs;
    for (const auto &[id, s] : partners) {
        pairs.emplace_back(id, intern(s));
    }
    ::std::vector<symbol_id> ids(symbol_table::instance().size());
    for (::std::size_t i = 0; i < ids.size(); ++i) {
        ids[i] = static_cast<symbol_id>(i);
    }
    for (auto [from, to] : pairs) {
        ids[from] = to;
        ids[to] = from;
    }
    return rename_ids(::std::move(g), ids);
}
inline polynomial mirror(const polynomial &g)
{
    return mirror(polynomial(g));
}

// The symbol swap carries G^X_{n,m} to G^Y_{n,m}.
inline bool mirror_check(unsigned n, unsigned m)
{
    auto swapped = mirror(build_GX(n, m));
    return swapped == build_GY(n, m);
}

// Drops every term containing X_i with i > n or Y_j with j > m.
inline polynomial kill_out_of_range(const polynomial &g, unsigned n, unsigned m)
{
    const auto &infos = detail::gdpr_infos();
    return kill_monomials(g, [n, m, &infos](monomial_view mono) {
        for (auto vp : mono) {
            const auto &info = infos[vp.var];
            if ((info.family == 'X' && info.index > n) || (info.family == 'Y' && info.index > m)) {
                return true;
            }
        }
        return false;
    });
}

// G^X_{N,M} reduces to G^X_{n,m} once the extra X_i, Y_j are set to zero,
// and likewise G^Y_{N,M} to G^Y_{n,m}. gx and gy are G^X_{N,M} and
// G^Y_{N,M}, so a caller sweeping (n, m) can build them once.
inline bool padding_check(const polynomial &gx, const polynomial &gy, unsigned N, unsigned M, unsigned n, unsigned m)
{
    if (n < 1u || m < 1u || n > N || m > M) {
        throw ::std::invalid_argument("padding check needs 1 <= n <= N and 1 <= m <= M");
    }
    if (!(kill_out_of_range(gx, n, m) == build_GX(n, m))) {
        return false;
    }
    return kill_out_of_range(gy, m, n) == build_GY(n, m);
}

inline bool padding_check(unsigned N, unsigned M, unsigned n, unsigned m)
{
    if (n < 1u || m < 1u || n > N || m > M) {
        throw ::std::invalid_argument("padding check needs 1 <= n <= N and 1 <= m <= M");
    }
    return padding_check(build_GX(N, M), build_GY(N, M), N, M, n, m);
}

} // namespace cobord

#endif
