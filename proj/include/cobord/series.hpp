#ifndef COBORD_SERIES_HPP
#define COBORD_SERIES_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <cobord/errors.hpp>
#include <cobord/polynomial.hpp>
#include <cobord/polynomial_io.hpp>

namespace cobord
{

// Formal variables of a series. Their order u < v < w fixes the layout of
// exponent tuples.
enum class series_var : unsigned { u = 0, v = 1, w = 2 };

inline const char *name(series_var x) noexcept
{
    switch (x) {
        case series_var::u:
            return "u";
        case series_var::v:
            return "v";
        default:
            return "w";
    }
}

inline series_var series_var_from_name(const ::std::string &s)
{
    if (s == "u") {
        return series_var::u;
    }
    if (s == "v") {
        return series_var::v;
    }
    if (s == "w") {
        return series_var::w;
    }
    throw parse_error("unknown series variable '" + s + "'");
}

using exponent3 = ::std::array<::std::uint32_t, 3>;

inline ::std::uint32_t total(const exponent3 &e) noexcept
{
    return e[0] + e[1] + e[2];
}

// Graded-lex: by total degree, then larger exponents of earlier variables
// first.
struct graded_lex_less {
    bool operator()(const exponent3 &a, const exponent3 &b) const noexcept
    {
        const auto ta = total(a);
        const auto tb = total(b);
        if (ta != tb) {
            return ta < tb;
        }
        return a > b;
    }
};

// Power series in a subset of {u, v, w} with polynomial coefficients,
// stored modulo total degree order + 1.
class truncated_series
{
public:
    using coeff_map = ::std::map<exponent3, polynomial, graded_lex_less>;

    truncated_series(::std::vector<series_var> vars, unsigned order) : vars_(::std::move(vars)), order_(order)
    {
        if (order_ < 1u) {
            throw ::std::invalid_argument("truncation order must be at least 1");
        }
        normalise_vars();
    }

    // The series consisting of the single variable x.
    static truncated_series variable(series_var x, unsigned order)
    {
        truncated_series s({x}, order);
        exponent3 e{};
        e[static_cast<unsigned>(x)] = 1;
        s.set(e, polynomial(1));
        return s;
    }
    static truncated_series constant(const polynomial &c, ::std::vector<series_var> vars, unsigned order)
    {
        truncated_series s(::std::move(vars), order);
        s.set({0, 0, 0}, c);
        return s;
    }

    const ::std::vector<series_var> &vars() const noexcept
    {
        return vars_;
    }
    unsigned order() const noexcept
    {
        return order_;
    }
    const coeff_map &coeffs() const noexcept
    {
        return coeffs_;
    }
    bool is_zero() const noexcept
    {
        return coeffs_.empty();
    }
    bool has_var(series_var x) const noexcept
    {
        return ::std::find(vars_.begin(), vars_.end(), x) != vars_.end();
    }

    polynomial coeff(const exponent3 &e) const
    {
        auto it = coeffs_.find(e);
        return it == coeffs_.end() ? polynomial() : it->second;
    }
    // Coefficient of x^i in a one-variable series.
    polynomial coeff(unsigned i) const
    {
        exponent3 e{};
        e[static_cast<unsigned>(vars_.empty() ? series_var::u : vars_.front())] = i;
        return coeff(e);
    }

    // Sets a coefficient; terms above the cutoff are silently dropped.
    void set(const exponent3 &e, polynomial c)
    {
        check_exponent(e);
        if (total(e) > order_) {
            return;
        }
        if (c.is_zero()) {
            coeffs_.erase(e);
        } else {
            coeffs_.insert_or_assign(e, ::std::move(c));
        }
    }
    void add_to(const exponent3 &e, const polynomial &c)
    {
        check_exponent(e);
        if (total(e) > order_ || c.is_zero()) {
            return;
        }
        auto it = coeffs_.find(e);
        if (it == coeffs_.end()) {
            coeffs_.emplace(e, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) {
            coeffs_.erase(it);
        }
    }

    truncated_series truncate(unsigned order) const
    {
        truncated_series r(vars_, ::std::min(order, order_));
        for (const auto &[e, c] : coeffs_) {
            r.set(e, c);
        }
        return r;
    }

    truncated_series operator-() const
    {
        truncated_series r(vars_, order_);
        for (const auto &[e, c] : coeffs_) {
            r.coeffs_.emplace(e, -c);
        }
        return r;
    }

    friend truncated_series operator+(const truncated_series &a, const truncated_series &b)
    {
        truncated_series r(merge_vars(a.vars_, b.vars_), ::std::min(a.order_, b.order_));
        for (const auto &[e, c] : a.coeffs_) {
            r.add_to(e, c);
        }
        for (const auto &[e, c] : b.coeffs_) {
            r.add_to(e, c);
        }
        return r;
    }
    friend truncated_series operator-(const truncated_series &a, const truncated_series &b)
    {
        return a + (-b);
    }
    friend truncated_series operator*(const truncated_series &a, const truncated_series &b)
    {
        truncated_series r(merge_vars(a.vars_, b.vars_), ::std::min(a.order_, b.order_));
        for (const auto &[ea, ca] : a.coeffs_) {
            if (total(ea) > r.order_) {
                break;
            }
            for (const auto &[eb, cb] : b.coeffs_) {
                if (total(ea) + total(eb) > r.order_) {
                    break;
                }
                r.add_to({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
            }
        }
        return r;
    }
    // Coefficientwise scaling.
    friend truncated_series operator*(const polynomial &k, const truncated_series &s)
    {
        truncated_series r(s.vars_, s.order_);
        for (const auto &[e, c] : s.coeffs_) {
            r.set(e, k * c);
        }
        return r;
    }

    // Same order and the same coefficients; the declared variables are not
    // compared.
    friend bool operator==(const truncated_series &a, const truncated_series &b)
    {
        if (a.order_ != b.order_ || a.coeffs_.size() != b.coeffs_.size()) {
            return false;
        }
        auto j = b.coeffs_.begin();
        for (const auto &[e, c] : a.coeffs_) {
            if (j->first != e || !(j->second == c)) {
                return false;
            }
            ++j;
        }
        return true;
    }

    static ::std::vector<series_var> merge_vars(const ::std::vector<series_var> &a, const ::std::vector<series_var> &b)
    {
        ::std::vector<series_var> r(a);
        r.insert(r.end(), b.begin(), b.end());
        ::std::sort(r.begin(), r.end());
        r.erase(::std::unique(r.begin(), r.end()), r.end());
        return r;
    }

private:
    void normalise_vars()
    {
        ::std::sort(vars_.begin(), vars_.end());
        vars_.erase(::std::unique(vars_.begin(), vars_.end()), vars_.end());
    }

    void check_exponent(const exponent3 &e) const
    {
        for (unsigned i = 0; i < 3; ++i) {
            if (e[i] != 0u && !has_var(static_cast<series_var>(i))) {
                throw ::std::invalid_argument(::std::string("series has no variable ") + name(static_cast<series_var>(i)));
            }
        }
    }

    ::std::vector<series_var> vars_;
    unsigned order_;
    coeff_map coeffs_;
};

// Substitutes inner for x in outer. The result is truncated at the smaller
// of the two orders.
inline truncated_series compose(const truncated_series &outer, series_var x, const truncated_series &inner)
{
    if (!inner.coeff(exponent3{0, 0, 0}).is_zero()) {
        throw nonzero_constant_term("cannot substitute a series with nonzero constant term");
    }
    const auto xi = static_cast<unsigned>(x);
    ::std::vector<series_var> rest;
    for (auto y : outer.vars()) {
        if (y != x) {
            rest.push_back(y);
        }
    }
    const auto order = ::std::min(outer.order(), inner.order());
    truncated_series result(truncated_series::merge_vars(rest, inner.vars()), order);

    // Split outer by the exponent of x: outer = sum_k O_k * x^k.
    ::std::map<::std::uint32_t, truncated_series> parts;
    for (const auto &[e, c] : outer.coeffs()) {
        if (total(e) > order) {
            continue;
        }
        auto k = e[xi];
        auto it = parts.try_emplace(k, truncated_series(result.vars(), order)).first;
        exponent3 rest_e = e;
        rest_e[xi] = 0;
        it->second.set(rest_e, c);
    }
    truncated_series power = truncated_series::constant(polynomial(1), result.vars(), order);
    ::std::uint32_t k = 0;
    for (const auto &[kk, part] : parts) {
        while (k < kk) {
            power = power * inner;
            ++k;
        }
        result = result + part * power;
    }
    return truncated_series(result);
}

// Renames series variables, e.g. v -> w.
inline truncated_series relabel(const truncated_series &s, const ::std::map<series_var, series_var> &m)
{
    auto target = [&](series_var x) {
        auto it = m.find(x);
        return it == m.end() ? x : it->second;
    };
    ::std::vector<series_var> vars;
    for (auto x : s.vars()) {
        vars.push_back(target(x));
    }
    truncated_series r(vars, s.order());
    if (r.vars().size() != s.vars().size()) {
        throw ::std::invalid_argument("relabel must not merge variables");
    }
    for (const auto &[e, c] : s.coeffs()) {
        exponent3 f{};
        for (unsigned i = 0; i < 3; ++i) {
            f[static_cast<unsigned>(target(static_cast<series_var>(i)))] += e[i];
        }
        r.set(f, c);
    }
    return r;
}

inline json to_json(const truncated_series &s)
{
    json j;
    json vars = json::array();
    for (auto x : s.vars()) {
        vars.push_back(name(x));
    }
    j["vars"] = ::std::move(vars);
    j["order"] = s.order();
    json cs = json::array();
    for (const auto &[e, c] : s.coeffs()) {
        json jc;
        json ex = json::array();
        for (auto x : s.vars()) {
            ex.push_back(e[static_cast<unsigned>(x)]);
        }
        jc["exp"] = ::std::move(ex);
        jc["poly"] = to_json(c);
        cs.push_back(::std::move(jc));
    }
    j["coeffs"] = ::std::move(cs);
    return j;
}

inline truncated_series series_from_json(const json &j)
{
    const auto &jv = detail::require(j, "vars");
    const auto &jo = detail::require(j, "order");
    if (!jv.is_array() || !jo.is_number_unsigned()) {
        throw parse_error("malformed series");
    }
    ::std::vector<series_var> vars;
    for (const auto &x : jv) {
        if (!x.is_string()) {
            throw parse_error("series variables must be strings");
        }
        vars.push_back(series_var_from_name(x.get<::std::string>()));
    }
    truncated_series s(vars, jo.get<unsigned>());
    for (const auto &jc : detail::require(j, "coeffs")) {
        const auto &ex = detail::require(jc, "exp");
        if (!ex.is_array() || ex.size() != s.vars().size()) {
            throw parse_error("exponent tuple does not match the variables");
        }
        exponent3 e{};
        for (::std::size_t i = 0; i < ex.size(); ++i) {
            e[static_cast<unsigned>(s.vars()[i])] = ex[i].get<::std::uint32_t>();
        }
        s.add_to(e, polynomial_from_json(detail::require(jc, "poly")));
    }
    return s;
}

// "(poly)*u^i*v^j + ..." in graded-lex order.
inline ::std::string to_text(const truncated_series &s)
{
    ::std::string out;
    for (const auto &[e, c] : s.coeffs()) {
        if (!out.empty()) {
            out += " + ";
        }
        ::std::string mono;
        for (auto x : s.vars()) {
            const auto k = e[static_cast<unsigned>(x)];
            if (k == 0u) {
                continue;
            }
            mono += mono.empty() ? "" : "*";
            mono += name(x);
            if (k != 1u) {
                mono += "^" + ::std::to_string(k);
            }
        }
        const auto ct = to_text(c);
        if (mono.empty()) {
            out += "(" + ct + ")";
        } else if (ct == "1") {
            out += mono;
        } else {
            out += "(" + ct + ")*" + mono;
        }
    }
    out += out.empty() ? "O(" : " + O(";
    out += "deg " + ::std::to_string(s.order() + 1u) + ")";
    return out;
}

} // namespace cobord

#endif
