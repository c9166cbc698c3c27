#ifndef COBORD_POLYNOMIAL_IO_HPP
#define COBORD_POLYNOMIAL_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include <cobord/coeff_ring.hpp>
#include <cobord/errors.hpp>
#include <cobord/monomial.hpp>
#include <cobord/polynomial.hpp>
#include <cobord/rational.hpp>
#include <cobord/symbol.hpp>

namespace cobord
{

using json = ::nlohmann::ordered_json;

inline json to_json(const rational &q)
{
    json j;
    j["num"] = q.num_str();
    j["den"] = q.den_str();
    return j;
}

inline json to_json(const coeff_ring &r)
{
    json j;
    j["inverted"] = r.inverted();
    return j;
}

// Variables in var_symbol order, each with its exponent.
inline json to_json(monomial_view m)
{
    ::std::vector<var_power> ps(m.begin(), m.end());
    ::std::sort(ps.begin(), ps.end(), [](const var_power &a, const var_power &b) {
        return symbol_of(a.var) < symbol_of(b.var);
    });
    json j = json::object();
    for (auto vp : ps) {
        j[render(symbol_of(vp.var))] = vp.exp;
    }
    return j;
}

inline json to_json(const polynomial &p)
{
    json j;
    j["ring"] = to_json(p.ring());
    json terms = json::array();
    for (auto i : canonical_order(p)) {
        const auto t = p.term(i);
        json jt;
        jt["coeff"] = to_json(t.coeff);
        jt["monomial"] = to_json(t.mono);
        terms.push_back(::std::move(jt));
    }
    j["terms"] = ::std::move(terms);
    return j;
}

namespace detail
{

inline const json &require(const json &j, const char *key)
{
    if (!j.is_object() || !j.contains(key)) {
        throw parse_error(::std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

} // namespace detail

inline rational rational_from_json(const json &j)
{
    const auto &n = detail::require(j, "num");
    const auto &d = detail::require(j, "den");
    if (!n.is_string() || !d.is_string()) {
        throw parse_error("coefficient fields must be decimal strings");
    }
    try {
        return rational::from_strings(n.get<::std::string>(), d.get<::std::string>());
    } catch (const ::std::exception &e) {
        throw parse_error(e.what());
    }
}

inline coeff_ring ring_from_json(const json &j)
{
    const auto &inv = detail::require(j, "inverted");
    if (!inv.is_array()) {
        throw parse_error("'inverted' must be an array");
    }
    ::std::vector<::std::uint64_t> ns;
    for (const auto &x : inv) {
        if (!x.is_number_unsigned() || x.get<::std::uint64_t>() == 0u) {
            throw parse_error("inverted integers must be positive");
        }
        ns.push_back(x.get<::std::uint64_t>());
    }
    return coeff_ring(::std::move(ns));
}

inline polynomial polynomial_from_json(const json &j)
{
    const auto ring = ring_from_json(detail::require(j, "ring"));
    const auto &terms = detail::require(j, "terms");
    if (!terms.is_array()) {
        throw parse_error("'terms' must be an array");
    }
    polynomial_builder b(ring);
    ::std::vector<var_power> ps;
    for (const auto &jt : terms) {
        const auto c = rational_from_json(detail::require(jt, "coeff"));
        if (!ring.admits(c)) {
            throw ring_violation("coefficient " + c.to_string() + " does not lie in " + ring.to_string());
        }
        const auto &jm = detail::require(jt, "monomial");
        if (!jm.is_object()) {
            throw parse_error("'monomial' must be an object");
        }
        ps.clear();
        for (const auto &[name, e] : jm.items()) {
            if (!e.is_number_unsigned() || e.get<::std::uint64_t>() > 0xffffffffu) {
                throw parse_error("bad exponent for " + name);
            }
            ps.push_back({intern(parse_symbol(name)), e.get<::std::uint32_t>()});
        }
        b.add(monomial(ps).view(), c);
    }
    return ::std::move(b).finish();
}

// Monomial as "x^2*y".
inline ::std::string to_text(monomial_view m)
{
    ::std::vector<var_power> ps(m.begin(), m.end());
    ::std::sort(ps.begin(), ps.end(), [](const var_power &a, const var_power &b) {
        return symbol_of(a.var) < symbol_of(b.var);
    });
    ::std::string s;
    for (auto vp : ps) {
        if (!s.empty()) {
            s += '*';
        }
        s += render(symbol_of(vp.var));
        if (vp.exp != 1u) {
            s += '^';
            s += ::std::to_string(vp.exp);
        }
    }
    return s;
}

// Polynomial as "1 + 2*x - 1/3*x*y^2", terms in graded-lex order.
inline ::std::string to_text(const polynomial &p)
{
    if (p.is_zero()) {
        return "0";
    }
    ::std::string s;
    bool first = true;
    for (auto i : canonical_order(p)) {
        const auto t = p.term(i);
        const bool neg = t.coeff.sign() < 0;
        const rational mag = neg ? -t.coeff : t.coeff;
        if (first) {
            s += neg ? "-" : "";
        } else {
            s += neg ? " - " : " + ";
        }
        first = false;
        if (t.mono.is_unit()) {
            s += mag.to_string();
        } else if (mag.is_one()) {
            s += to_text(t.mono);
        } else {
            s += mag.to_string() + "*" + to_text(t.mono);
        }
    }
    return s;
}

} // namespace cobord

#endif
