#ifndef COBORD_POLYNOMIAL_HPP
#define COBORD_POLYNOMIAL_HPP

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <cobord/coeff_ring.hpp>
#include <cobord/errors.hpp>
#include <cobord/monomial.hpp>
#include <cobord/rational.hpp>
#include <cobord/symbol.hpp>

namespace cobord
{

class polynomial;
class polynomial_builder;

namespace detail
{

struct term_rec {
    ::std::uint64_t hash;
    ::std::uint32_t off;
    ::std::uint32_t len;
    rational coeff;
};

// Open-addressing index from monomials to positions in a term vector.
// The index does not own the terms; callers pass pool and terms on every
// call so both can grow underneath it.
class term_index
{
public:
    static constexpr ::std::uint32_t npos = ::std::numeric_limits<::std::uint32_t>::max();

    void reserve(::std::size_t n)
    {
        ::std::size_t cap = 16;
        while (cap < 2 * n + 2) {
            cap <<= 1;
        }
        if (cap > slots_.size()) {
            slots_.assign(cap, 0);
            mask_ = cap - 1;
            count_ = 0;
        }
    }

    void rebuild(const ::std::vector<term_rec> &terms, ::std::size_t extra = 0)
    {
        slots_.clear();
        reserve(terms.size() + extra);
        for (::std::size_t i = 0; i < terms.size(); ++i) {
            insert_new(terms, static_cast<::std::uint32_t>(i));
        }
    }

    ::std::uint32_t find(const ::std::vector<::std::uint32_t> &pool, const ::std::vector<term_rec> &terms,
                         const ::std::uint32_t *w, ::std::uint32_t len, ::std::uint64_t h) const
    {
        if (slots_.empty()) {
            return npos;
        }
        for (auto s = mix64(h) & mask_;; s = (s + 1) & mask_) {
            const auto e = slots_[s];
            if (e == 0u) {
                return npos;
            }
            const auto &t = terms[e - 1u];
            if (t.hash == h && t.len == len && ::std::equal(w, w + len, pool.data() + t.off)) {
                return e - 1u;
            }
        }
    }

    // Registers terms[i], which must not already be present.
    void insert_new(const ::std::vector<term_rec> &terms, ::std::uint32_t i)
    {
        if (2 * (count_ + 1) > slots_.size()) {
            grow(terms);
        }
        for (auto s = mix64(terms[i].hash) & mask_;; s = (s + 1) & mask_) {
            if (slots_[s] == 0u) {
                slots_[s] = i + 1u;
                ++count_;
                return;
            }
        }
    }

    bool empty() const noexcept
    {
        return slots_.empty();
    }

private:
    void grow(const ::std::vector<term_rec> &terms)
    {
        const auto n = count_;
        ::std::vector<::std::uint32_t> old;
        old.swap(slots_);
        reserve(::std::max<::std::size_t>(2 * n, 8));
        for (auto e : old) {
            if (e != 0u) {
                for (auto s = mix64(terms[e - 1u].hash) & mask_;; s = (s + 1) & mask_) {
                    if (slots_[s] == 0u) {
                        slots_[s] = e;
                        ++count_;
                        break;
                    }
                }
            }
        }
    }

    ::std::vector<::std::uint32_t> slots_;
    ::std::size_t mask_ = 0;
    ::std::size_t count_ = 0;
};

} // namespace detail

// A term as seen through iteration: a monomial view and its coefficient.
struct term_ref {
    monomial_view mono;
    const rational &coeff;
};

// Sparse multivariate polynomial with exact rational coefficients in a
// localisation of Z. Terms are unique with nonzero coefficients; their
// storage order is deterministic but unspecified (see canonical_order()).
class polynomial
{
    friend class polynomial_builder;
    friend polynomial rename_ids(polynomial &&, const ::std::vector<symbol_id> &);

public:
    class const_iterator
    {
    public:
        using iterator_category = ::std::forward_iterator_tag;
        using value_type = term_ref;
        using difference_type = ::std::ptrdiff_t;
        using pointer = void;
        using reference = term_ref;

        const_iterator() = default;
        const_iterator(const polynomial *p, ::std::size_t i) : p_(p), i_(i) {}

        term_ref operator*() const
        {
            return p_->term(i_);
        }
        const_iterator &operator++() noexcept
        {
            ++i_;
            return *this;
        }
        const_iterator operator++(int) noexcept
        {
            auto r = *this;
            ++i_;
            return r;
        }
        friend bool operator==(const const_iterator &a, const const_iterator &b) noexcept
        {
            return a.i_ == b.i_;
        }

    private:
        const polynomial *p_ = nullptr;
        ::std::size_t i_ = 0;
    };

    polynomial() = default;
    explicit polynomial(coeff_ring r) : ring_(::std::move(r)) {}
    polynomial(const rational &c, coeff_ring r = {}) : ring_(::std::move(r)) // NOLINT(google-explicit-constructor)
    {
        check_admits(c);
        if (!c.is_zero()) {
            terms_.push_back({0, 0, 0, c});
        }
    }
    template <::std::integral T>
    polynomial(T c) : polynomial(rational(c)) // NOLINT(google-explicit-constructor)
    {
    }

    static polynomial variable(const var_symbol &s, coeff_ring r = {})
    {
        return term(monomial(s), rational(1), ::std::move(r));
    }
    static polynomial variable(symbol_id id, coeff_ring r = {})
    {
        return term(monomial(id), rational(1), ::std::move(r));
    }
    static polynomial term(const monomial &m, const rational &c, coeff_ring r = {})
    {
        polynomial p(::std::move(r));
        p.check_admits(c);
        if (!c.is_zero()) {
            const auto v = m.view();
            p.pool_.assign(v.data(), v.data() + v.word_count());
            p.terms_.push_back({v.hash(), 0, v.word_count(), c});
        }
        return p;
    }

    const coeff_ring &ring() const noexcept
    {
        return ring_;
    }
    ::std::size_t size() const noexcept
    {
        return terms_.size();
    }
    bool is_zero() const noexcept
    {
        return terms_.empty();
    }
    bool is_constant() const noexcept
    {
        return terms_.empty() || (terms_.size() == 1u && terms_[0].len == 0u);
    }

    // Hash of the i-th monomial, as monomial_view::hash() would give.
    ::std::uint64_t term_hash(::std::size_t i) const noexcept
    {
        return terms_[i].hash;
    }

    term_ref term(::std::size_t i) const
    {
        const auto &t = terms_[i];
        return {monomial_view(pool_.data() + t.off, t.len), t.coeff};
    }
    const_iterator begin() const noexcept
    {
        return {this, 0};
    }
    const_iterator end() const noexcept
    {
        return {this, terms_.size()};
    }

    // Coefficient of m (zero if absent). Linear scan.
    rational coefficient(monomial_view m) const
    {
        const auto h = m.hash();
        for (const auto &t : terms_) {
            if (t.hash == h && monomial_view(pool_.data() + t.off, t.len) == m) {
                return t.coeff;
            }
        }
        return rational();
    }
    rational constant_term() const
    {
        return coefficient(monomial_view());
    }

    ::std::uint64_t total_degree() const noexcept
    {
        ::std::uint64_t d = 0;
        for (::std::size_t i = 0; i < terms_.size(); ++i) {
            d = ::std::max(d, term(i).mono.total_degree());
        }
        return d;
    }

    // Same polynomial viewed over a larger ring.
    polynomial with_ring(const coeff_ring &r) const &
    {
        polynomial p(*this);
        return ::std::move(p).with_ring(r);
    }
    polynomial with_ring(const coeff_ring &r) &&
    {
        if (!r.contains(ring_)) {
            throw incompatible_rings(r.to_string() + " does not contain " + ring_.to_string());
        }
        ring_ = r;
        return ::std::move(*this);
    }

    polynomial operator-() const &
    {
        polynomial p(*this);
        return -::std::move(p);
    }
    polynomial operator-() &&
    {
        for (auto &t : terms_) {
            t.coeff = -t.coeff;
        }
        return ::std::move(*this);
    }

    polynomial &operator+=(const polynomial &o);
    polynomial &operator-=(const polynomial &o);
    polynomial &operator*=(const polynomial &o);

    // Structural equality of the term sets. The ring is ignored: all rings
    // here embed into Q, so equal terms mean equal elements.
    friend bool operator==(const polynomial &a, const polynomial &b)
    {
        if (a.terms_.size() != b.terms_.size()) {
            return false;
        }
        // Polynomials built along the same path usually share their term
        // order; try that before hashing.
        bool aligned = true;
        for (::std::size_t i = 0; i < a.terms_.size() && aligned; ++i) {
            const auto &s = a.terms_[i];
            const auto &t = b.terms_[i];
            aligned = s.hash == t.hash && s.len == t.len && s.coeff == t.coeff
                      && ::std::equal(a.pool_.data() + s.off, a.pool_.data() + s.off + s.len, b.pool_.data() + t.off);
        }
        if (aligned) {
            return true;
        }
        if (a.terms_.size() <= 4u) {
            for (const auto &t : a.terms_) {
                const auto m = monomial_view(a.pool_.data() + t.off, t.len);
                if (b.coefficient(m) != t.coeff) {
                    return false;
                }
            }
            return true;
        }
        detail::term_index idx;
        idx.rebuild(b.terms_);
        for (const auto &t : a.terms_) {
            const auto j = idx.find(b.pool_, b.terms_, a.pool_.data() + t.off, t.len, t.hash);
            if (j == detail::term_index::npos || b.terms_[j].coeff != t.coeff) {
                return false;
            }
        }
        return true;
    }

private:
    void check_admits(const rational &c) const
    {
        if (!ring_.admits(c)) {
            throw ring_violation("coefficient " + c.to_string() + " does not lie in " + ring_.to_string());
        }
    }

    coeff_ring ring_;
    ::std::vector<::std::uint32_t> pool_;
    ::std::vector<detail::term_rec> terms_;
};

// Accumulates terms into a polynomial, combining equal monomials.
class polynomial_builder
{
public:
    explicit polynomial_builder(coeff_ring r = {}, ::std::size_t expected_terms = 0) : p_(::std::move(r))
    {
        if (expected_terms != 0u) {
            p_.terms_.reserve(expected_terms);
        }
    }
    // Continues accumulating on top of an existing polynomial.
    explicit polynomial_builder(polynomial &&p) : p_(::std::move(p)) {}

    const coeff_ring &ring() const noexcept
    {
        return p_.ring_;
    }
    void set_ring(coeff_ring r)
    {
        p_.ring_ = ::std::move(r);
    }
    void reserve_pool(::std::size_t words)
    {
        p_.pool_.reserve(words);
    }

    // Adds c*m. The coefficient is trusted to lie in the ring.
    void add(monomial_view m, const rational &c)
    {
        add(m, m.hash(), c);
    }
    void add(monomial_view m, ::std::uint64_t h, const rational &c)
    {
        if (c.is_zero()) {
            return;
        }
        ensure_index();
        const auto j = index_.find(p_.pool_, p_.terms_, m.data(), m.word_count(), h);
        if (j != detail::term_index::npos) {
            accumulate(p_.terms_[j].coeff, c);
            return;
        }
        push(m.data(), m.word_count(), h, c);
    }

    // Adds c*a*b.
    void add_product(monomial_view a, monomial_view b, ::std::uint64_t h, const rational &c)
    {
        if (c.is_zero()) {
            return;
        }
        ensure_index();
        auto &pool = p_.pool_;
        const auto off = pool.size();
        detail::append_product(pool, a, b);
        const auto len = static_cast<::std::uint32_t>(pool.size() - off);
        const auto j = index_.find(pool, p_.terms_, pool.data() + off, len, h);
        if (j != detail::term_index::npos) {
            pool.resize(off);
            accumulate(p_.terms_[j].coeff, c);
            return;
        }
        push_at(off, len, h, c);
    }

    // Appends c*a*b without looking for an existing equal monomial. The
    // caller guarantees it is new.
    void append_product_unique(monomial_view a, monomial_view b, ::std::uint64_t h, rational c)
    {
        auto &pool = p_.pool_;
        const auto off = pool.size();
        detail::append_product(pool, a, b);
        push_at(off, static_cast<::std::uint32_t>(pool.size() - off), h, ::std::move(c));
    }
    void append_unique(monomial_view m, ::std::uint64_t h, rational c)
    {
        const auto off = p_.pool_.size();
        p_.pool_.insert(p_.pool_.end(), m.data(), m.data() + m.word_count());
        push_at(off, m.word_count(), h, ::std::move(c));
    }

    // Appends c*a*b for monomials with no common variable, for which the
    // caller also guarantees the product is new. Call reserve_exact() with
    // the total word count first.
    void append_disjoint_product(monomial_view a, monomial_view b, ::std::uint64_t h, rational c)
    {
        auto *start = p_.pool_.data() + fill_;
        auto *end = detail::write_disjoint_product(start, a, b);
        const auto len = static_cast<::std::uint32_t>(end - start);
        const auto off = fill_;
        fill_ += len;
        push_at(off, len, h, ::std::move(c));
    }
    void reserve_exact(::std::size_t words)
    {
        fill_ = p_.pool_.size();
        p_.pool_.resize(fill_ + words);
    }

    polynomial finish() &&
    {
        if (zeros_ != 0u) {
            compact();
        }
        index_ = detail::term_index();
        return ::std::move(p_);
    }

private:
    void ensure_index()
    {
        if (index_.empty()) {
            index_.rebuild(p_.terms_, p_.terms_.capacity() - p_.terms_.size());
        }
    }

    void accumulate(rational &dst, const rational &c)
    {
        const bool was_zero = dst.is_zero();
        dst += c;
        if (dst.is_zero() && !was_zero) {
            ++zeros_;
        } else if (was_zero && !dst.is_zero()) {
            --zeros_;
        }
    }

    void push(const ::std::uint32_t *w, ::std::uint32_t len, ::std::uint64_t h, const rational &c)
    {
        const auto off = p_.pool_.size();
        p_.pool_.insert(p_.pool_.end(), w, w + len);
        push_at(off, len, h, c);
    }

    void push_at(::std::size_t off, ::std::uint32_t len, ::std::uint64_t h, rational c)
    {
        if (off > ::std::numeric_limits<::std::uint32_t>::max()) {
            throw ::std::length_error("polynomial too large");
        }
        p_.terms_.push_back({h, static_cast<::std::uint32_t>(off), len, ::std::move(c)});
        if (!index_.empty()) {
            index_.insert_new(p_.terms_, static_cast<::std::uint32_t>(p_.terms_.size() - 1u));
        }
    }

    void compact()
    {
        ::std::vector<::std::uint32_t> pool;
        ::std::vector<detail::term_rec> terms;
        terms.reserve(p_.terms_.size() - zeros_);
        for (auto &t : p_.terms_) {
            if (t.coeff.is_zero()) {
                continue;
            }
            const auto off = static_cast<::std::uint32_t>(pool.size());
            pool.insert(pool.end(), p_.pool_.begin() + t.off, p_.pool_.begin() + t.off + t.len);
            terms.push_back({t.hash, off, t.len, ::std::move(t.coeff)});
        }
        p_.pool_ = ::std::move(pool);
        p_.terms_ = ::std::move(terms);
        zeros_ = 0;
    }

    polynomial p_;
    detail::term_index index_;
    ::std::size_t zeros_ = 0;
    ::std::size_t fill_ = 0;
};

namespace detail
{

inline polynomial add_into(polynomial &&acc, const polynomial &o, bool negate)
{
    const auto &r = join(acc.ring(), o.ring());
    polynomial_builder b(::std::move(acc));
    b.set_ring(r);
    for (const auto t : o) {
        if (negate) {
            b.add(t.mono, -t.coeff);
        } else {
            b.add(t.mono, t.coeff);
        }
    }
    return ::std::move(b).finish();
}

// Variables occurring in p, as sorted ids.
inline ::std::vector<symbol_id> variable_ids(const polynomial &p)
{
    ::std::vector<char> seen(symbol_table::instance().size(), 0);
    for (const auto t : p) {
        for (auto vp : t.mono) {
            seen[vp.var] = 1;
        }
    }
    ::std::vector<symbol_id> ids;
    for (::std::size_t i = 0; i < seen.size(); ++i) {
        if (seen[i] != 0) {
            ids.push_back(static_cast<symbol_id>(i));
        }
    }
    return ids;
}

inline bool disjoint(const ::std::vector<symbol_id> &a, const ::std::vector<symbol_id> &b)
{
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) {
            ++i;
        } else if (*j < *i) {
            ++j;
        } else {
            return false;
        }
    }
    return true;
}

inline polynomial multiply(const polynomial &a, const polynomial &b)
{
    const auto &r = join(a.ring(), b.ring());
    if (a.is_zero() || b.is_zero()) {
        return polynomial(r);
    }
    const auto &big = a.size() >= b.size() ? a : b;
    const auto &small = a.size() >= b.size() ? b : a;
    const ::std::size_t n = a.size() * b.size();
    if (disjoint(variable_ids(a), variable_ids(b))) {
        // Products of monomials in disjoint variables are pairwise distinct
        // and their encodings just interleave.
        polynomial_builder out(r, n);
        ::std::size_t words = 0;
        for (const auto t : big) {
            words += t.mono.word_count() * small.size();
        }
        for (const auto t : small) {
            words += t.mono.word_count() * big.size();
        }
        out.reserve_exact(words);
        for (::std::size_t j = 0; j < small.size(); ++j) {
            const auto s = small.term(j);
            const auto hs = small.term_hash(j);
            for (::std::size_t i = 0; i < big.size(); ++i) {
                const auto t = big.term(i);
                out.append_disjoint_product(t.mono, s.mono, hs + big.term_hash(i), t.coeff * s.coeff);
            }
        }
        return ::std::move(out).finish();
    }
    // With a single term on one side the products are still distinct, as
    // the monomial monoid is cancellative.
    const bool unique = small.size() == 1u;
    polynomial_builder out(r, unique ? n : ::std::min<::std::size_t>(n, 1u << 20));
    for (::std::size_t j = 0; j < small.size(); ++j) {
        const auto s = small.term(j);
        const auto hs = small.term_hash(j);
        for (::std::size_t i = 0; i < big.size(); ++i) {
            const auto t = big.term(i);
            const auto h = hs + big.term_hash(i);
            if (unique) {
                out.append_product_unique(t.mono, s.mono, h, t.coeff * s.coeff);
            } else {
                out.add_product(t.mono, s.mono, h, t.coeff * s.coeff);
            }
        }
    }
    return ::std::move(out).finish();
}

} // namespace detail

inline polynomial &polynomial::operator+=(const polynomial &o)
{
    *this = detail::add_into(::std::move(*this), o, false);
    return *this;
}
inline polynomial &polynomial::operator-=(const polynomial &o)
{
    *this = detail::add_into(::std::move(*this), o, true);
    return *this;
}
inline polynomial &polynomial::operator*=(const polynomial &o)
{
    *this = detail::multiply(*this, o);
    return *this;
}

inline polynomial operator+(const polynomial &a, const polynomial &b)
{
    if (a.size() >= b.size()) {
        return detail::add_into(polynomial(a), b, false);
    }
    return detail::add_into(polynomial(b), a, false);
}
inline polynomial operator+(polynomial &&a, const polynomial &b)
{
    return detail::add_into(::std::move(a), b, false);
}
inline polynomial operator+(const polynomial &a, polynomial &&b)
{
    return detail::add_into(::std::move(b), a, false);
}
inline polynomial operator+(polynomial &&a, polynomial &&b)
{
    if (a.size() >= b.size()) {
        return detail::add_into(::std::move(a), b, false);
    }
    return detail::add_into(::std::move(b), a, false);
}
inline polynomial operator-(const polynomial &a, const polynomial &b)
{
    return detail::add_into(polynomial(a), b, true);
}
inline polynomial operator-(polynomial &&a, const polynomial &b)
{
    return detail::add_into(::std::move(a), b, true);
}
inline polynomial operator*(const polynomial &a, const polynomial &b)
{
    return detail::multiply(a, b);
}

// Scalar multiple; the scalar must lie in p's ring.
inline polynomial operator*(const polynomial &p, const rational &c)
{
    if (!p.ring().admits(c)) {
        throw ring_violation("scalar " + c.to_string() + " does not lie in " + p.ring().to_string());
    }
    polynomial_builder b(p.ring(), p.size());
    if (!c.is_zero()) {
        for (::std::size_t i = 0; i < p.size(); ++i) {
            const auto t = p.term(i);
            b.append_unique(t.mono, p.term_hash(i), t.coeff * c);
        }
    }
    return ::std::move(b).finish();
}
inline polynomial operator*(const rational &c, const polynomial &p)
{
    return p * c;
}

inline polynomial pow(const polynomial &p, unsigned e)
{
    polynomial result = polynomial(rational(1), p.ring());
    polynomial base = p;
    while (e != 0u) {
        if ((e & 1u) != 0u) {
            result *= base;
        }
        e >>= 1u;
        if (e != 0u) {
            base *= base;
        }
    }
    return result;
}

// Sorted distinct variables of p, in var_symbol order.
inline ::std::vector<var_symbol> variables(const polynomial &p)
{
    ::std::vector<var_symbol> vs;
    for (auto id : detail::variable_ids(p)) {
        vs.push_back(symbol_of(id));
    }
    ::std::sort(vs.begin(), vs.end());
    return vs;
}

// Drops every term whose monomial satisfies pred.
template <typename Pred>
inline polynomial kill_monomials(const polynomial &p, Pred &&pred)
{
    polynomial_builder b(p.ring());
    for (::std::size_t i = 0; i < p.size(); ++i) {
        const auto t = p.term(i);
        if (!pred(t.mono)) {
            b.append_unique(t.mono, p.term_hash(i), t.coeff);
        }
    }
    return ::std::move(b).finish();
}

// Sum of weight times exponent. Throws missing_weight for an unweighted
// variable.
template <typename WeightFn>
    requires ::std::invocable<WeightFn, const var_symbol &>
inline ::std::int64_t weighted_degree(monomial_view m, WeightFn &&weight)
{
    ::std::int64_t d = 0;
    for (auto vp : m) {
        const ::std::optional<::std::int64_t> w = weight(symbol_of(vp.var));
        if (!w) {
            throw missing_weight("no weight for " + render(symbol_of(vp.var)));
        }
        d += *w * static_cast<::std::int64_t>(vp.exp);
    }
    return d;
}

inline ::std::int64_t weighted_degree(monomial_view m, const ::std::map<var_symbol, ::std::int64_t> &weights)
{
    return weighted_degree(m, [&](const var_symbol &s) -> ::std::optional<::std::int64_t> {
        if (auto it = weights.find(s); it != weights.end()) {
            return it->second;
        }
        return ::std::nullopt;
    });
}

// Ring homomorphism extending the bindings; unbound variables pass
// through unchanged.
inline polynomial substitute(const polynomial &p, const ::std::map<var_symbol, polynomial> &bindings)
{
    if (bindings.empty()) {
        return p;
    }
    coeff_ring r = p.ring();
    ::std::unordered_map<symbol_id, const polynomial *> bound;
    for (const auto &[s, img] : bindings) {
        r = join(r, img.ring());
        bound.emplace(intern(s), &img);
    }
    // Powers of bound images, computed on demand.
    ::std::map<::std::pair<symbol_id, ::std::uint32_t>, polynomial> powers;
    auto power = [&](symbol_id v, ::std::uint32_t e) -> const polynomial & {
        auto key = ::std::make_pair(v, e);
        if (auto it = powers.find(key); it != powers.end()) {
            return it->second;
        }
        return powers.emplace(key, pow(*bound.at(v), e)).first->second;
    };

    polynomial_builder out(r);
    ::std::vector<var_power> free_part;
    for (const auto t : p) {
        free_part.clear();
        polynomial img(t.coeff, r);
        for (auto vp : t.mono) {
            if (bound.count(vp.var) != 0u) {
                img = img * power(vp.var, vp.exp);
            } else {
                free_part.push_back(vp);
            }
        }
        const monomial rest(free_part);
        const auto hr = rest.view().hash();
        for (const auto s : img) {
            out.add_product(rest.view(), s.mono, hr + s.mono.hash(), s.coeff);
        }
    }
    return ::std::move(out).finish();
}

// Renames variables through a dense id table: variable v becomes ids[v].
// Ids beyond the table are kept.
inline polynomial rename_ids(polynomial &&p, const ::std::vector<symbol_id> &ids)
{
    auto target = [&ids](symbol_id v) { return v < ids.size() ? ids[v] : v; };

    // The renaming is injective on p's variables if it is on the whole
    // table, which is cheap to test; otherwise look at p itself.
    auto injective_on = [&](const ::std::vector<symbol_id> &domain) {
        ::std::vector<symbol_id> images;
        images.reserve(domain.size());
        for (auto v : domain) {
            images.push_back(target(v));
        }
        ::std::sort(images.begin(), images.end());
        return ::std::adjacent_find(images.begin(), images.end()) == images.end();
    };
    ::std::vector<symbol_id> all(ids.size());
    for (::std::size_t i = 0; i < all.size(); ++i) {
        all[i] = static_cast<symbol_id>(i);
    }
    const bool injective = injective_on(all) || injective_on(detail::variable_ids(p));

    if (injective) {
        // Monomials stay distinct and keep their encoded length, so each
        // term is rewritten where it is stored.
        ::std::vector<::std::uint64_t> unit_hash(ids.size());
        for (::std::size_t i = 0; i < ids.size(); ++i) {
            unit_hash[i] = detail::power_hash(ids[i], 1);
        }
        ::std::vector<::std::uint32_t> enc;
        ::std::vector<var_power> buf;
        for (auto &t : p.terms_) {
            auto *w = p.pool_.data() + t.off;
            auto *end = w + t.len;
            bool escaped = false;
            ::std::uint64_t h = 0;
            for (auto *q = w; q != end; ++q) {
                if ((*q & 0xffu) == detail::exp_escape) {
                    escaped = true;
                    break;
                }
                const auto old_id = *q >> 8;
                const auto e = *q & 0xffu;
                if (old_id < ids.size()) {
                    *q = (ids[old_id] << 8) | e;
                    h += unit_hash[old_id] * e;
                } else {
                    h += detail::power_hash(old_id, e);
                }
            }
            if (!escaped) {
                // Words order as their ids. A renaming that is monotone on
                // each family leaves two ascending runs, which merge in one
                // pass; anything else is insertion sorted.
                auto *mid = w + 1;
                while (mid < end && *(mid - 1) < *mid) {
                    ++mid;
                }
                auto *tail = mid + 1;
                while (tail < end && *(tail - 1) < *tail) {
                    ++tail;
                }
                if (mid < end && tail >= end) {
                    enc.assign(w, end);
                    ::std::merge(enc.begin(), enc.begin() + (mid - w), enc.begin() + (mid - w), enc.end(), w);
                } else if (mid < end) {
                    for (auto *q = w + 1; q < end; ++q) {
                        const auto x = *q;
                        auto *r = q;
                        for (; r != w && *(r - 1) > x; --r) {
                            *r = *(r - 1);
                        }
                        *r = x;
                    }
                }
                t.hash = h;
                continue;
            }
            // Slow path for large exponents. Words before the escape were
            // already mapped above, so decode those without mapping again.
            buf.clear();
            bool mapped = true;
            for (auto it = monomial_view(w, t.len).begin(); it != monomial_view(w, t.len).end(); ++it) {
                if ((*it.raw() & 0xffu) == detail::exp_escape) {
                    mapped = false;
                }
                const auto vp = *it;
                buf.push_back({mapped ? vp.var : target(vp.var), vp.exp});
            }
            ::std::sort(buf.begin(), buf.end(), [](const var_power &x, const var_power &y) { return x.var < y.var; });
            enc.clear();
            h = 0;
            for (auto vp : buf) {
                detail::encode_power(enc, vp.var, vp.exp);
                h += detail::power_hash(vp.var, vp.exp);
            }
            ::std::copy(enc.begin(), enc.end(), w);
            t.hash = h;
        }
        return ::std::move(p);
    }
    polynomial_builder out(p.ring());
    ::std::vector<var_power> buf;
    for (const auto t : p) {
        buf.clear();
        for (auto vp : t.mono) {
            buf.push_back({target(vp.var), vp.exp});
        }
        out.add(monomial(buf).view(), t.coeff);
    }
    return ::std::move(out).finish();
}

// Applies a variable renaming. Variables not in the map are kept.
inline polynomial rename(polynomial &&p, const ::std::map<var_symbol, var_symbol> &names)
{
    ::std::vector<::std::pair<symbol_id, symbol_id>> pairs;
    for (const auto &[from, to] : names) {
        pairs.emplace_back(intern(from), intern(to));
    }
    ::std::vector<symbol_id> ids(symbol_table::instance().size());
    for (::std::size_t i = 0; i < ids.size(); ++i) {
        ids[i] = static_cast<symbol_id>(i);
    }
    for (auto [from, to] : pairs) {
        ids[from] = to;
    }
    return rename_ids(::std::move(p), ids);
}

inline polynomial rename(const polynomial &p, const ::std::map<var_symbol, var_symbol> &names)
{
    return rename(polynomial(p), names);
}

// Exact value of p at a rational point. Every variable of p must be bound.
inline rational evaluate_rational(const polynomial &p, const ::std::map<var_symbol, rational> &point)
{
    ::std::unordered_map<symbol_id, const rational *> vals;
    for (const auto &[s, q] : point) {
        vals.emplace(intern(s), &q);
    }
    rational sum;
    for (const auto t : p) {
        rational term = t.coeff;
        for (auto vp : t.mono) {
            auto it = vals.find(vp.var);
            if (it == vals.end()) {
                throw unbound_variable("no value for " + render(symbol_of(vp.var)));
            }
            term *= vp.exp == 1u ? *it->second : pow(*it->second, vp.exp);
        }
        sum += term;
    }
    return sum;
}

// Term positions of p in graded-lex order: ascending total degree, then
// larger exponents on earlier variables first (x^2, x*y, y^2 for x < y).
inline ::std::vector<::std::size_t> canonical_order(const polynomial &p)
{
    const auto ids = detail::variable_ids(p);
    ::std::vector<symbol_id> by_symbol(ids);
    ::std::sort(by_symbol.begin(), by_symbol.end(),
                [](symbol_id a, symbol_id b) { return symbol_of(a) < symbol_of(b); });
    ::std::unordered_map<symbol_id, ::std::uint32_t> rank;
    for (::std::uint32_t i = 0; i < by_symbol.size(); ++i) {
        rank.emplace(by_symbol[i], i);
    }

    struct key {
        ::std::uint64_t degree;
        ::std::vector<::std::pair<::std::uint32_t, ::std::uint32_t>> powers;
    };
    ::std::vector<key> keys(p.size());
    for (::std::size_t i = 0; i < p.size(); ++i) {
        const auto m = p.term(i).mono;
        keys[i].degree = m.total_degree();
        for (auto vp : m) {
            keys[i].powers.emplace_back(rank.at(vp.var), vp.exp);
        }
        ::std::sort(keys[i].powers.begin(), keys[i].powers.end());
    }
    ::std::vector<::std::size_t> order(p.size());
    for (::std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    ::std::sort(order.begin(), order.end(), [&](::std::size_t a, ::std::size_t b) {
        const auto &ka = keys[a];
        const auto &kb = keys[b];
        if (ka.degree != kb.degree) {
            return ka.degree < kb.degree;
        }
        const auto n = ::std::min(ka.powers.size(), kb.powers.size());
        for (::std::size_t i = 0; i < n; ++i) {
            const auto [ra, ea] = ka.powers[i];
            const auto [rb, eb] = kb.powers[i];
            if (ra != rb) {
                return ra < rb;
            }
            if (ea != eb) {
                return ea > eb;
            }
        }
        return ka.powers.size() > kb.powers.size();
    });
    return order;
}

} // namespace cobord

#endif
