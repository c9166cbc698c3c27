#ifndef COBORD_MONOMIAL_HPP
#define COBORD_MONOMIAL_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include <cobord/symbol.hpp>

namespace cobord
{

struct var_power {
    symbol_id var;
    ::std::uint32_t exp;

    friend bool operator==(const var_power &, const var_power &) = default;
};

// Monomials are encoded as a run of 32-bit words sorted by symbol id.
// A word holds (id << 8) | exp for exponents below 255; larger exponents
// store 255 in the low byte and the full exponent in the following word.
// The encoding is canonical, so word-wise equality is monomial equality.
namespace detail
{

inline constexpr ::std::uint32_t exp_escape = 255u;

inline ::std::uint64_t mix64(::std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline void encode_power(::std::vector<::std::uint32_t> &out, symbol_id var, ::std::uint32_t exp)
{
    if (exp < exp_escape) {
        out.push_back((var << 8) | exp);
    } else {
        out.push_back((var << 8) | exp_escape);
        out.push_back(exp);
    }
}

// Hash is additive over the exponent vector, so the hash of a product is
// the sum of the factors' hashes.
inline ::std::uint64_t power_hash(symbol_id var, ::std::uint32_t exp) noexcept
{
    return mix64(var) * exp;
}

} // namespace detail

// Non-owning view of an encoded monomial.
class monomial_view
{
public:
    class iterator
    {
    public:
        using iterator_category = ::std::forward_iterator_tag;
        using value_type = var_power;
        using difference_type = ::std::ptrdiff_t;
        using pointer = void;
        using reference = var_power;

        iterator() = default;
        explicit iterator(const ::std::uint32_t *p) : p_(p) {}

        var_power operator*() const noexcept
        {
            const auto w = *p_;
            const auto e = w & 0xffu;
            return {w >> 8, e == detail::exp_escape ? p_[1] : e};
        }
        iterator &operator++() noexcept
        {
            p_ += ((*p_ & 0xffu) == detail::exp_escape) ? 2 : 1;
            return *this;
        }
        iterator operator++(int) noexcept
        {
            auto r = *this;
            ++*this;
            return r;
        }
        friend bool operator==(const iterator &, const iterator &) = default;

        const ::std::uint32_t *raw() const noexcept
        {
            return p_;
        }

    private:
        const ::std::uint32_t *p_ = nullptr;
    };

    monomial_view() = default;
    monomial_view(const ::std::uint32_t *data, ::std::uint32_t len) : data_(data), len_(len) {}

    iterator begin() const noexcept
    {
        return iterator(data_);
    }
    iterator end() const noexcept
    {
        return iterator(data_ + len_);
    }
    bool is_unit() const noexcept
    {
        return len_ == 0;
    }
    const ::std::uint32_t *data() const noexcept
    {
        return data_;
    }
    ::std::uint32_t word_count() const noexcept
    {
        return len_;
    }

    ::std::uint32_t exponent(symbol_id v) const noexcept
    {
        for (auto vp : *this) {
            if (vp.var == v) {
                return vp.exp;
            }
            if (vp.var > v) {
                break;
            }
        }
        return 0;
    }

    ::std::uint64_t total_degree() const noexcept
    {
        ::std::uint64_t d = 0;
        for (auto vp : *this) {
            d += vp.exp;
        }
        return d;
    }

    ::std::uint64_t hash() const noexcept
    {
        ::std::uint64_t h = 0;
        for (auto vp : *this) {
            h += detail::power_hash(vp.var, vp.exp);
        }
        return h;
    }

    friend bool operator==(const monomial_view &a, const monomial_view &b) noexcept
    {
        return a.len_ == b.len_ && ::std::equal(a.data_, a.data_ + a.len_, b.data_);
    }

private:
    const ::std::uint32_t *data_ = nullptr;
    ::std::uint32_t len_ = 0;
};

// Owning monomial, mainly for building terms by hand.
class monomial
{
public:
    monomial() = default;
    explicit monomial(symbol_id v, ::std::uint32_t e = 1)
    {
        if (e != 0u) {
            detail::encode_power(words_, v, e);
        }
    }
    explicit monomial(const var_symbol &s, ::std::uint32_t e = 1) : monomial(intern(s), e) {}
    monomial(::std::initializer_list<::std::pair<var_symbol, ::std::uint32_t>> powers)
    {
        ::std::vector<var_power> ps;
        for (const auto &[s, e] : powers) {
            ps.push_back({intern(s), e});
        }
        assign(::std::move(ps));
    }
    explicit monomial(::std::vector<var_power> powers)
    {
        assign(::std::move(powers));
    }
    explicit monomial(monomial_view v) : words_(v.data(), v.data() + v.word_count()) {}

    monomial_view view() const noexcept
    {
        return {words_.data(), static_cast<::std::uint32_t>(words_.size())};
    }
    operator monomial_view() const noexcept // NOLINT(google-explicit-constructor)
    {
        return view();
    }

    auto begin() const noexcept
    {
        return view().begin();
    }
    auto end() const noexcept
    {
        return view().end();
    }
    bool is_unit() const noexcept
    {
        return words_.empty();
    }
    ::std::uint64_t total_degree() const noexcept
    {
        return view().total_degree();
    }
    ::std::uint32_t exponent(const var_symbol &s) const
    {
        return view().exponent(intern(s));
    }

    friend bool operator==(const monomial &a, const monomial &b) = default;

private:
    void assign(::std::vector<var_power> ps)
    {
        ::std::sort(ps.begin(), ps.end(), [](const var_power &a, const var_power &b) { return a.var < b.var; });
        words_.clear();
        for (::std::size_t i = 0; i < ps.size();) {
            ::std::uint64_t e = 0;
            const auto v = ps[i].var;
            for (; i < ps.size() && ps[i].var == v; ++i) {
                e += ps[i].exp;
            }
            if (e > ::std::numeric_limits<::std::uint32_t>::max()) {
                throw ::std::overflow_error("monomial exponent overflow");
            }
            if (e != 0u) {
                detail::encode_power(words_, v, static_cast<::std::uint32_t>(e));
            }
        }
    }

    ::std::vector<::std::uint32_t> words_;
};

namespace detail
{

// Writes the product of monomials with no common variable to o and
// returns the end. Exactly a.word_count() + b.word_count() words.
inline ::std::uint32_t *write_disjoint_product(::std::uint32_t *o, monomial_view a, monomial_view b) noexcept
{
    const auto *pa = a.data();
    const auto *ea = pa + a.word_count();
    const auto *pb = b.data();
    const auto *eb = pb + b.word_count();
    while (pa != ea && pb != eb) {
        const auto *&p = (*pa >> 8) < (*pb >> 8) ? pa : pb;
        const auto w = *p++;
        *o++ = w;
        if ((w & 0xffu) == exp_escape) {
            *o++ = *p++;
        }
    }
    while (pa != ea) {
        *o++ = *pa++;
    }
    while (pb != eb) {
        *o++ = *pb++;
    }
    return o;
}

// Appends the encoded product a*b to out.
inline void append_product(::std::vector<::std::uint32_t> &out, monomial_view a, monomial_view b)
{
    const auto start = out.size();
    out.resize(start + a.word_count() + b.word_count());
    auto *o = out.data() + start;
    const auto *pa = a.data();
    const auto *ea = pa + a.word_count();
    const auto *pb = b.data();
    const auto *eb = pb + b.word_count();
    auto copy_one = [&o](const ::std::uint32_t *&p) {
        const auto w = *p++;
        *o++ = w;
        if ((w & 0xffu) == exp_escape) {
            *o++ = *p++;
        }
    };
    while (pa != ea && pb != eb) {
        const auto va = *pa >> 8;
        const auto vb = *pb >> 8;
        if (va < vb) {
            copy_one(pa);
        } else if (vb < va) {
            copy_one(pb);
        } else {
            ::std::uint64_t e = 0;
            for (auto **pp : {&pa, &pb}) {
                const auto w = *(*pp)++;
                if ((w & 0xffu) == exp_escape) {
                    e += *(*pp)++;
                } else {
                    e += w & 0xffu;
                }
            }
            if (e > ::std::numeric_limits<::std::uint32_t>::max()) {
                throw ::std::overflow_error("monomial exponent overflow");
            }
            if (e < exp_escape) {
                *o++ = (va << 8) | static_cast<::std::uint32_t>(e);
            } else {
                // The merged entry can need one word more than its inputs.
                const auto done = static_cast<::std::size_t>(o - out.data());
                out.resize(out.size() + 1);
                o = out.data() + done;
                *o++ = (va << 8) | exp_escape;
                *o++ = static_cast<::std::uint32_t>(e);
            }
        }
    }
    while (pa != ea) {
        *o++ = *pa++;
    }
    while (pb != eb) {
        *o++ = *pb++;
    }
    out.resize(static_cast<::std::size_t>(o - out.data()));
}

} // namespace detail

inline monomial operator*(const monomial &a, const monomial &b)
{
    ::std::vector<::std::uint32_t> w;
    detail::append_product(w, a.view(), b.view());
    return monomial(monomial_view(w.data(), static_cast<::std::uint32_t>(w.size())));
}

} // namespace cobord

#endif
