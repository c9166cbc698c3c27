#ifndef COBORD_RATIONAL_HPP
#define COBORD_RATIONAL_HPP

#include <compare>
#include <concepts>
#include <cstdint>
#include <limits>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace cobord
{

using big_int = ::boost::multiprecision::cpp_int;
using big_rational = ::boost::multiprecision::cpp_rational;

namespace detail
{

using i128 = __int128;
using u128 = unsigned __int128;

inline constexpr ::std::int64_t small_max = ::std::numeric_limits<::std::int64_t>::max();

inline u128 gcd_u128(u128 a, u128 b)
{
    while (b != 0) {
        const auto t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline ::std::uint64_t gcd_u64(::std::uint64_t a, ::std::uint64_t b)
{
    while (b != 0) {
        const auto t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline ::std::uint64_t abs_u64(::std::int64_t x)
{
    return x < 0 ? static_cast<::std::uint64_t>(-(x + 1)) + 1u : static_cast<::std::uint64_t>(x);
}

inline big_int big_from_i128(i128 x)
{
    const bool neg = x < 0;
    u128 ux = neg ? static_cast<u128>(-(x + 1)) + 1u : static_cast<u128>(x);
    big_int r = static_cast<::std::uint64_t>(ux >> 64);
    r <<= 64;
    r += static_cast<::std::uint64_t>(ux);
    return neg ? big_int(-r) : r;
}

} // namespace detail

// Exact rational number. Values whose reduced numerator and denominator
// both fit in a signed 64-bit word are stored inline; anything larger
// falls back to an arbitrary-precision representation.
class rational
{
public:
    rational() = default;
    template <::std::integral T>
    // NOLINTNEXTLINE(google-explicit-constructor)
    rational(T n)
    {
        set_from_i128(static_cast<detail::i128>(n), 1);
    }
    template <::std::integral T, ::std::integral U>
    rational(T n, U d)
    {
        if (d == 0) {
            throw ::std::domain_error("rational: zero denominator");
        }
        set_from_i128(n, d);
    }
    explicit rational(const big_int &n, const big_int &d = 1)
    {
        if (d == 0) {
            throw ::std::domain_error("rational: zero denominator");
        }
        set_from_big(d < 0 ? big_rational(-n, -d) : big_rational(n, d));
    }
    explicit rational(const big_rational &q)
    {
        set_from_big(q);
    }

    rational(const rational &other) : num_(other.num_), den_(other.den_)
    {
        if (other.big_) {
            big_ = ::std::make_unique<big_rational>(*other.big_);
        }
    }
    rational(rational &&) noexcept = default;
    rational &operator=(const rational &other)
    {
        if (this != &other) {
            rational tmp(other);
            *this = ::std::move(tmp);
        }
        return *this;
    }
    rational &operator=(rational &&) noexcept = default;
    ~rational() = default;

    // Parses decimal numerator and denominator strings.
    static rational from_strings(::std::string_view num, ::std::string_view den = "1")
    {
        auto parse = [](::std::string_view s) {
            if (s.empty()) {
                throw ::std::invalid_argument("rational: empty integer string");
            }
            ::std::size_t i = (s[0] == '-' || s[0] == '+') ? 1u : 0u;
            if (i == s.size()) {
                throw ::std::invalid_argument("rational: malformed integer '" + ::std::string(s) + "'");
            }
            for (auto j = i; j < s.size(); ++j) {
                if (s[j] < '0' || s[j] > '9') {
                    throw ::std::invalid_argument("rational: malformed integer '" + ::std::string(s) + "'");
                }
            }
            big_int r(::std::string(s.substr(i)));
            return s[0] == '-' ? big_int(-r) : r;
        };
        return rational(parse(num), parse(den));
    }

    bool is_small() const noexcept
    {
        return !big_;
    }
    bool is_zero() const noexcept
    {
        return !big_ && num_ == 0;
    }
    bool is_one() const noexcept
    {
        return !big_ && num_ == 1 && den_ == 1;
    }
    bool is_integer() const
    {
        return big_ ? ::boost::multiprecision::denominator(*big_) == 1 : den_ == 1;
    }
    int sign() const
    {
        if (big_) {
            return big_->sign();
        }
        return (num_ > 0) - (num_ < 0);
    }

    big_int numerator() const
    {
        return big_ ? big_int(::boost::multiprecision::numerator(*big_)) : big_int(num_);
    }
    big_int denominator() const
    {
        return big_ ? big_int(::boost::multiprecision::denominator(*big_)) : big_int(den_);
    }
    // Only meaningful when is_small().
    ::std::int64_t small_num() const noexcept
    {
        return num_;
    }
    ::std::int64_t small_den() const noexcept
    {
        return den_;
    }

    big_rational to_big() const
    {
        return big_ ? *big_ : big_rational(big_int(num_), big_int(den_));
    }

    ::std::string num_str() const
    {
        return big_ ? ::boost::multiprecision::numerator(*big_).str() : ::std::to_string(num_);
    }
    ::std::string den_str() const
    {
        return big_ ? ::boost::multiprecision::denominator(*big_).str() : ::std::to_string(den_);
    }
    ::std::string to_string() const
    {
        return is_integer() ? num_str() : num_str() + "/" + den_str();
    }

    rational operator-() const
    {
        if (big_) {
            return rational(big_rational(-*big_));
        }
        return rational(-num_, den_, 0);
    }

    rational &operator+=(const rational &o)
    {
        return *this = *this + o;
    }
    rational &operator-=(const rational &o)
    {
        return *this = *this - o;
    }
    rational &operator*=(const rational &o)
    {
        return *this = *this * o;
    }
    rational &operator/=(const rational &o)
    {
        return *this = *this / o;
    }

    friend rational operator+(const rational &a, const rational &b)
    {
        if (!a.big_ && !b.big_) {
            if (a.den_ == 1 && b.den_ == 1) {
                ::std::int64_t r{};
                if (!__builtin_add_overflow(a.num_, b.num_, &r) && r != ::std::numeric_limits<::std::int64_t>::min()) {
                    return rational(r, 1, 0);
                }
            }
            const detail::i128 n = static_cast<detail::i128>(a.num_) * b.den_ + static_cast<detail::i128>(b.num_) * a.den_;
            const detail::i128 d = static_cast<detail::i128>(a.den_) * b.den_;
            rational r;
            r.set_from_i128(n, d);
            return r;
        }
        return rational(a.to_big() + b.to_big());
    }
    friend rational operator-(const rational &a, const rational &b)
    {
        return a + (-b);
    }
    friend rational operator*(const rational &a, const rational &b)
    {
        if (!a.big_ && !b.big_) {
            if (a.den_ == 1 && b.den_ == 1) {
                ::std::int64_t r{};
                if (!__builtin_mul_overflow(a.num_, b.num_, &r) && r != ::std::numeric_limits<::std::int64_t>::min()) {
                    return rational(r, 1, 0);
                }
            }
            // Cross-reduce first so that the result is already in lowest terms.
            const auto g1 = static_cast<::std::int64_t>(detail::gcd_u64(detail::abs_u64(a.num_), static_cast<::std::uint64_t>(b.den_)));
            const auto g2 = static_cast<::std::int64_t>(detail::gcd_u64(detail::abs_u64(b.num_), static_cast<::std::uint64_t>(a.den_)));
            if (g1 == 0 || g2 == 0) {
                return rational();
            }
            const detail::i128 n = static_cast<detail::i128>(a.num_ / g1) * (b.num_ / g2);
            const detail::i128 d = static_cast<detail::i128>(a.den_ / g2) * (b.den_ / g1);
            rational r;
            r.set_from_i128(n, d);
            return r;
        }
        return rational(a.to_big() * b.to_big());
    }
    friend rational operator/(const rational &a, const rational &b)
    {
        if (b.is_zero()) {
            throw ::std::domain_error("rational: division by zero");
        }
        return a * b.inverse();
    }

    rational inverse() const
    {
        if (is_zero()) {
            throw ::std::domain_error("rational: inverse of zero");
        }
        if (big_) {
            return rational(big_int(::boost::multiprecision::denominator(*big_)),
                            big_int(::boost::multiprecision::numerator(*big_)));
        }
        return num_ < 0 ? rational(-den_, -num_, 0) : rational(den_, num_, 0);
    }

    friend bool operator==(const rational &a, const rational &b)
    {
        if (!a.big_ && !b.big_) {
            return a.num_ == b.num_ && a.den_ == b.den_;
        }
        // Normalisation guarantees small values are never stored big.
        if (!a.big_ || !b.big_) {
            return false;
        }
        return *a.big_ == *b.big_;
    }
    friend ::std::strong_ordering operator<=>(const rational &a, const rational &b)
    {
        if (!a.big_ && !b.big_) {
            const detail::i128 l = static_cast<detail::i128>(a.num_) * b.den_;
            const detail::i128 r = static_cast<detail::i128>(b.num_) * a.den_;
            return l <=> r;
        }
        const auto ab = a.to_big();
        const auto bb = b.to_big();
        if (ab < bb) {
            return ::std::strong_ordering::less;
        }
        return ab == bb ? ::std::strong_ordering::equal : ::std::strong_ordering::greater;
    }

    friend ::std::ostream &operator<<(::std::ostream &os, const rational &q)
    {
        return os << q.to_string();
    }

private:
    // Trusted constructor: (n, d) already reduced, d > 0.
    rational(::std::int64_t n, ::std::int64_t d, int) : num_(n), den_(d) {}

    void set_from_i128(detail::i128 n, detail::i128 d)
    {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        const detail::u128 un = n < 0 ? static_cast<detail::u128>(-n) : static_cast<detail::u128>(n);
        const auto g = detail::gcd_u128(un, static_cast<detail::u128>(d));
        if (g > 1) {
            n /= static_cast<detail::i128>(g);
            d /= static_cast<detail::i128>(g);
        }
        if (n == 0) {
            d = 1;
        }
        if (n <= detail::small_max && -n <= detail::small_max && d <= detail::small_max) {
            big_.reset();
            num_ = static_cast<::std::int64_t>(n);
            den_ = static_cast<::std::int64_t>(d);
        } else {
            big_ = ::std::make_unique<big_rational>(detail::big_from_i128(n), detail::big_from_i128(d));
            num_ = 0;
            den_ = 1;
        }
    }

    void set_from_big(const big_rational &q)
    {
        const auto &n = ::boost::multiprecision::numerator(q);
        const auto &d = ::boost::multiprecision::denominator(q);
        static const big_int lim(detail::small_max);
        if (n <= lim && n >= -lim && d <= lim) {
            big_.reset();
            num_ = static_cast<::std::int64_t>(n);
            den_ = static_cast<::std::int64_t>(d);
        } else {
            big_ = ::std::make_unique<big_rational>(q);
            num_ = 0;
            den_ = 1;
        }
    }

    ::std::int64_t num_{0};
    ::std::int64_t den_{1};
    ::std::unique_ptr<big_rational> big_;
};

inline rational pow(const rational &base, unsigned e)
{
    rational result(1);
    rational b(base);
    while (e != 0u) {
        if ((e & 1u) != 0u) {
            result *= b;
        }
        e >>= 1u;
        if (e != 0u) {
            b *= b;
        }
    }
    return result;
}

} // namespace cobord

#endif
