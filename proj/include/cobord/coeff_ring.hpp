#ifndef COBORD_COEFF_RING_HPP
#define COBORD_COEFF_RING_HPP

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <cobord/errors.hpp>
#include <cobord/rational.hpp>

namespace cobord
{

// Z with a finite set of positive integers inverted. The empty set is Z.
class coeff_ring
{
public:
    coeff_ring() = default;
    coeff_ring(::std::initializer_list<::std::uint64_t> inv) : coeff_ring(::std::vector<::std::uint64_t>(inv)) {}
    explicit coeff_ring(::std::vector<::std::uint64_t> inv) : inverted_(::std::move(inv))
    {
        for (auto n : inverted_) {
            if (n == 0u) {
                throw ::std::invalid_argument("coeff_ring: cannot invert 0");
            }
        }
        // Inverting 1 changes nothing.
        inverted_.erase(::std::remove(inverted_.begin(), inverted_.end(), 1u), inverted_.end());
        ::std::sort(inverted_.begin(), inverted_.end());
        inverted_.erase(::std::unique(inverted_.begin(), inverted_.end()), inverted_.end());
    }

    static coeff_ring integers()
    {
        return {};
    }

    const ::std::vector<::std::uint64_t> &inverted() const noexcept
    {
        return inverted_;
    }
    bool is_integers() const noexcept
    {
        return inverted_.empty();
    }

    // Set inclusion of the inverted integers.
    bool contains(const coeff_ring &other) const
    {
        return ::std::includes(inverted_.begin(), inverted_.end(), other.inverted_.begin(), other.inverted_.end());
    }

    // True when q lies in this ring, i.e. every prime of its denominator
    // divides one of the inverted integers.
    bool admits(const rational &q) const
    {
        if (q.is_integer()) {
            return true;
        }
        big_int d = q.denominator();
        for (auto n : inverted_) {
            // Strip from d every prime factor shared with n.
            big_int g = ::boost::multiprecision::gcd(d, big_int(n));
            while (g > 1) {
                while (d % g == 0) {
                    d /= g;
                }
                g = ::boost::multiprecision::gcd(d, big_int(n));
            }
            if (d == 1) {
                return true;
            }
        }
        return d == 1;
    }

    ::std::string to_string() const
    {
        if (inverted_.empty()) {
            return "Z";
        }
        ::std::string s = "Z[1/";
        for (::std::size_t i = 0; i < inverted_.size(); ++i) {
            if (i != 0u) {
                s += ",1/";
            }
            s += ::std::to_string(inverted_[i]);
        }
        return s + "]";
    }

    friend bool operator==(const coeff_ring &, const coeff_ring &) = default;

private:
    ::std::vector<::std::uint64_t> inverted_;
};

// The larger of two nested rings.
inline const coeff_ring &join(const coeff_ring &a, const coeff_ring &b)
{
    if (a.contains(b)) {
        return a;
    }
    if (b.contains(a)) {
        return b;
    }
    throw incompatible_rings("neither of " + a.to_string() + " and " + b.to_string() + " contains the other");
}

} // namespace cobord

#endif
