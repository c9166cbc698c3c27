#ifndef COBORD_SYMBOL_HPP
#define COBORD_SYMBOL_HPP

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <cobord/errors.hpp>

namespace cobord
{

// A variable name: a family tag plus an ordered list of indices,
// rendered as "a[1][2]", "X[3]", "U[2][4]" or plain "u".
struct var_symbol {
    ::std::string family;
    ::std::vector<::std::uint32_t> indices;

    var_symbol() = default;
    var_symbol(::std::string fam, ::std::initializer_list<::std::uint32_t> idx = {})
        : family(::std::move(fam)), indices(idx)
    {
    }
    var_symbol(::std::string fam, ::std::vector<::std::uint32_t> idx) : family(::std::move(fam)), indices(::std::move(idx))
    {
    }

    friend bool operator==(const var_symbol &, const var_symbol &) = default;
    friend ::std::strong_ordering operator<=>(const var_symbol &a, const var_symbol &b);
};

namespace detail
{

// The GDPR alphabet sorts ahead of everything else, in the order X, Y, U, V.
inline int family_rank(::std::string_view f) noexcept
{
    if (f == "X") {
        return 0;
    }
    if (f == "Y") {
        return 1;
    }
    if (f == "U") {
        return 2;
    }
    if (f == "V") {
        return 3;
    }
    return 4;
}

inline bool valid_family(::std::string_view f) noexcept
{
    if (f.empty()) {
        return false;
    }
    auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
    if (!alpha(f[0])) {
        return false;
    }
    for (char c : f) {
        if (!alpha(c) && !(c >= '0' && c <= '9')) {
            return false;
        }
    }
    return true;
}

} // namespace detail

inline ::std::strong_ordering operator<=>(const var_symbol &a, const var_symbol &b)
{
    if (auto c = detail::family_rank(a.family) <=> detail::family_rank(b.family); c != 0) {
        return c;
    }
    if (auto c = a.family.compare(b.family); c != 0) {
        return c < 0 ? ::std::strong_ordering::less : ::std::strong_ordering::greater;
    }
    return ::std::lexicographical_compare_three_way(a.indices.begin(), a.indices.end(), b.indices.begin(),
                                                    b.indices.end());
}

inline ::std::string render(const var_symbol &s)
{
    ::std::string out = s.family;
    for (auto i : s.indices) {
        out += '[';
        out += ::std::to_string(i);
        out += ']';
    }
    return out;
}

inline var_symbol parse_symbol(::std::string_view text)
{
    const auto br = text.find('[');
    var_symbol s;
    s.family = ::std::string(text.substr(0, br));
    if (!detail::valid_family(s.family)) {
        throw parse_error("malformed variable name '" + ::std::string(text) + "'");
    }
    auto pos = br;
    while (pos != ::std::string_view::npos && pos < text.size()) {
        if (text[pos] != '[') {
            throw parse_error("malformed variable name '" + ::std::string(text) + "'");
        }
        const auto close = text.find(']', pos);
        if (close == ::std::string_view::npos || close == pos + 1) {
            throw parse_error("malformed variable name '" + ::std::string(text) + "'");
        }
        ::std::uint64_t v = 0;
        for (auto i = pos + 1; i < close; ++i) {
            if (text[i] < '0' || text[i] > '9') {
                throw parse_error("malformed index in '" + ::std::string(text) + "'");
            }
            v = v * 10u + static_cast<::std::uint64_t>(text[i] - '0');
            if (v > 0xffffffffu) {
                throw parse_error("index too large in '" + ::std::string(text) + "'");
            }
        }
        s.indices.push_back(static_cast<::std::uint32_t>(v));
        pos = close + 1;
    }
    return s;
}

struct var_symbol_hash {
    ::std::size_t operator()(const var_symbol &s) const noexcept
    {
        ::std::size_t h = ::std::hash<::std::string>{}(s.family);
        for (auto i : s.indices) {
            h ^= i + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

using symbol_id = ::std::uint32_t;

// Process-wide interning of variable names into dense integer ids.
// Lookup by id is lock-free: storage is chunked and chunks never move.
class symbol_table
{
public:
    static symbol_table &instance()
    {
        static symbol_table table;
        return table;
    }

    symbol_id intern(const var_symbol &s)
    {
        {
            ::std::shared_lock lock(mtx_);
            if (auto it = ids_.find(s); it != ids_.end()) {
                return it->second;
            }
        }
        if (!detail::valid_family(s.family)) {
            throw parse_error("invalid variable family '" + s.family + "'");
        }
        ::std::unique_lock lock(mtx_);
        if (auto it = ids_.find(s); it != ids_.end()) {
            return it->second;
        }
        const auto id = static_cast<symbol_id>(size_);
        const auto chunk = id >> chunk_bits;
        if (chunk >= max_chunks) {
            throw ::std::length_error("symbol table exhausted");
        }
        if (!chunks_[chunk]) {
            chunks_[chunk] = ::std::make_unique<var_symbol[]>(chunk_size);
        }
        chunks_[chunk][id & (chunk_size - 1u)] = s;
        ids_.emplace(s, id);
        ++size_;
        return id;
    }

    const var_symbol &get(symbol_id id) const noexcept
    {
        return chunks_[id >> chunk_bits][id & (chunk_size - 1u)];
    }

    ::std::size_t size() const
    {
        ::std::shared_lock lock(mtx_);
        return size_;
    }

private:
    symbol_table() = default;

    static constexpr unsigned chunk_bits = 12;
    static constexpr ::std::size_t chunk_size = ::std::size_t(1) << chunk_bits;
    static constexpr ::std::size_t max_chunks = 4096;

    ::std::array<::std::unique_ptr<var_symbol[]>, max_chunks> chunks_{};
    ::std::size_t size_ = 0;
    mutable ::std::shared_mutex mtx_;
    ::std::unordered_map<var_symbol, symbol_id, var_symbol_hash> ids_;
};

inline symbol_id intern(const var_symbol &s)
{
    return symbol_table::instance().intern(s);
}

inline const var_symbol &symbol_of(symbol_id id) noexcept
{
    return symbol_table::instance().get(id);
}

} // namespace cobord

#endif
