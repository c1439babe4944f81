#pragma once

#include <array>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

#include "divsum/arith.hpp"

namespace divsum {

struct CacheError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr std::array<char, 8> table_cache_magic = {'D', 'I', 'V', 'S', 'U', 'M', 'T', 'B'};
inline constexpr std::uint32_t table_cache_version = 1;

namespace detail {

inline void put_u32_le(std::ostream& os, std::uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    os.write(b, 4);
}

inline void put_u64_le(std::ostream& os, std::uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    os.write(b, 8);
}

inline std::uint32_t get_u32_le(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
}

inline std::uint64_t get_u64_le(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

} // namespace detail

// Cache layout: magic[8], version (u32 LE), x_max (u64 LE), then the raw
// arrays tau (u32), mu (i8), phi (u32), spf (u32), entries n = 1..x_max.
inline void write_tables(const std::string& path, const ArithTables& t) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw CacheError("write_tables: cannot open " + path + " for writing");
    os.write(table_cache_magic.data(), table_cache_magic.size());
    detail::put_u32_le(os, table_cache_version);
    detail::put_u64_le(os, static_cast<std::uint64_t>(t.x_max));
    const std::size_t n = static_cast<std::size_t>(t.x_max);
    os.write(reinterpret_cast<const char*>(t.tau.data() + 1), static_cast<std::streamsize>(n * sizeof(std::uint32_t)));
    os.write(reinterpret_cast<const char*>(t.mu.data() + 1), static_cast<std::streamsize>(n * sizeof(std::int8_t)));
    os.write(reinterpret_cast<const char*>(t.phi.data() + 1), static_cast<std::streamsize>(n * sizeof(std::uint32_t)));
    os.write(reinterpret_cast<const char*>(t.spf.data() + 1), static_cast<std::streamsize>(n * sizeof(std::uint32_t)));
    if (!os) throw CacheError("write_tables: write failed for " + path);
}

inline ArithTables read_tables(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw CacheError("read_tables: cannot open " + path);
    std::array<char, 8> magic{};
    is.read(magic.data(), magic.size());
    if (!is || magic != table_cache_magic)
        throw CacheError("read_tables: " + path + " is not a table cache (bad magic)");
    const std::uint32_t version = detail::get_u32_le(is);
    if (!is || version != table_cache_version)
        throw CacheError("read_tables: " + path + " has unsupported cache version " + std::to_string(version));
    const std::uint64_t x_max = detail::get_u64_le(is);
    if (!is || x_max < 1 || x_max > static_cast<std::uint64_t>(default_sieve_budget))
        throw CacheError("read_tables: " + path + " header carries an implausible x_max");

    ArithTables t;
    t.x_max = static_cast<i64>(x_max);
    const std::size_t n = static_cast<std::size_t>(x_max);
    t.tau.assign(n + 1, 0);
    t.mu.assign(n + 1, 0);
    t.phi.assign(n + 1, 0);
    t.spf.assign(n + 1, 0);
    is.read(reinterpret_cast<char*>(t.tau.data() + 1), static_cast<std::streamsize>(n * sizeof(std::uint32_t)));
    is.read(reinterpret_cast<char*>(t.mu.data() + 1), static_cast<std::streamsize>(n * sizeof(std::int8_t)));
    is.read(reinterpret_cast<char*>(t.phi.data() + 1), static_cast<std::streamsize>(n * sizeof(std::uint32_t)));
    is.read(reinterpret_cast<char*>(t.spf.data() + 1), static_cast<std::streamsize>(n * sizeof(std::uint32_t)));
    if (!is) throw CacheError("read_tables: " + path + " is truncated");
    return t;
}

} // namespace divsum
