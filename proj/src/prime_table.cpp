#include "mertens/prime_table.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <string>

#include "mertens/detail/parallel.hpp"
#include "mertens/errors.hpp"

namespace mertens {

namespace {

constexpr std::size_t kPrefixChunk = 4096;

std::uint64_t isqrt_u64(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) --r;
    while (r + 1 <= n / (r + 1)) ++r;
    return r;
}

std::vector<std::uint64_t> simple_sieve(std::uint64_t limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

// Odd primes in [lo, hi), lo odd. `base` holds the odd primes <= sqrt(hi).
std::vector<std::uint64_t> sieve_segment(std::uint64_t lo, std::uint64_t hi,
                                         const std::vector<std::uint64_t>& base) {
    const std::uint64_t nbits = (hi - lo + 1) / 2;  // odd numbers lo, lo+2, ...
    std::vector<std::uint64_t> words((nbits + 63) / 64, ~std::uint64_t{0});
    for (std::uint64_t p : base) {
        std::uint64_t sq = p * p;
        if (sq >= hi) break;
        std::uint64_t start = sq;
        if (start < lo) {
            start = (lo + p - 1) / p * p;
            if ((start & 1u) == 0) start += p;
        }
        for (std::uint64_t m = start; m < hi; m += 2 * p) {
            std::uint64_t b = (m - lo) / 2;
            words[b >> 6] &= ~(std::uint64_t{1} << (b & 63));
        }
    }
    std::vector<std::uint64_t> out;
    for (std::size_t w = 0; w < words.size(); ++w) {
        std::uint64_t bits = words[w];
        while (bits) {
            int t = std::countr_zero(bits);
            std::uint64_t b = w * 64 + static_cast<std::uint64_t>(t);
            if (b < nbits) {
                std::uint64_t n = lo + 2 * b;
                if (n != 1) out.push_back(n);
            }
            bits &= bits - 1;
        }
    }
    return out;
}

void put_le(std::ostream& os, std::uint64_t v, int bytes) {
    std::array<char, 8> buf{};
    for (int i = 0; i < bytes; ++i) buf[static_cast<std::size_t>(i)] = static_cast<char>((v >> (8 * i)) & 0xffu);
    os.write(buf.data(), bytes);
}

std::uint64_t get_le(const unsigned char* p, int bytes) {
    std::uint64_t v = 0;
    for (int i = bytes - 1; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}

}  // namespace

std::uint64_t floor_u64(double x) {
    if (!std::isfinite(x) || x < 0.0) throw DomainError("bound must be finite and non-negative");
    if (x >= 9223372036854775808.0) throw OutOfRangeError("bound exceeds 2^63");
    return static_cast<std::uint64_t>(std::floor(x));
}

std::uint64_t isqrt_floor(double x) { return isqrt_u64(floor_u64(x)); }

PrimeTable::PrimeTable(std::uint64_t limit, std::vector<std::uint64_t> primes, unsigned threads)
    : limit_(limit), primes_(std::move(primes)) {
    if (limit_ < 2) throw DomainError("prime table limit must be at least 2");
    if (primes_.empty() || primes_.front() != 2) throw CorruptionError("prime list must start at 2");
    for (std::size_t i = 1; i < primes_.size(); ++i)
        if (primes_[i] <= primes_[i - 1]) throw CorruptionError("prime list is not strictly increasing");
    if (primes_.back() > limit_) throw CorruptionError("prime list exceeds its limit");

    const std::size_t n = primes_.size();
    log_p_.resize(n);
    const std::size_t chunks = (n + kPrefixChunk - 1) / kPrefixChunk;
    detail::parallel_for(chunks, threads, [&](std::size_t c) {
        const std::size_t end = std::min(n, (c + 1) * kPrefixChunk);
        for (std::size_t i = c * kPrefixChunk; i < end; ++i) log_p_[i] = log(XFloat::from_u64(primes_[i]));
    });

    // Accumulated strictly in index order.
    prefix_recip_.resize(n);
    prefix_logp_over_p_.resize(n);
    XFloat acc_r, acc_l;
    for (std::size_t i = 0; i < n; ++i) {
        XFloat p = XFloat::from_u64(primes_[i]);
        acc_r += XFloat(1.0) / p;
        acc_l += log_p_[i] / p;
        prefix_recip_[i] = acc_r;
        prefix_logp_over_p_[i] = acc_l;
    }
}

std::size_t PrimeTable::count_upto(std::uint64_t n) const {
    if (n > limit_)
        throw OutOfRangeError("bound " + std::to_string(n) + " exceeds sieve limit " + std::to_string(limit_));
    return static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), n) - primes_.begin());
}

std::size_t PrimeTable::count_upto(double x) const {
    if (x < 2.0) return 0;
    return count_upto(floor_u64(x));
}

PrimeTable build_sieve(std::uint64_t limit, const SieveOptions& options) {
    if (limit < 2) throw DomainError("sieve limit must be at least 2");
    if (limit > options.max_limit)
        throw ResourceError("sieve limit " + std::to_string(limit) + " exceeds configured maximum " +
                            std::to_string(options.max_limit));

    const std::uint64_t root = isqrt_u64(limit);
    std::vector<std::uint64_t> base = simple_sieve(root);
    std::vector<std::uint64_t> odd_base;
    if (!base.empty()) odd_base.assign(base.begin() + 1, base.end());

    // Each segment covers kSieveSegmentBytes * 8 odd numbers.
    const std::uint64_t span = std::uint64_t{kSieveSegmentBytes} * 8 * 2;
    const std::uint64_t end = limit + 1;  // exclusive
    const std::size_t nseg = static_cast<std::size_t>((end - 1 + span - 1) / span);
    std::vector<std::vector<std::uint64_t>> parts(nseg);
    detail::parallel_for(nseg, options.threads, [&](std::size_t s) {
        std::uint64_t lo = 1 + static_cast<std::uint64_t>(s) * span;
        std::uint64_t hi = std::min(end, lo + span);
        parts[s] = sieve_segment(lo, hi, odd_base);
    });

    std::vector<std::uint64_t> primes{2};
    std::size_t total = 1;
    for (const auto& p : parts) total += p.size();
    primes.reserve(total);
    for (const auto& p : parts) primes.insert(primes.end(), p.begin(), p.end());
    return PrimeTable(limit, std::move(primes), options.threads);
}

XFloat reciprocal_sum(const PrimeTable& table, double x) {
    if (!(x > 0.0)) throw DomainError("reciprocal_sum requires x > 0");
    std::size_t n = table.count_upto(x);
    return n == 0 ? XFloat() : table.prefix_recip()[n - 1];
}

XFloat logp_over_p_sum(const PrimeTable& table, double x) {
    if (!(x > 0.0)) throw DomainError("logp_over_p_sum requires x > 0");
    std::size_t n = table.count_upto(x);
    return n == 0 ? XFloat() : table.prefix_logp_over_p()[n - 1];
}

XFloat power_log_sum(const PrimeTable& table, double x, int k) {
    if (k < 1) throw DomainError("power_log_sum requires k >= 1");
    if (!(x >= 4.0)) throw DomainError("power_log_sum requires x >= 4");
    const std::uint64_t root = isqrt_floor(x);
    if (root > table.limit()) throw OutOfRangeError("sqrt(x) exceeds sieve limit");
    const std::size_t n = table.count_upto(root);
    const XFloat inv_log_x = XFloat(1.0) / log(XFloat(x));
    XFloat sum;
    for (std::size_t i = 0; i < n; ++i) sum += table.recip(i) * pow(table.log_prime(i) * inv_log_x, k);
    return sum;
}

void save_cache(const PrimeTable& table, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("cannot open prime cache for writing: " + path.string());
    os.write(kPrimeCacheMagic, sizeof kPrimeCacheMagic);
    put_le(os, kPrimeCacheVersion, 4);
    put_le(os, table.limit(), 8);
    put_le(os, table.size(), 8);
    for (std::uint64_t p : table.primes()) put_le(os, p, 8);
    os.flush();
    if (!os) throw Error("failed writing prime cache: " + path.string());
}

PrimeTable load_cache(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("cannot open prime cache: " + path.string());
    std::array<unsigned char, kPrimeCacheHeaderBytes> raw{};
    is.read(reinterpret_cast<char*>(raw.data()), raw.size());
    if (static_cast<std::size_t>(is.gcount()) != raw.size()) throw CorruptionError("prime cache header truncated");

    PrimeCacheHeader h{};
    std::memcpy(h.magic, raw.data(), 8);
    h.version = static_cast<std::uint32_t>(get_le(raw.data() + 8, 4));
    h.limit = get_le(raw.data() + 12, 8);
    h.count = get_le(raw.data() + 20, 8);
    if (std::memcmp(h.magic, kPrimeCacheMagic, 8) != 0) throw FormatError("prime cache has bad magic");
    if (h.version != kPrimeCacheVersion)
        throw FormatError("prime cache version " + std::to_string(h.version) + " is not supported");

    is.seekg(0, std::ios::end);
    const auto file_size = static_cast<std::uint64_t>(is.tellg());
    const std::uint64_t body = file_size - kPrimeCacheHeaderBytes;
    if (h.count > body / 8 || body != h.count * 8)
        throw CorruptionError("prime cache body does not match its declared count");
    is.seekg(static_cast<std::streamoff>(kPrimeCacheHeaderBytes));

    std::vector<unsigned char> bytes(static_cast<std::size_t>(body));
    is.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (static_cast<std::uint64_t>(is.gcount()) != body) throw CorruptionError("prime cache body truncated");
    std::vector<std::uint64_t> primes(static_cast<std::size_t>(h.count));
    for (std::size_t i = 0; i < primes.size(); ++i) primes[i] = get_le(bytes.data() + 8 * i, 8);
    return PrimeTable(h.limit, std::move(primes));
}

}  // namespace mertens
