#pragma once

// Sieved primes with prefix aggregates of 1/p and log(p)/p.
//
// All x arguments are reals compared against integer primes exactly:
// p <= x holds iff p <= floor(x). Nothing is silently truncated; a query
// past the sieve bound throws OutOfRangeError.

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "mertens/xfloat.hpp"

namespace mertens {

inline constexpr std::uint64_t kDefaultMaxSieveLimit = std::uint64_t{1} << 34;

// Odd-only bitset segment size in bytes.
inline constexpr std::size_t kSieveSegmentBytes = std::size_t{1} << 20;

struct SieveOptions {
    std::uint64_t max_limit = kDefaultMaxSieveLimit;
    unsigned threads = 1;
};

class PrimeTable {
public:
    // Builds the prefix aggregates from an explicit prime list, which must be
    // the primes <= limit in increasing order. Ordering and bounds are
    // checked (CorruptionError); primality is trusted.
    PrimeTable(std::uint64_t limit, std::vector<std::uint64_t> primes, unsigned threads = 1);

    std::uint64_t limit() const { return limit_; }
    std::span<const std::uint64_t> primes() const { return primes_; }
    std::span<const XFloat> prefix_recip() const { return prefix_recip_; }
    std::span<const XFloat> prefix_logp_over_p() const { return prefix_logp_over_p_; }
    std::size_t size() const { return primes_.size(); }

    // Natural log of primes()[i], to XFloat precision.
    const XFloat& log_prime(std::size_t i) const { return log_p_[i]; }
    // 1/primes()[i].
    XFloat recip(std::size_t i) const { return XFloat(1.0) / XFloat::from_u64(primes_[i]); }

    // Number of primes <= n. Throws OutOfRangeError for n > limit.
    std::size_t count_upto(std::uint64_t n) const;
    // Same, for a real bound.
    std::size_t count_upto(double x) const;

    friend bool operator==(const PrimeTable&, const PrimeTable&) = default;

private:
    std::uint64_t limit_;
    std::vector<std::uint64_t> primes_;
    std::vector<XFloat> log_p_;
    std::vector<XFloat> prefix_recip_;
    std::vector<XFloat> prefix_logp_over_p_;
};

// Segmented odd-only sieve of Eratosthenes. Segments may be sieved in
// parallel; they are merged in index order so the result does not depend on
// the thread count.
PrimeTable build_sieve(std::uint64_t limit, const SieveOptions& options = {});

// Exact sum of 1/p over p <= x, via the prefix table.
XFloat reciprocal_sum(const PrimeTable& table, double x);

// Exact sum of log(p)/p over p <= x.
XFloat logp_over_p_sum(const PrimeTable& table, double x);

// sum_{p <= sqrt(x)} (1/p) (log p / log x)^k. Tends to 1/(k 2^k).
XFloat power_log_sum(const PrimeTable& table, double x, int k);

// floor(x) as an integer. x must be finite, >= 0 and below 2^63.
std::uint64_t floor_u64(double x);

// Largest n with n*n <= x (x >= 0).
std::uint64_t isqrt_floor(double x);

// ---------------------------------------------------------------------------
// Prime cache file.
//
//   offset  size  field
//        0     8  magic "MERTPRIM"
//        8     4  version (u32 LE)
//       12     8  limit   (u64 LE)
//       20     8  count   (u64 LE)
//       28  8*n   primes  (u64 LE each)
//
// Prefix aggregates are not stored; they are recomputed on load.
// ---------------------------------------------------------------------------

inline constexpr char kPrimeCacheMagic[8] = {'M', 'E', 'R', 'T', 'P', 'R', 'I', 'M'};
inline constexpr std::uint32_t kPrimeCacheVersion = 1;
inline constexpr std::size_t kPrimeCacheHeaderBytes = 28;

struct PrimeCacheHeader {
    char magic[8];
    std::uint32_t version;
    std::uint64_t limit;
    std::uint64_t count;
};

void save_cache(const PrimeTable& table, const std::filesystem::path& path);
PrimeTable load_cache(const std::filesystem::path& path);

}  // namespace mertens
