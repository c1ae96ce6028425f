#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string_view>

namespace sgspec {

/// Philox4x32-10 counter-based generator.
///
/// A stream is identified by a 64-bit key derived from (seed, purpose tag,
/// index). Every draw is a pure function of the key and a running block
/// counter, so independent streams can be created for each graph, grid point
/// or population slot without any shared state. Results are identical
/// regardless of the order in which streams are consumed.
class Philox {
public:
    using result_type = std::uint64_t;

    Philox(std::uint64_t key, std::uint64_t stream = 0) noexcept
        : key_{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)},
          stream_(stream) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        if (pos_ >= 2) {
            refill();
            pos_ = 0;
        }
        return block_[pos_++];
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform double in (0, 1].
    double uniform_open0() noexcept { return (static_cast<double>((*this)() >> 11) + 1.0) * 0x1.0p-53; }

    /// Uniform integer in [0, bound). Lemire's nearly-divisionless method.
    std::uint64_t below(std::uint64_t bound) noexcept {
        if (bound <= 1) return 0;
        for (;;) {
            const unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
            const auto low = static_cast<std::uint64_t>(m);
            if (low >= bound || low >= (-bound) % bound) return static_cast<std::uint64_t>(m >> 64);
        }
    }

    /// Standard normal via Box-Muller (one value per call; the pair partner is dropped
    /// so each call consumes a fixed amount of the stream).
    double normal() noexcept {
        const double u1 = uniform_open0();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    template <class It>
    void shuffle(It first, It last) noexcept {
        const auto n = static_cast<std::uint64_t>(last - first);
        for (std::uint64_t i = n; i > 1; --i) {
            const auto j = below(i);
            std::swap(first[i - 1], first[j]);
        }
    }

    /// The raw Philox4x32-10 bijection: ten rounds over a 128-bit counter.
    static std::array<std::uint32_t, 4> bijection(std::array<std::uint32_t, 4> ctr,
                                                  std::array<std::uint32_t, 2> key) noexcept;

private:
    void refill() noexcept;

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
    std::array<std::uint64_t, 2> block_{};
    int pos_ = 2;
};

/// FNV-1a over a purpose tag; tags keep streams of different consumers apart.
constexpr std::uint64_t tag_hash(std::string_view tag) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t mix64(std::uint64_t x) noexcept;

/// Stream keyed by (seed, tag, index).
inline Philox make_stream(std::uint64_t seed, std::string_view tag, std::uint64_t index = 0) noexcept {
    return Philox(mix64(seed ^ mix64(tag_hash(tag))), index);
}

}  // namespace sgspec
