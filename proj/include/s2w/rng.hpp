#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace s2w {

/// SplitMix64 finalizer; bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// FNV-1a over the bytes of an identifier.
constexpr std::uint64_t hash_id(std::string_view id) noexcept {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : id) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

/**
 * Deterministic pseudorandom stream keyed by (master seed, experiment id, replicate index).
 *
 * The key is obtained by chaining the three fields through a keyed 64-bit mixer, then
 * expanded with SplitMix64 into the 256-bit state of a xoshiro256++ generator. Equal keys
 * give identical sequences; the output never depends on the order in which streams are
 * created or consumed.
 *
 * A stream is single-owner: do not share one instance between threads.
 */
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::string experiment_id, std::uint64_t replicate_index);

    std::uint64_t master_seed() const noexcept { return master_seed_; }
    const std::string& experiment_id() const noexcept { return experiment_id_; }
    std::uint64_t replicate_index() const noexcept { return replicate_index_; }
    std::uint64_t key() const noexcept { return key_; }
    /// Number of 64-bit words drawn so far.
    std::uint64_t counter() const noexcept { return counter_; }

    std::uint64_t next_u64() noexcept {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        ++counter_;
        return result;
    }

    /// Uniform on the open interval (0,1); 53-bit resolution, never returns 0 or 1.
    double uniform_open() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Fair random sign.
    double sign() noexcept { return (next_u64() >> 63) != 0 ? -1.0 : 1.0; }

    /// Standard normal variate (Marsaglia polar method; the spare deviate is cached).
    double normal() noexcept;

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t master_seed_;
    std::string experiment_id_;
    std::uint64_t replicate_index_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    std::array<std::uint64_t, 4> s_{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Derive the stream for one replicate of one experiment.
inline RngStream derive_stream(std::uint64_t master_seed, std::string experiment_id,
                               std::uint64_t replicate_index) {
    return RngStream(master_seed, std::move(experiment_id), replicate_index);
}

}  // namespace s2w
