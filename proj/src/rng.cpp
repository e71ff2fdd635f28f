#include "s2w/rng.hpp"

#include <cmath>

namespace s2w {

RngStream::RngStream(std::uint64_t master_seed, std::string experiment_id,
                     std::uint64_t replicate_index)
    : master_seed_(master_seed),
      experiment_id_(std::move(experiment_id)),
      replicate_index_(replicate_index) {
    // Each field goes through the mixer before being folded in, so nearby seeds or
    // indices land on unrelated keys.
    std::uint64_t k = mix64(master_seed_ + 0x9E3779B97F4A7C15ULL);
    k = mix64(k ^ hash_id(experiment_id_));
    k = mix64(k ^ mix64(replicate_index_ + 0xD1B54A32D192ED03ULL));
    key_ = k;

    std::uint64_t x = key_;
    for (auto& word : s_) {
        x += 0x9E3779B97F4A7C15ULL;
        word = mix64(x);
    }
}

double RngStream::normal() noexcept {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u = 0.0;
    double v = 0.0;
    double s = 0.0;
    do {
        u = 2.0 * uniform_open() - 1.0;
        v = 2.0 * uniform_open() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * factor;
    has_spare_ = true;
    return u * factor;
}

}  // namespace s2w
