#pragma once

#include <cstdint>
#include <random>

namespace matgeom {

/// Seeded generator with a portable bounded draw. std::mt19937_64 output is
/// fixed by the standard; the distributions in <random> are not, so bounds
/// are handled here by rejection.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, bound); bound > 0.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % bound;
    }

    bool coin() { return below(2) == 1; }

private:
    std::mt19937_64 engine_;
};

}  // namespace matgeom
