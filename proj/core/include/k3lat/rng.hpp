#ifndef K3LAT_RNG_HPP
#define K3LAT_RNG_HPP

#include <cstdint>

namespace k3lat {

/// PCG32: small deterministic generator.  Every randomized routine in the
/// library takes an Rng& so that a run is a pure function of (inputs, seed).
class Rng {
public:
    explicit Rng(uint64_t seed = 0, uint64_t stream = 0x14057b7ef767814fULL) {
        state_ = 0;
        inc_ = (stream << 1u) | 1u;
        next();
        state_ += seed;
        next();
    }

    uint32_t next() {
        uint64_t old = state_;
        state_ = old * 6364136223846793005ULL + inc_;
        uint32_t xorshifted = static_cast<uint32_t>(((old >> 18u) ^ old) >> 27u);
        uint32_t rot = static_cast<uint32_t>(old >> 59u);
        return (xorshifted >> rot) | (xorshifted << ((32 - rot) & 31));
    }

    /// Uniform in [0, bound); bound > 0.  Debiased by rejection.
    uint32_t below(uint32_t bound) {
        uint32_t threshold = (-bound) % bound;
        for (;;) {
            uint32_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    /// A nonzero field element.
    uint32_t nonzero_mod(uint32_t p) { return 1 + below(p - 1); }
    /// Any field element.
    uint32_t mod(uint32_t p) { return below(p); }

    /// Derive an independent child generator; used to give sub-tasks stable
    /// seeds that do not depend on how many draws earlier sub-tasks made.
    Rng child(uint64_t tag) {
        return Rng(state_ ^ (0x9e3779b97f4a7c15ULL * (tag + 1)), inc_ ^ tag);
    }

private:
    uint64_t state_;
    uint64_t inc_;
};

}  // namespace k3lat

#endif
