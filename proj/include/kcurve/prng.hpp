#pragma once

#include <cstdint>

namespace kcurve {

// splitmix64; reproducible streams, splittable per task
class Prng {
public:
    explicit Prng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    uint64_t below(uint64_t n) { return n ? next() % n : 0; }

    bool coin() { return next() & 1; }

    // independent child stream; deterministic in (parent seed, tag)
    Prng split(uint64_t tag) const {
        Prng t(state_ ^ (0x517cc1b727220a95ull * (tag + 1)));
        t.next();
        return t;
    }

private:
    uint64_t state_;
};

}  // namespace kcurve
