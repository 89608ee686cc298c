#include "pairy/rng.hpp"

namespace pairy {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Xoshiro256ss::Xoshiro256ss(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& v : s_) v = splitmix64(x);
}

Xoshiro256ss::result_type Xoshiro256ss::operator()() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

void Xoshiro256ss::jump() {
    static const std::uint64_t J[] = {0x180ec6d33cfd0abaULL, 0xd5a61266f0c9392cULL, 0xa9582618e03fc9aaULL,
                                      0x39abdc4529b1661cULL};
    std::array<std::uint64_t, 4> t{0, 0, 0, 0};
    for (auto j : J)
        for (int b = 0; b < 64; ++b) {
            if (j & (std::uint64_t(1) << b))
                for (int i = 0; i < 4; ++i) t[i] ^= s_[i];
            (*this)();
        }
    s_ = t;
}

std::uint64_t Xoshiro256ss::below(std::uint64_t bound) {
    __uint128_t m = static_cast<__uint128_t>((*this)()) * bound;
    std::uint64_t l = static_cast<std::uint64_t>(m);
    if (l < bound) {
        std::uint64_t t = (0 - bound) % bound;
        while (l < t) {
            m = static_cast<__uint128_t>((*this)()) * bound;
            l = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

double Xoshiro256ss::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

}  // namespace pairy
