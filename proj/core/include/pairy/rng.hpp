#pragma once

#include <array>
#include <cstdint>

namespace pairy {

// xoshiro256** (Blackman & Vigna), seeded through splitmix64. jump()
// advances by 2^128 draws; chain c of a run uses the seed stream jumped c
// times.
class Xoshiro256ss {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256ss(std::uint64_t seed = 0);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type(0); }

    result_type operator()();
    void jump();

    // uniform integer in [0, bound) (Lemire's multiply-shift with rejection)
    std::uint64_t below(std::uint64_t bound);
    // uniform double in [0, 1)
    double uniform();

    const std::array<std::uint64_t, 4>& state() const { return s_; }

private:
    std::array<std::uint64_t, 4> s_;
};

std::uint64_t splitmix64(std::uint64_t& x);

}  // namespace pairy
