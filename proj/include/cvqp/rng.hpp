#pragma once

#include <cstdint>
#include <random>

namespace cvqp {

// SplitMix64 step; used to derive independent stream seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stream seed for worker `worker` under master seed `master`. Streams are
// merged in worker-index order, so results are independent of scheduling.
inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t worker) {
    return splitmix64(master + 0x9e3779b97f4a7c15ULL * (worker + 1));
}

// Deterministic sampler: mt19937_64 has a standard-specified output sequence
// and the uniform/normal transforms below are explicit fixed formulas, so a
// seed pins the draw sequence. std::normal_distribution is deliberately
// avoided: its algorithm is implementation-defined and differs across
// standard libraries.
class NormalSampler {
  public:
    explicit NormalSampler(std::uint64_t seed) : gen_(seed) {}

    // Uniform on the open interval (0, 1); safe as a log argument.
    double uniform01() {
        return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1p-53;
    }

    // Standard normal via one Box-Muller cosine branch (two uniforms per draw).
    double normal() {
        const double u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

  private:
    std::mt19937_64 gen_;
};

} // namespace cvqp
