#ifndef DSCM_RNG_HPP
#define DSCM_RNG_HPP

#include <cstdint>
#include <random>

namespace dscm {

// splitmix64; used to derive independent stream seeds from (seed, lane)
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic per-(seed, stream) generator. Streams are independent
// lanes (subcarrier, block, purpose), so block-parallel simulation gives
// bit-identical results in any execution order.
class StreamRng {
  public:
    StreamRng(std::uint64_t seed, std::uint64_t stream)
        : eng_(mix64(seed ^ mix64(stream ^ 0x5851f42d4c957f2dULL))) {}

    double uniform() { return std::generate_canonical<double, 53>(eng_); }

    double normal() {
        // Box-Muller on explicit uniforms keeps the draw sequence
        // independent of the standard library implementation.
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586477 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace dscm

#endif
