#ifndef DSCM_SHAPING_HPP
#define DSCM_SHAPING_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "dscm/scalar_math.hpp"

namespace dscm {

inline constexpr std::array<int, 4> kPamMagnitudes = {1, 3, 5, 7};

// Probabilities of the PS-8PAM amplitudes. pr[j] is the probability of
// each SIGNED amplitude +/-(2j+1), so sum_j 2*pr[j] = 1. The same
// distribution is used independently on I and Q, which makes
// entropy_per_dimension = target_se / 2.
struct AmplitudeDistribution {
    std::array<double, 4> pr = {0.125, 0.125, 0.125, 0.125};
    double entropy_per_dimension = 3.0;
    double target_se = 6.0;

    // E[k^2] over one dimension (k the signed odd amplitude)
    double mean_square_amplitude() const {
        double s = 0.0;
        for (int j = 0; j < 4; ++j) {
            double k = kPamMagnitudes[j];
            s += 2.0 * pr[j] * k * k;
        }
        return s;
    }
    void validate() const;
};

// Maxwell-Boltzmann distribution pr[k] ~ exp(-lambda k^2) whose
// per-dimension entropy (amplitude entropy plus the uniform sign bit)
// equals target_se/2. Feasible for target_se in [2, 6]: one bit per
// dimension is the sign-bit floor, three bits the uniform ceiling.
AmplitudeDistribution mb_distribution_for_se(double target_se);

// Entropy in bits per dimension over the eight signed amplitudes.
double entropy(const AmplitudeDistribution& dist);

// Eq.-(20)-style half-spacing: d such that a 2-D constellation on the
// grid {+-d,+-3d,+-5d,+-7d}^2 with these probabilities has average
// power p_sym.
double euclidean_distance(double p_sym, const AmplitudeDistribution& dist);

// Reflected-Gray labels for the eight levels ordered -7..+7:
//   000,001,011,010,110,111,101,100  (MSB..LSB)
// Bit 1 is the sign, bit 2 marks |k| in {1,3}, bit 3 marks |k| in {3,5}.
std::uint8_t gray_bits(int amplitude);

// nearest odd level in [-7,7]
int slice_pam8(double x);

// i.i.d. PS-64QAM symbols on the integer grid (I and Q independent PS-8PAM);
// deterministic given seed.
std::vector<std::complex<double>> sample_symbols(const AmplitudeDistribution& dist,
                                                 std::size_t count, std::uint64_t seed);

}  // namespace dscm

#endif
