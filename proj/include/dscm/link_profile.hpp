#ifndef DSCM_LINK_PROFILE_HPP
#define DSCM_LINK_PROFILE_HPP

#include <cstddef>
#include <vector>

#include "dscm/scalar_math.hpp"

namespace dscm {

// One point-to-multi-point network instance. All powers are linear;
// losses are linear power ratios (>= 1); noise_variance is the white
// noise power per subcarrier per complex symbol at the matched-filter
// output; peak_amplitude caps each real dimension of the transmit
// waveform; bandwidth_hz equals the per-subcarrier symbol rate.
struct LinkProfile {
    int subcarrier_count = 0;
    std::vector<double> losses;
    double noise_variance = 0.0;
    double peak_amplitude = 0.0;
    double dscm_power = 1.0;
    double bandwidth_hz = 0.0;

    void validate() const {
        if (subcarrier_count < 1)
            throw InvalidParameter("LinkProfile: subcarrier_count must be >= 1");
        if (static_cast<int>(losses.size()) != subcarrier_count)
            throw InvalidParameter("LinkProfile: losses must have exactly N entries");
        for (double l : losses)
            if (!(l >= 1.0)) throw InvalidParameter("LinkProfile: every loss must be >= 1");
        if (!(noise_variance > 0)) throw InvalidParameter("LinkProfile: noise_variance must be > 0");
        if (!(peak_amplitude > 0)) throw InvalidParameter("LinkProfile: peak_amplitude must be > 0");
        if (!(dscm_power > 0)) throw InvalidParameter("LinkProfile: dscm_power must be > 0");
        if (!(bandwidth_hz > 0)) throw InvalidParameter("LinkProfile: bandwidth_hz must be > 0");
    }
};

// The eight-leaf network used throughout the validation runs. The quoted
// white-noise figure 0.0237 is the total power over the simulated band
// (12x the symbol rate); each subcarrier sees 1/12 of it. See README.
inline LinkProfile reference_profile() {
    LinkProfile p;
    p.subcarrier_count = 8;
    p.losses = {1.0, 1.33, 1.74, 2.32, 3.05, 4.03, 5.25, 6.53};
    p.noise_variance = 0.0237 / 12.0;
    p.peak_amplitude = 2.579;
    p.dscm_power = 1.0;
    p.bandwidth_hz = 8e9;
    return p;
}

}  // namespace dscm

#endif
