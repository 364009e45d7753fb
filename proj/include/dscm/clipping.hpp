#ifndef DSCM_CLIPPING_HPP
#define DSCM_CLIPPING_HPP

#include <vector>

#include "dscm/link_profile.hpp"

namespace dscm {

// Derived clipping quantities at one clipping ratio.
//
// Conventions (shared with the simulator):
//   eta            = 10^(ratio_db/20), the clip level in units of the
//                    per-dimension rms amplitude sqrt(P/2)
//   clip_amplitude = eta * sqrt(dscm_power / 2), applied to I and Q
//                    independently
//   matching_coefficient beta = peak_amplitude / clip_amplitude
struct ClippingAnalysis {
    double ratio_db = 0.0;
    double eta = 0.0;
    double clip_amplitude = 0.0;
    double alpha = 0.0;              // correlation attenuation of the clipped signal
    double clip_noise_power = 0.0;   // total over both dimensions
    double matching_coefficient = 0.0;
    std::vector<double> esnr_per_subcarrier;  // linear
    double capacity_bps = 0.0;
};

// alpha = 1 - 2 Q(eta); the linear gain a hard limiter applies to a
// unit-variance Gaussian input.
double clipping_attenuation(double eta);

// Total clipping-noise power of a Gaussian signal of power p_dscm hard
// limited at eta standard deviations:
//   2 p { Q(eta) [1 + eta^2 - 2 Q(eta)] - eta/sqrt(2 pi) exp(-eta^2/2) }
double clipping_noise_power(double eta, double p_dscm);

// Post-clipping effective SNR of subcarrier i (0-based) after peak
// matching, loss and white noise:
//   alpha^2 beta^2 P / (beta^2 Pc + N Loss_i sigma_n^2)
double effective_snr(double eta, const LinkProfile& profile, int i);

// Shannon capacity of the whole network at this clip level.
double capacity(double eta, const LinkProfile& profile);

ClippingAnalysis analyze_clipping(double ratio_db, const LinkProfile& profile);

struct OptimalRatio {
    double ratio_db;
    ClippingAnalysis analysis;
};

// Grid search over [search_lo_db, search_hi_db] with the given step,
// refined by golden-section to 0.01 dB. Ties break toward less clipping.
OptimalRatio optimal_clipping_ratio(const LinkProfile& profile, double search_lo_db = 0.0,
                                    double search_hi_db = 16.0, double step_db = 0.1);

inline double db_to_eta(double ratio_db) { return std::pow(10.0, ratio_db / 20.0); }

}  // namespace dscm

#endif
