#include "dscm/clipping.hpp"

#include <cmath>

namespace dscm {

double clipping_attenuation(double eta) {
    if (eta < 0) throw InvalidParameter("clipping_attenuation: eta must be >= 0");
    return 1.0 - 2.0 * q_function(eta);
}

double clipping_noise_power(double eta, double p_dscm) {
    if (eta < 0) throw InvalidParameter("clipping_noise_power: eta must be >= 0");
    if (!(p_dscm > 0)) throw InvalidParameter("clipping_noise_power: p_dscm must be > 0");
    static const double inv_sqrt_2pi = 0.3989422804014326779;
    double q = q_function(eta);
    double v = q * (1.0 + eta * eta - 2.0 * q) - eta * inv_sqrt_2pi * std::exp(-eta * eta / 2.0);
    // the closed form can go a few ulps negative in the no-clipping limit
    return std::max(0.0, 2.0 * p_dscm * v);
}

double effective_snr(double eta, const LinkProfile& profile, int i) {
    profile.validate();
    if (i < 0 || i >= profile.subcarrier_count)
        throw InvalidParameter("effective_snr: subcarrier index out of range");
    if (!(eta > 0)) throw InvalidParameter("effective_snr: eta must be > 0");
    const double p = profile.dscm_power;
    const double a = clipping_attenuation(eta);
    const double pc = clipping_noise_power(eta, p);
    const double clip_amp = eta * std::sqrt(p / 2.0);
    const double beta = profile.peak_amplitude / clip_amp;
    const double b2 = beta * beta;
    return a * a * b2 * p /
           (b2 * pc + profile.subcarrier_count * profile.losses[i] * profile.noise_variance);
}

double capacity(double eta, const LinkProfile& profile) {
    profile.validate();
    double bits = 0.0;
    for (int i = 0; i < profile.subcarrier_count; ++i)
        bits += std::log2(1.0 + effective_snr(eta, profile, i));
    return profile.bandwidth_hz * bits;
}

ClippingAnalysis analyze_clipping(double ratio_db, const LinkProfile& profile) {
    profile.validate();
    ClippingAnalysis out;
    out.ratio_db = ratio_db;
    out.eta = db_to_eta(ratio_db);
    out.clip_amplitude = out.eta * std::sqrt(profile.dscm_power / 2.0);
    out.alpha = clipping_attenuation(out.eta);
    out.clip_noise_power = clipping_noise_power(out.eta, profile.dscm_power);
    out.matching_coefficient = profile.peak_amplitude / out.clip_amplitude;
    out.esnr_per_subcarrier.resize(profile.subcarrier_count);
    for (int i = 0; i < profile.subcarrier_count; ++i)
        out.esnr_per_subcarrier[i] = effective_snr(out.eta, profile, i);
    out.capacity_bps = capacity(out.eta, profile);
    return out;
}

OptimalRatio optimal_clipping_ratio(const LinkProfile& profile, double search_lo_db,
                                    double search_hi_db, double step_db) {
    profile.validate();
    if (!(search_lo_db < search_hi_db) || !(step_db > 0))
        throw InvalidParameter("optimal_clipping_ratio: bad search window");

    // coarse grid; ties resolve toward the larger ratio (less clipping)
    double best_db = search_lo_db;
    double best_cap = -1.0;
    for (double db = search_lo_db; db <= search_hi_db + 1e-12; db += step_db) {
        double c = capacity(db_to_eta(db), profile);
        if (c >= best_cap) {
            best_cap = c;
            best_db = db;
        }
    }

    // golden-section refinement on the bracketing interval
    double lo = std::max(search_lo_db, best_db - step_db);
    double hi = std::min(search_hi_db, best_db + step_db);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo);
    double x2 = lo + gr * (hi - lo);
    double f1 = capacity(db_to_eta(x1), profile);
    double f2 = capacity(db_to_eta(x2), profile);
    while (hi - lo > 0.01) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = capacity(db_to_eta(x2), profile);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = capacity(db_to_eta(x1), profile);
        }
    }
    double refined = 0.5 * (lo + hi);
    if (capacity(db_to_eta(refined), profile) < best_cap) refined = best_db;
    return {refined, analyze_clipping(refined, profile)};
}

}  // namespace dscm
