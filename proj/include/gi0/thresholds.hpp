#pragma once

#include <cstdint>
#include <string>

#include "gi0/model.hpp"

namespace gi0 {

// Peaks-over-threshold selection rules.
struct ThresholdRule {
    enum class Kind { U0, Quantile, Hill, AdAuto };

    Kind kind = Kind::U0;
    double quantile_level = 0.10;  // Quantile: fraction of smallest values cut
    int hill_window = 0;           // Hill: 0 means max(5, n/20)
    int candidates = 5;            // AdAuto
    double alpha_level = 0.05;     // AdAuto acceptance level
    int n_boot = 99;               // AdAuto bootstrap size
    std::uint64_t seed = 0;        // AdAuto bootstrap seed

    static ThresholdRule u0() { return {}; }
    static ThresholdRule quantile(double p);
    static ThresholdRule hill(int window = 0);
    static ThresholdRule ad_auto(int candidates = 5, double alpha_level = 0.05,
                                 int n_boot = 99, std::uint64_t seed = 0);

    std::string label() const;  // "u0", "u_q10", "u_q20", "u_Hill", "u_AD"
    bool valid() const;
};

struct ThresholdResult {
    double u = 0.0;
    Sample excesses;              // z - u for z > u, ascending
    double retained_fraction = 1.0;
    bool all_rejected = false;    // AdAuto only: no candidate accepted
};

// Excesses over a fixed threshold; u = 0 keeps the whole sample.
ThresholdResult excesses(const Sample& sample, double u);

ThresholdResult select_threshold(const Sample& sample, const ThresholdRule& rule);
ThresholdResult hill_threshold(const Sample& sample, int window = 0);
ThresholdResult ad_auto_threshold(const Sample& sample, int candidates,
                                  double alpha_level, int n_boot, std::uint64_t seed);

// Type-7 empirical quantile (linear interpolation of order statistics).
double empirical_quantile(const Sample& sample, double p);

}  // namespace gi0
