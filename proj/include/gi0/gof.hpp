#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gi0/model.hpp"

namespace gi0 {

// Goodness-of-fit statistics usable as minimum-distance objectives.
enum class GofStat { Ks, Cm, Ad, AdR, AdL, Ad2R, Ad2L, Ad2 };

const char* gof_name(GofStat s);
GofStat gof_from_name(const std::string& name);  // throws on unknown name

// Model-CDF values of the ascending order statistics.
struct UniformizedSample {
    std::vector<double> u;  // ascending, each in [0, 1]

    // True when every u lies strictly inside (0, 1), as the
    // log/reciprocal statistics require.
    bool open_interval() const;
};

UniformizedSample uniformize(const Sample& sample, const TextureParams& p);

// Value of the chosen statistic. Log/reciprocal statistics return
// +infinity when an endpoint u in {0, 1} occurs, signalling an
// unusable candidate rather than throwing.
double gof_stat(GofStat stat, const UniformizedSample& u);

// Parametric-bootstrap p-value of the AD statistic with MLE refit on
// each synthetic replicate. Replicates whose refit fails are dropped;
// more than half dropped invalidates the p-value.
double ad_pvalue(const Sample& sample, const TextureParams& p, int n_boot,
                 std::uint64_t seed);

}  // namespace gi0
