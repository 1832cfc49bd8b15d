#pragma once

#include <string>

#include "gi0/gof.hpp"
#include "gi0/model.hpp"

namespace gi0 {

enum class Method { Mle, Mple, Mom, Pwm, Lme, Mdpd, Mgf };

const char* method_name(Method m);
// Accepts "MLE", "MPLE", "MOM", "PWM", "LME", "MDPD", "MGF:<stat>".
Method method_from_name(const std::string& name);

struct Interval {
    double lo;
    double hi;

    bool contains(double x) const { return x >= lo && x <= hi; }
    double clamp(double x) const { return x < lo ? lo : (x > hi ? hi : x); }
};

struct EstimatorConfig {
    Method method = Method::Mle;
    Interval alpha_box{-20.0, -0.1};
    Interval gamma_box{1e-6, 1e6};
    double tol = 1e-8;
    int max_iter = 500;
    double mdpd_omega = 0.1;   // efficiency/robustness trade-off
    double mple_lambda = 1.0;  // penalty weight
    double lme_r = -0.5;       // moment order, in (-1, 0)
    GofStat mgf_stat = GofStat::AdR;

    bool valid() const;
    std::string label() const;  // e.g. "MDPD", "MGF:ADR"
};

EstimatorConfig config_for(Method m);
EstimatorConfig config_for(const std::string& name);

enum class FitStatus { Converged, Diverged, BoundaryHit, InsufficientSample };
const char* status_name(FitStatus s);

struct FitResult {
    TextureParams params{-1.0, 1.0};
    FitStatus status = FitStatus::Diverged;
    double objective = 0.0;
    int iterations = 0;
    double wall_time = 0.0;  // seconds
};

// Intensity-domain log-likelihood of the single-look law.
double loglik(const Sample& sample, const TextureParams& p);

// Minimized objective of an optimizer-backed method (negative
// log-likelihood for MLE/MPLE); used by grid-search cross-checks.
double objective_value(const EstimatorConfig& cfg, const Sample& sample,
                       const TextureParams& p);

FitResult fit_mle(const Sample& sample, const EstimatorConfig& cfg);
FitResult fit_mple(const Sample& sample, const EstimatorConfig& cfg);
FitResult fit_mom(const Sample& sample, const EstimatorConfig& cfg);
FitResult fit_pwm(const Sample& sample, const EstimatorConfig& cfg);
FitResult fit_lme(const Sample& sample, const EstimatorConfig& cfg);
FitResult fit_mdpd(const Sample& sample, const EstimatorConfig& cfg);
FitResult fit_mgf(const Sample& sample, const EstimatorConfig& cfg);

// Dispatcher; stamps wall_time and never throws on numerical failure.
FitResult fit(const Sample& sample, const EstimatorConfig& cfg);

// Closed forms on population-level inputs, used both by the sample
// estimators and by closure tests.
struct MomentEstimate {
    double alpha;
    double gamma;
    bool valid;
};
MomentEstimate mom_from_moments(double mean, double variance);
MomentEstimate pwm_from_moments(double mean, double theta);

}  // namespace gi0
