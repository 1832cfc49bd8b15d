#include "gi0/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gi0/rng.hpp"

namespace gi0 {

namespace {

void require_params(const TextureParams& p) {
    if (!p.valid()) throw std::invalid_argument("TextureParams: need alpha < 0, gamma > 0");
}

void require_finite_nonneg(double z, const char* what) {
    if (!std::isfinite(z) || z < 0.0) {
        throw std::invalid_argument(std::string(what) + ": expected finite nonnegative value");
    }
}

// Per-draw channels under one sample seed.
enum : std::uint64_t { kValueChannel = 0, kBernoulliChannel = 1 };

}  // namespace

bool TextureParams::valid() const {
    return std::isfinite(alpha) && std::isfinite(gamma) && alpha < 0.0 && gamma > 0.0 &&
           looks >= 1;
}

bool ContaminationSpec::valid() const {
    return std::isfinite(epsilon) && epsilon > 0.0 && epsilon < 1.0 &&
           std::isfinite(c_value) && c_value > 0.0;
}

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
    for (double v : values_) require_finite_nonneg(v, "Sample");
}

const std::vector<double>& Sample::sorted() const {
    if (sorted_cache_.size() != values_.size()) {
        sorted_cache_ = values_;
        std::sort(sorted_cache_.begin(), sorted_cache_.end());
    }
    return sorted_cache_;
}

double infinite() { return std::numeric_limits<double>::infinity(); }
bool is_infinite(double v) { return std::isinf(v); }

double density(double z, const TextureParams& p) {
    require_params(p);
    require_finite_nonneg(z, "density");
    return (-p.alpha / p.gamma) * std::pow(z / p.gamma + 1.0, p.alpha - 1.0);
}

double density_multilook(double z, double alpha, double gamma, int looks) {
    TextureParams p{alpha, gamma, looks};
    if (looks < 1) throw std::invalid_argument("density_multilook: looks must be >= 1");
    require_params(p);
    require_finite_nonneg(z, "density_multilook");
    const double L = static_cast<double>(looks);
    if (looks == 1) return density(z, p);
    if (z == 0.0) return 0.0;  // z^(L-1) factor
    const double log_num = L * std::log(L) + log_gamma(L - alpha) + (L - 1.0) * std::log(z);
    const double log_den = alpha * std::log(gamma) + log_gamma(-alpha) + log_gamma(L) +
                           (L - alpha) * std::log(gamma + z * L);
    return std::exp(log_num - log_den);
}

double cdf(double z, const TextureParams& p) {
    require_params(p);
    require_finite_nonneg(z, "cdf");
    return -std::expm1(p.alpha * std::log1p(z / p.gamma));
}

double quantile(double u, const TextureParams& p) {
    require_params(p);
    if (!(u >= 0.0 && u < 1.0)) throw std::invalid_argument("quantile: u must lie in [0, 1)");
    return p.gamma * std::expm1(std::log1p(-u) / p.alpha);
}

double moment(double r, const TextureParams& p) {
    require_params(p);
    if (!(r > 0.0)) throw std::invalid_argument("moment: order must be positive");
    if (p.alpha >= -r) return infinite();
    return std::exp(r * std::log(p.gamma) + log_gamma(-p.alpha - r) + log_gamma(1.0 + r) -
                    log_gamma(-p.alpha));
}

double pwm_population(int s, const TextureParams& p) {
    require_params(p);
    if (s < 0) throw std::invalid_argument("pwm_population: order must be nonnegative");
    const double k = static_cast<double>(s) + 1.0;
    if (!(p.alpha * k < -1.0)) return infinite();
    return p.gamma / (k * (-1.0 - p.alpha * k));
}

double log_gamma(double t) {
    if (!(t > 0.0)) throw std::invalid_argument("log_gamma: argument must be positive");
    return std::lgamma(t);
}

Sample sample(std::size_t n, const TextureParams& p, std::uint64_t seed) {
    require_params(p);
    if (n == 0) throw std::invalid_argument("sample: n must be positive");
    const UniformStream stream = make_stream(seed).child(kValueChannel);
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = quantile(stream.at(i), p);
    Sample s(std::move(z));
    s.seed = seed;
    return s;
}

Sample sample_contaminated(std::size_t n, const TextureParams& p,
                           const ContaminationSpec& spec, std::uint64_t seed) {
    require_params(p);
    if (n == 0) throw std::invalid_argument("sample_contaminated: n must be positive");
    if (!spec.valid()) throw std::invalid_argument("sample_contaminated: invalid spec");
    const UniformStream values = make_stream(seed).child(kValueChannel);
    const UniformStream coins = make_stream(seed).child(kBernoulliChannel);
    std::vector<double> z(n);
    std::vector<std::size_t> hit;
    for (std::size_t i = 0; i < n; ++i) {
        if (coins.at(i) < spec.epsilon) {
            z[i] = spec.c_value;
            hit.push_back(i);
        } else {
            z[i] = quantile(values.at(i), p);
        }
    }
    Sample s(std::move(z));
    s.seed = seed;
    s.contamination = spec;
    s.contaminated_indices = std::move(hit);
    return s;
}

Sample stylized_sample(std::size_t n, const TextureParams& p) {
    require_params(p);
    if (n == 0) throw std::invalid_argument("stylized_sample: n must be positive");
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) {
        z[i] = quantile(static_cast<double>(i + 1) / static_cast<double>(n + 1), p);
    }
    return Sample(std::move(z));
}

}  // namespace gi0
