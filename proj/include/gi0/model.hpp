#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace gi0 {

// Parameters of the single-look G0 intensity law, equivalently a
// Generalized Pareto type II law with location 0, scale gamma and
// tail exponent -alpha.
struct TextureParams {
    double alpha;    // texture, strictly negative
    double gamma;    // scale, strictly positive
    int looks = 1;   // fixed at 1 throughout this artifact

    double beta() const { return -alpha; }
    double gpd_shape() const { return -1.0 / alpha; }
    double gpd_scale() const { return -gamma / alpha; }
    double tail_index() const { return 1.0 - alpha; }

    bool valid() const;
};

// Z = B*C + (1-B)*W with B ~ Bernoulli(epsilon) and W the background law.
struct ContaminationSpec {
    double epsilon;  // in (0, 1)
    double c_value;  // contaminant intensity, positive

    bool valid() const;
};

// A batch of nonnegative intensity observations, kept sorted on demand.
class Sample {
  public:
    Sample() = default;
    explicit Sample(std::vector<double> values);

    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }

    // Ascending copy, computed once and cached.
    const std::vector<double>& sorted() const;

    std::optional<std::uint64_t> seed;
    std::optional<ContaminationSpec> contamination;
    std::vector<std::size_t> contaminated_indices;

  private:
    std::vector<double> values_;
    mutable std::vector<double> sorted_cache_;
};

// Distinguished value for moments that do not exist (alpha >= -r).
double infinite();
bool is_infinite(double v);

double density(double z, const TextureParams& p);
double density_multilook(double z, double alpha, double gamma, int looks);
double cdf(double z, const TextureParams& p);
double quantile(double u, const TextureParams& p);
double moment(double r, const TextureParams& p);
double pwm_population(int s, const TextureParams& p);
double log_gamma(double t);

Sample sample(std::size_t n, const TextureParams& p, std::uint64_t seed);
Sample sample_contaminated(std::size_t n, const TextureParams& p,
                           const ContaminationSpec& spec, std::uint64_t seed);
Sample stylized_sample(std::size_t n, const TextureParams& p);

}  // namespace gi0
