#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace ratings {

/// Law of the slope alpha in the affine scale family
/// phi(x) = alpha * (x - 1/2) + 1/2. Slopes are kept within [-2, 2] so that
/// ratings of items in [1/4, 3/4] stay inside [0,1].
class AlphaLaw {
public:
    enum class Kind { deterministic, two_point, gaussian_sign };

    /// Fixed slope list, cycled over users.
    static AlphaLaw deterministic(std::vector<double> values);

    /// alpha = +magnitude with probability p_plus, else -magnitude.
    static AlphaLaw two_point(double p_plus, double magnitude = 1.0);

    /// alpha = eps * Z with P(eps = +1) = p_plus and Z normal, rejected until
    /// |Z| <= 2. The location is shifted so the truncated law keeps
    /// E|alpha| = 1; the shift is exposed for logging.
    static AlphaLaw gaussian_sign(double p_plus, double location, double variance);

    Kind kind() const { return kind_; }
    double draw(std::size_t user_index, std::mt19937_64& rng) const;

    /// Location actually sampled from (gaussian_sign only).
    double corrected_location() const { return corrected_location_; }
    /// corrected_location() - requested location.
    double location_correction() const { return corrected_location_ - location_; }

    double p_plus() const { return p_plus_; }
    const std::vector<double>& values() const { return values_; }

private:
    AlphaLaw() = default;

    Kind kind_ = Kind::deterministic;
    std::vector<double> values_;
    double p_plus_ = 1.0;
    double magnitude_ = 1.0;
    double location_ = 1.0;
    double corrected_location_ = 1.0;
    double stddev_ = 0.25;
};

/// Mean of |Z| for Z ~ N(location, stddev^2) conditioned on |Z| <= 2.
double truncated_abs_normal_mean(double location, double stddev);

}  // namespace ratings
