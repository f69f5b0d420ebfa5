#include "ratings/alpha_law.hpp"

#include <cmath>
#include <stdexcept>

namespace ratings {

namespace {

double std_normal_pdf(double x) {
    static const double kInvSqrt2Pi = 0.3989422804014327;
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// integral of z * pdf over [c, d] for N(m, s^2)
double partial_mean(double m, double s, double c, double d) {
    const double zc = (c - m) / s;
    const double zd = (d - m) / s;
    return m * (std_normal_cdf(zd) - std_normal_cdf(zc)) -
           s * (std_normal_pdf(zd) - std_normal_pdf(zc));
}

}  // namespace

double truncated_abs_normal_mean(double location, double stddev) {
    const double mass = std_normal_cdf((2.0 - location) / stddev) -
                        std_normal_cdf((-2.0 - location) / stddev);
    if (!(mass > 0.0)) {
        throw std::invalid_argument("truncated_abs_normal_mean: no mass in [-2,2]");
    }
    const double num =
        partial_mean(location, stddev, 0.0, 2.0) - partial_mean(location, stddev, -2.0, 0.0);
    return num / mass;
}

AlphaLaw AlphaLaw::deterministic(std::vector<double> values) {
    if (values.empty()) {
        throw std::invalid_argument("AlphaLaw: empty slope list");
    }
    for (double v : values) {
        if (!(std::abs(v) <= 2.0)) {
            throw std::invalid_argument("AlphaLaw: |alpha| must be <= 2");
        }
    }
    AlphaLaw law;
    law.kind_ = Kind::deterministic;
    law.values_ = std::move(values);
    return law;
}

AlphaLaw AlphaLaw::two_point(double p_plus, double magnitude) {
    if (!(p_plus >= 0.0 && p_plus <= 1.0) || !(magnitude > 0.0 && magnitude <= 2.0)) {
        throw std::invalid_argument("AlphaLaw: invalid two-point parameters");
    }
    AlphaLaw law;
    law.kind_ = Kind::two_point;
    law.p_plus_ = p_plus;
    law.magnitude_ = magnitude;
    return law;
}

AlphaLaw AlphaLaw::gaussian_sign(double p_plus, double location, double variance) {
    if (!(p_plus >= 0.0 && p_plus <= 1.0) || !(variance > 0.0)) {
        throw std::invalid_argument("AlphaLaw: invalid gaussian parameters");
    }
    AlphaLaw law;
    law.kind_ = Kind::gaussian_sign;
    law.p_plus_ = p_plus;
    law.location_ = location;
    law.stddev_ = std::sqrt(variance);

    // Solve truncated E|Z| = 1 by bisection around the requested location.
    double lo = location - 1.0, hi = location + 1.0;
    if (truncated_abs_normal_mean(lo, law.stddev_) > 1.0 ||
        truncated_abs_normal_mean(hi, law.stddev_) < 1.0) {
        throw std::invalid_argument("AlphaLaw: cannot correct location for E|alpha| = 1");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (truncated_abs_normal_mean(mid, law.stddev_) < 1.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    law.corrected_location_ = 0.5 * (lo + hi);
    return law;
}

double AlphaLaw::draw(std::size_t user_index, std::mt19937_64& rng) const {
    switch (kind_) {
        case Kind::deterministic:
            return values_[user_index % values_.size()];
        case Kind::two_point: {
            std::uniform_real_distribution<double> u(0.0, 1.0);
            return u(rng) < p_plus_ ? magnitude_ : -magnitude_;
        }
        case Kind::gaussian_sign: {
            std::uniform_real_distribution<double> u(0.0, 1.0);
            const double sign = u(rng) < p_plus_ ? 1.0 : -1.0;
            std::normal_distribution<double> z(corrected_location_, stddev_);
            double v = z(rng);
            while (!(std::abs(v) <= 2.0)) v = z(rng);
            return sign * v;
        }
    }
    throw std::logic_error("AlphaLaw: unknown kind");
}

}  // namespace ratings
