#include "ratings/empirical_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ratings {

namespace {

constexpr double kWeightTolerance = 1e-12;

}  // namespace

EmpiricalDistribution EmpiricalDistribution::from_samples(std::span<const double> values) {
    if (values.empty()) {
        throw std::invalid_argument("from_samples: empty sample set");
    }
    std::vector<double> sorted(values.begin(), values.end());
    for (double v : sorted) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::invalid_argument("from_samples: value outside [0,1]");
        }
    }
    std::sort(sorted.begin(), sorted.end());

    EmpiricalDistribution d;
    const double total = static_cast<double>(sorted.size());
    std::size_t i = 0;
    std::size_t seen = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        seen += j - i;
        // cumw as count/total keeps levels exactly rational; top is exactly 1.
        const double cum = static_cast<double>(seen) / total;
        const double prev = d.cumw_.empty() ? 0.0 : d.cumw_.back();
        d.atoms_.push_back({sorted[i], cum - prev});
        d.cumw_.push_back(cum);
        i = j;
    }
    return d;
}

EmpiricalDistribution EmpiricalDistribution::from_samples(std::initializer_list<double> values) {
    return from_samples(std::span<const double>(values.begin(), values.size()));
}

EmpiricalDistribution EmpiricalDistribution::from_atoms(std::vector<Atom> atoms) {
    if (atoms.empty()) {
        throw std::invalid_argument("from_atoms: no atoms");
    }
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.location < b.location; });
    double total = 0.0;
    for (const Atom& a : atoms) {
        if (!(a.weight > 0.0)) {
            throw std::invalid_argument("from_atoms: nonpositive weight");
        }
        total += a.weight;
    }
    if (std::abs(total - 1.0) > kWeightTolerance) {
        throw std::invalid_argument("from_atoms: weights do not sum to 1");
    }

    EmpiricalDistribution d;
    double cum = 0.0;
    std::size_t i = 0;
    while (i < atoms.size()) {
        std::size_t j = i;
        double w = 0.0;
        while (j < atoms.size() && atoms[j].location == atoms[i].location) {
            w += atoms[j].weight;
            ++j;
        }
        cum += w;
        d.atoms_.push_back({atoms[i].location, w});
        d.cumw_.push_back(cum / total);
        i = j;
    }
    d.cumw_.back() = 1.0;
    for (std::size_t k = 0; k < d.atoms_.size(); ++k) {
        d.atoms_[k].weight = d.cumw_[k] - (k == 0 ? 0.0 : d.cumw_[k - 1]);
    }
    return d;
}

double EmpiricalDistribution::cdf(double x) const {
    // First atom strictly above x; weight of everything at or below.
    auto it = std::upper_bound(atoms_.begin(), atoms_.end(), x,
                               [](double v, const Atom& a) { return v < a.location; });
    if (it == atoms_.begin()) return 0.0;
    return cumw_[static_cast<std::size_t>(it - atoms_.begin()) - 1];
}

double EmpiricalDistribution::quantile(double p) const {
    if (!(p > 0.0 && p <= 1.0)) {
        throw std::domain_error("quantile: p must lie in (0,1]");
    }
    return quantile_clamped(p);
}

double EmpiricalDistribution::quantile_clamped(double p) const {
    auto it = std::lower_bound(cumw_.begin(), cumw_.end(), p);
    if (it == cumw_.end()) return atoms_.back().location;  // p above top level (FP noise)
    return atoms_[static_cast<std::size_t>(it - cumw_.begin())].location;
}

double EmpiricalDistribution::mean() const {
    double m = 0.0;
    for (const Atom& a : atoms_) m += a.weight * a.location;
    return m;
}

double EmpiricalDistribution::variance() const {
    const double m = mean();
    double v = 0.0;
    for (const Atom& a : atoms_) {
        const double d = a.location - m;
        v += a.weight * d * d;
    }
    return v;
}

EmpiricalDistribution EmpiricalDistribution::pushforward(
    const std::function<double(double)>& f) const {
    std::vector<Atom> moved;
    moved.reserve(atoms_.size());
    for (const Atom& a : atoms_) {
        const double y = f(a.location);
        if (!(y >= 0.0 && y <= 1.0)) {
            throw std::invalid_argument("pushforward: image outside [0,1]");
        }
        moved.push_back({y, a.weight});
    }
    return from_atoms(std::move(moved));
}

QuantileGrid::QuantileGrid(std::vector<double> levels, std::vector<double> values)
    : levels_(std::move(levels)), values_(std::move(values)) {
    if (levels_.empty() || levels_.size() != values_.size()) {
        throw std::invalid_argument("QuantileGrid: level/value size mismatch");
    }
    double prev_level = 0.0;
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        if (!(levels_[i] > prev_level && levels_[i] <= 1.0)) {
            throw std::invalid_argument("QuantileGrid: levels must increase within (0,1]");
        }
        if (i > 0 && values_[i] < values_[i - 1]) {
            throw std::invalid_argument("QuantileGrid: values must be nondecreasing");
        }
        prev_level = levels_[i];
    }
    if (levels_.back() != 1.0) {
        throw std::invalid_argument("QuantileGrid: top level must be 1");
    }
}

EmpiricalDistribution QuantileGrid::materialize() const {
    EmpiricalDistribution d;
    double prev = 0.0;
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        const double w = levels_[i] - prev;
        prev = levels_[i];
        if (!d.atoms_.empty() && d.atoms_.back().location == values_[i]) {
            d.atoms_.back().weight += w;
            d.cumw_.back() = levels_[i];
        } else {
            d.atoms_.push_back({values_[i], w});
            d.cumw_.push_back(levels_[i]);
        }
    }
    return d;
}

double w2_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
    const auto aw = a.cum_weights();
    const auto bw = b.cum_weights();
    const auto aa = a.atoms();
    const auto ba = b.atoms();
    std::size_t ia = 0, ib = 0;
    double prev = 0.0;
    double acc = 0.0;
    while (ia < aw.size() && ib < bw.size()) {
        const double level = std::min(aw[ia], bw[ib]);
        const double d = aa[ia].location - ba[ib].location;
        acc += (level - prev) * d * d;
        prev = level;
        if (aw[ia] == level) ++ia;
        if (bw[ib] == level) ++ib;
    }
    return std::sqrt(std::max(acc, 0.0));
}

double transport_map(const EmpiricalDistribution& source,
                     const EmpiricalDistribution& target, double x) {
    const double p = source.cdf(x);
    if (p <= 0.0) return target.min_location();  // below the source support
    return target.quantile_clamped(p);
}

double sup_quantile_distance(const EmpiricalDistribution& a,
                             const EmpiricalDistribution& b) {
    const auto aw = a.cum_weights();
    const auto bw = b.cum_weights();
    const auto aa = a.atoms();
    const auto ba = b.atoms();
    std::size_t ia = 0, ib = 0;
    double sup = 0.0;
    while (ia < aw.size() && ib < bw.size()) {
        sup = std::max(sup, std::abs(aa[ia].location - ba[ib].location));
        const double level = std::min(aw[ia], bw[ib]);
        if (aw[ia] == level) ++ia;
        if (bw[ib] == level) ++ib;
    }
    return sup;
}

double sup_cdf_distance(const EmpiricalDistribution& a,
                        const EmpiricalDistribution& b) {
    // Both CDFs are right-continuous steps; the sup over x is attained at an
    // atom location of one of them, or just below one (previous levels).
    const auto aa = a.atoms();
    const auto ba = b.atoms();
    std::size_t ia = 0, ib = 0;
    double fa = 0.0, fb = 0.0;
    double sup = 0.0;
    while (ia < aa.size() || ib < ba.size()) {
        double x;
        if (ib == ba.size() || (ia < aa.size() && aa[ia].location < ba[ib].location)) {
            x = aa[ia].location;
        } else {
            x = ba[ib].location;
        }
        sup = std::max(sup, std::abs(fa - fb));  // value just below x
        if (ia < aa.size() && aa[ia].location == x) fa = a.cum_weights()[ia++];
        if (ib < ba.size() && ba[ib].location == x) fb = b.cum_weights()[ib++];
        sup = std::max(sup, std::abs(fa - fb));  // value at x
    }
    return sup;
}

}  // namespace ratings
