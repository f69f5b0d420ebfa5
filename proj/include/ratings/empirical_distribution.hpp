#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace ratings {

/// Weighted atoms on [0,1] with exact step-function CDF and quantile
/// (generalized inverse) evaluation.
///
/// Invariants after construction:
///   - atom locations strictly increasing (equal locations merged),
///   - weights positive and summing to 1 within 1e-12,
///   - the top cumulative weight is exactly 1.0.
class EmpiricalDistribution {
public:
    struct Atom {
        double location;
        double weight;

        bool operator==(const Atom&) const = default;
    };

    /// Equal-weight distribution of the given sample values.
    /// Throws std::invalid_argument on an empty set or a value outside [0,1].
    static EmpiricalDistribution from_samples(std::span<const double> values);
    static EmpiricalDistribution from_samples(std::initializer_list<double> values);

    /// Distribution from explicit (location, weight) atoms. Atoms are sorted,
    /// equal locations merged, and weights normalized by their total.
    static EmpiricalDistribution from_atoms(std::vector<Atom> atoms);

    /// Right-continuous CDF: total weight of atoms at locations <= x.
    double cdf(double x) const;

    /// Left-continuous generalized inverse, inf{x : F(x) >= p}.
    /// Throws std::domain_error unless 0 < p <= 1.
    double quantile(double p) const;

    /// quantile() without the domain check; p <= 0 maps to the bottom atom.
    /// Used by transport maps where p comes from a CDF evaluation.
    double quantile_clamped(double p) const;

    double mean() const;
    double variance() const;

    std::size_t atom_count() const { return atoms_.size(); }
    std::span<const Atom> atoms() const { return atoms_; }

    /// Cumulative weights; breakpoint levels of the quantile step function.
    std::span<const double> cum_weights() const { return cumw_; }

    double min_location() const { return atoms_.front().location; }
    double max_location() const { return atoms_.back().location; }

    /// Image measure under f: atoms relocated to f(location), weights kept,
    /// merged at collisions. f must map every atom into [0,1].
    EmpiricalDistribution pushforward(const std::function<double(double)>& f) const;

    bool operator==(const EmpiricalDistribution&) const = default;

private:
    EmpiricalDistribution() = default;
    friend class QuantileGrid;

    std::vector<Atom> atoms_;
    std::vector<double> cumw_;
};

/// Averaged quantile function sampled at probability levels, before its atoms
/// are materialized. Levels lie in (0,1] and end at exactly 1; values are
/// nondecreasing.
class QuantileGrid {
public:
    QuantileGrid(std::vector<double> levels, std::vector<double> values);

    std::span<const double> levels() const { return levels_; }
    std::span<const double> values() const { return values_; }

    /// Atomize: atom j at values[j] with weight levels[j] - levels[j-1],
    /// adjacent equal values merged.
    EmpiricalDistribution materialize() const;

private:
    std::vector<double> levels_;
    std::vector<double> values_;
};

/// Wasserstein-2 distance, sqrt of the exact integral of the squared quantile
/// difference over the merged breakpoint partition.
double w2_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b);

/// Monotone (optimal) transport map F_target^-1 o F_source evaluated at x.
double transport_map(const EmpiricalDistribution& source,
                     const EmpiricalDistribution& target, double x);

/// sup_p |F_a^-1(p) - F_b^-1(p)| over (0,1], exact for step quantiles.
double sup_quantile_distance(const EmpiricalDistribution& a,
                             const EmpiricalDistribution& b);

/// sup_x |F_a(x) - F_b(x)|, exact for step CDFs.
double sup_cdf_distance(const EmpiricalDistribution& a,
                        const EmpiricalDistribution& b);

}  // namespace ratings
