#pragma once

#include <cstddef>
#include <vector>

#include "pdot/errors.hpp"

namespace pdot {

/**
 * @brief A single scenario xi in Xi, a point in R^d.
 *
 * Coordinates must be finite. Identity is exact coordinate equality;
 * near-duplicates are the caller's responsibility.
 */
struct Scenario {
    std::vector<double> coords;

    Scenario() = default;
    explicit Scenario(std::vector<double> c);
    Scenario(std::initializer_list<double> c);

    std::size_t dim() const { return coords.size(); }
    double operator[](std::size_t i) const { return coords[i]; }

    bool operator==(const Scenario& other) const { return coords == other.coords; }
    bool operator!=(const Scenario& other) const { return !(*this == other); }
};

/// Euclidean norm of the coordinate difference.
double norm2(const Scenario& a, const Scenario& b);

/// l1 norm of the coordinate difference.
double norm1(const Scenario& a, const Scenario& b);

/**
 * @brief Finitely supported probability distribution on Xi.
 *
 * Atoms are kept in insertion order and all downstream matrices index
 * atoms by this order. Immutable after construction.
 */
class DiscreteDistribution {
  public:
    std::size_t size() const { return atoms_.size(); }
    std::size_t dim() const { return atoms_.front().dim(); }

    const std::vector<Scenario>& atoms() const { return atoms_; }
    const std::vector<double>& weights() const { return weights_; }

    const Scenario& atom(std::size_t i) const { return atoms_[i]; }
    double weight(std::size_t i) const { return weights_[i]; }

    /// Index of an atom with exactly these coordinates, or size() if absent.
    std::size_t find_atom(const Scenario& s) const;

    friend DiscreteDistribution make_distribution(std::vector<Scenario> atoms,
                                                  std::vector<double> weights);

  private:
    DiscreteDistribution() = default;
    std::vector<Scenario> atoms_;
    std::vector<double> weights_;
};

/**
 * @brief Validate and build a distribution.
 *
 * Weights must be >= 0 and sum to 1 within 1e-9; the sum is then
 * renormalized so it lands within 1e-12 of 1. Atoms must share one dim
 * and be pairwise distinct under exact coordinate equality.
 */
DiscreteDistribution make_distribution(std::vector<Scenario> atoms,
                                       std::vector<double> weights);

/**
 * @brief Empirical distribution of a sample: weight of an atom is its
 * multiplicity divided by the sample size. Atom order follows first
 * occurrence, so the result is permutation-invariant as a map.
 */
DiscreteDistribution empirical_from_samples(const std::vector<Scenario>& points);

} // namespace pdot
