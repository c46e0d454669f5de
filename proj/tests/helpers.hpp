#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pdot/measures.hpp"

namespace pdot::testing {

/// Seeded RNG for reproducible property tests. Raw engine draws only;
/// distribution shaping is done here so results do not depend on the
/// standard library's unspecified distribution algorithms.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform(double lo, double hi) {
        double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }

    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

  private:
    std::mt19937_64 eng_;
};

/// Random distribution with n distinct atoms in [lo,hi]^dim and strictly
/// positive weights.
inline DiscreteDistribution random_distribution(Rng& rng, std::size_t n, std::size_t dim,
                                                double lo = -10.0, double hi = 10.0) {
    std::vector<Scenario> atoms;
    while (atoms.size() < n) {
        std::vector<double> c(dim);
        for (double& x : c)
            x = rng.uniform(lo, hi);
        Scenario s(c);
        bool dup = false;
        for (const Scenario& a : atoms)
            if (a == s)
                dup = true;
        if (!dup)
            atoms.push_back(s);
    }
    std::vector<double> w(n);
    double total = 0.0;
    for (double& x : w) {
        x = rng.uniform(0.05, 1.0);
        total += x;
    }
    for (double& x : w)
        x /= total;
    return make_distribution(atoms, w);
}

} // namespace pdot::testing
