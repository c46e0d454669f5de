#include "pdot/measures.hpp"

#include <cmath>
#include <string>

namespace pdot {

namespace {

void require_finite(const std::vector<double>& coords) {
    for (double c : coords) {
        if (!std::isfinite(c))
            throw DimensionMismatch("scenario coordinates must be finite");
    }
}

/// Neumaier compensated summation.
double stable_sum(const std::vector<double>& xs) {
    double s = 0.0;
    double comp = 0.0;
    for (double x : xs) {
        double t = s + x;
        if (std::abs(s) >= std::abs(x))
            comp += (s - t) + x;
        else
            comp += (x - t) + s;
        s = t;
    }
    return s + comp;
}

} // namespace

Scenario::Scenario(std::vector<double> c) : coords(std::move(c)) {
    if (coords.empty())
        throw DimensionMismatch("scenario needs at least one coordinate");
    require_finite(coords);
}

Scenario::Scenario(std::initializer_list<double> c) : Scenario(std::vector<double>(c)) {}

double norm2(const Scenario& a, const Scenario& b) {
    if (a.dim() != b.dim())
        throw DimensionMismatch("norm2: scenarios of dim " + std::to_string(a.dim()) +
                                " and " + std::to_string(b.dim()));
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

double norm1(const Scenario& a, const Scenario& b) {
    if (a.dim() != b.dim())
        throw DimensionMismatch("norm1: scenarios of dim " + std::to_string(a.dim()) +
                                " and " + std::to_string(b.dim()));
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        s += std::abs(a[i] - b[i]);
    return s;
}

std::size_t DiscreteDistribution::find_atom(const Scenario& s) const {
    for (std::size_t i = 0; i < atoms_.size(); ++i)
        if (atoms_[i] == s)
            return i;
    return atoms_.size();
}

DiscreteDistribution make_distribution(std::vector<Scenario> atoms,
                                       std::vector<double> weights) {
    if (atoms.empty())
        throw DimensionMismatch("distribution needs at least one atom");
    if (atoms.size() != weights.size())
        throw DimensionMismatch("got " + std::to_string(atoms.size()) + " atoms but " +
                                std::to_string(weights.size()) + " weights");

    std::size_t d = atoms.front().dim();
    for (const Scenario& a : atoms) {
        if (a.dim() != d)
            throw DimensionMismatch("atoms mix dim " + std::to_string(d) + " and dim " +
                                    std::to_string(a.dim()));
    }
    for (double w : weights) {
        if (!(w >= 0.0))
            throw NegativeWeight("weight " + std::to_string(w));
    }
    for (std::size_t i = 0; i < atoms.size(); ++i)
        for (std::size_t j = i + 1; j < atoms.size(); ++j)
            if (atoms[i] == atoms[j])
                throw DuplicateAtom("atoms " + std::to_string(i) + " and " +
                                    std::to_string(j) + " coincide");

    double s = stable_sum(weights);
    if (std::abs(s - 1.0) > 1e-9)
        throw WeightSumOutOfRange("weights sum to " + std::to_string(s));
    if (s != 1.0) {
        for (double& w : weights)
            w /= s;
        // A final compensated correction on the largest weight pins the sum
        // to 1 within 1e-12 even after the division rounds.
        double resid = stable_sum(weights) - 1.0;
        if (resid != 0.0) {
            std::size_t imax = 0;
            for (std::size_t i = 1; i < weights.size(); ++i)
                if (weights[i] > weights[imax])
                    imax = i;
            weights[imax] -= resid;
        }
    }

    DiscreteDistribution dist;
    dist.atoms_ = std::move(atoms);
    dist.weights_ = std::move(weights);
    return dist;
}

DiscreteDistribution empirical_from_samples(const std::vector<Scenario>& points) {
    if (points.empty())
        throw DimensionMismatch("empirical distribution needs at least one sample");

    std::vector<Scenario> atoms;
    std::vector<double> counts;
    for (const Scenario& p : points) {
        if (p.dim() != points.front().dim())
            throw DimensionMismatch("samples mix dimensions");
        bool found = false;
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            if (atoms[i] == p) {
                counts[i] += 1.0;
                found = true;
                break;
            }
        }
        if (!found) {
            atoms.push_back(p);
            counts.push_back(1.0);
        }
    }
    double n = static_cast<double>(points.size());
    for (double& c : counts)
        c /= n;
    return make_distribution(std::move(atoms), std::move(counts));
}

} // namespace pdot
