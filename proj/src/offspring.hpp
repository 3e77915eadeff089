#pragma once

// Step 1 and Step 4 shared by the merit solver and the unrelaxable-only ES.

#include <span>
#include <vector>

#include "esmf/es_engine.hpp"
#include "esmf/solver.hpp"

namespace esmf::detail {

struct Offspring {
    std::vector<Point> points;
    std::vector<Point> steps;  // (y_i - x_k) / sigma_k
    std::vector<Provenance> provenance;
};

// Draws lambda directions and turns them into offspring around x. In
// barrier mode with augmentation, tangent-cone generators of the
// eps-active bounds replace the trailing sampled directions (at most
// lambda / 2 of them).
Offspring generate_offspring(std::span<const double> x, double sigma, const DistributionState& dist,
                             std::size_t lambda, DirectionMode mode, bool augment, const ProblemSpec& p,
                             const DirectionLimits& limits, Rng& rng);

// CMA update from the first mu entries of `order`. Generator steps are left
// out and the remaining weights renormalised.
DistributionState adapt_distribution(const DistributionState& dist, const Offspring& off,
                                     std::span<const std::size_t> order, const RecombinationWeights& w,
                                     const CmaRates& rates, double sigma_next);

Point recombine_ranked(const Offspring& off, std::span<const std::size_t> order, const RecombinationWeights& w);

}  // namespace esmf::detail
