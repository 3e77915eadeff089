#include "offspring.hpp"

#include <algorithm>

namespace esmf::detail {

Offspring generate_offspring(std::span<const double> x, double sigma, const DistributionState& dist,
                             std::size_t lambda, DirectionMode mode, bool augment, const ProblemSpec& p,
                             const DirectionLimits& limits, Rng& rng) {
    Offspring off;
    std::vector<Point> raw = sample_directions(dist, lambda, rng, limits);
    off.provenance.assign(lambda, Provenance::Sampled);

    if (mode == DirectionMode::Projection) {
        off.steps.reserve(lambda);
        for (std::size_t i = 0; i < lambda; ++i) {
            Point d = projected_direction(x, sigma, raw[i], p.lower, p.upper);
            if (d != raw[i]) off.provenance[i] = Provenance::Projected;
            off.steps.push_back(std::move(d));
        }
    } else {
        off.steps = std::move(raw);
        if (augment) {
            const double eps = generator_threshold(sigma, p.lower, p.upper);
            std::vector<Point> gens = tangent_generators_box(x, p.lower, p.upper, eps);
            const std::size_t count = std::min(gens.size(), lambda / 2);
            for (std::size_t k = 0; k < count; ++k) {
                const std::size_t slot = lambda - count + k;
                off.steps[slot] = std::move(gens[k]);
                off.provenance[slot] = Provenance::Generator;
            }
        }
    }

    off.points.reserve(lambda);
    for (const Point& d : off.steps) off.points.push_back(step_point(x, sigma, d));
    return off;
}

DistributionState adapt_distribution(const DistributionState& dist, const Offspring& off,
                                     std::span<const std::size_t> order, const RecombinationWeights& w,
                                     const CmaRates& rates, double sigma_next) {
    std::vector<Point> steps;
    RecombinationWeights used;
    double total = 0.0;
    for (std::size_t r = 0; r < w.size(); ++r) {
        const std::size_t idx = order[r];
        if (off.provenance[idx] == Provenance::Generator) continue;
        steps.push_back(off.steps[idx]);
        used.w.push_back(w.w[r]);
        total += w.w[r];
    }
    if (steps.size() != w.size() && total > 0.0) {
        for (double& wi : used.w) wi /= total;
    }
    return update_distribution(dist, steps, used, rates, sigma_next);
}

Point recombine_ranked(const Offspring& off, std::span<const std::size_t> order, const RecombinationWeights& w) {
    std::vector<Point> parents;
    parents.reserve(w.size());
    for (std::size_t r = 0; r < w.size(); ++r) parents.push_back(off.points[order[r]]);
    return recombine(parents, w);
}

}  // namespace esmf::detail
