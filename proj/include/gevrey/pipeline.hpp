#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "diffsum.hpp"
#include "errors.hpp"
#include "newton_polygon.hpp"
#include "operator.hpp"
#include "series_solver.hpp"

namespace gevrey {

struct Classification {
    ExtendedSolution solution;
    std::optional<RamifiedExponent> residual_leading; // nullopt: partial sum is exact
    OperatorOnSeries weighted;
    OperatorOnSeries euler;
    NewtonPolygon polygon;       // from the weighted basis
    NewtonPolygon euler_polygon; // from L0
    std::vector<Rational> candidates;
    std::vector<GrowthEntry> growth; // empty below 20 coefficients
    std::string interpretation;
};

/// Extends the seed, linearizes on the partial sum and reads the Gevrey
/// candidates off the Newton polygon. The polygon is computed twice, from the
/// weighted basis and from L0; the two must agree.
inline Classification classify(const DiffSum& f, const SeedExpansion& seed, std::size_t n) {
    Classification out;
    out.solution = extend(f, seed, n);
    out.residual_leading = residual_order(f, out.solution);

    const PuiseuxSeries& w = out.solution.series;
    out.weighted = variation_on_series(f, w);
    out.euler = build_L0(f, w);

    out.polygon = polygon(support(out.weighted));
    out.euler_polygon = polygon(support(out.euler));
    if (!(out.polygon.vertices == out.euler_polygon.vertices) ||
        out.polygon.positive_slopes != out.euler_polygon.positive_slopes)
        throw std::logic_error("weighted and euler bases give different Newton polygons");

    out.candidates = gevrey_candidates(out.polygon);
    out.interpretation = gevrey_interpretation(out.candidates);
    if (out.solution.steps.size() + 1 >= 20) out.growth = growth_profile(out.solution);
    return out;
}

} // namespace gevrey
