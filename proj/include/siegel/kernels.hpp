#pragma once

// Data-parallel kernels. Each has a serial reference with identical results;
// the OpenMP variants write into per-index slots and reduce serially, so the
// output never depends on the schedule.

#include <cstddef>
#include <span>
#include <vector>

#include "siegel/reduction.hpp"
#include "siegel/symplectic.hpp"

namespace siegel::kernels {

struct WordMinimum {
  double distance = 0.0;
  std::size_t index = 0;  // first minimizer in word order
};

/// min_w distance(w . p, q) over the given words.
WordMinimum min_distance_over_words_serial(std::span<const SymplecticMatrix> words, const SiegelPoint& p,
                                           const SiegelPoint& q);
WordMinimum min_distance_over_words_parallel(std::span<const SymplecticMatrix> words, const SiegelPoint& p,
                                             const SiegelPoint& q);

std::vector<ReductionResult> batch_reduce_serial(std::span<const SiegelPoint> points, const SiegelSetParams& params);
std::vector<ReductionResult> batch_reduce_parallel(std::span<const SiegelPoint> points,
                                                   const SiegelSetParams& params);

/// Pairwise distance(points[i], targets[i]).
std::vector<double> batch_distance_serial(std::span<const SiegelPoint> points, std::span<const SiegelPoint> targets);
std::vector<double> batch_distance_parallel(std::span<const SiegelPoint> points,
                                            std::span<const SiegelPoint> targets);

int max_threads();

}  // namespace siegel::kernels
