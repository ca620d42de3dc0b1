#include "siegel/kernels.hpp"

#include <omp.h>

#include <optional>

#include "siegel/metric.hpp"
#include "siegel/parallel.hpp"

namespace siegel::kernels {

namespace {

WordMinimum first_minimum(const std::vector<double>& values) {
  WordMinimum best{values.empty() ? 0.0 : values[0], 0};
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < best.distance) best = {values[i], i};
  }
  return best;
}

void check_pairs(std::span<const SiegelPoint> points, std::span<const SiegelPoint> targets) {
  if (points.size() != targets.size()) throw DimensionMismatch("batch_distance: length mismatch");
}

}  // namespace

WordMinimum min_distance_over_words_serial(std::span<const SymplecticMatrix> words, const SiegelPoint& p,
                                           const SiegelPoint& q) {
  std::vector<double> values(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) values[i] = distance(mobius_act(words[i], p), q);
  return first_minimum(values);
}

WordMinimum min_distance_over_words_parallel(std::span<const SymplecticMatrix> words, const SiegelPoint& p,
                                             const SiegelPoint& q) {
  std::vector<double> values(words.size());
  parallel_for_indexed(words.size(), [&](std::size_t i) { values[i] = distance(mobius_act(words[i], p), q); });
  return first_minimum(values);
}

std::vector<ReductionResult> batch_reduce_serial(std::span<const SiegelPoint> points, const SiegelSetParams& params) {
  std::vector<ReductionResult> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(reduce(p, params));
  return out;
}

std::vector<ReductionResult> batch_reduce_parallel(std::span<const SiegelPoint> points,
                                                   const SiegelSetParams& params) {
  std::vector<std::optional<ReductionResult>> slots(points.size());
  parallel_for_indexed(points.size(), [&](std::size_t i) { slots[i] = reduce(points[i], params); });
  std::vector<ReductionResult> out;
  out.reserve(points.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<double> batch_distance_serial(std::span<const SiegelPoint> points, std::span<const SiegelPoint> targets) {
  check_pairs(points, targets);
  std::vector<double> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = distance(points[i], targets[i]);
  return out;
}

std::vector<double> batch_distance_parallel(std::span<const SiegelPoint> points,
                                            std::span<const SiegelPoint> targets) {
  check_pairs(points, targets);
  std::vector<double> out(points.size());
  parallel_for_indexed(points.size(), [&](std::size_t i) { out[i] = distance(points[i], targets[i]); });
  return out;
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace siegel::kernels
