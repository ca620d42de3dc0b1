#pragma once

// Batch experiments over plumbed families and reduced points. Every probe
// returns typed results plus a Report whose rows follow the schema
//   experiment, genus, sample_id, t, value, aux1, aux2, config_hash
// Samples run concurrently; sample i draws from its own stream derived from
// (seed, experiment, i), so output does not depend on the thread schedule.

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "siegel/boundary.hpp"
#include "siegel/plumbing.hpp"
#include "siegel/symplectic.hpp"

namespace siegel {

enum class OutputFormat { csv, json };

std::vector<double> default_t_schedule();

struct ExperimentConfig {
  int genus = 3;
  int samples = 100;
  std::uint64_t seed = 1;
  std::vector<double> t_schedule = default_t_schedule();
  double a_param = 0.5;
  int search_radius = 2;
  double tolerance = 0.05;
  OutputFormat output_format = OutputFormat::csv;
  bool hyperelliptic = false;

  /// Throws ConfigError. Guards: 2 <= genus <= 6, t_schedule strictly
  /// decreasing inside (0, 0.1), 0 <= search_radius <= 3.
  void validate() const;

  nlohmann::json to_json() const;
  /// Missing keys keep their defaults.
  static ExperimentConfig from_json(const nlohmann::json& j);
  /// FNV-1a 64 of the canonical JSON form, as 16 hex digits.
  std::string hash() const;
};

struct ReportRow {
  std::string experiment;
  int genus = 0;
  long sample_id = -1;  // -1 for summary rows
  std::optional<double> t;
  std::optional<double> value;
  std::optional<double> aux1;
  std::optional<double> aux2;
};

class Report {
 public:
  explicit Report(const ExperimentConfig& cfg) : hash_(cfg.hash()) {}

  void add(ReportRow row) { rows_.push_back(std::move(row)); }
  /// Rejects rows produced under a different configuration (ConfigError).
  void append(const Report& other);

  const std::vector<ReportRow>& rows() const { return rows_; }
  const std::string& config_hash() const { return hash_; }

  std::string to_csv() const;
  std::string to_json() const;
  std::string render(OutputFormat format) const;

 private:
  std::string hash_;
  std::vector<ReportRow> rows_;
};

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Chamber heights h (descending) drawn log-uniformly from [0.5, 20] until
/// C_a holds; ConfigError after 100 rejected draws.
std::vector<double> sample_chamber_heights(int g, double a, std::mt19937_64& rng);

// ---- density ---------------------------------------------------------------

struct DensityTarget {
  std::vector<double> h;
  std::vector<double> distances;  // per t in the schedule
  double zero_distance = 0.0;     // distance at t = 0
  double min_distance = 0.0;
  double slope = 0.0;
};

struct DensityResult {
  std::vector<DensityTarget> targets;
  double delta_hat = 0.0;  // sup over targets of the min distance
  double max_slope_error = 0.0;
  Report report;
};

DensityResult density_probe(const ExperimentConfig& cfg);

// ---- net-check -------------------------------------------------------------

constexpr std::array<double, 3> kNetScales{1.0, 1e2, 1e4};

struct NetCheckResult {
  std::array<double, 3> sup{};
  double ratio = 0.0;  // sup(1e4)/sup(1), each floored at 1e-6 (round-off level)
  std::vector<std::array<double, 3>> distances;
  std::vector<std::array<double, 3>> rescaled;  // chamber distance / distance to iI
  bool all_in_siegel_set = true;
  Report report;
};

NetCheckResult net_check(const ExperimentConfig& cfg);

// ---- distortion ------------------------------------------------------------

struct DistortionRow {
  double t = 0.0;
  double quotient_upper = 0.0;  // quotient_distance_upper(Pi(t), Pi~(t))
  double aligned = 0.0;         // min over coordinate permutations
  double raw = 0.0;             // ambient distance without alignment
};

struct DistortionResult {
  std::vector<cplx> tau;
  std::vector<DistortionRow> rows;
  double limit_gap = 0.0;             // aligned distance of the t -> 0 limits
  std::vector<int> alignment;         // 0-based permutation found at t = 0
  double slope = 0.0;
  Report report;
};

/// Compares the period matrices of two chain families along a schedule.
DistortionResult compare_chain_families(const TorusChainFamily& first, const TorusChainFamily& second,
                                        const ExperimentConfig& cfg);

/// genus must be 4: orders (1,2,3,4) and (2,1,4,3) with four distinct tori.
DistortionResult distortion_probe(const ExperimentConfig& cfg);

// ---- bb-probe --------------------------------------------------------------

struct BbProbeResult {
  BoundaryVerdict nonseparating;
  BoundaryVerdict separating;
  double limit_distance = 0.0;   // recovered limit vs base chain period matrix
  double corner_slope = 0.0;     // Im corner against log(1/|t|)
  double control_offdiagonal = 0.0;
  std::vector<double> classification_schedule;
  Report report;
};

BbProbeResult bb_probe(const ExperimentConfig& cfg);

/// Stable numeric code used in report rows: interior 0, bb_boundary 1, undetermined 2.
int kind_code(BoundaryKind kind);

}  // namespace siegel
