#include "siegel/experiments.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>

#include "siegel/errors.hpp"
#include "siegel/metric.hpp"
#include "siegel/parallel.hpp"
#include "siegel/random.hpp"
#include "siegel/reduction.hpp"

namespace siegel {

using nlohmann::json;

namespace {

// Stream ids keep the probes' randomness disjoint for a given seed.
enum StreamBase : std::uint64_t {
  kDensityStream = 1ULL << 32,
  kNetStream = 2ULL << 32,
  kDistortionStream = 3ULL << 32,
  kBbStream = 4ULL << 32,
};

constexpr double kHeightLo = 0.5;
constexpr double kHeightHi = 20.0;
constexpr int kMaxResamples = 100;
constexpr int kMaxNetWord = 5;
constexpr int kDeepestExponent = 300;
// Chamber distances below this are round-off of exactly diagonal reductions.
constexpr double kNetDistanceFloor = 1e-6;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string format_optional(const std::optional<double>& v) {
  return v && std::isfinite(*v) ? format_double(*v) : std::string{};
}

json optional_json(const std::optional<double>& v) {
  if (v && std::isfinite(*v)) return *v;
  return nullptr;
}

std::optional<double> finite_or_empty(double v) {
  if (std::isfinite(v)) return v;
  return std::nullopt;
}

double linear_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
}

std::vector<cplx> chain_with_t(std::size_t junctions, double t) { return std::vector<cplx>(junctions, cplx{t, 0.0}); }

TorusChainFamily at_t(TorusChainFamily fam, double t) {
  fam.t = chain_with_t(fam.t.size(), t);
  return fam;
}

// Distinct, well separated moduli in the classical fundamental domain.
std::vector<cplx> sample_distinct_tau(int count, std::mt19937_64& rng) {
  std::vector<cplx> tau;
  for (int k = 0; k < count; ++k) {
    const double y = 1.2 + 0.7 * k + uniform(rng, 0.0, 0.3);
    const double x = uniform(rng, -0.3, 0.3);
    tau.emplace_back(x, y);
  }
  return tau;
}

double max_offdiagonal(const CMatrix& m) {
  double out = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k)
      if (i != k) out = std::max(out, std::abs(m(i, k)));
  return out;
}

struct Alignment {
  double distance = std::numeric_limits<double>::infinity();
  std::vector<int> perm;
};

// min over coordinate permutations P of distance(P q P^t, p); first minimum in
// lexicographic order wins.
Alignment best_alignment(const SiegelPoint& p, const SiegelPoint& q) {
  std::vector<int> perm(p.genus());
  std::iota(perm.begin(), perm.end(), 0);
  Alignment best;
  do {
    const double d = distance(p, mobius_act(permutation_block(perm), q));
    if (d < best.distance) best = {d, perm};
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double permutation_code(const std::vector<int>& perm) {
  double code = 0.0;
  for (int p : perm) code = 10.0 * code + (p + 1);
  return code;
}

}  // namespace

std::vector<double> default_t_schedule() {
  return {std::pow(10.0, -1.5), 1e-2, std::pow(10.0, -2.5), 1e-3, std::pow(10.0, -3.5), 1e-4};
}

// ---- config ----------------------------------------------------------------

void ExperimentConfig::validate() const {
  if (genus < 2 || genus > 6) throw ConfigError("genus must lie in [2, 6]");
  if (samples < 1) throw ConfigError("samples must be positive");
  if (t_schedule.empty()) throw ConfigError("t_schedule must not be empty");
  for (std::size_t i = 0; i < t_schedule.size(); ++i) {
    const double t = t_schedule[i];
    if (!(t > 0.0 && t < kDefaultValidityRadius)) throw ConfigError("t_schedule entries must lie in (0, 0.1)");
    if (i > 0 && !(t < t_schedule[i - 1])) throw ConfigError("t_schedule must be strictly decreasing");
  }
  if (!(a_param > 0.0)) throw ConfigError("a_param must be positive");
  if (search_radius < 0 || search_radius > 3) throw ConfigError("search_radius must lie in [0, 3]");
  if (!(tolerance > 0.0)) throw ConfigError("tolerance must be positive");
}

json ExperimentConfig::to_json() const {
  return {{"genus", genus},
          {"samples", samples},
          {"seed", seed},
          {"t_schedule", t_schedule},
          {"a_param", a_param},
          {"search_radius", search_radius},
          {"tolerance", tolerance},
          {"output", output_format == OutputFormat::csv ? "csv" : "json"},
          {"hyperelliptic", hyperelliptic}};
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  ExperimentConfig cfg;
  try {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, _] : j.items()) {
      static const std::vector<std::string> known{"genus", "samples", "seed", "t_schedule", "a_param",
                                                  "search_radius", "tolerance", "output", "hyperelliptic"};
      if (std::find(known.begin(), known.end(), key) == known.end()) throw ConfigError("unknown config key: " + key);
    }
    cfg.genus = j.value("genus", cfg.genus);
    cfg.samples = j.value("samples", cfg.samples);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.t_schedule = j.value("t_schedule", cfg.t_schedule);
    cfg.a_param = j.value("a_param", cfg.a_param);
    cfg.search_radius = j.value("search_radius", cfg.search_radius);
    cfg.tolerance = j.value("tolerance", cfg.tolerance);
    cfg.hyperelliptic = j.value("hyperelliptic", cfg.hyperelliptic);
    if (j.contains("output")) {
      const auto out = j.at("output").get<std::string>();
      if (out == "csv")
        cfg.output_format = OutputFormat::csv;
      else if (out == "json")
        cfg.output_format = OutputFormat::json;
      else
        throw ConfigError("output must be csv or json");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

std::string ExperimentConfig::hash() const {
  const std::string text = to_json().dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

// ---- report ----------------------------------------------------------------

void Report::append(const Report& other) {
  if (other.hash_ != hash_) throw ConfigError("cannot merge reports from different configurations");
  rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end());
}

std::string Report::to_csv() const {
  std::string out = "experiment,genus,sample_id,t,value,aux1,aux2,config_hash\n";
  for (const auto& r : rows_) {
    out += r.experiment + ',' + std::to_string(r.genus) + ',' + std::to_string(r.sample_id) + ',' +
           format_optional(r.t) + ',' + format_optional(r.value) + ',' + format_optional(r.aux1) + ',' +
           format_optional(r.aux2) + ',' + hash_ + '\n';
  }
  return out;
}

std::string Report::to_json() const {
  json rows = json::array();
  for (const auto& r : rows_) {
    rows.push_back({{"experiment", r.experiment},
                    {"genus", r.genus},
                    {"sample_id", r.sample_id},
                    {"t", optional_json(r.t)},
                    {"value", optional_json(r.value)},
                    {"aux1", optional_json(r.aux1)},
                    {"aux2", optional_json(r.aux2)},
                    {"config_hash", hash_}});
  }
  return json{{"config_hash", hash_}, {"rows", rows}}.dump(2) + "\n";
}

std::string Report::render(OutputFormat format) const {
  return format == OutputFormat::csv ? to_csv() : to_json();
}

// ---- helpers ---------------------------------------------------------------

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InputError("loglog_slope: need two or more matched points");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  return linear_slope(lx, ly);
}

std::vector<double> sample_chamber_heights(int g, double a, std::mt19937_64& rng) {
  const double lo = std::log(kHeightLo), hi = std::log(kHeightHi);
  for (int attempt = 0; attempt <= kMaxResamples; ++attempt) {
    std::vector<double> h(g);
    for (double& v : h) v = std::exp(uniform(rng, lo, hi));
    std::sort(h.begin(), h.end(), std::greater<>());
    ChamberPoint c{Eigen::Map<const RVector>(h.data(), g), a};
    if (c.satisfies_chamber()) return h;
  }
  throw ConfigError("could not draw a chamber target; a_param too restrictive");
}

int kind_code(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::interior:
      return 0;
    case BoundaryKind::bb_boundary:
      return 1;
    case BoundaryKind::undetermined:
      break;
  }
  return 2;
}

// ---- density ---------------------------------------------------------------

DensityResult density_probe(const ExperimentConfig& cfg) {
  cfg.validate();
  const int g = cfg.genus;
  const auto n = static_cast<std::size_t>(cfg.samples);
  std::vector<DensityTarget> targets(n);

  parallel_for_indexed(n, [&](std::size_t s) {
    auto rng = make_stream(cfg.seed, kDensityStream + s);
    DensityTarget& out = targets[s];
    out.h = sample_chamber_heights(g, cfg.a_param, rng);
    std::vector<cplx> tau;
    for (double h : out.h) tau.emplace_back(0.0, h * h);
    const ChamberPoint chamber{Eigen::Map<const RVector>(out.h.data(), g), cfg.a_param};
    const SiegelPoint target = chamber.point();

    TorusChainFamily fam = TorusChainFamily::make(tau, 0.0, cfg.hyperelliptic);
    const auto coeffs = chain_coefficients(fam);
    out.zero_distance = distance(chain_period_matrix(fam, coeffs), target);
    for (double t : cfg.t_schedule)
      out.distances.push_back(distance(chain_period_matrix(at_t(fam, t), coeffs), target));
    out.min_distance = *std::min_element(out.distances.begin(), out.distances.end());
    out.slope = cfg.t_schedule.size() >= 2 ? loglog_slope(cfg.t_schedule, out.distances)
                                           : std::numeric_limits<double>::quiet_NaN();
  });

  DensityResult result{std::move(targets), 0.0, 0.0, Report(cfg)};
  for (std::size_t s = 0; s < n; ++s) {
    const auto& tg = result.targets[s];
    const long id = static_cast<long>(s);
    result.report.add({"density", g, id, 0.0, tg.zero_distance, {}, {}});
    for (std::size_t i = 0; i < cfg.t_schedule.size(); ++i)
      result.report.add({"density", g, id, cfg.t_schedule[i], tg.distances[i], {}, {}});
    result.report.add({"density_target", g, id, {}, tg.min_distance, finite_or_empty(tg.slope), tg.h.back()});
    result.delta_hat = std::max(result.delta_hat, tg.min_distance);
    const double err = std::isfinite(tg.slope) ? std::abs(tg.slope - 1.0) : std::numeric_limits<double>::infinity();
    result.max_slope_error = std::max(result.max_slope_error, err);
  }
  result.report.add({"density_summary", g, -1, cfg.t_schedule.back(), result.delta_hat,
                     finite_or_empty(result.max_slope_error), static_cast<double>(n)});
  return result;
}

// ---- net-check -------------------------------------------------------------

NetCheckResult net_check(const ExperimentConfig& cfg) {
  cfg.validate();
  const int g = cfg.genus;
  const auto n = static_cast<std::size_t>(cfg.samples);
  NetCheckResult result{{}, 0.0, std::vector<std::array<double, 3>>(n), std::vector<std::array<double, 3>>(n), true,
                        Report(cfg)};
  std::vector<char> member(n, 1);
  const SiegelSetParams params{cfg.a_param, 1.0};
  const SiegelPoint base = SiegelPoint::scaled_identity(g, 1.0);

  parallel_for_indexed(n, [&](std::size_t s) {
    auto rng = make_stream(cfg.seed, kNetStream + s);
    const std::vector<double> h = sample_chamber_heights(g, cfg.a_param, rng);
    const int length = uniform_int(rng, 0, kMaxNetWord);
    const SymplecticMatrix word = random_symplectic_word(g, length, rng());
    for (std::size_t k = 0; k < kNetScales.size(); ++k) {
      std::vector<cplx> d(g);
      for (int i = 0; i < g; ++i) d[i] = {0.0, kNetScales[k] * h[i] * h[i]};
      const SiegelPoint z = mobius_act(word, SiegelPoint::diagonal(d));
      const ReductionResult red = reduce(z, params);
      if (!red.in_siegel_set) member[s] = 0;
      const double dist = chamber_distance(red.z_reduced, cfg.a_param).first;
      const double scale = distance(red.z_reduced, base);
      result.distances[s][k] = dist;
      result.rescaled[s][k] = scale > 0.0 ? dist / scale : 0.0;
    }
  });

  for (std::size_t s = 0; s < n; ++s) {
    if (!member[s]) result.all_in_siegel_set = false;
    for (std::size_t k = 0; k < kNetScales.size(); ++k) {
      result.sup[k] = std::max(result.sup[k], result.distances[s][k]);
      result.report.add({"net_check", g, static_cast<long>(s), {}, result.distances[s][k], result.rescaled[s][k],
                         kNetScales[k]});
    }
  }
  for (std::size_t k = 0; k < kNetScales.size(); ++k)
    result.report.add({"net_check_sup", g, -1, {}, result.sup[k], {}, kNetScales[k]});
  result.ratio = std::max(result.sup[2], kNetDistanceFloor) / std::max(result.sup[0], kNetDistanceFloor);
  result.report.add({"net_check_ratio", g, -1, {}, finite_or_empty(result.ratio),
                     result.all_in_siegel_set ? 1.0 : 0.0, {}});
  return result;
}

// ---- distortion ------------------------------------------------------------

DistortionResult compare_chain_families(const TorusChainFamily& first, const TorusChainFamily& second,
                                        const ExperimentConfig& cfg) {
  cfg.validate();
  first.validate();
  second.validate();
  if (first.genus() != second.genus()) throw DimensionMismatch("compare_chain_families: genus mismatch");
  const int g = first.genus();
  DistortionResult result{first.tau, {}, 0.0, {}, 0.0, Report(cfg)};
  const auto k1 = chain_coefficients(first);
  const auto k2 = chain_coefficients(second);

  std::vector<double> ts, values;
  for (double t : cfg.t_schedule) {
    const SiegelPoint p = chain_period_matrix(at_t(first, t), k1);
    const SiegelPoint q = chain_period_matrix(at_t(second, t), k2);
    DistortionRow row{t, quotient_distance_upper(p, q, cfg.search_radius), best_alignment(p, q).distance,
                      distance(p, q)};
    result.rows.push_back(row);
    ts.push_back(t);
    values.push_back(row.quotient_upper);
  }
  const SiegelPoint p0 = chain_period_matrix(at_t(first, 0.0), k1);
  const SiegelPoint q0 = chain_period_matrix(at_t(second, 0.0), k2);
  const Alignment limit = best_alignment(p0, q0);
  result.limit_gap = limit.distance;
  result.alignment = limit.perm;
  result.slope = ts.size() >= 2 ? loglog_slope(ts, values) : std::numeric_limits<double>::quiet_NaN();

  for (const auto& row : result.rows)
    result.report.add({"distortion", g, -1, row.t, row.quotient_upper, row.aligned, row.raw});
  result.report.add({"distortion_limit", g, -1, 0.0, result.limit_gap, distance(p0, q0),
                     permutation_code(result.alignment)});
  result.report.add({"distortion_fit", g, -1, {}, finite_or_empty(result.slope), {}, {}});
  return result;
}

DistortionResult distortion_probe(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.genus != 4) throw ConfigError("distortion probe is defined for genus 4 only");
  auto rng = make_stream(cfg.seed, kDistortionStream);
  const std::vector<cplx> tau = sample_distinct_tau(4, rng);
  const TorusChainFamily first = TorusChainFamily::make(tau, cfg.t_schedule.front(), cfg.hyperelliptic);
  const TorusChainFamily second = reorder_family(first, {1, 0, 3, 2});
  return compare_chain_families(first, second, cfg);
}

// ---- bb-probe --------------------------------------------------------------

BbProbeResult bb_probe(const ExperimentConfig& cfg) {
  cfg.validate();
  const int g = cfg.genus;
  auto rng = make_stream(cfg.seed, kBbStream);
  const std::vector<cplx> tau = sample_distinct_tau(g, rng);
  constexpr double kBaseT = 0.01;

  NonSeparatingFamily fam;
  fam.base = TorusChainFamily::make(std::vector<cplx>(tau.begin(), tau.end() - 1), kBaseT, cfg.hyperelliptic);
  const SiegelPoint base_matrix = chain_period_matrix(fam.base);

  BbProbeResult result{{}, {}, 0.0, 0.0, 0.0, cfg.t_schedule, Report(cfg)};
  // The corner grows like log(1/t); continue the schedule by decades until
  // the Schur height is well past 1/tol.
  const int start = static_cast<int>(std::floor(-std::log10(cfg.t_schedule.back()))) + 1;
  for (int e = start; e <= kDeepestExponent; ++e) {
    const double t = std::pow(10.0, -e);
    if (t < result.classification_schedule.back()) result.classification_schedule.push_back(t);
  }

  std::vector<SiegelPoint> seq;
  for (double t : result.classification_schedule) {
    fam.t = {t, 0.0};
    seq.push_back(nonseparating_period_matrix(fam));
  }
  result.nonseparating = bb_limit_classify(seq, g - 1, cfg.tolerance);
  result.limit_distance = result.nonseparating.limit && result.nonseparating.limit->genus() == g - 1
                              ? distance(*result.nonseparating.limit, base_matrix)
                              : std::numeric_limits<double>::quiet_NaN();

  std::vector<double> logs, corners;
  for (std::size_t i = 0; i < cfg.t_schedule.size(); ++i) {
    const SiegelPoint& z = seq[i];
    const double corner = z.imag()(g - 1, g - 1);
    logs.push_back(std::log(1.0 / cfg.t_schedule[i]));
    corners.push_back(corner);
    Eigen::SelfAdjointEigenSolver<RMatrix> es(schur_height(z, g - 1), Eigen::EigenvaluesOnly);
    const SiegelPoint lead(z.matrix().topLeftCorner(g - 1, g - 1));
    result.report.add({"bb_nonseparating", g, -1, cfg.t_schedule[i], corner, es.eigenvalues().minCoeff(),
                       distance(lead, base_matrix)});
  }
  result.corner_slope = logs.size() >= 2 ? linear_slope(logs, corners) : std::numeric_limits<double>::quiet_NaN();

  // Separating control: all g tori in a chain, every junction at t.
  const TorusChainFamily chain = TorusChainFamily::make(tau, cfg.t_schedule.front(), cfg.hyperelliptic);
  const auto coeffs = chain_coefficients(chain);
  const SiegelPoint chain_limit = chain_period_matrix(at_t(chain, 0.0), coeffs);
  std::vector<SiegelPoint> control;
  for (double t : cfg.t_schedule) {
    control.push_back(chain_period_matrix(at_t(chain, t), coeffs));
    result.report.add({"bb_chain", g, -1, t, max_offdiagonal(control.back().matrix()),
                       distance(control.back(), chain_limit), {}});
  }
  result.separating = bb_limit_classify(control, g - 1, cfg.tolerance);
  result.control_offdiagonal =
      result.separating.limit ? max_offdiagonal(result.separating.limit->matrix()) : std::numeric_limits<double>::quiet_NaN();

  result.report.add({"bb_verdict_nonseparating", g, 0, {}, static_cast<double>(kind_code(result.nonseparating.kind)),
                     static_cast<double>(result.nonseparating.rank), finite_or_empty(result.limit_distance)});
  result.report.add({"bb_verdict_separating", g, 1, {}, static_cast<double>(kind_code(result.separating.kind)),
                     static_cast<double>(result.separating.rank), finite_or_empty(result.control_offdiagonal)});
  result.report.add({"bb_corner_fit", g, -1, {}, finite_or_empty(result.corner_slope),
                     finite_or_empty(result.corner_slope * 2.0 * std::numbers::pi), {}});
  return result;
}

}  // namespace siegel
