#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "conemetrics/cli/serialize.hpp"
#include "conemetrics/cones.hpp"
#include "conemetrics/metrics.hpp"

namespace conemetrics::cli {

enum class CampaignKind { Theorem1, Theorem2, Busemann, Semihyperbolic, OpnormAgreement, Embedding };

std::string to_string(CampaignKind kind);
CampaignKind parse_campaign_kind(std::string_view text);

enum class Format { Json, Csv };

Format parse_format(std::string_view text);

struct CampaignConfig {
  CampaignKind kind = CampaignKind::Theorem1;
  std::string cone_spec = "orthant:3";
  Metric metric = Metric::Thompson;
  double s = 0.5;
  double radius = 1.0;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  /// Unset means the kind's default (1e-8 for embedding, 1e-9 otherwise).
  std::optional<double> tol;
  std::string out;
  Format format = Format::Json;
  /// Cap on worker threads; 0 means CONEMETRICS_THREADS or the hardware count.
  unsigned threads = 0;
  bool include_trials = true;

  double tolerance() const;
  /// Throws InvalidArgument on a bad configuration.
  void validate() const;
};

struct TrialRecord {
  std::size_t index = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double radius = 0.0;
  double s = 0.0;
  bool satisfied = true;
  std::vector<Vector> witness;

  double ratio() const { return rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0); }
};

struct CampaignReport {
  CampaignConfig config;
  std::vector<TrialRecord> trials;
  std::size_t violations = 0;
  double max_ratio = 0.0;
  std::size_t argmax = 0;
  /// Whether violations of this kind are proved-impossible (and fail the run).
  bool assertable = true;
  double runtime_seconds = 0.0;
  std::string timestamp;

  int exit_code() const { return assertable && violations > 0 ? 1 : 0; }
};

/// Worker count from CONEMETRICS_THREADS, capped by the hardware count.
unsigned resolve_threads(unsigned requested);

CampaignReport run_campaign(const CampaignConfig& config);

struct TightnessPoint {
  double epsilon;
  double norm;
};

struct TightnessReport {
  Metric metric = Metric::Thompson;
  double radius = 0.0;
  double s = 0.0;
  double bound = 0.0;
  double achieved = 0.0;
  double gap = 0.0;
  std::vector<TightnessPoint> sweep;

  double achieved_ratio() const { return achieved / bound; }
  bool within(double relative) const { return gap <= relative * bound && achieved <= bound * (1 + 1e-12); }
};

/// Sweeps x(eps) = (1, e^R - eps, e^R) in the 3-dimensional orthant with
/// eps = (e^R - 1) 10^{-k}, k = 1..12, skipping points numerically tied.
TightnessReport run_tightness(Metric metric, double radius, double s);

/// Everything except the "timing" object is a pure function of the config.
Json campaign_to_json(const CampaignReport& report);
std::string campaign_to_csv(const CampaignReport& report);
Json tightness_to_json(const TightnessReport& report);
std::string tightness_to_csv(const TightnessReport& report);

}  // namespace conemetrics::cli
