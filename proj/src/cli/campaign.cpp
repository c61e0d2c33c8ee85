#include "conemetrics/cli/campaign.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <thread>

#include "conemetrics/curvature.hpp"
#include "conemetrics/embedding.hpp"
#include "conemetrics/geodesics.hpp"

namespace conemetrics::cli {

std::string to_string(CampaignKind kind) {
  switch (kind) {
    case CampaignKind::Theorem1: return "theorem1";
    case CampaignKind::Theorem2: return "theorem2";
    case CampaignKind::Busemann: return "busemann";
    case CampaignKind::Semihyperbolic: return "semihyperbolic";
    case CampaignKind::OpnormAgreement: return "opnorm-agreement";
    case CampaignKind::Embedding: return "embedding";
  }
  return "unknown";
}

CampaignKind parse_campaign_kind(std::string_view text) {
  for (auto k : {CampaignKind::Theorem1, CampaignKind::Theorem2, CampaignKind::Busemann,
                 CampaignKind::Semihyperbolic, CampaignKind::OpnormAgreement, CampaignKind::Embedding}) {
    if (text == to_string(k)) return k;
  }
  throw InvalidArgument("unknown campaign kind '" + std::string(text) + "'");
}

Format parse_format(std::string_view text) {
  if (text == "json") return Format::Json;
  if (text == "csv") return Format::Csv;
  throw InvalidArgument("unknown format '" + std::string(text) + "' (expected json|csv)");
}

double CampaignConfig::tolerance() const {
  if (tol) return *tol;
  return kind == CampaignKind::Embedding ? 1e-8 : kInequalityTolerance;
}

void CampaignConfig::validate() const {
  if (samples < 1) throw InvalidArgument("sample count must be at least 1");
  if (!(s > 0.0 && s < 1.0)) throw InvalidArgument("s must lie in (0, 1)");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidArgument("R must be positive");
  if (!(tolerance() >= 0.0)) throw InvalidArgument("tolerance must be non-negative");
  const Cone cone = parse_cone_spec(cone_spec);
  if (kind == CampaignKind::OpnormAgreement && !cone.is_orthant()) {
    throw InvalidArgument("opnorm-agreement runs on an orthant cone");
  }
  if (kind == CampaignKind::Embedding && cone.ambient_dim() < 2) {
    throw InvalidArgument("embedding campaign needs an ambient dimension of at least 2");
  }
}

unsigned resolve_threads(unsigned requested) {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  unsigned n = requested > 0 ? requested : hw;
  if (const char* env = std::getenv("CONEMETRICS_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return std::max(1u, n);
}

namespace {

std::uint64_t trial_seed(std::uint64_t seed, std::size_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(index) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::vector<Vector> coords_of(const std::vector<ConePoint>& points) {
  std::vector<Vector> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.coords());
  return out;
}

TrialRecord from_report(const InequalityReport& r) {
  TrialRecord t;
  t.lhs = r.lhs;
  t.rhs = r.rhs;
  t.radius = r.radius;
  t.s = r.s;
  t.satisfied = r.satisfied;
  t.witness = coords_of(r.witness);
  return t;
}

ConePoint perturb_within_one(const ConePoint& p, Metric metric, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 500; ++attempt) {
    ConePoint q = sample_interior(p, 1.0, rng);
    if (distance(p, q, metric) <= 1.0) return q;
  }
  throw SearchFailure("semihyperbolic campaign: could not draw a 1-perturbation");
}

using TrialFn = std::function<TrialRecord(std::mt19937_64&)>;

TrialFn make_trial(const CampaignConfig& c, const Cone& cone) {
  const ConePoint base(cone, cone.unit());
  const double tol = c.tolerance();
  switch (c.kind) {
    case CampaignKind::Theorem1:
    case CampaignKind::Theorem2: {
      const Metric metric = c.kind == CampaignKind::Theorem1 ? Metric::Thompson : Metric::Hilbert;
      return [=](std::mt19937_64& rng) {
        const ConePoint u = sample_interior(base, 2.0, rng);
        const ConePoint x = sample_interior(u, c.radius, rng);
        const ConePoint y = sample_interior(u, c.radius, rng);
        return from_report(check_theorem(u, x, y, c.s, metric, tol));
      };
    }
    case CampaignKind::Busemann:
      return [=](std::mt19937_64& rng) {
        const ConePoint u = sample_interior(base, c.radius, rng);
        const ConePoint x = sample_interior(base, c.radius, rng);
        const ConePoint y = sample_interior(base, c.radius, rng);
        return from_report(check_busemann(u, x, y, c.metric, tol));
      };
    case CampaignKind::Semihyperbolic:
      return [=](std::mt19937_64& rng) {
        const ConePoint x = sample_interior(base, c.radius, rng);
        const ConePoint y = sample_interior(base, c.radius, rng);
        const ConePoint xp = perturb_within_one(x, c.metric, rng);
        const ConePoint yp = perturb_within_one(y, c.metric, rng);
        const double span = std::max(distance(x, y, c.metric), distance(xp, yp, c.metric));
        InequalityReport worst;
        worst.lhs = -1.0;
        for (int k = 0; k <= 10; ++k) {
          const double t = span * k / 8.0;
          InequalityReport r = check_semihyperbolic(x, y, xp, yp, t, c.metric, tol);
          if (r.lhs > worst.lhs) worst = std::move(r);
        }
        TrialRecord t = from_report(worst);
        t.s = c.s;
        return t;
      };
    case CampaignKind::OpnormAgreement:
      return [=](std::mt19937_64& rng) {
        std::uniform_real_distribution<double> spread(-0.5 * c.radius, 0.5 * c.radius);
        for (;;) {
          Vector v(static_cast<Eigen::Index>(cone.ambient_dim()));
          for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = std::exp(spread(rng));
          const ConePoint x(cone, v);
          try {
            double err = std::abs(thompson_opnorm_analytic(x, c.s) - thompson_opnorm_numeric(x, c.s));
            if (v.size() >= 2) {
              err = std::max(err, std::abs(hilbert_opnorm_analytic(x, c.s) -
                                           hilbert_opnorm_numeric(x, c.s).value));
            }
            TrialRecord t;
            t.lhs = err;
            t.rhs = tol;
            t.radius = c.radius;
            t.s = c.s;
            t.satisfied = err <= tol;
            t.witness = {v};
            return t;
          } catch (const NonSmoothPoint&) {
            // measure-zero tie; redraw
          }
        }
      };
    case CampaignKind::Embedding:
      return [=](std::mt19937_64& rng) {
        std::vector<ConePoint> pts;
        for (int k = 0; k < 5; ++k) pts.push_back(sample_interior(base, c.radius, rng));
        const Embedding e = embed(pts);
        const EmbeddingReport rep = verify_embedding(e, tol);
        double err = std::max({rep.max_order_error, rep.max_thompson_error, rep.max_hilbert_error,
                               rep.max_normalization_error, rep.max_support_residual});
        bool ok = rep.ok;
        const TransferReport tr = transfer_geodesic_check(pts[0], pts[1], pts[2], c.s, tol);
        if (!tr.skipped) {
          err = std::max({err, tr.commuting_residual, tr.invariance_error});
          ok = ok && tr.ok;
        }
        TrialRecord t;
        t.lhs = err;
        t.rhs = tol;
        t.radius = c.radius;
        t.s = c.s;
        t.satisfied = ok;
        t.witness = coords_of(pts);
        return t;
      };
  }
  throw InvalidArgument("unhandled campaign kind");
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

CampaignReport run_campaign(const CampaignConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const Cone cone = parse_cone_spec(config.cone_spec);
  const TrialFn trial = make_trial(config, cone);

  CampaignReport report;
  report.config = config;
  report.assertable = config.kind != CampaignKind::Busemann;
  report.trials.resize(config.samples);

  // Each trial owns its generator, so results do not depend on the split.
  const unsigned workers = std::min<unsigned>(resolve_threads(config.threads),
                                              static_cast<unsigned>(config.samples));
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](unsigned w) {
    try {
      for (std::size_t k = w; k < config.samples; k += workers) {
        std::mt19937_64 rng(trial_seed(config.seed, k));
        report.trials[k] = trial(rng);
        report.trials[k].index = k;
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  report.max_ratio = -std::numeric_limits<double>::infinity();
  for (const auto& t : report.trials) {
    if (!t.satisfied) ++report.violations;
    if (t.ratio() > report.max_ratio) {
      report.max_ratio = t.ratio();
      report.argmax = t.index;
    }
  }
  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report.timestamp = utc_timestamp();
  return report;
}

TightnessReport run_tightness(Metric metric, double radius, double s) {
  TightnessReport report;
  report.metric = metric;
  report.radius = radius;
  report.s = s;
  report.bound = bound(radius, s, metric);
  const Cone cone = Cone::orthant(3);
  const double top = std::exp(radius);
  const double rise = std::expm1(radius);
  report.achieved = -std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 12; ++k) {
    const double eps = rise * std::pow(10.0, -k);
    Vector v(3);
    v << 1.0, 1.0 + (rise - eps), top;
    try {
      const ConePoint x(cone, v);
      const double norm =
          metric == Metric::Thompson ? thompson_opnorm_analytic(x, s) : hilbert_opnorm_analytic(x, s);
      report.sweep.push_back({eps, norm});
      report.achieved = std::max(report.achieved, norm);
    } catch (const NonSmoothPoint&) {
      break;  // x_2 has merged with x_3 in floating point
    }
  }
  report.gap = report.bound - report.achieved;
  return report;
}

Json campaign_to_json(const CampaignReport& r) {
  const auto& c = r.config;
  Json config = {{"kind", to_string(c.kind)}, {"cone", c.cone_spec}, {"metric", std::string(to_string(c.metric))},
                 {"s", c.s},                 {"R", c.radius},        {"n_samples", c.samples},
                 {"seed", c.seed},           {"tol", c.tolerance()}};
  Json aggregate = {{"trials", r.trials.size()},
                    {"violations", r.violations},
                    {"max_ratio", r.max_ratio},
                    {"argmax", r.argmax},
                    {"assertable", r.assertable}};
  if (!r.trials.empty()) {
    Json witness = Json::array();
    for (const auto& w : r.trials[r.argmax].witness) witness.push_back(vector_to_json(w));
    aggregate["argmax_witness"] = witness;
  }
  Json j = {{"config", config},
            {"aggregate", aggregate},
            {"timing", {{"runtime_seconds", r.runtime_seconds}, {"timestamp", r.timestamp}}}};
  if (c.include_trials) {
    Json trials = Json::array();
    for (const auto& t : r.trials) {
      Json witness = Json::array();
      for (const auto& w : t.witness) witness.push_back(vector_to_json(w));
      trials.push_back({{"index", t.index},
                        {"lhs", t.lhs},
                        {"rhs", t.rhs},
                        {"R", t.radius},
                        {"s", t.s},
                        {"satisfied", t.satisfied},
                        {"witness_points", witness}});
    }
    j["trials"] = trials;
  }
  return j;
}

std::string campaign_to_csv(const CampaignReport& r) {
  std::ostringstream out;
  out << "# kind=" << to_string(r.config.kind) << " cone=" << r.config.cone_spec
      << " seed=" << r.config.seed << " violations=" << r.violations
      << " max_ratio=" << format_double(r.max_ratio) << " argmax=" << r.argmax << "\n";
  out << "index,lhs,rhs,R,s,satisfied\n";
  for (const auto& t : r.trials) {
    out << t.index << ',' << format_double(t.lhs) << ',' << format_double(t.rhs) << ','
        << format_double(t.radius) << ',' << format_double(t.s) << ',' << (t.satisfied ? 1 : 0) << "\n";
  }
  return out.str();
}

Json tightness_to_json(const TightnessReport& r) {
  Json sweep = Json::array();
  for (const auto& p : r.sweep) sweep.push_back({{"eps", p.epsilon}, {"norm", p.norm}});
  return {{"metric", std::string(to_string(r.metric))},
          {"R", r.radius},
          {"s", r.s},
          {"bound", r.bound},
          {"achieved", r.achieved},
          {"achieved_ratio", r.achieved_ratio()},
          {"gap", r.gap},
          {"within_1pct", r.within(0.01)},
          {"sweep", sweep}};
}

std::string tightness_to_csv(const TightnessReport& r) {
  std::ostringstream out;
  out << "# metric=" << to_string(r.metric) << " R=" << format_double(r.radius) << " s=" << format_double(r.s)
      << " bound=" << format_double(r.bound) << " achieved=" << format_double(r.achieved)
      << " gap=" << format_double(r.gap) << "\n";
  out << "eps,norm\n";
  for (const auto& p : r.sweep) out << format_double(p.epsilon) << ',' << format_double(p.norm) << "\n";
  return out.str();
}

}  // namespace conemetrics::cli
