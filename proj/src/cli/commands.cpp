#include "conemetrics/cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "conemetrics/cli/campaign.hpp"
#include "conemetrics/cli/serialize.hpp"
#include "conemetrics/curvature.hpp"
#include "conemetrics/embedding.hpp"
#include "conemetrics/geodesics.hpp"

namespace conemetrics::cli {

namespace {

struct PointInput {
  std::string cone;
  std::vector<std::string> points;
  std::string points_file;
};

struct Output {
  std::string format;
  std::string path;
};

void add_point_options(CLI::App& cmd, PointInput& in) {
  cmd.add_option("--cone", in.cone, "cone spec: orthant:N, lorentz:n, sympd:n, oracle:<spec>");
  cmd.add_option("--point", in.points, "point as JSON (coordinate array or point object); repeatable")
      ->allow_extra_args(false);  // keep "[1,2]" as one JSON value
  cmd.add_option("--points-file", in.points_file, "JSON array of points");
}

void add_output_options(CLI::App& cmd, Output& o, const std::string& default_format) {
  o.format = default_format;
  cmd.add_option("--format", o.format, "output format")->capture_default_str();
  cmd.add_option("--out", o.path, "write the report here instead of stdout");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<ConePoint> load_points(const PointInput& in) {
  std::optional<Cone> cone;
  if (!in.cone.empty()) cone = parse_cone_spec(in.cone);
  const Cone* fallback = cone ? &*cone : nullptr;
  std::vector<ConePoint> points;
  for (std::size_t k = 0; k < in.points.size(); ++k) {
    const Json j = parse_json_text(in.points[k], "--point #" + std::to_string(k + 1));
    points.push_back(point_from_json(j, fallback));
  }
  if (!in.points_file.empty()) {
    const Json j = parse_json_text(read_file(in.points_file), in.points_file);
    if (!j.is_array()) throw ParseError(in.points_file + ": expected a JSON array of points");
    for (const auto& item : j) points.push_back(point_from_json(item, fallback));
  }
  for (const auto& p : points) {
    if (!p.cone().same_as(points.front().cone())) throw ParseError("points belong to different cones");
  }
  return points;
}

void require_count(const std::vector<ConePoint>& points, std::size_t at_least, const char* command) {
  if (points.size() < at_least) {
    throw ParseError(std::string(command) + ": expected at least " + std::to_string(at_least) + " points, got " +
                     std::to_string(points.size()));
  }
}

void emit(const std::string& text, const Output& o, std::ostream& out) {
  if (o.path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.path, std::ios::binary);
  if (!file) throw ParseError("cannot write '" + o.path + "'");
  file << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// nlohmann writes doubles with round-trip precision; infinities become null,
// so non-finite values are spelled out explicitly.
Json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

int cmd_distance(const PointInput& in, const Output& o, std::ostream& out) {
  if (o.format != "text") parse_format(o.format);
  const auto points = load_points(in);
  require_count(points, 2, "distance");
  const ConePoint& x = points[0];
  const ConePoint& y = points[1];
  const OrderBound mxy = order_sup(x, y);
  const OrderBound myx = order_sup(y, x);
  const bool apart = !mxy.is_finite() || !myx.is_finite();
  const double dt = thompson_distance(x, y);
  const double dh = hilbert_distance(x, y);

  if (o.format == "json") {
    emit(dump({{"M_xy", number(mxy.value)},
               {"M_yx", number(myx.value)},
               {"d_T", number(dt)},
               {"d_H", number(dh)},
               {"different_parts", apart}}),
         o, out);
  } else if (o.format == "csv") {
    emit("M_xy,M_yx,d_T,d_H\n" + format_double(mxy.value) + "," + format_double(myx.value) + "," +
             format_double(dt) + "," + format_double(dh) + "\n",
         o, out);
  } else {
    const std::string far = "infinite (different parts)";
    std::ostringstream text;
    text << "M(x/y) = " << (mxy.is_finite() ? format_double(mxy.value) : "inf") << "\n";
    text << "M(y/x) = " << (myx.is_finite() ? format_double(myx.value) : "inf") << "\n";
    text << "d_T = " << (apart ? far : format_double(dt)) << "\n";
    text << "d_H = " << (apart ? far : format_double(dh)) << "\n";
    emit(text.str(), o, out);
  }
  return 0;
}

int cmd_geodesic(const PointInput& in, const Output& o, std::size_t samples, bool matrix_mean,
                 std::ostream& out) {
  parse_format(o.format);
  const auto points = load_points(in);
  require_count(points, 2, "geodesic");
  if (samples < 2) throw ParseError("geodesic: --n-samples must be at least 2");
  const ConePoint& x = points[0];
  const ConePoint& y = points[1];
  std::optional<Geodesic> g;
  if (!matrix_mean) g = make_geodesic(x, y);

  std::vector<double> times;
  std::vector<ConePoint> path;
  for (std::size_t k = 0; k < samples; ++k) {
    const double s = k + 1 == samples ? 1.0 : static_cast<double>(k) / static_cast<double>(samples - 1);
    times.push_back(s);
    path.push_back(matrix_mean ? sym_geodesic(x, y, s) : g->evaluate(s));
  }

  if (o.format == "csv") {
    std::ostringstream text;
    text << "s";
    for (Eigen::Index i = 0; i < x.coords().size(); ++i) text << ",c" << i;
    text << ",d_T_from_x,d_H_from_x\n";
    for (std::size_t k = 0; k < samples; ++k) {
      text << format_double(times[k]);
      for (Eigen::Index i = 0; i < x.coords().size(); ++i) text << ',' << format_double(path[k].coords()(i));
      text << ',' << format_double(thompson_distance(x, path[k])) << ','
           << format_double(hilbert_distance(x, path[k])) << "\n";
    }
    emit(text.str(), o, out);
    return 0;
  }
  Json rows = Json::array();
  for (std::size_t k = 0; k < samples; ++k) {
    rows.push_back({{"s", times[k]},
                    {"coords", vector_to_json(path[k].coords())},
                    {"d_T_from_x", thompson_distance(x, path[k])},
                    {"d_H_from_x", hilbert_distance(x, path[k])}});
  }
  Json j = {{"cone", cone_to_json(x.cone())},
            {"path", matrix_mean ? "matrix geometric mean" : "distinguished geodesic"},
            {"x", vector_to_json(x.coords())},
            {"y", vector_to_json(y.coords())},
            {"d_T", thompson_distance(x, y)},
            {"d_H", hilbert_distance(x, y)},
            {"samples", rows}};
  if (g) {
    j["alpha"] = g->alpha();
    j["beta"] = g->beta();
    j["degenerate"] = g->degenerate();
  }
  emit(dump(j), o, out);
  return 0;
}

int cmd_campaign(CampaignConfig config, const std::string& kind, const std::string& metric, const Output& o,
                 std::ostream& out, std::ostream& err) {
  config.kind = parse_campaign_kind(kind);
  config.metric = parse_metric(metric);
  config.format = parse_format(o.format);
  config.out = o.path;
  const CampaignReport report = run_campaign(config);
  emit(config.format == Format::Json ? dump(campaign_to_json(report)) : campaign_to_csv(report), o, out);
  err << to_string(config.kind) << ": " << report.trials.size() << " trials, " << report.violations
      << " violations, max ratio " << format_double(report.max_ratio)
      << (report.assertable ? "" : " (recorded only)") << "\n";
  return report.exit_code();
}

int cmd_tightness(const std::string& metric, double radius, double s, const Output& o, std::ostream& out) {
  if (!(radius > 0.0)) throw InvalidArgument("tightness: R must be positive");
  if (!(s > 0.0 && s < 1.0)) throw InvalidArgument("tightness: s must lie in (0, 1)");
  const TightnessReport r = run_tightness(parse_metric(metric), radius, s);
  emit(parse_format(o.format) == Format::Json ? dump(tightness_to_json(r)) : tightness_to_csv(r), o, out);
  return 0;
}

int cmd_embed(const PointInput& in, const Output& o, double s, double tol, std::ostream& out) {
  if (parse_format(o.format) != Format::Json) throw ParseError("embed: only json output is supported");
  const auto points = load_points(in);
  require_count(points, 2, "embed");
  const Embedding e = embed(points);
  const EmbeddingReport report = verify_embedding(e, tol);
  Json j = {{"embedding", embedding_to_json(e)}, {"report", embedding_report_to_json(report)}};
  bool ok = report.ok;
  if (points.size() >= 3) {
    const TransferReport tr = transfer_geodesic_check(points[0], points[1], points[2], s, tol);
    j["transfer"] = transfer_report_to_json(tr);
    ok = ok && (tr.skipped || tr.ok);
  }
  emit(dump(j), o, out);
  return ok ? 0 : kExitViolation;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thompson and Hilbert metrics on convex cones", "conemetrics"};
  app.require_subcommand(1);

  PointInput points;
  Output distance_out, geodesic_out, campaign_out, tightness_out, embed_out;
  CampaignConfig config;
  std::string metric = "thompson";
  std::string kind;
  std::size_t geodesic_samples = 11;
  bool matrix_mean = false;
  bool no_trials = false;
  double tight_radius = 2.0;
  double tight_s = 0.5;
  double embed_s = 0.5;
  double embed_tol = 1e-8;
  std::optional<double> tol;

  auto* distance_cmd = app.add_subcommand("distance", "d_T, d_H and both order bounds for two points");
  add_point_options(*distance_cmd, points);
  add_output_options(*distance_cmd, distance_out, "text");

  auto* geodesic_cmd = app.add_subcommand("geodesic", "sample the distinguished geodesic between two points");
  add_point_options(*geodesic_cmd, points);
  add_output_options(*geodesic_cmd, geodesic_out, "json");
  geodesic_cmd->add_option("--n-samples", geodesic_samples, "number of samples including endpoints")
      ->capture_default_str();
  geodesic_cmd->add_flag("--sym", matrix_mean, "use the matrix geometric mean (SymPD only)");

  auto* campaign_cmd = app.add_subcommand("campaign", "seeded inequality campaign");
  campaign_cmd->add_option("--kind", kind, "theorem1|theorem2|busemann|semihyperbolic|opnorm-agreement|embedding")
      ->required();
  campaign_cmd->add_option("--cone", config.cone_spec, "cone spec")->capture_default_str();
  campaign_cmd->add_option("--metric", metric, "thompson|hilbert")->capture_default_str();
  campaign_cmd->add_option("--s", config.s, "geodesic parameter")->capture_default_str();
  campaign_cmd->add_option("--R", config.radius, "sampling radius")->capture_default_str();
  campaign_cmd->add_option("--n-samples", config.samples, "number of trials")->capture_default_str();
  campaign_cmd->add_option("--seed", config.seed, "RNG seed")->capture_default_str();
  campaign_cmd->add_option("--tol", tol, "violation tolerance");
  campaign_cmd->add_option("--threads", config.threads, "worker threads (0: CONEMETRICS_THREADS or hardware)");
  campaign_cmd->add_flag("--no-trials", no_trials, "omit per-trial records from JSON");
  add_output_options(*campaign_cmd, campaign_out, "json");

  auto* tightness_cmd = app.add_subcommand("tightness", "sweep the extremal family in the 3-orthant");
  tightness_cmd->add_option("--metric", metric, "thompson|hilbert")->capture_default_str();
  tightness_cmd->add_option("--R", tight_radius, "Hilbert radius")->capture_default_str();
  tightness_cmd->add_option("--s", tight_s, "geodesic parameter")->capture_default_str();
  add_output_options(*tightness_cmd, tightness_out, "json");

  auto* embed_cmd = app.add_subcommand("embed", "isometric embedding of a finite set into an orthant");
  add_point_options(*embed_cmd, points);
  add_output_options(*embed_cmd, embed_out, "json");
  embed_cmd->add_option("--s", embed_s, "parameter for the transfer check")->capture_default_str();
  embed_cmd->add_option("--tol", embed_tol, "verification tolerance")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (distance_cmd->parsed()) return cmd_distance(points, distance_out, out);
    if (geodesic_cmd->parsed()) return cmd_geodesic(points, geodesic_out, geodesic_samples, matrix_mean, out);
    if (campaign_cmd->parsed()) {
      config.tol = tol;
      config.include_trials = !no_trials;
      return cmd_campaign(config, kind, metric, campaign_out, out, err);
    }
    if (tightness_cmd->parsed()) return cmd_tightness(metric, tight_radius, tight_s, tightness_out, out);
    if (embed_cmd->parsed()) return cmd_embed(points, embed_out, embed_s, embed_tol, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DimensionMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NotInterior& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace conemetrics::cli
