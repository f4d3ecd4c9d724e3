// ebrkit command-line front end. Every subcommand emits a JSON run report on
// stdout (and to --out when given). Exit codes: 0 pass, 1 verification or
// convergence failure, 2 usage/input error.

#include "ebr/channel.hpp"
#include "ebr/families.hpp"
#include "ebr/json_io.hpp"
#include "ebr/mub.hpp"
#include "ebr/search.hpp"
#include "ebr/sic.hpp"
#include "ebr/version.hpp"
#include "ebr/weyl.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using namespace ebr;
using ebr::io::json;

namespace {

json with_tol(double value, double tol) { return json{{"value", value}, {"tol", tol}}; }

class ReportWriter {
 public:
  ReportWriter(std::string command, json params, std::uint64_t seed, std::string out_path)
      : command_(std::move(command)),
        params_(std::move(params)),
        seed_(seed),
        out_path_(std::move(out_path)),
        start_(std::chrono::steady_clock::now()) {}

  int finish(int exit_code, json results) {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start_)
                        .count();
    const json report{{"command", command_}, {"params", params_},
                      {"results", std::move(results)}, {"toolkit_version", kVersion},
                      {"seed", seed_},   {"wall_time_ms", ms},
                      {"exit_code", exit_code}};
    std::cout << report.dump(2) << "\n";
    if (!out_path_.empty()) io::write_json_file(out_path_, report);
    return exit_code;
  }

 private:
  std::string command_;
  json params_;
  std::uint64_t seed_;
  std::string out_path_;
  std::chrono::steady_clock::time_point start_;
};

struct NamedChannel {
  KrausChannel channel;
  std::optional<DepolarizingParams> depolarizing_params;
  std::optional<Rational> rational_t;
};

// grammar: "Z:d" | "TZ:d" | "depolarizing:d:t" with t decimal or p/q,
// or a path to a channel JSON file
NamedChannel resolve_channel(const std::string& spec) {
  const auto first = spec.find(':');
  if (first != std::string::npos) {
    const std::string name = spec.substr(0, first);
    if (name == "Z" || name == "TZ" || name == "depolarizing") {
      const std::string rest = spec.substr(first + 1);
      const auto second = rest.find(':');
      int d = 0;
      try {
        d = std::stoi(rest.substr(0, second));
      } catch (const std::exception&) {
        throw std::invalid_argument("bad dimension in channel name: " + spec);
      }
      if (name == "Z" || name == "TZ") {
        if (second != std::string::npos) {
          throw std::invalid_argument("unexpected parameter in channel name: " + spec);
        }
        const double t = 1.0 / (d + 1.0);
        KrausChannel z = zee_channel(d);
        if (name == "TZ") {
          return {compose_transpose(z), std::nullopt, std::nullopt};
        }
        return {std::move(z), DepolarizingParams{d, t}, Rational(1, d + 1)};
      }
      if (second == std::string::npos) {
        throw std::invalid_argument("depolarizing channel needs a t parameter: " + spec);
      }
      const std::string t_text = rest.substr(second + 1);
      std::optional<Rational> rat = Rational::parse(t_text);
      double t = 0.0;
      if (rat) {
        t = rat->value();
      } else {
        try {
          size_t used = 0;
          t = std::stod(t_text, &used);
          if (used != t_text.size()) throw std::invalid_argument("trailing junk");
        } catch (const std::exception&) {
          throw std::invalid_argument("bad t parameter in channel name: " + spec);
        }
      }
      return {depolarizing({d, t}), DepolarizingParams{d, t}, rat};
    }
  }
  return {io::channel_from_json(io::load_json_file(spec)), std::nullopt, std::nullopt};
}

int run_verify_sic(const std::string& in_path, int d, double tol_angle, double tol_choi,
                   const std::string& out_path) {
  ReportWriter report("verify-sic",
                      json{{"in", in_path}, {"d", d}, {"tol_angle", tol_angle}, {"tol_choi", tol_choi}},
                      0, out_path);
  const json doc = io::load_json_file(in_path);

  SicCandidate candidate = [&] {
    if (doc.contains("w")) {
      Vector w = io::vector_from_json(doc["w"]);
      if (w.size() != d) throw std::invalid_argument("fiducial dimension does not match --d");
      const double n = w.norm();
      if (n <= 0.0) throw std::invalid_argument("fiducial vector is zero");
      return weyl_orbit(Fiducial(d, w / n));
    }
    if (doc.contains("vectors")) {
      SicCandidate c = io::candidate_from_json(doc);
      if (c.d != d) throw std::invalid_argument("candidate dimension does not match --d");
      return c;
    }
    throw std::invalid_argument("input must contain a fiducial \"w\" or a \"vectors\" list");
  }();

  const AngleReport angles = angle_report(candidate);
  const SicVerification ver = verify_sic_povm(candidate, tol_angle);
  const bool resolution_ok = resolution_identity_check(candidate, tol_angle);
  bool symmetric_ok = false;
  if (angles.max_norm_dev <= 1e-8) {
    symmetric_ok = sic_symmetric_decomposition_check(candidate.vectors, tol_choi);
  }

  const bool pass = ver.all_ok() && resolution_ok && symmetric_ok;
  json results{
      {"angle_min", with_tol(angles.min_offdiag, tol_angle)},
      {"angle_max", with_tol(angles.max_offdiag, tol_angle)},
      {"angle_target", angles.target},
      {"max_angle_dev", with_tol(angles.max_angle_dev(), tol_angle)},
      {"max_norm_dev", with_tol(angles.max_norm_dev, 1e-10)},
      {"povm_sum_ok", ver.povm_sum_ok},
      {"info_complete_ok", ver.info_complete_ok},
      {"symmetric_ok", ver.symmetric_ok},
      {"rank_one_ok", ver.rank_one_ok},
      {"resolution_identity_ok", resolution_ok},
      {"symmetric_decomposition_ok", symmetric_ok},
      {"pass", pass},
  };
  return report.finish(pass ? 0 : 1, std::move(results));
}

int run_scan(int d, double t_min, double t_max, int steps, std::uint64_t seed, int k, int restarts,
             double tol_choi, const std::string& out_path) {
  if (steps < 1) throw std::invalid_argument("--steps must be at least 1");
  if (!(t_min <= t_max)) throw std::invalid_argument("invalid range: need t_min <= t_max");
  const bool closed_form = d == 2 || d == 3;
  const double hi = d == 2 ? 1.0 / 3.0 : (d == 3 ? 0.25 : 1.0 / (d + 1.0));
  if (closed_form && (t_min < -1e-12 || t_max > hi + 1e-12)) {
    throw std::invalid_argument("invalid range: closed-form families cover [0, 1/(d+1)] only");
  }

  ReportWriter report("scan",
                      json{{"d", d}, {"t_min", t_min}, {"t_max", t_max}, {"steps", steps},
                           {"k", k}, {"restarts", restarts}, {"mode", closed_form ? "closed-form" : "search"},
                           {"tol_choi", tol_choi}},
                      seed, out_path);

  json rows = json::array();
  bool all_ok = true;
  for (int i = 0; i < steps; ++i) {
    const double t = steps == 1 ? t_min : t_min + (t_max - t_min) * i / (steps - 1.0);
    if (closed_form) {
      const RankOneKrausFamily fam = d == 2 ? d2_family(t) : d3_family(t);
      const double dist = choi_distance(family_choi(fam), choi(depolarizing_action(d, t)));
      const KrausChannel ch = family_to_channel(fam);
      Matrix tp_sum = Matrix::Zero(d, d);
      for (const auto& r : ch.kraus) tp_sum += r.adjoint() * r;
      const double tp_residual = (tp_sum - Matrix::Identity(d, d)).norm();
      const Vector x = d == 2 ? d2_xy(t).first : d3_xy(t).first;
      const AngleReport angles = angle_report(weyl_orbit(Fiducial(d, x)));
      all_ok = all_ok && dist <= tol_choi;
      rows.push_back(json{{"t", t},
                          {"choi_distance", dist},
                          {"tp_residual", tp_residual},
                          {"angle_min", angles.min_offdiag},
                          {"angle_max", angles.max_offdiag}});
    } else {
      OptimizerConfig cfg;
      cfg.seed = seed + static_cast<std::uint64_t>(i);
      cfg.restarts = restarts;
      const int kk = k > 0 ? k : d * d;
      const DecompositionResult res =
          rank_one_decompose(DecompositionProblem(choi(depolarizing_action(d, t)), kk), cfg);
      all_ok = all_ok && res.converged;
      rows.push_back(json{{"t", t}, {"k", kk}, {"residual", res.residual},
                          {"converged", res.converged}});
    }
  }
  json results{{"rows", std::move(rows)}, {"all_ok", all_ok}, {"tol_choi", tol_choi}};
  return report.finish(all_ok ? 0 : 1, std::move(results));
}

int run_mub(int d, double tol_choi, const std::string& out_path) {
  if (!is_prime(d)) throw std::invalid_argument("--d must be prime for the MUB construction");
  ReportWriter report("mub", json{{"d", d}, {"tol_choi", tol_choi}}, 0, out_path);

  const MubFamily f = construct_mub(d);
  const UnbiasedReport rep = verify_unbiased(f);
  const MubChannelResult res = mub_channel(f);
  const double dist = choi_distance(choi(res.channel), choi(zee_action(d)));
  const Lemma52Basis basis = lemma52_basis(f);

  const bool pass = rep.ok(1e-9) && dist <= tol_choi && basis.gram_rank == d * d;
  json results{
      {"max_ortho_dev", with_tol(rep.max_ortho_dev, 1e-9)},
      {"max_unbiased_dev", with_tol(rep.max_unbiased_dev, 1e-9)},
      {"max_projection_dev", with_tol(rep.max_projection_dev, 1e-9)},
      {"channel_distance_to_zee", with_tol(dist, tol_choi)},
      {"witness_cardinality", res.witness.size()},
      {"ebr_upper_bound", res.witness.size()},
      {"lemma52_gram_rank", basis.gram_rank},
      {"pass", pass},
  };
  return report.finish(pass ? 0 : 1, std::move(results));
}

int run_decompose(const std::string& target_spec, int k, std::uint64_t seed, int restarts,
                  const std::string& out_path, const std::string& trace_path) {
  ReportWriter report("decompose",
                      json{{"target", target_spec}, {"k", k}, {"restarts", restarts}},
                      seed, out_path);
  const NamedChannel target = resolve_channel(target_spec);

  OptimizerConfig cfg;
  cfg.seed = seed;
  if (restarts > 0) cfg.restarts = restarts;

  std::ofstream trace_file;
  TraceFn trace = nullptr;
  if (!trace_path.empty()) {
    trace_file.open(trace_path);
    if (!trace_file) throw std::invalid_argument("cannot write trace file: " + trace_path);
    trace = [&trace_file](int iter, double objective, double step) {
      trace_file << json{{"iter", iter}, {"objective", objective}, {"step", step}}.dump() << "\n";
    };
  }

  const DecompositionResult res =
      rank_one_decompose(DecompositionProblem(choi(target.channel), k), cfg, trace);
  json results{
      {"residual", with_tol(res.residual, cfg.residual_accept)},
      {"converged", res.converged},
      {"restarts_used", res.restarts_used},
      {"iters", res.iters},
      {"choi_rank", choi_rank(target.channel)},
      {"family", io::family_to_json(res.family)},
  };
  return report.finish(res.converged ? 0 : 1, std::move(results));
}

int run_fiducial(int d, std::uint64_t seed, int restarts, const std::string& out_path,
                 const std::string& trace_path) {
  ReportWriter report("fiducial", json{{"d", d}, {"restarts", restarts}}, seed, out_path);

  OptimizerConfig cfg;
  cfg.seed = seed;
  if (restarts > 0) cfg.restarts = restarts;

  std::ofstream trace_file;
  TraceFn trace = nullptr;
  if (!trace_path.empty()) {
    trace_file.open(trace_path);
    if (!trace_file) throw std::invalid_argument("cannot write trace file: " + trace_path);
    trace = [&trace_file](int iter, double objective, double step) {
      trace_file << json{{"iter", iter}, {"objective", objective}, {"step", step}}.dump() << "\n";
    };
  }

  const FiducialSearchResult res = fiducial_search(d, cfg, trace);
  const SicCandidate orbit = weyl_orbit(res.fiducial);
  const AngleReport angles = angle_report(orbit);
  const bool verified = res.success && verify_sic_povm(orbit, 1e-5).all_ok() &&
                        resolution_identity_check(orbit, 1e-5);
  json results{
      {"success", res.success},
      {"verified", verified},
      {"max_angle_dev", with_tol(res.max_angle_dev, 1e-6)},
      {"frame_potential", res.potential},
      {"angle_min", angles.min_offdiag},
      {"angle_max", angles.max_offdiag},
      {"restarts_used", res.restarts_used},
      {"fiducial", io::fiducial_to_json(res.fiducial)},
  };
  return report.finish(verified ? 0 : 1, std::move(results));
}

int run_channel_info(const std::string& spec, const std::string& out_path) {
  ReportWriter report("channel-info", json{{"channel", spec}}, 0, out_path);
  const NamedChannel named = resolve_channel(spec);
  const KrausChannel& ch = named.channel;

  json results{
      {"d_in", ch.d_in},
      {"d_out", ch.d_out},
      {"kraus_count", ch.kraus.size()},
      {"choi_rank", choi_rank(ch)},
      {"trace_preserving", is_trace_preserving(ch)},
      {"unital", is_unital(ch)},
      {"cp", is_cp(ch)},
      {"ppt", ppt_check(ch)},
  };
  if (named.depolarizing_params) {
    const auto& p = *named.depolarizing_params;
    const DepolarizingClass cls = named.rational_t ? classify_depolarizing(p.d, *named.rational_t)
                                                   : classify_depolarizing(p.d, p.t);
    results["depolarizing"] = json{{"d", p.d},
                                   {"t", p.t},
                                   {"is_channel", cls.is_channel},
                                   {"is_transpose_channel", cls.is_transpose_channel},
                                   {"is_eb", cls.is_eb}};
  }
  return report.finish(0, std::move(results));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ebrkit: rank-one Kraus decompositions, SIC POVM verification, and MUB witnesses"};
  app.require_subcommand(1);

  int d = 2;
  int k = 0;
  int steps = 34;
  int restarts = 0;
  double t_min = 0.0, t_max = 0.0;
  double tol_angle = 1e-8, tol_choi = 1e-9;
  std::uint64_t seed = 0;
  std::string in_path, out_path, trace_path, target_spec, channel_spec;

  auto* verify = app.add_subcommand("verify-sic", "verify a fiducial or d^2 vector list");
  verify->add_option("--d", d, "dimension")->required();
  verify->add_option("--in", in_path, "fiducial or vector-list JSON file")->required();
  verify->add_option("--tol-angle", tol_angle, "angle tolerance (default 1e-8)");
  verify->add_option("--tol-choi", tol_choi, "matrix-identity tolerance (default 1e-9)");
  verify->add_option("--out", out_path, "write the JSON report here too");

  auto* scan = app.add_subcommand("scan", "grid scan of the depolarizing family decompositions");
  scan->add_option("--d", d, "dimension")->required();
  scan->add_option("--t-min", t_min, "grid start (default 0)");
  scan->add_option("--t-max", t_max, "grid end (default 1/(d+1))");
  scan->add_option("--steps", steps, "grid size (default 34)");
  scan->add_option("--k", k, "factor count in search mode (default d^2)");
  scan->add_option("--seed", seed, "optimizer seed");
  scan->add_option("--restarts", restarts, "optimizer restarts");
  scan->add_option("--tol-choi", tol_choi, "Choi distance tolerance (default 1e-9)");
  scan->add_option("--out", out_path, "write the JSON report here too");

  auto* mub = app.add_subcommand("mub", "construct and verify d+1 MUB and the induced zee witness");
  mub->add_option("--d", d, "prime dimension")->required();
  mub->add_option("--tol-choi", tol_choi, "Choi distance tolerance (default 1e-9)");
  mub->add_option("--out", out_path, "write the JSON report here too");

  auto* decompose = app.add_subcommand("decompose", "fit K rank-one Kraus factors to a channel");
  decompose->add_option("--target", target_spec, "named channel (Z:d, TZ:d, depolarizing:d:t) or JSON file")
      ->required();
  decompose->add_option("--k", k, "number of rank-one factors")->required();
  decompose->add_option("--seed", seed, "optimizer seed");
  decompose->add_option("--restarts", restarts, "optimizer restarts (default 32)");
  decompose->add_option("--out", out_path, "write the JSON report here too");
  decompose->add_option("--trace", trace_path, "stream {iter, objective, step} JSON lines here");

  auto* fiducial = app.add_subcommand("fiducial", "search for a Weyl-covariant SIC fiducial");
  fiducial->add_option("--d", d, "dimension")->required();
  fiducial->add_option("--seed", seed, "optimizer seed");
  fiducial->add_option("--restarts", restarts, "optimizer restarts (default 32)");
  fiducial->add_option("--out", out_path, "write the JSON report here too");
  fiducial->add_option("--trace", trace_path, "stream {iter, objective, step} JSON lines here");

  auto* info = app.add_subcommand("channel-info", "report rank and positivity structure");
  info->add_option("--channel", channel_spec, "named channel or JSON file")->required();
  info->add_option("--out", out_path, "write the JSON report here too");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (verify->parsed()) return run_verify_sic(in_path, d, tol_angle, tol_choi, out_path);
    if (scan->parsed()) {
      if (scan->count("--t-max") == 0) t_max = 1.0 / (d + 1.0);
      return run_scan(d, t_min, t_max, steps, seed, k, restarts, tol_choi, out_path);
    }
    if (mub->parsed()) return run_mub(d, tol_choi, out_path);
    if (decompose->parsed())
      return run_decompose(target_spec, k, seed, restarts, out_path, trace_path);
    if (fiducial->parsed()) return run_fiducial(d, seed, restarts, out_path, trace_path);
    if (info->parsed()) return run_channel_info(channel_spec, out_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
