// wigsim command-line front end: classify states, tabulate Wigner functions,
// draw samples, sweep Bell visibility, run detector estimates, and execute
// the validation suite.  All artifacts are CSV written atomically
// (write-then-rename); every run prints a JSON summary with the keys
// command, params, result, elapsed_ms.  Exit codes: 0 success, 1 validation
// failure, 2 bad input.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include "wigsim/csv.hpp"
#include "wigsim/detection.hpp"
#include "wigsim/fock.hpp"
#include "wigsim/gaussian.hpp"
#include "wigsim/sampling.hpp"
#include "wigsim/validate.hpp"

using nlohmann::json;
using namespace wigsim;

namespace {

void write_artifact(const std::string& path,
                    const std::function<void(std::ostream&)>& writer) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp(target);
  tmp += ".tmp";
  try {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    writer(os);
    os.flush();
    if (!os) throw std::runtime_error("failed while writing: " + path);
    os.close();
    fs::rename(tmp, target);
  } catch (...) {
    std::error_code ec;
    fs::remove(tmp, ec);
    throw;
  }
}

json rate_json(const RateEstimate& est) {
  return json{{"mean", est.mean},
              {"std_error", est.std_error},
              {"count", est.count}};
}

struct GridParams {
  double extent = 2.0;
  int steps = 20;
};

// One gaussian state chosen by the flag set; mutually exclusive selectors.
struct StateFlags {
  CLI::Option* n = nullptr;
  CLI::Option* x = nullptr;
  CLI::Option* a_re = nullptr;
  CLI::Option* a_im = nullptr;
  CLI::Option* s = nullptr;
  CLI::Option* coeff_a = nullptr;
  CLI::Option* coeff_b = nullptr;
  double n_val = 0.0, x_val = 0.0;
  double a_re_val = 0.0, a_im_val = 0.0;
  double s_val = 0.0;
  double coeff_a_val = 2.0, coeff_b_val = 2.0;

  void attach(CLI::App* cmd) {
    n = cmd->add_option("--n", n_val, "mean photon number");
    x = cmd->add_option("--x", x_val, "two-mode correlation (with --n)");
    a_re = cmd->add_option("--a", a_re_val, "coherent amplitude, real part");
    a_im = cmd->add_option("--a-im", a_im_val, "coherent amplitude, imaginary part");
    s = cmd->add_option("--s", s_val, "squeeze parameter");
    coeff_a = cmd->add_option("--A", coeff_a_val, "re-quadrature exponent coefficient");
    coeff_b = cmd->add_option("--B", coeff_b_val, "im-quadrature exponent coefficient");
  }

  bool pair_selected() const { return n->count() && x->count(); }

  SingleModeGaussian single_mode() const {
    const bool coherent_like = a_re->count() || a_im->count() || s->count();
    const bool raw = coeff_a->count() || coeff_b->count();
    if (coherent_like + raw + (n->count() > 0) > 1)
      throw std::invalid_argument(
          "choose one state family: --n | --a/--a-im/--s | --A/--B");
    if (raw) {
      if (!coeff_a->count() || !coeff_b->count())
        throw std::invalid_argument("--A and --B must be given together");
      return SingleModeGaussian::from_coeffs(coeff_a_val, coeff_b_val);
    }
    if (n->count()) return chaotic_state(n_val);
    if (s->count()) return squeezed_state({a_re_val, a_im_val}, s_val);
    if (coherent_like) return coherent_state({a_re_val, a_im_val});
    return vacuum_state();
  }
};

int run_classify(const StateFlags& st, json& params, json& result) {
  if (st.pair_selected()) {
    const auto cls = classify_two_mode(st.n_val, st.x_val);
    params = {{"n", st.n_val}, {"x", st.x_val}};
    result = {{"class", to_string(cls)},
              {"threshold", classical_bound(st.n_val)},
              {"physical_bound", 1.0}};
    return 0;
  }
  if (st.coeff_a->count() || st.coeff_b->count()) {
    if (!st.coeff_a->count() || !st.coeff_b->count())
      throw std::invalid_argument("--A and --B must be given together");
    const auto kind = single_mode_kind(st.coeff_a_val, st.coeff_b_val);
    params = {{"A", st.coeff_a_val}, {"B", st.coeff_b_val}};
    result = {{"kind", to_string(kind)},
              {"product", st.coeff_a_val * st.coeff_b_val}};
    return 0;
  }
  throw std::invalid_argument("classify needs --n/--x or --A/--B");
}

int run_wigner_grid(const StateFlags& st, const GridParams& grid,
                    const std::string& out, json& params, json& result) {
  if (!(grid.extent > 0.0) || grid.steps < 1)
    throw std::invalid_argument("grid needs --extent > 0 and --steps >= 1");
  const int nodes = grid.steps + 1;
  const double h = 2.0 * grid.extent / grid.steps;
  auto coord = [&](int i) { return -grid.extent + i * h; };
  std::size_t rows = 0;

  if (st.pair_selected()) {
    const TwoModeWigner pair(st.n_val, st.x_val);
    params = {{"n", st.n_val}, {"x", st.x_val},
              {"extent", grid.extent}, {"steps", grid.steps}};
    write_artifact(out, [&](std::ostream& os) {
      os << "re_a,im_a,re_b,im_b,w\n";
      for (int i = 0; i < nodes; ++i)
        for (int j = 0; j < nodes; ++j)
          for (int k = 0; k < nodes; ++k)
            for (int l = 0; l < nodes; ++l) {
              const double w = pair.evaluate({coord(i), coord(j)},
                                             {coord(k), coord(l)});
              os << csv::format_double(coord(i)) << ','
                 << csv::format_double(coord(j)) << ','
                 << csv::format_double(coord(k)) << ','
                 << csv::format_double(coord(l)) << ','
                 << csv::format_double(w) << '\n';
              ++rows;
            }
    });
  } else {
    const SingleModeGaussian g = st.single_mode();
    params = {{"var_re", g.var_re}, {"var_im", g.var_im},
              {"center_re", g.center.real()}, {"center_im", g.center.imag()},
              {"extent", grid.extent}, {"steps", grid.steps}};
    write_artifact(out, [&](std::ostream& os) {
      os << "re,im,w\n";
      for (int i = 0; i < nodes; ++i)
        for (int j = 0; j < nodes; ++j) {
          os << csv::format_double(coord(i)) << ','
             << csv::format_double(coord(j)) << ','
             << csv::format_double(g.evaluate({coord(i), coord(j)})) << '\n';
          ++rows;
        }
    });
  }
  result = {{"rows", rows}, {"artifact", out}};
  return 0;
}

int run_sample(const StateFlags& st, bool polarized, std::size_t count,
               std::uint64_t seed, unsigned threads, const std::string& out,
               json& params, json& result) {
  if (!st.pair_selected())
    throw std::invalid_argument("sample needs --n and --x");
  const TwoModeWigner pair(st.n_val, st.x_val, polarized);
  const auto batch = sample_two_mode(pair, count, seed, threads);
  write_artifact(out, [&](std::ostream& os) { write_csv(batch, os); });
  params = {{"n", st.n_val}, {"x", st.x_val}, {"polarized", polarized},
            {"count", count}, {"seed", seed}, {"threads", threads}};
  result = {{"rows", batch.count}, {"artifact", out}};
  return 0;
}

int run_bell_scan(const StateFlags& st, int dphi_steps, const std::string& out,
                  json& params, json& result) {
  if (!st.pair_selected())
    throw std::invalid_argument("bell-scan needs --n and --x");
  if (dphi_steps < 1)
    throw std::invalid_argument("--dphi-steps must be >= 1");
  const auto cls = classify_two_mode(st.n_val, st.x_val);
  std::optional<double> vis;
  write_artifact(out, [&](std::ostream& os) {
    os << "n,x,dphi,r12,visibility,class\n";
    for (int k = 0; k < dphi_steps; ++k) {
      const double dphi =
          dphi_steps == 1
              ? 0.0
              : k * (std::numbers::pi / 2.0) / (dphi_steps - 1);
      const auto res = coincidence_closed(st.n_val, st.x_val, dphi);
      vis = res.visibility;
      os << csv::format_double(st.n_val) << ',' << csv::format_double(st.x_val)
         << ',' << csv::format_double(dphi) << ',' << csv::format_double(res.r12)
         << ','
         << csv::format_double(res.visibility
                                   ? *res.visibility
                                   : std::numeric_limits<double>::quiet_NaN())
         << ',' << to_string(cls) << '\n';
    }
  });
  params = {{"n", st.n_val}, {"x", st.x_val}, {"dphi_steps", dphi_steps}};
  result = {{"rows", dphi_steps}, {"class", to_string(cls)}, {"artifact", out}};
  if (vis && *vis == *vis) result["visibility"] = *vis;
  return 0;
}

int run_detect(const StateFlags& st, bool polarized, const std::string& mode,
               CLI::Option* phi1_opt, CLI::Option* phi2_opt, double phi1,
               double phi2, std::size_t count, std::uint64_t seed,
               unsigned threads, json& params, json& result) {
  if (!st.pair_selected())
    throw std::invalid_argument("detect needs --n and --x");
  params = {{"n", st.n_val}, {"x", st.x_val}, {"polarized", polarized},
            {"count", count}, {"seed", seed}, {"threads", threads}};
  if (phi1_opt->count() || phi2_opt->count()) {
    if (!phi1_opt->count() || !phi2_opt->count())
      throw std::invalid_argument("--phi1 and --phi2 must be given together");
    const TwoModeWigner pair(st.n_val, st.x_val, true);
    const auto est = coincidence_mc(pair, {phi1}, {phi2}, count, seed, threads);
    params["phi1"] = phi1;
    params["phi2"] = phi2;
    result = rate_json(est);
    result["closed_form"] = coincidence_closed(st.n_val, st.x_val, phi1 - phi2).r12;
    return 0;
  }
  const TwoModeWigner pair(st.n_val, st.x_val, polarized);
  const auto batch = sample_two_mode(pair, count, seed, threads);
  int mode_index = 0;
  if (mode == "a")
    mode_index = 0;
  else if (mode == "b")
    mode_index = polarized ? 2 : 1;
  else
    throw std::invalid_argument("--mode must be a or b");
  const auto est = mc_rate(batch, mode_index);
  params["mode"] = mode;
  result = rate_json(est);
  result["expected"] = mean_rate(marginal_mode(pair));
  return 0;
}

int run_validate(const std::string& out, json& params, json& result) {
  const auto rows = run_validation();
  write_artifact(out, [&](std::ostream& os) { write_csv(rows, os); });
  std::size_t failures = 0;
  for (const auto& r : rows)
    if (!r.pass) ++failures;
  params = json::object();
  result = {{"checks", rows.size()}, {"failures", failures}, {"artifact", out}};
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochastic-optics simulator: gaussian Wigner states, "
               "photodetection Monte Carlo, and the Fock-space oracle"};
  app.require_subcommand(1);

  StateFlags cls_flags, grid_flags, sample_flags, bell_flags, detect_flags;

  auto* cmd_classify =
      app.add_subcommand("classify", "classify a state (two-mode or single-mode)");
  cls_flags.attach(cmd_classify);

  auto* cmd_grid =
      app.add_subcommand("wigner-grid", "tabulate a Wigner density on a grid");
  grid_flags.attach(cmd_grid);
  GridParams grid;
  cmd_grid->add_option("--extent", grid.extent, "grid half-width (default 2)");
  cmd_grid->add_option("--steps", grid.steps, "intervals per axis (default 20)");
  std::string grid_out;
  cmd_grid->add_option("--out", grid_out, "output CSV path")->required();

  auto* cmd_sample = app.add_subcommand("sample", "draw pair-state samples to CSV");
  sample_flags.attach(cmd_sample);
  bool sample_pol = false;
  std::size_t sample_count = 100000;
  std::uint64_t sample_seed = 0;
  unsigned sample_threads = 1;
  std::string sample_out;
  cmd_sample->add_flag("--polarized", sample_pol, "two polarization components per mode");
  cmd_sample->add_option("--count", sample_count, "number of draws (default 100000)");
  cmd_sample->add_option("--seed", sample_seed, "generator seed (default 0)");
  cmd_sample->add_option("--threads", sample_threads, "worker threads (default 1)");
  cmd_sample->add_option("--out", sample_out, "output CSV path")->required();

  auto* cmd_bell = app.add_subcommand("bell-scan", "closed-form coincidence sweep");
  bell_flags.attach(cmd_bell);
  int dphi_steps = 8;
  unsigned bell_threads = 1;
  std::string bell_out;
  cmd_bell->add_option("--dphi-steps", dphi_steps, "number of analyzer angles (default 8)");
  cmd_bell->add_option("--threads", bell_threads, "accepted for symmetry; closed form");
  cmd_bell->add_option("--out", bell_out, "output CSV path")->required();

  auto* cmd_detect = app.add_subcommand("detect", "Monte Carlo detection estimate");
  detect_flags.attach(cmd_detect);
  bool detect_pol = false;
  std::string detect_mode = "a";
  double phi1 = 0.0, phi2 = 0.0;
  std::size_t detect_count = 100000;
  std::uint64_t detect_seed = 0;
  unsigned detect_threads = 1;
  cmd_detect->add_flag("--polarized", detect_pol, "two polarization components per mode");
  cmd_detect->add_option("--mode", detect_mode, "which mode to detect: a or b");
  auto* phi1_opt = cmd_detect->add_option("--phi1", phi1, "analyzer 1 angle (coincidence)");
  auto* phi2_opt = cmd_detect->add_option("--phi2", phi2, "analyzer 2 angle (coincidence)");
  cmd_detect->add_option("--count", detect_count, "number of draws (default 100000)");
  cmd_detect->add_option("--seed", detect_seed, "generator seed (default 0)");
  cmd_detect->add_option("--threads", detect_threads, "worker threads (default 1)");

  auto* cmd_validate = app.add_subcommand("validate", "run the oracle validation suite");
  std::string validate_out = "validate.csv";
  cmd_validate->add_option("--out", validate_out, "report CSV path (default validate.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }

  const auto started = std::chrono::steady_clock::now();
  json params = json::object(), result = json::object();
  std::string command;
  int code = 0;
  try {
    if (app.got_subcommand(cmd_classify)) {
      command = "classify";
      code = run_classify(cls_flags, params, result);
    } else if (app.got_subcommand(cmd_grid)) {
      command = "wigner-grid";
      code = run_wigner_grid(grid_flags, grid, grid_out, params, result);
    } else if (app.got_subcommand(cmd_sample)) {
      command = "sample";
      code = run_sample(sample_flags, sample_pol, sample_count, sample_seed,
                        sample_threads, sample_out, params, result);
    } else if (app.got_subcommand(cmd_bell)) {
      command = "bell-scan";
      code = run_bell_scan(bell_flags, dphi_steps, bell_out, params, result);
    } else if (app.got_subcommand(cmd_detect)) {
      command = "detect";
      code = run_detect(detect_flags, detect_pol, detect_mode, phi1_opt,
                        phi2_opt, phi1, phi2, detect_count, detect_seed,
                        detect_threads, params, result);
    } else {
      command = "validate";
      code = run_validate(validate_out, params, result);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }

  const double elapsed =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                started)
          .count();
  const json summary{{"command", command},
                     {"params", params},
                     {"result", result},
                     {"elapsed_ms", elapsed}};
  std::cout << summary.dump(2) << std::endl;
  return code;
}
