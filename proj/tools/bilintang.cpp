// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: gen | reduce | verify | simulate | sweep | report.
// Exit codes: 0 success, 2 invalid usage, 3 singular K at a point,
// 4 mismatched input/output dimensions, 1 other failures.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "bilintang.h"

namespace {

int exitCode(bt_status status) {
  switch (status) {
  case BT_OK:
    return 0;
  case BT_ERR_INVALID:
    return 2;
  case BT_ERR_SINGULAR:
    return 3;
  case BT_ERR_DIMENSION:
    return 4;
  default:
    return 1;
  }
}

int fail(bt_status status) {
  std::cerr << "error: " << bt_last_error() << "\n";
  return exitCode(status);
}

using SystemPtr = std::unique_ptr<bt_system, decltype(&bt_system_free)>;
using ReductionPtr =
    std::unique_ptr<bt_reduction, decltype(&bt_reduction_free)>;

struct GenOptions {
  std::string family;
  std::int64_t n = 1000;
  std::int64_t m = 5;
  std::int64_t p = 2;
  std::int64_t nx = 8;
  std::int64_t ny = 8;
  double tau = 1.0;
};

bt_status generate(const GenOptions &gen, bt_system **out) {
  if (gen.family == "msd") {
    return bt_gen_msd(gen.n, out);
  }
  if (gen.family == "delay_rod") {
    return bt_gen_delay_rod(gen.n, gen.m, gen.p, gen.tau, out);
  }
  if (gen.family == "heat2d") {
    return bt_gen_heat2d(gen.nx, gen.ny, out);
  }
  return BT_ERR_INVALID;
}

SystemPtr loadModel(const std::string &dir, bt_status &status) {
  bt_system *raw = nullptr;
  status = bt_system_load(dir.c_str(), &raw);
  return SystemPtr(raw, &bt_system_free);
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"structure-preserving interpolatory reduction of bilinear "
               "systems"};
  app.require_subcommand(1);
  app.set_config("--config");
  int threads = 1;
  app.add_option("--threads", threads, "parallelism cap (modules)");

  GenOptions gen;
  std::string out_dir, model_dir, reduced_dir, csv_path, json_path;

  CLI::App *cmd_gen = app.add_subcommand("gen", "generate a benchmark bundle");
  cmd_gen->add_option("--family", gen.family,
                      "benchmark family: msd | delay_rod | heat2d")
      ->required();
  cmd_gen->add_option("--n", gen.n, "state dimension");
  cmd_gen->add_option("--m", gen.m, "inputs (delay_rod)");
  cmd_gen->add_option("--p", gen.p, "outputs (delay_rod)");
  cmd_gen->add_option("--nx", gen.nx, "grid width (heat2d)");
  cmd_gen->add_option("--ny", gen.ny, "grid height (heat2d)");
  cmd_gen->add_option("--tau", gen.tau, "delay (delay_rod)");
  cmd_gen->add_option("--out", out_dir, "output bundle directory")->required();

  bt_reduce_options ropts;
  bt_reduce_options_init(&ropts);
  std::string framework = "SttInt", side = "two-sided";
  double rd_a = ropts.a, rd_b = ropts.b;
  int rd_count = ropts.count, rd_level = ropts.level, rd_hermite = 0;
  bool identical = false, no_realify = false;
  double trunc_tol = ropts.truncation_tol;
  std::uint64_t seed = 0;

  CLI::App *cmd_reduce =
      app.add_subcommand("reduce", "build an interpolatory reduced model");
  cmd_reduce->add_option("--model", model_dir, "full model bundle")->required();
  cmd_reduce->add_option("--framework", framework,
                         "modified | SftInt | SttInt | BwtInt | MtxInt");
  cmd_reduce->add_option("--side", side,
                         "two-sided | one-sided-v | one-sided-w");
  cmd_reduce->add_option("--a", rd_a, "logspace start decade");
  cmd_reduce->add_option("--b", rd_b, "logspace end decade");
  cmd_reduce->add_option("--count", rd_count, "number of frequencies");
  cmd_reduce->add_option("--level", rd_level, "transfer-function depth k");
  cmd_reduce->add_option("--hermite", rd_hermite, "derivative order per point");
  cmd_reduce->add_flag("--identical-points", identical,
                       "identical-point two-sided mode");
  cmd_reduce->add_flag("--no-realify", no_realify,
                       "keep complex basis columns");
  cmd_reduce->add_option("--trunc-tol", trunc_tol,
                         "rank-truncation tolerance (0 keeps all columns)");
  cmd_reduce->add_option("--seed", seed, "direction seed");
  cmd_reduce->add_option("--out", out_dir, "reduced bundle directory")
      ->required();

  double tol = 1e-8;
  CLI::App *cmd_verify =
      app.add_subcommand("verify", "check the interpolation conditions");
  cmd_verify->add_option("--model", model_dir, "full model bundle")->required();
  cmd_verify->add_option("--reduced", reduced_dir, "reduced bundle")
      ->required();
  cmd_verify->add_option("--tol", tol, "relative pass tolerance");
  cmd_verify->add_option("--json", json_path, "report JSON path");

  std::string signal = "step";
  double t_f = 1.0, dt = 1e-3;
  CLI::App *cmd_sim = app.add_subcommand("simulate", "time-domain simulation");
  cmd_sim->add_option("--model", model_dir, "model bundle")->required();
  cmd_sim->add_option("--signal", signal,
                      "zero | step | msd_bench | rod_bench");
  cmd_sim->add_option("--tf", t_f, "final time");
  cmd_sim->add_option("--dt", dt, "time step");
  cmd_sim->add_option("--out", csv_path, "trajectory CSV")->required();

  double a1 = -4.0, b1 = 4.0, a2 = -4.0, b2 = 4.0;
  int n1 = 100, n2 = 0;
  CLI::App *cmd_sweep =
      app.add_subcommand("sweep", "frequency-response error surfaces");
  cmd_sweep->add_option("--model", model_dir, "full model bundle")->required();
  cmd_sweep->add_option("--reduced", reduced_dir, "reduced bundle")
      ->required();
  cmd_sweep->add_option("--a1", a1, "G1 start decade");
  cmd_sweep->add_option("--b1", b1, "G1 end decade");
  cmd_sweep->add_option("--n1", n1, "G1 grid points");
  cmd_sweep->add_option("--a2", a2, "G2 start decade");
  cmd_sweep->add_option("--b2", b2, "G2 end decade");
  cmd_sweep->add_option("--n2", n2, "G2 grid points per axis (0 = skip)");
  cmd_sweep->add_option("--out", csv_path, "error CSV")->required();

  CLI::App *cmd_report =
      app.add_subcommand("report", "summarize a reduced bundle");
  cmd_report->add_option("--reduced", reduced_dir, "reduced bundle")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  if (cmd_gen->parsed()) {
    bt_system *sys = nullptr;
    bt_status status = generate(gen, &sys);
    if (status != BT_OK) {
      if (gen.family != "msd" && gen.family != "delay_rod" &&
          gen.family != "heat2d") {
        std::cerr << "error: unknown family '" << gen.family
                  << "' (valid: msd, delay_rod, heat2d)\n";
        return 2;
      }
      return fail(status);
    }
    SystemPtr holder(sys, &bt_system_free);
    status = bt_system_save(sys, out_dir.c_str());
    if (status != BT_OK) {
      return fail(status);
    }
    std::int64_t n = 0, m = 0, p = 0;
    bt_system_dims(sys, &n, &m, &p);
    std::cout << "family=" << gen.family << " n=" << n << " m=" << m
              << " p=" << p << " out=" << out_dir << "\n";
    return 0;
  }

  if (cmd_reduce->parsed()) {
    bt_status status = BT_OK;
    SystemPtr sys = loadModel(model_dir, status);
    if (status != BT_OK) {
      return fail(status);
    }
    ropts.framework = framework.c_str();
    ropts.side = side.c_str();
    ropts.a = rd_a;
    ropts.b = rd_b;
    ropts.count = rd_count;
    ropts.level = rd_level;
    ropts.hermite_order = rd_hermite;
    ropts.identical_points = identical ? 1 : 0;
    ropts.realify = no_realify ? 0 : 1;
    ropts.truncation_tol = trunc_tol;
    ropts.seed = seed;
    bt_reduction *red = nullptr;
    status = bt_reduce(sys.get(), &ropts, &red);
    if (status != BT_OK) {
      return fail(status);
    }
    ReductionPtr holder(red, &bt_reduction_free);
    status = bt_reduction_save(red, out_dir.c_str());
    if (status != BT_OK) {
      return fail(status);
    }
    std::cout << "framework=" << framework << " r=" << bt_reduction_order(red)
              << " raw_V=" << bt_reduction_raw_width_v(red)
              << " raw_W=" << bt_reduction_raw_width_w(red)
              << " out=" << out_dir << "\n";
    return 0;
  }

  if (cmd_verify->parsed()) {
    bt_status status = BT_OK;
    SystemPtr sys = loadModel(model_dir, status);
    if (status != BT_OK) {
      return fail(status);
    }
    bt_reduction *red = nullptr;
    status = bt_reduction_load(sys.get(), reduced_dir.c_str(), &red);
    if (status != BT_OK) {
      return fail(status);
    }
    ReductionPtr holder(red, &bt_reduction_free);
    std::int64_t n_pass = 0, n_fail = 0, n_ill = 0;
    status = bt_verify(sys.get(), red, tol,
                       json_path.empty() ? nullptr : json_path.c_str(),
                       &n_pass, &n_fail, &n_ill);
    if (status != BT_OK) {
      return fail(status);
    }
    std::cout << "pass=" << n_pass << " fail=" << n_fail
              << " ill_conditioned=" << n_ill << "\n";
    return n_fail == 0 ? 0 : 1;
  }

  if (cmd_sim->parsed()) {
    bt_status status = BT_OK;
    SystemPtr sys = loadModel(model_dir, status);
    if (status != BT_OK) {
      return fail(status);
    }
    status = bt_simulate(sys.get(), signal.c_str(), t_f, dt, csv_path.c_str());
    if (status != BT_OK) {
      return fail(status);
    }
    std::cout << "signal=" << signal << " tf=" << t_f << " out=" << csv_path
              << "\n";
    return 0;
  }

  if (cmd_sweep->parsed()) {
    bt_status status = BT_OK;
    SystemPtr sys = loadModel(model_dir, status);
    if (status != BT_OK) {
      return fail(status);
    }
    bt_reduction *red = nullptr;
    status = bt_reduction_load(sys.get(), reduced_dir.c_str(), &red);
    if (status != BT_OK) {
      return fail(status);
    }
    ReductionPtr holder(red, &bt_reduction_free);
    double err_g1 = 0.0, err_g2 = 0.0;
    status = bt_sweep(sys.get(), bt_reduction_system(red), a1, b1, n1, a2, b2,
                      n2, csv_path.c_str(), &err_g1, &err_g2);
    if (status != BT_OK) {
      return fail(status);
    }
    std::printf("err_G1=%.6e", err_g1);
    if (n2 > 0) {
      std::printf(" err_G2=%.6e", err_g2);
    }
    std::printf(" out=%s\n", csv_path.c_str());
    return 0;
  }

  if (cmd_report->parsed()) {
    // Summary straight from the bundle files; no numerics involved.
    std::ifstream recipe_in(reduced_dir + "/recipe.json");
    std::ifstream prov_in(reduced_dir + "/provenance.json");
    std::ifstream desc_in(reduced_dir + "/descriptor.json");
    if (!recipe_in || !prov_in || !desc_in) {
      std::cerr << "error: '" << reduced_dir
                << "' is not a reduced bundle (missing recipe/provenance)\n";
      return 2;
    }
    const nlohmann::json recipe = nlohmann::json::parse(recipe_in);
    const nlohmann::json prov = nlohmann::json::parse(prov_in);
    const nlohmann::json desc = nlohmann::json::parse(desc_in);
    std::cout << "template   " << desc["template"].get<std::string>() << "\n"
              << "order      " << desc["n"] << " (from n="
              << recipe["parent_n"] << ")\n"
              << "framework  " << recipe["framework"].get<std::string>()
              << " (" << recipe["side"].get<std::string>() << ")\n"
              << "points     i*logspace(" << recipe["a"] << ", " << recipe["b"]
              << ", " << recipe["count"] << "), level " << recipe["level"]
              << ", seed " << recipe["seed"] << "\n"
              << "raw widths V=" << prov["raw_width_V"]
              << " W=" << prov["raw_width_W"] << "\n"
              << "columns    V=" << prov["V"].size()
              << " W=" << prov["W"].size() << "\n";
    return 0;
  }

  return 2;
}
