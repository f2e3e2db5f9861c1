// SPDX-License-Identifier: Apache-2.0
#include "bilintang.h"

#include <cstring>
#include <fstream>
#include <sstream>

#include "bilintang/bench.hpp"
#include "bilintang/io.hpp"
#include "bilintang/recipes.hpp"
#include "bilintang/rom.hpp"
#include "bilintang/verify.hpp"
#include "json.hpp"

using namespace bilintang;

struct bt_system {
  StructuredBilinearSystem sys;
};

struct bt_reduction {
  ReducedModel rom;
  InterpolationSpec spec;
  RecipeOptions options;
  // Copy of the reduced system exposed through the opaque system type;
  // reduced models are small, so the duplication is negligible.
  bt_system reduced;

  bt_reduction(ReducedModel rom_in, InterpolationSpec spec_in,
               RecipeOptions options_in)
      : rom(std::move(rom_in)), spec(std::move(spec_in)),
        options(std::move(options_in)), reduced{rom.system} {}
};

namespace {

thread_local std::string g_last_error;

void setError(const std::string &message) { g_last_error = message; }

ProjectionSide sideFromName(const std::string &name) {
  if (name == "two-sided") {
    return ProjectionSide::TwoSided;
  }
  if (name == "one-sided-v") {
    return ProjectionSide::OneSidedV;
  }
  if (name == "one-sided-w") {
    return ProjectionSide::OneSidedW;
  }
  throw std::invalid_argument(
      "unknown projection side '" + name +
      "' (valid: two-sided, one-sided-v, one-sided-w)");
}

std::string sideName(ProjectionSide side) {
  switch (side) {
  case ProjectionSide::OneSidedV:
    return "one-sided-v";
  case ProjectionSide::OneSidedW:
    return "one-sided-w";
  default:
    return "two-sided";
  }
}

RecipeOptions toRecipe(const bt_reduce_options &opts) {
  RecipeOptions recipe;
  recipe.framework = frameworkFromName(opts.framework ? opts.framework : "");
  recipe.side = sideFromName(opts.side ? opts.side : "");
  recipe.a = opts.a;
  recipe.b = opts.b;
  recipe.count = opts.count;
  recipe.level = opts.level;
  recipe.hermite_order = opts.hermite_order;
  recipe.identical_points = opts.identical_points != 0;
  recipe.realify = opts.realify != 0;
  recipe.truncation_tol = opts.truncation_tol;
  recipe.seed = opts.seed;
  return recipe;
}

template <typename Fn> bt_status guard(Fn &&fn) {
  try {
    fn();
    return BT_OK;
  } catch (const SingularMatrixError &err) {
    std::ostringstream msg;
    msg << err.what() << " at point (" << err.point().real() << ", "
        << err.point().imag() << "i)";
    setError(msg.str());
    return BT_ERR_SINGULAR;
  } catch (const std::invalid_argument &err) {
    setError(err.what());
    return BT_ERR_INVALID;
  } catch (const std::exception &err) {
    setError(err.what());
    const std::string what = err.what();
    if (what.find("cannot open") != std::string::npos ||
        what.find("write failure") != std::string::npos ||
        what.find("Matrix Market") != std::string::npos) {
      return BT_ERR_IO;
    }
    return BT_ERR_INVALID;
  }
}

bt_status checkMatchingDims(const StructuredBilinearSystem &a,
                            const StructuredBilinearSystem &b) {
  if (a.m() != b.m() || a.p() != b.p()) {
    setError("models have mismatched input/output dimensions");
    return BT_ERR_DIMENSION;
  }
  return BT_OK;
}

} // namespace

extern "C" {

const char *bt_last_error(void) { return g_last_error.c_str(); }

bt_status bt_gen_msd(int64_t n, bt_system **out) {
  return guard([&] { *out = new bt_system{makeMsd(n)}; });
}

bt_status bt_gen_delay_rod(int64_t n, int64_t m, int64_t p, double tau,
                           bt_system **out) {
  return guard([&] { *out = new bt_system{makeDelayRod(n, m, p, tau)}; });
}

bt_status bt_gen_heat2d(int64_t nx, int64_t ny, bt_system **out) {
  return guard([&] { *out = new bt_system{makeHeat2d(nx, ny)}; });
}

bt_status bt_system_load(const char *dir, bt_system **out) {
  return guard([&] { *out = new bt_system{loadSystem(dir)}; });
}

bt_status bt_system_save(const bt_system *sys, const char *dir) {
  return guard([&] { saveSystem(dir, sys->sys); });
}

void bt_system_free(bt_system *sys) { delete sys; }

bt_status bt_system_dims(const bt_system *sys, int64_t *n, int64_t *m,
                         int64_t *p) {
  if (!sys) {
    setError("null system handle");
    return BT_ERR_INVALID;
  }
  if (n) {
    *n = sys->sys.n();
  }
  if (m) {
    *m = sys->sys.m();
  }
  if (p) {
    *p = sys->sys.p();
  }
  return BT_OK;
}

void bt_reduce_options_init(bt_reduce_options *opts) {
  std::memset(opts, 0, sizeof(*opts));
  opts->framework = "SttInt";
  opts->side = "two-sided";
  opts->a = -4.0;
  opts->b = 4.0;
  opts->count = 6;
  opts->level = 2;
  opts->realify = 1;
  opts->truncation_tol = 1e-10;
}

bt_status bt_reduce(const bt_system *sys, const bt_reduce_options *opts,
                    bt_reduction **out) {
  return guard([&] {
    const RecipeOptions recipe = toRecipe(*opts);
    const InterpolationSpec spec =
        makeRecipeSpec(sys->sys.m(), sys->sys.p(), recipe);
    const ReductionBases bases = assembleBases(sys->sys, spec);
    *out = new bt_reduction{project(sys->sys, bases), spec, recipe};
  });
}

void bt_reduction_free(bt_reduction *red) { delete red; }

int64_t bt_reduction_order(const bt_reduction *red) {
  return red ? red->rom.r() : -1;
}

int64_t bt_reduction_raw_width_v(const bt_reduction *red) {
  return red ? red->rom.bases.raw_width_V : -1;
}

int64_t bt_reduction_raw_width_w(const bt_reduction *red) {
  return red ? red->rom.bases.raw_width_W : -1;
}

const bt_system *bt_reduction_system(const bt_reduction *red) {
  return &red->reduced;
}

bt_status bt_reduction_save(const bt_reduction *red, const char *dir) {
  return guard([&] {
    const std::string base(dir);
    saveSystem(base, red->rom.system);
    saveBases(base, red->rom.bases);
    nlohmann::json recipe;
    recipe["framework"] = frameworkName(red->options.framework);
    recipe["side"] = sideName(red->options.side);
    recipe["a"] = red->options.a;
    recipe["b"] = red->options.b;
    recipe["count"] = red->options.count;
    recipe["level"] = red->options.level;
    recipe["hermite_order"] = red->options.hermite_order;
    recipe["identical_points"] = red->options.identical_points;
    recipe["realify"] = red->options.realify;
    recipe["truncation_tol"] = red->options.truncation_tol;
    recipe["seed"] = red->options.seed;
    recipe["parent_n"] = red->rom.parent_n;
    recipe["parent_m"] = red->rom.parent_m;
    recipe["parent_p"] = red->rom.parent_p;
    std::ofstream out(base + "/recipe.json");
    if (!out) {
      throw std::runtime_error("cannot open '" + base +
                               "/recipe.json' for writing");
    }
    out << recipe.dump(2) << '\n';
  });
}

bt_status bt_reduction_load(const bt_system *full, const char *dir,
                            bt_reduction **out) {
  bt_status status = BT_OK;
  const bt_status rc = guard([&] {
    const std::string base(dir);
    std::ifstream in(base + "/recipe.json");
    if (!in) {
      throw std::runtime_error("cannot open '" + base + "/recipe.json'");
    }
    nlohmann::json recipe = nlohmann::json::parse(in);
    if (recipe["parent_m"].get<int64_t>() != full->sys.m() ||
        recipe["parent_p"].get<int64_t>() != full->sys.p()) {
      status = BT_ERR_DIMENSION;
      throw std::runtime_error(
          "reduced bundle was built for different input/output dimensions");
    }
    RecipeOptions options;
    options.framework = frameworkFromName(recipe["framework"]);
    options.side = sideFromName(recipe["side"]);
    options.a = recipe["a"].get<double>();
    options.b = recipe["b"].get<double>();
    options.count = recipe["count"].get<int>();
    options.level = recipe["level"].get<int>();
    options.hermite_order = recipe["hermite_order"].get<int>();
    options.identical_points = recipe["identical_points"].get<bool>();
    options.realify = recipe["realify"].get<bool>();
    options.truncation_tol = recipe.value("truncation_tol", 1e-10);
    options.seed = recipe["seed"].get<std::uint64_t>();

    InterpolationSpec spec =
        makeRecipeSpec(full->sys.m(), full->sys.p(), options);
    ReductionBases bases;
    bases.V = readMatrixMarket(base + "/V.mtx");
    bases.W = readMatrixMarket(base + "/W.mtx");
    bases.real_valued = options.realify;
    ReducedModel rom{loadSystem(base), bases, full->sys.n(), full->sys.m(),
                     full->sys.p()};
    *out = new bt_reduction{std::move(rom), std::move(spec), options};
  });
  return status != BT_OK ? status : rc;
}

bt_status bt_verify(const bt_system *full, const bt_reduction *red, double tol,
                    const char *json_path, int64_t *n_pass, int64_t *n_fail,
                    int64_t *n_ill) {
  const bt_status dims =
      checkMatchingDims(full->sys, red->rom.system);
  if (dims != BT_OK) {
    return dims;
  }
  return guard([&] {
    const std::vector<ConditionReport> reports =
        checkConditions(full->sys, red->rom, red->spec, tol);
    int64_t pass = 0, fail = 0, ill = 0;
    for (const ConditionReport &rep : reports) {
      if (rep.ill_conditioned) {
        ++ill;
      } else if (rep.pass) {
        ++pass;
      } else {
        ++fail;
      }
    }
    if (n_pass) {
      *n_pass = pass;
    }
    if (n_fail) {
      *n_fail = fail;
    }
    if (n_ill) {
      *n_ill = ill;
    }
    if (json_path) {
      writeReportsJson(json_path, reports);
    }
  });
}

bt_status bt_simulate(const bt_system *sys, const char *signal, double t_f,
                      double dt, const char *csv_path) {
  return guard([&] {
    const InputSignal input = signalByName(signal, sys->sys.m());
    const Trajectory traj = simulate(sys->sys, input, t_f, dt);
    if (csv_path) {
      writeTrajectoryCsv(csv_path, traj);
    }
  });
}

bt_status bt_err_sim(const bt_system *full, const bt_system *red,
                     const char *signal, double t_f, double dt, double *out) {
  const bt_status dims = checkMatchingDims(full->sys, red->sys);
  if (dims != BT_OK) {
    return dims;
  }
  return guard([&] {
    const InputSignal input = signalByName(signal, full->sys.m());
    const Trajectory a = simulate(full->sys, input, t_f, dt);
    const Trajectory b = simulate(red->sys, input, t_f, dt);
    *out = errSim(a, b);
  });
}

bt_status bt_sweep(const bt_system *full, const bt_system *red, double a1,
                   double b1, int32_t n1, double a2, double b2, int32_t n2,
                   const char *csv_path, double *err_g1, double *err_g2) {
  const bt_status dims = checkMatchingDims(full->sys, red->sys);
  if (dims != BT_OK) {
    return dims;
  }
  return guard([&] {
    const GridErrors grid =
        gridErrors(full->sys, red->sys, a1, b1, n1, a2, b2, n2);
    if (csv_path) {
      writeGridCsv(csv_path, grid);
    }
    if (err_g1) {
      *err_g1 = grid.err_G1;
    }
    if (err_g2) {
      *err_g2 = grid.err_G2;
    }
  });
}

} // extern "C"
