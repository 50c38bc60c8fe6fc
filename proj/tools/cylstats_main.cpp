// Command-line front end: CSV ingestion, model fitting and comparison,
// likelihood-ratio testing, sampling, moment reports, regression prediction,
// and density-grid export.  Machine-readable output (JSON or CSV) goes to
// stdout, human-readable diagnostics to stderr; the exit code is 0 exactly
// when the command itself succeeded.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cylstats/cylstats.hpp"

namespace cs = cylstats;
using json = nlohmann::ordered_json;

namespace {

// 17 significant digits: enough for an exact double round trip in CSV cells
std::string num17(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

json fit_to_json(const cs::FitResult& fit) {
  json j;
  j["model"] = cs::model_name(fit.model);
  j["estimates"] = json::object();
  for (const auto& [key, value] : fit.estimates) j["estimates"][key] = value;
  j["mll"] = fit.mll;
  j["aic"] = fit.aic;
  j["bic"] = fit.bic;
  j["n"] = fit.n;
  j["iterations"] = fit.iterations;
  j["converged"] = fit.converged;
  return j;
}

json test_to_json(const cs::TestResult& result) {
  json j;
  j["statistic"] = result.statistic;
  j["dof"] = result.dof;
  j["p_value"] = result.p_value;
  j["null_fit"] = fit_to_json(result.null_fit);
  j["alt_fit"] = fit_to_json(result.alt_fit);
  return j;
}

void emit(const json& j, const std::string& out_path) {
  std::cout << j.dump(2) << '\n';
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open " + out_path);
    out << j.dump(2) << '\n';
  }
}

// Shared parameter flags for the commands that take an explicit model.
struct ParamFlags {
  double alpha = 1.0;
  double beta = 1.0;
  double mu = 0.0;
  double kappa = 0.0;
  double lambda = 0.0;
  double gamma = 0.0;  // ggssvm only; 0 means "same as alpha"

  void attach(CLI::App* cmd, bool with_gamma) {
    cmd->add_option("--alpha", alpha, "Linear shape parameter (> 0)")
        ->capture_default_str();
    cmd->add_option("--beta", beta, "Linear rate parameter (> 0)")
        ->capture_default_str();
    cmd->add_option("--mu", mu, "Circular location, radians")
        ->capture_default_str();
    cmd->add_option("--kappa", kappa, "Circular-linear dependence (>= 0)")
        ->capture_default_str();
    cmd->add_option("--lambda", lambda, "Circular skewness in [-1, 1]")
        ->capture_default_str();
    if (with_gamma)
      cmd->add_option("--gamma", gamma,
                      "Exponent of the exponential term (default: alpha)");
  }

  cs::WeiSSVMParams weissvm() const {
    return {alpha, beta, mu, kappa, lambda};
  }
  cs::GGSSVMParams ggssvm() const {
    return {alpha, beta, gamma > 0.0 ? gamma : alpha, mu, kappa, lambda};
  }
};

struct DataFlags {
  std::string path;
  std::string angle_unit = "radians";

  void attach(CLI::App* cmd) {
    cmd->add_option("--data", path, "Input CSV with theta,x columns")
        ->required();
    cmd->add_option("--angle-unit", angle_unit, "Unit of the angle column")
        ->check(CLI::IsMember({"radians", "degrees"}))
        ->capture_default_str();
  }

  cs::Dataset load() const {
    return cs::load_csv(path, cs::angle_unit_from_name(angle_unit));
  }
};

void print_fit_table(const std::vector<json>& rows) {
  std::fprintf(stderr, "%-10s %12s %12s %12s  %s\n", "model", "mll", "aic",
               "bic", "estimates");
  for (const json& row : rows) {
    if (row.contains("error")) {
      std::fprintf(stderr, "%-10s failed: %s\n",
                   row["model"].get<std::string>().c_str(),
                   row["error"].get<std::string>().c_str());
      continue;
    }
    std::string estimates;
    for (const auto& [key, value] : row["estimates"].items()) {
      if (!estimates.empty()) estimates += ", ";
      estimates += key + "=";
      char buffer[32];
      std::snprintf(buffer, sizeof(buffer), "%.4g", value.get<double>());
      estimates += buffer;
    }
    std::fprintf(stderr, "%-10s %12.4f %12.4f %12.4f  %s%s\n",
                 row["model"].get<std::string>().c_str(),
                 row["mll"].get<double>(), row["aic"].get<double>(),
                 row["bic"].get<double>(), estimates.c_str(),
                 row["converged"].get<bool>() ? "" : "  [not converged]");
  }
}

int cmd_fit(const DataFlags& data_flags, std::vector<std::string> model_names,
            const std::string& out_path, bool json_only) {
  const cs::Dataset dataset = data_flags.load();
  std::fprintf(stderr, "loaded %zu observations from %s\n",
               dataset.observations.size(), dataset.source_path.c_str());

  if (model_names.empty())
    model_names = {"weissvm", "ggssvm", "jw", "indep", "ms", "ks"};

  std::vector<json> rows;
  for (const std::string& name : model_names) {
    const cs::Model model = cs::model_from_name(name);
    try {
      rows.push_back(fit_to_json(cs::fit(model, dataset.observations)));
    } catch (const std::exception& e) {
      // a single model failing must not abort the comparison
      json row;
      row["model"] = name;
      row["error"] = e.what();
      rows.push_back(row);
    }
  }
  std::sort(rows.begin(), rows.end(), [](const json& a, const json& b) {
    const double aa = a.contains("aic") ? a["aic"].get<double>()
                                        : std::numeric_limits<double>::infinity();
    const double bb = b.contains("aic") ? b["aic"].get<double>()
                                        : std::numeric_limits<double>::infinity();
    return aa < bb;
  });

  if (!json_only) print_fit_table(rows);
  emit(json(rows), out_path);
  return 0;
}

int cmd_test(const DataFlags& data_flags, const std::string& which,
             const std::string& out_path) {
  const cs::Dataset dataset = data_flags.load();
  const cs::TestResult result = which == "jw"
                                    ? cs::lr_test_jw(dataset.observations)
                                    : cs::lr_test_indep(dataset.observations);
  std::fprintf(stderr, "LR test vs %s: statistic %.4f, dof %d, p = %.3g\n",
               which.c_str(), result.statistic, result.dof, result.p_value);
  emit(test_to_json(result), out_path);
  return 0;
}

int cmd_sample(const ParamFlags& params, std::size_t n, std::uint64_t seed,
               const std::string& out_path) {
  cs::RandomSource source(seed);
  const auto draws = cs::sample_weissvm(params.weissvm(), n, source);
  if (out_path.empty()) {
    cs::write_csv(std::cout, draws);
    return 0;
  }
  cs::save_csv(out_path, draws);
  json summary;
  summary["path"] = out_path;
  summary["n"] = n;
  summary["seed"] = seed;
  emit(summary, "");
  return 0;
}

int cmd_moments(const ParamFlags& params, const std::string& out_path) {
  const cs::WeiSSVMParams p = params.weissvm();
  const cs::NamedMoments m = cs::named_moments(p);
  json j;
  j["E_X"] = m.e_x;
  j["E_X2"] = m.e_x2;
  j["E_cos"] = m.e_cos;
  j["E_cos2"] = m.e_cos2;
  j["E_sin"] = m.e_sin;
  j["E_sin2"] = m.e_sin2;
  j["E_Xcos"] = m.e_x_cos;
  j["E_Xsin"] = m.e_x_sin;
  j["E_cossin"] = m.e_cos_sin;
  if (p.kappa == 0.0) {
    // independence: the correlation system degenerates, R^2 is exactly 0
    j["r_xc"] = 0.0;
    j["r_xs"] = 0.0;
    j["r_cs"] = nullptr;
    j["R2_xtheta"] = 0.0;
  } else {
    const cs::Correlations r = cs::correlations(p);
    j["r_xc"] = r.r_xc;
    j["r_xs"] = r.r_xs;
    j["r_cs"] = r.r_cs;
    j["R2_xtheta"] = cs::circular_linear_correlation(p);
  }
  emit(j, out_path);
  return 0;
}

int cmd_regress(const ParamFlags& params, const std::string& direction,
                int steps, double x_max, const std::string& out_path) {
  const cs::WeiSSVMParams p = params.weissvm();
  std::ostringstream csv;
  if (direction == "x_given_theta") {
    csv << "theta,mean,variance\n";
    for (int i = 0; i < steps; ++i) {
      const double theta = -cs::pi + cs::two_pi * i / steps;
      csv << num17(theta) << ',' << num17(cs::cond_mean_x(p, theta)) << ','
          << num17(cs::cond_var_x(p, theta)) << '\n';
    }
  } else {
    csv << "x,direction,resultant\n";
    for (int i = 0; i < steps; ++i) {
      const double x = x_max * i / (steps - 1);
      const auto dir = cs::cond_mean_direction(p, x);
      csv << num17(x) << ','
          << (dir ? num17(*dir) : std::string("nan")) << ','
          << num17(cs::cond_mean_resultant(p, x)) << '\n';
    }
  }
  if (out_path.empty()) {
    std::cout << csv.str();
    return 0;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open " + out_path);
  out << csv.str();
  json summary;
  summary["path"] = out_path;
  summary["rows"] = steps;
  emit(summary, "");
  return 0;
}

int cmd_pdf_grid(const ParamFlags& params, const std::string& model,
                 int theta_steps, double x_max, int x_steps,
                 const std::string& out_path) {
  // cell-centered grid over [-pi, pi) x [0, x_max): cell sums times cell
  // area approximate the total mass
  std::function<double(double, double)> logpdf;
  if (model == "weissvm") {
    logpdf = [p = params.weissvm()](double theta, double x) {
      return cs::weissvm_logpdf(p, {theta, x});
    };
  } else if (model == "ggssvm") {
    logpdf = [p = params.ggssvm()](double theta, double x) {
      return cs::ggssvm_logpdf(p, {theta, x});
    };
  } else if (model == "jw") {
    logpdf = [p = cs::JWParams(params.beta, params.mu, params.kappa)](
                 double theta, double x) {
      return cs::jw_logpdf(p, {theta, x});
    };
  } else {
    logpdf = [p = cs::IndepParams(params.alpha, params.beta, params.mu,
                                  params.lambda)](double theta, double x) {
      return cs::indep_logpdf(p, {theta, x});
    };
  }

  std::ostringstream csv;
  csv << "theta,x,density\n";
  for (int i = 0; i < theta_steps; ++i) {
    const double theta = -cs::pi + cs::two_pi * (i + 0.5) / theta_steps;
    for (int j = 0; j < x_steps; ++j) {
      const double x = x_max * (j + 0.5) / x_steps;
      csv << num17(theta) << ',' << num17(x) << ','
          << num17(std::exp(logpdf(theta, x))) << '\n';
    }
  }
  if (out_path.empty()) {
    std::cout << csv.str();
    return 0;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open " + out_path);
  out << csv.str();
  json summary;
  summary["path"] = out_path;
  summary["rows"] = theta_steps * x_steps;
  emit(summary, "");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cylindrical (circular-linear) distribution toolkit"};
  app.require_subcommand(1);

  std::function<int()> action;

  // fit
  DataFlags fit_data;
  std::vector<std::string> fit_models;
  std::string fit_out;
  bool fit_json_only = false;
  {
    CLI::App* cmd = app.add_subcommand(
        "fit", "Fit models to a dataset and compare by AIC/BIC");
    fit_data.attach(cmd);
    cmd->add_option("--model", fit_models,
                    "Model(s) to fit; repeatable (default: all)")
        ->check(CLI::IsMember({"weissvm", "ggssvm", "jw", "indep", "ms", "ks"}));
    cmd->add_option("--out", fit_out, "Also write the JSON report here");
    cmd->add_flag("--json", fit_json_only, "Suppress the stderr table");
    cmd->callback([&] {
      action = [&] {
        return cmd_fit(fit_data, fit_models, fit_out, fit_json_only);
      };
    });
  }

  // test
  DataFlags test_data;
  std::string test_which;
  std::string test_out;
  {
    CLI::App* cmd = app.add_subcommand(
        "test", "Likelihood-ratio test of a submodel against the full model");
    test_data.attach(cmd);
    cmd->add_option("--which", test_which, "Submodel under the null")
        ->check(CLI::IsMember({"jw", "indep"}))
        ->required();
    cmd->add_option("--out", test_out, "Also write the JSON report here");
    cmd->callback([&] {
      action = [&] { return cmd_test(test_data, test_which, test_out); };
    });
  }

  // sample
  ParamFlags sample_params;
  std::size_t sample_n = 0;
  std::uint64_t sample_seed = 0;
  std::string sample_out;
  {
    CLI::App* cmd =
        app.add_subcommand("sample", "Draw from the five-parameter model");
    sample_params.attach(cmd, false);
    cmd->add_option("--n", sample_n, "Number of draws")
        ->required()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", sample_seed, "Random seed")
        ->capture_default_str();
    cmd->add_option("--out", sample_out, "Output CSV (default: stdout)");
    cmd->callback([&] {
      action = [&] {
        return cmd_sample(sample_params, sample_n, sample_seed, sample_out);
      };
    });
  }

  // moments
  ParamFlags moments_params;
  std::string moments_out;
  {
    CLI::App* cmd = app.add_subcommand(
        "moments", "Analytic moments, correlations, and R^2 as JSON");
    moments_params.attach(cmd, false);
    cmd->add_option("--out", moments_out, "Also write the JSON report here");
    cmd->callback([&] {
      action = [&] { return cmd_moments(moments_params, moments_out); };
    });
  }

  // regress
  ParamFlags regress_params;
  std::string regress_direction = "x_given_theta";
  int regress_steps = 73;
  double regress_x_max = 3.0;
  std::string regress_out;
  {
    CLI::App* cmd = app.add_subcommand(
        "regress", "Conditional mean predictions over a grid, as CSV");
    regress_params.attach(cmd, false);
    cmd->add_option("--direction", regress_direction,
                    "Which conditional to predict")
        ->check(CLI::IsMember({"x_given_theta", "theta_given_x"}))
        ->capture_default_str();
    cmd->add_option("--steps", regress_steps, "Grid size")
        ->check(CLI::Range(2, 1000000))
        ->capture_default_str();
    cmd->add_option("--x-max", regress_x_max,
                    "Upper end of the x grid (theta_given_x only)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--out", regress_out, "Output CSV (default: stdout)");
    cmd->callback([&] {
      action = [&] {
        return cmd_regress(regress_params, regress_direction, regress_steps,
                           regress_x_max, regress_out);
      };
    });
  }

  // pdf-grid
  ParamFlags grid_params;
  std::string grid_model = "weissvm";
  int grid_theta_steps = 100;
  double grid_x_max = 3.0;
  int grid_x_steps = 100;
  std::string grid_out;
  {
    CLI::App* cmd = app.add_subcommand(
        "pdf-grid", "Density values on a rectangular grid, as CSV");
    grid_params.attach(cmd, true);
    cmd->add_option("--model", grid_model, "Density to evaluate")
        ->check(CLI::IsMember({"weissvm", "ggssvm", "jw", "indep"}))
        ->capture_default_str();
    cmd->add_option("--theta-steps", grid_theta_steps, "Cells across the angle")
        ->check(CLI::Range(2, 100000))
        ->capture_default_str();
    cmd->add_option("--x-max", grid_x_max, "Upper end of the x range")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--x-steps", grid_x_steps, "Cells across the length")
        ->check(CLI::Range(2, 100000))
        ->capture_default_str();
    cmd->add_option("--out", grid_out, "Output CSV (default: stdout)");
    cmd->callback([&] {
      action = [&] {
        return cmd_pdf_grid(grid_params, grid_model, grid_theta_steps,
                            grid_x_max, grid_x_steps, grid_out);
      };
    });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    return action();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
