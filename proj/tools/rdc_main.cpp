// Command-line front end: tradeoff-curve sweeps for a Bernoulli source with
// a binary task variable, emitted as CSV or JSON figure data, plus the
// oracle-backed self-verification suite.
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rdc/dc_region.hpp"
#include "rdc/errors.hpp"
#include "rdc/oneshot.hpp"
#include "rdc/sweep.hpp"
#include "rdc/universal.hpp"
#include "rdc/verify.hpp"

namespace {

// Relative outputs land in RDC_OUTPUT_DIR when that variable is set.
std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute()) return p;
  if (const char* dir = std::getenv("RDC_OUTPUT_DIR")) {
    if (*dir != '\0') return std::filesystem::path(dir) / p;
  }
  return p;
}

std::string default_name(const char* base, const std::string& format) {
  return std::string(base) + "." + format;
}

// universal.csv -> universal_lb.csv / universal_ub.csv.
std::string with_suffix(const std::string& path, const char* suffix) {
  std::filesystem::path p(path);
  const std::string name = p.stem().string() + suffix + p.extension().string();
  p.replace_filename(name);
  return p.string();
}

void emit(const rdc::CurveSweep& sweep, const std::string& format,
          const std::string& path) {
  const std::filesystem::path target = resolve_output(path);
  std::ofstream out(target, std::ios::binary);
  if (!out) {
    throw std::invalid_argument("cannot open output file: " + target.string());
  }
  if (format == "csv") {
    rdc::write_csv(sweep, out);
  } else {
    rdc::write_json(sweep, out);
  }
  out.close();
  if (!out) {
    throw std::runtime_error("failed writing output file: " + target.string());
  }
  std::cout << "wrote " << target.string() << " (" << sweep.samples.size()
            << " samples, " << sweep.infeasible_samples << " infeasible)\n";
}

std::vector<double> linspace(double lo, double hi, int samples) {
  std::vector<double> grid(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    grid[static_cast<std::size_t>(k)] =
        lo + (hi - lo) * static_cast<double>(k) / (samples - 1);
  }
  grid.back() = hi;
  return grid;
}

void require_samples(int samples) {
  if (samples < 2) {
    throw std::invalid_argument("samples must be at least 2, got " +
                                std::to_string(samples));
  }
}

void require_ordered(double lo, double hi, const char* lo_name,
                     const char* hi_name) {
  if (!(lo < hi)) {
    throw std::invalid_argument(std::string(lo_name) +
                                " must be strictly below " + hi_name);
  }
}

struct RdcArgs {
  double q_x = 0.0;
  double q_s1 = 0.0;
  double c = 0.0;
  double d_min = 0.0;
  double d_max = 1.0;
  int samples = 101;
  std::string mode = "oneshot";
  std::string format = "csv";
  std::string output;
};

void run_rdc_curve(const RdcArgs& args) {
  require_samples(args.samples);
  require_ordered(args.d_min, args.d_max, "--d_min", "--d_max");
  const rdc::SourceModel model(args.q_x, args.q_s1);
  const rdc::Bits budget(args.c);
  rdc::mgl_threshold(model, budget);  // rejects an unattainable budget early

  rdc::CurveSweep sweep;
  sweep.kind = "rdc";
  sweep.add_param("q_x", args.q_x);
  sweep.add_param("q_s1", args.q_s1);
  sweep.add_param("c", args.c);
  sweep.add_param("d_min", args.d_min);
  sweep.add_param("d_max", args.d_max);
  sweep.add_param("samples", static_cast<double>(args.samples));
  sweep.add_param("mode", args.mode);
  for (double d : linspace(args.d_min, args.d_max, args.samples)) {
    const rdc::OperatingPoint point{rdc::Probability(d), budget};
    const double rate = args.mode == "oneshot"
                            ? rdc::oneshot_rdc(model, point).rate.value()
                            : rdc::asymptotic_rdc(model, point).value();
    sweep.add(d, rate);
  }
  emit(sweep, args.format,
       args.output.empty() ? default_name("rdc_curve", args.format)
                           : args.output);
}

struct DrcArgs {
  double q_x = 0.0;
  double q_s1 = 0.0;
  std::string sweep_axis = "r";
  double c = 0.0;
  double r = 0.0;
  bool c_given = false;
  bool r_given = false;
  double min = 0.0;
  double max = 1.0;
  int samples = 101;
  std::string format = "csv";
  std::string output;
};

void run_drc_curve(const DrcArgs& args) {
  require_samples(args.samples);
  require_ordered(args.min, args.max, "--min", "--max");
  const rdc::SourceModel model(args.q_x, args.q_s1);

  rdc::CurveSweep sweep;
  sweep.kind = "drc";
  sweep.add_param("q_x", args.q_x);
  sweep.add_param("q_s1", args.q_s1);
  sweep.add_param("sweep", args.sweep_axis);
  if (args.sweep_axis == "r") {
    if (!args.c_given) {
      throw std::invalid_argument("sweeping r requires a fixed --c");
    }
    const rdc::Bits budget(args.c);
    rdc::mgl_threshold(model, budget);
    sweep.add_param("c", args.c);
    sweep.add_param("min", args.min);
    sweep.add_param("max", args.max);
    sweep.add_param("samples", static_cast<double>(args.samples));
    for (double r : linspace(args.min, args.max, args.samples)) {
      sweep.add(r, rdc::oneshot_drc(model, rdc::Bits(r), budget).distortion);
    }
  } else {
    if (!args.r_given) {
      throw std::invalid_argument("sweeping c requires a fixed --r");
    }
    const rdc::Bits rate(args.r);
    sweep.add_param("r", args.r);
    sweep.add_param("min", args.min);
    sweep.add_param("max", args.max);
    sweep.add_param("samples", static_cast<double>(args.samples));
    for (double c : linspace(args.min, args.max, args.samples)) {
      try {
        sweep.add(c, rdc::oneshot_drc(model, rate, rdc::Bits(c)).distortion);
      } catch (const rdc::FeasibilityError&) {
        ++sweep.infeasible_samples;  // budgets below the attainable floor
      }
    }
  }
  emit(sweep, args.format,
       args.output.empty() ? default_name("drc_curve", args.format)
                           : args.output);
}

struct DcArgs {
  std::string channel_file;
  double q_s1 = 0.0;
  double c_min = 0.0;
  double c_max = 1.0;
  int samples = 101;
  std::string format = "csv";
  std::string output;
};

void run_dc_region(const DcArgs& args) {
  require_samples(args.samples);
  require_ordered(args.c_min, args.c_max, "--c_min", "--c_max");
  const rdc::RepresentationChannel channel =
      rdc::load_channel(args.channel_file);
  rdc::CurveSweep sweep = rdc::dc_boundary_curve(
      channel, rdc::Probability(args.q_s1),
      linspace(args.c_min, args.c_max, args.samples));
  sweep.add_param("channel_file", args.channel_file);
  sweep.add_param("q_s1", args.q_s1);
  sweep.add_param("c_min", args.c_min);
  sweep.add_param("c_max", args.c_max);
  sweep.add_param("samples", static_cast<double>(args.samples));
  emit(sweep, args.format,
       args.output.empty() ? default_name("dc_region", args.format)
                           : args.output);
}

struct UniversalArgs {
  double q_x = 0.0;
  double q_s1 = 0.0;
  double r = 0.0;
  int c_samples = 101;
  std::uint64_t seed = 1234567;
  std::string format = "csv";
  std::string output;
};

void run_universal(const UniversalArgs& args) {
  require_samples(args.c_samples);
  const rdc::SourceModel model(args.q_x, args.q_s1);
  const rdc::Bits rate(args.r);  // negative r is rejected here
  rdc::solver::ConvexOptions options;
  options.seed = args.seed;
  const rdc::RatePenaltyBounds bounds =
      rdc::rate_penalty_bounds(model, rate, options);

  const double floor = rdc::binary_entropy(model.q_s1());
  const std::vector<double> budgets = linspace(floor, 1.0, args.c_samples);
  const std::string base =
      args.output.empty() ? default_name("universal", args.format)
                          : args.output;
  const struct {
    const char* kind;
    const char* param;
    const char* suffix;
    rdc::Bits bound;
  } curves[2] = {{"universal-lb", "r_lb", "_lb", bounds.r_lb},
                 {"universal-ub", "r_ub", "_ub", bounds.r_ub}};
  for (const auto& curve : curves) {
    rdc::CurveSweep sweep;
    sweep.kind = curve.kind;
    sweep.add_param("q_x", args.q_x);
    sweep.add_param("q_s1", args.q_s1);
    sweep.add_param("r", args.r);
    sweep.add_param("c_samples", static_cast<double>(args.c_samples));
    sweep.add_param("seed", static_cast<double>(args.seed));
    sweep.add_param(curve.param, curve.bound.value());
    for (double c : budgets) {
      try {
        sweep.add(c, rdc::asymptotic_drc(model, curve.bound, rdc::Bits(c)));
      } catch (const rdc::FeasibilityError&) {
        ++sweep.infeasible_samples;  // rate plateau still above the bound
      }
    }
    emit(sweep, args.format, with_suffix(base, curve.suffix));
  }
}

struct VerifyArgs {
  std::string scope = "all";
  int resolution = 101;
  std::uint64_t seed = 1;
};

int run_verify(const VerifyArgs& args) {
  rdc::VerifyOptions options;
  options.resolution = args.resolution;
  options.seed = args.seed;
  const std::vector<rdc::VerifyCheck> checks =
      rdc::run_verification(args.scope, options);
  bool all_pass = true;
  for (const rdc::VerifyCheck& check : checks) {
    all_pass = all_pass && check.pass;
    std::cout << (check.pass ? "PASS" : "FAIL") << "  " << check.name
              << "  (residual " << rdc::format_number(check.residual)
              << ", tolerance " << rdc::format_number(check.tolerance)
              << ")\n";
  }
  std::cout << (all_pass ? "verification passed" : "verification FAILED")
            << " (" << checks.size() << " checks, scope " << args.scope
            << ")\n";
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Rate-distortion-classification tradeoff curves for a Bernoulli source "
      "with a binary task variable"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "TOML file mirroring the flags; command-line flags override");
  int exit_status = 0;

  RdcArgs rdc_args;
  CLI::App* rdc_cmd = app.add_subcommand(
      "rdc-curve", "minimum one-shot or asymptotic rate versus distortion "
                   "budget at a fixed classification budget");
  rdc_cmd->add_option("--q_x", rdc_args.q_x, "source parameter P(X = 1)")
      ->required();
  rdc_cmd->add_option("--q_s1", rdc_args.q_s1, "task noise parameter P(S1 = 1)")
      ->required();
  rdc_cmd->add_option("--c", rdc_args.c, "classification budget in bits")
      ->required();
  rdc_cmd->add_option("--d_min", rdc_args.d_min, "distortion sweep start");
  rdc_cmd->add_option("--d_max", rdc_args.d_max, "distortion sweep end");
  rdc_cmd->add_option("--samples", rdc_args.samples, "sample count (>= 2)");
  rdc_cmd->add_option("--mode", rdc_args.mode, "curve family")
      ->check(CLI::IsMember({"oneshot", "asymptotic"}));
  rdc_cmd->add_option("--format", rdc_args.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  rdc_cmd->add_option("--output", rdc_args.output,
                      "output file (default rdc_curve.<format>); relative "
                      "paths honor RDC_OUTPUT_DIR");
  rdc_cmd->callback([&] { run_rdc_curve(rdc_args); });

  DrcArgs drc_args;
  CLI::App* drc_cmd = app.add_subcommand(
      "drc-curve", "minimum one-shot distortion versus rate budget (sweep r "
                   "at fixed --c) or classification budget (sweep c at fixed "
                   "--r)");
  drc_cmd->add_option("--q_x", drc_args.q_x, "source parameter P(X = 1)")
      ->required();
  drc_cmd->add_option("--q_s1", drc_args.q_s1, "task noise parameter P(S1 = 1)")
      ->required();
  drc_cmd->add_option("--sweep", drc_args.sweep_axis, "swept variable")
      ->check(CLI::IsMember({"r", "c"}));
  CLI::Option* drc_c = drc_cmd->add_option(
      "--c", drc_args.c, "fixed classification budget when sweeping r");
  CLI::Option* drc_r =
      drc_cmd->add_option("--r", drc_args.r, "fixed rate when sweeping c");
  drc_cmd->add_option("--min", drc_args.min, "sweep range start");
  drc_cmd->add_option("--max", drc_args.max, "sweep range end");
  drc_cmd->add_option("--samples", drc_args.samples, "sample count (>= 2)");
  drc_cmd->add_option("--format", drc_args.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  drc_cmd->add_option("--output", drc_args.output,
                      "output file (default drc_curve.<format>); relative "
                      "paths honor RDC_OUTPUT_DIR");
  drc_cmd->callback([&] {
    drc_args.c_given = drc_c->count() > 0;
    drc_args.r_given = drc_r->count() > 0;
    run_drc_curve(drc_args);
  });

  DcArgs dc_args;
  CLI::App* dc_cmd = app.add_subcommand(
      "dc-region", "lower boundary of the distortion-classification region "
                   "for a fixed representation channel");
  dc_cmd->add_option("channel_file", dc_args.channel_file,
                     "JSON file {\"q\": [...], \"eps\": [...]}")
      ->required();
  dc_cmd->add_option("--q_s1", dc_args.q_s1, "task noise parameter P(S1 = 1)")
      ->required();
  dc_cmd->add_option("--c_min", dc_args.c_min, "budget sweep start");
  dc_cmd->add_option("--c_max", dc_args.c_max, "budget sweep end");
  dc_cmd->add_option("--samples", dc_args.samples, "sample count (>= 2)");
  dc_cmd->add_option("--format", dc_args.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  dc_cmd->add_option("--output", dc_args.output,
                     "output file (default dc_region.<format>); relative "
                     "paths honor RDC_OUTPUT_DIR");
  dc_cmd->callback([&] { run_dc_region(dc_args); });

  UniversalArgs uni_args;
  CLI::App* uni_cmd = app.add_subcommand(
      "universal", "universal-encoder distortion curves versus classification "
                   "budget at the lower and upper rate-penalty bounds");
  uni_cmd->add_option("--q_x", uni_args.q_x, "source parameter P(X = 1)")
      ->required();
  uni_cmd->add_option("--q_s1", uni_args.q_s1, "task noise parameter P(S1 = 1)")
      ->required();
  uni_cmd->add_option("--r", uni_args.r, "rate budget in (0, H_b(q_x)]")
      ->required();
  uni_cmd->add_option("--c_samples", uni_args.c_samples,
                      "classification budget sample count (>= 2)");
  uni_cmd->add_option("--seed", uni_args.seed, "solver start seed");
  uni_cmd->add_option("--format", uni_args.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  uni_cmd->add_option("--output", uni_args.output,
                      "output base name (default universal.<format>); _lb and "
                      "_ub are inserted before the extension");
  uni_cmd->callback([&] { run_universal(uni_args); });

  VerifyArgs verify_args;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "run the oracle-backed self-checks and report residuals");
  verify_cmd->add_option("scope", verify_args.scope,
                         "all, oneshot, dc, or universal");
  verify_cmd->add_option("--resolution", verify_args.resolution,
                         "grid points per axis for enumeration oracles");
  verify_cmd->add_option("--seed", verify_args.seed, "random tuple seed");
  verify_cmd->callback([&] { exit_status = run_verify(verify_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const rdc::FeasibilityError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 3;
  } catch (const rdc::ConvergenceError& e) {
    std::cerr << "failed to converge: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_status;
}
