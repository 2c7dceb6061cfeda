// Command-line surface: single-point phase times, parameter sweeps,
// threshold-curve export, and the verification harness. CSV/JSON only; no
// plotting.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tunnelgate/analysis.hpp"
#include "tunnelgate/approx.hpp"
#include "tunnelgate/oracle.hpp"
#include "tunnelgate/verify.hpp"

namespace {

using tunnelgate::BarrierSystem;
using tunnelgate::ErrorCode;
using tunnelgate::SolutionBranch;
using tunnelgate::TunnelError;

constexpr const char* kVersion = "0.1.0";

enum class OutputFormat { Csv, Json };

struct SystemFlags {
  double mass = 1.0;
  double energy = 0.0;
  double potential = 0.0;
  double width = 0.0;
  double gap = 0.0;
  std::string units = "natural";
};

struct OutputFlags {
  std::string format = "csv";
  std::string path;  // empty or "-" means stdout
};

void add_system_flags(CLI::App* cmd, SystemFlags& flags) {
  cmd->add_option("--energy", flags.energy,
                  "total energy E (natural: units of mc^2; si: eV)")
      ->required();
  cmd->add_option("--potential", flags.potential,
                  "barrier height V0 (natural: units of mc^2; si: eV)")
      ->required();
  cmd->add_option("--mass", flags.mass,
                  "particle mass (natural: 1; si: kg)");
  cmd->add_option("--width", flags.width,
                  "barrier width a (natural: Compton lengths; si: m)");
  cmd->add_option("--gap", flags.gap,
                  "inter-barrier distance L (natural: Compton lengths; si: m)");
  cmd->add_option("--units", flags.units, "input unit system")
      ->check(CLI::IsMember({"natural", "si"}));
}

void add_output_flags(CLI::App* cmd, OutputFlags& flags) {
  cmd->add_option("--format", flags.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", flags.path, "output path (default: stdout)");
}

BarrierSystem build_system(const SystemFlags& flags) {
  if (flags.units == "si") {
    return tunnelgate::make_si_system(flags.mass, flags.energy,
                                      flags.potential, flags.width,
                                      flags.gap);
  }
  BarrierSystem sys;
  sys.mass = flags.mass;
  sys.energy = flags.energy;
  sys.potential = flags.potential;
  sys.width = flags.width;
  sys.gap = flags.gap;
  return sys;
}

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12e", value);
  return buf;
}

// One output record of phase-time and sweep, all in natural units.
struct Row {
  double mass = 0.0, energy = 0.0, potential = 0.0, width = 0.0, gap = 0.0;
  std::optional<double> k, q, qa;
  std::optional<SolutionBranch> branch;
  std::optional<double> tau_exact, tau_branch, tau_free, delta_t, v_traversal;
  std::optional<tunnelgate::Region> verdict;
  std::string error;
};

const std::vector<std::string>& row_columns() {
  static const std::vector<std::string> cols = {
      "mass",     "energy",     "potential",  "width",   "gap",
      "k",        "q",          "qa",         "branch",  "tau_exact",
      "tau_branch", "tau_free", "delta_t",    "v_traversal", "verdict",
      "error"};
  return cols;
}

void warn_validity(const BarrierSystem& sys, const tunnelgate::Kinematics& kin) {
  const double qa = tunnelgate::validate_transparency(kin, sys.width);
  if (qa > tunnelgate::transparency_warning_threshold) {
    std::fprintf(stderr,
                 "warning: qa=%.3g exceeds %.1f; transparent-limit columns "
                 "are extrapolations\n",
                 qa, tunnelgate::transparency_warning_threshold);
  }
  if (kin.branch != SolutionBranch::Degenerate &&
      sys.energy < 10.0 * sys.mass) {
    std::fprintf(stderr,
                 "warning: E < 10 mc^2; the closed-form branch time degrades "
                 "away from the relativistic regime\n");
  }
}

Row compute_row(const BarrierSystem& sys, bool warnings) {
  Row row;
  row.mass = sys.mass;
  row.energy = sys.energy;
  row.potential = sys.potential;
  row.width = sys.width;
  row.gap = sys.gap;

  const tunnelgate::Kinematics kin = tunnelgate::derive_kinematics(sys);
  row.k = kin.k;
  row.q = kin.q;
  row.qa = tunnelgate::validate_transparency(kin, sys.width);
  row.branch = kin.branch;
  if (warnings) warn_validity(sys, kin);

  row.tau_exact = tunnelgate::phase_time_exact(sys).value;
  row.tau_free = tunnelgate::free_time(sys).value;
  if (kin.branch == SolutionBranch::A) {
    row.tau_branch = tunnelgate::phase_time_branch_a(sys).value;
  } else if (kin.branch == SolutionBranch::B) {
    row.tau_branch = tunnelgate::phase_time_branch_b(sys).value;
  }
  if (kin.branch != SolutionBranch::Degenerate) {
    row.delta_t = tunnelgate::time_gain(sys, kin.branch);
    if (sys.gap + 2.0 * sys.width > 0.0) {
      const double vt = tunnelgate::traversal_velocity(sys, kin.branch);
      row.v_traversal = vt;
      const double margin = vt - 1.0;
      if (margin > tunnelgate::classification_tolerance) {
        row.verdict = tunnelgate::Region::Superluminal;
      } else if (margin < -tunnelgate::classification_tolerance) {
        row.verdict = tunnelgate::Region::Subluminal;
      } else {
        row.verdict = tunnelgate::Region::OnCurve;
      }
    }
  }
  return row;
}

std::string csv_field(const std::optional<double>& value) {
  return value ? format_double(*value) : std::string();
}

void emit_rows_csv(std::ostream& out, const std::vector<Row>& rows,
                   const BarrierSystem& reference) {
  out << "# tunnelgate v" << kVersion << " natural-units\n";
  if (reference.units.mode == tunnelgate::UnitMode::Si) {
    out << "# input-units si mass_kg=" << format_double(reference.units.mass_kg)
        << " (values converted to natural units)\n";
  }
  const auto& cols = row_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    out << cols[i] << (i + 1 < cols.size() ? "," : "\n");
  }
  for (const Row& row : rows) {
    out << format_double(row.mass) << ',' << format_double(row.energy) << ','
        << format_double(row.potential) << ',' << format_double(row.width)
        << ',' << format_double(row.gap) << ',' << csv_field(row.k) << ','
        << csv_field(row.q) << ',' << csv_field(row.qa) << ','
        << (row.branch ? tunnelgate::to_string(*row.branch) : "") << ','
        << csv_field(row.tau_exact) << ',' << csv_field(row.tau_branch) << ','
        << csv_field(row.tau_free) << ',' << csv_field(row.delta_t) << ','
        << csv_field(row.v_traversal) << ','
        << (row.verdict ? tunnelgate::to_string(*row.verdict) : "") << ','
        << row.error << '\n';
  }
}

nlohmann::ordered_json json_value(const std::optional<double>& value) {
  if (!value) return nullptr;
  return *value;
}

void emit_rows_json(std::ostream& out, const std::vector<Row>& rows) {
  nlohmann::ordered_json array = nlohmann::ordered_json::array();
  for (const Row& row : rows) {
    nlohmann::ordered_json obj;
    obj["mass"] = row.mass;
    obj["energy"] = row.energy;
    obj["potential"] = row.potential;
    obj["width"] = row.width;
    obj["gap"] = row.gap;
    obj["k"] = json_value(row.k);
    obj["q"] = json_value(row.q);
    obj["qa"] = json_value(row.qa);
    obj["branch"] =
        row.branch ? nlohmann::ordered_json(tunnelgate::to_string(*row.branch))
                   : nlohmann::ordered_json(nullptr);
    obj["tau_exact"] = json_value(row.tau_exact);
    obj["tau_branch"] = json_value(row.tau_branch);
    obj["tau_free"] = json_value(row.tau_free);
    obj["delta_t"] = json_value(row.delta_t);
    obj["v_traversal"] = json_value(row.v_traversal);
    obj["verdict"] = row.verdict ? nlohmann::ordered_json(
                                       tunnelgate::to_string(*row.verdict))
                                 : nlohmann::ordered_json(nullptr);
    obj["error"] = row.error;
    array.push_back(std::move(obj));
  }
  out << array.dump(2) << '\n';
}

/// Writes through a temporary sibling and renames, so a failed run never
/// leaves a partial file at the target path.
int write_output(const OutputFlags& flags,
                 const std::function<void(std::ostream&)>& emit) {
  if (flags.path.empty() || flags.path == "-") {
    emit(std::cout);
    return 0;
  }
  namespace fs = std::filesystem;
  const fs::path target(flags.path);
  const fs::path tmp = target.string() + ".tmp";
  try {
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) {
        std::fprintf(stderr, "error: InvalidInput: cannot open %s\n",
                     tmp.string().c_str());
        return 2;
      }
      emit(out);
      if (!out.good()) {
        std::fprintf(stderr, "error: InvalidInput: write to %s failed\n",
                     tmp.string().c_str());
        fs::remove(tmp);
        return 2;
      }
    }
    fs::rename(tmp, target);
  } catch (const std::exception& e) {
    std::error_code ec;
    fs::remove(tmp, ec);
    std::fprintf(stderr, "error: InvalidInput: %s\n", e.what());
    return 2;
  }
  return 0;
}

int error_exit_code(const TunnelError& err) {
  return err.code() == ErrorCode::SingularDenominator ? 3 : 2;
}

int run_phase_time(const SystemFlags& sys_flags, const OutputFlags& out_flags) {
  try {
    const BarrierSystem sys = build_system(sys_flags);
    const std::vector<Row> rows = {compute_row(sys, /*warnings=*/true)};
    const auto emit = [&](std::ostream& out) {
      if (out_flags.format == "json") {
        emit_rows_json(out, rows);
      } else {
        emit_rows_csv(out, rows, sys);
      }
    };
    return write_output(out_flags, emit);
  } catch (const TunnelError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return error_exit_code(e);
  }
}

struct SweepFlags {
  std::string axis;
  double min = 0.0;
  double max = 0.0;
  std::size_t samples = 0;
};

int run_sweep(const SystemFlags& sys_flags, const SweepFlags& sweep,
              const OutputFlags& out_flags) {
  if (!(sweep.min < sweep.max) || sweep.samples < 2) {
    std::fprintf(stderr,
                 "error: InvalidInput: sweep needs min < max and >= 2 "
                 "samples\n");
    return 2;
  }
  BarrierSystem base;
  try {
    base = build_system(sys_flags);
  } catch (const TunnelError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return error_exit_code(e);
  }

  // Axis bounds arrive in the input unit system, like every other flag.
  double lo = sweep.min;
  double hi = sweep.max;
  if (base.units.mode == tunnelgate::UnitMode::Si) {
    if (sweep.axis == "energy") {
      lo = base.units.energy_to_natural(lo);
      hi = base.units.energy_to_natural(hi);
    } else {
      lo = base.units.length_to_natural(lo);
      hi = base.units.length_to_natural(hi);
    }
  }

  std::vector<Row> rows;
  std::size_t succeeded = 0;
  for (std::size_t i = 0; i < sweep.samples; ++i) {
    const double value =
        lo + (hi - lo) * static_cast<double>(i) /
                 static_cast<double>(sweep.samples - 1);
    BarrierSystem sys = base;
    if (sweep.axis == "energy") {
      sys.energy = value;
    } else if (sweep.axis == "width") {
      sys.width = value;
    } else {
      sys.gap = value;
    }
    try {
      rows.push_back(compute_row(sys, /*warnings=*/false));
      ++succeeded;
    } catch (const TunnelError& e) {
      Row row;
      row.mass = sys.mass;
      row.energy = sys.energy;
      row.potential = sys.potential;
      row.width = sys.width;
      row.gap = sys.gap;
      row.error = tunnelgate::to_string(e.code());
      rows.push_back(std::move(row));
    }
  }

  const auto emit = [&](std::ostream& out) {
    if (out_flags.format == "json") {
      emit_rows_json(out, rows);
    } else {
      emit_rows_csv(out, rows, base);
    }
  };
  const int rc = write_output(out_flags, emit);
  if (rc != 0) return rc;
  if (succeeded == 0) {
    std::fprintf(stderr, "error: InvalidInput: no sweep row succeeded\n");
    return 2;
  }
  return 0;
}

struct CurveFlags {
  std::string branch = "both";
  double beta_min = 0.05;
  double beta_max = 0.995;
  std::size_t samples = 200;
};

int run_curve(const CurveFlags& curve, const OutputFlags& out_flags) {
  if (!(curve.beta_min > 0.0 && curve.beta_max < 1.0 &&
        curve.beta_min < curve.beta_max) ||
      curve.samples < 2) {
    std::fprintf(stderr,
                 "error: InvalidInput: curve needs 0 < beta-min < beta-max "
                 "< 1 and >= 2 samples\n");
    return 2;
  }
  std::vector<double> betas(curve.samples);
  for (std::size_t i = 0; i < curve.samples; ++i) {
    betas[i] = curve.beta_min +
               (curve.beta_max - curve.beta_min) * static_cast<double>(i) /
                   static_cast<double>(curve.samples - 1);
  }
  std::vector<tunnelgate::RatioPoint> points;
  if (curve.branch == "a" || curve.branch == "both") {
    auto pts = tunnelgate::threshold_curve(SolutionBranch::A, betas);
    points.insert(points.end(), pts.begin(), pts.end());
  }
  if (curve.branch == "b" || curve.branch == "both") {
    auto pts = tunnelgate::threshold_curve(SolutionBranch::B, betas);
    points.insert(points.end(), pts.begin(), pts.end());
  }

  const auto emit = [&](std::ostream& out) {
    if (out_flags.format == "json") {
      nlohmann::ordered_json array = nlohmann::ordered_json::array();
      for (const auto& p : points) {
        nlohmann::ordered_json obj;
        obj["branch"] = tunnelgate::to_string(p.branch);
        obj["beta"] = p.beta;
        obj["alpha_ratio"] = p.width_ratio;
        obj["feasible"] = p.feasible;
        array.push_back(std::move(obj));
      }
      out << array.dump(2) << '\n';
    } else {
      out << "# tunnelgate v" << kVersion << " natural-units\n";
      out << "branch,beta,alpha_ratio,feasible\n";
      for (const auto& p : points) {
        out << tunnelgate::to_string(p.branch) << ','
            << format_double(p.beta) << ',' << format_double(p.width_ratio)
            << ',' << (p.feasible ? "true" : "false") << '\n';
      }
    }
  };
  return write_output(out_flags, emit);
}

int run_verify(bool corrupt_h1) {
  tunnelgate::VerifyOptions options;
  options.corrupt_h1 = corrupt_h1;
  const auto results = tunnelgate::run_verification(options);
  for (const auto& suite : results) {
    std::printf("%s %-24s %s\n", suite.passed ? "ok  " : "FAIL",
                suite.name.c_str(), suite.detail.c_str());
  }
  const bool ok = tunnelgate::all_passed(results);
  std::printf("%s\n", ok ? "verification passed" : "verification FAILED");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and transparent-limit phase times for relativistic "
               "tunneling through two successive square barriers"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("tunnelgate ") + kVersion);

  SystemFlags point_sys;
  OutputFlags point_out;
  CLI::App* point = app.add_subcommand(
      "phase-time", "compute every traversal quantity for one system");
  add_system_flags(point, point_sys);
  add_output_flags(point, point_out);

  SystemFlags sweep_sys;
  SweepFlags sweep_flags;
  OutputFlags sweep_out;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "sweep one axis of a system, one record per sample");
  add_system_flags(sweep, sweep_sys);
  sweep->add_option("--axis", sweep_flags.axis, "sweep axis")
      ->required()
      ->check(CLI::IsMember({"energy", "width", "gap"}));
  sweep->add_option("--min", sweep_flags.min, "axis start")->required();
  sweep->add_option("--max", sweep_flags.max, "axis end")->required();
  sweep->add_option("--samples", sweep_flags.samples, "sample count (>= 2)")
      ->required();
  add_output_flags(sweep, sweep_out);

  CurveFlags curve_flags;
  OutputFlags curve_out;
  CLI::App* curve = app.add_subcommand(
      "curve", "export the superluminality threshold curves alpha(beta)");
  curve->add_option("--branch", curve_flags.branch, "curve branch")
      ->check(CLI::IsMember({"a", "b", "both"}));
  curve->add_option("--beta-min", curve_flags.beta_min, "lowest beta");
  curve->add_option("--beta-max", curve_flags.beta_max, "highest beta");
  curve->add_option("--samples", curve_flags.samples, "samples per branch");
  add_output_flags(curve, curve_out);

  bool corrupt_h1 = false;
  CLI::App* verify = app.add_subcommand(
      "verify", "run the closed-form vs scattering-oracle cross-checks");
  verify->add_flag("--corrupt-h1", corrupt_h1,
                   "fault injection: perturb the h1 term to prove the "
                   "cross-check detects a broken evaluator");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help / --version
    }
    std::fprintf(stderr, "error: InvalidInput: %s\n", e.what());
    return 2;
  }

  if (point->parsed()) return run_phase_time(point_sys, point_out);
  if (sweep->parsed()) return run_sweep(sweep_sys, sweep_flags, sweep_out);
  if (curve->parsed()) return run_curve(curve_flags, curve_out);
  if (verify->parsed()) return run_verify(corrupt_h1);
  return 2;
}
