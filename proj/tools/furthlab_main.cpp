// furthlab: command-line runner for the diffusion / quantum-propagator
// correspondence experiments. Each verb runs one experiment family, writes
// report.json plus tidy CSVs into --out, and exits 0 only if every gate
// passed (2 on gate failure, 1 on usage or config errors).

#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <string>

#include <CLI11.hpp>

#include "experiments.hpp"

namespace {

struct CommonFlags {
  std::string config_file;
  std::string phase = "plus";
  bool quick = false;
  bool full = false;
};

void add_common_options(CLI::App* cmd, furthlab::exp::RunConfig& cfg, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_file,
                  "flat key=value config file; flags win over file values");
  cmd->add_option("--seed", cfg.seed, "master seed (64-bit)")->capture_default_str();
  cmd->add_option("--out", cfg.output_dir, "output directory")->capture_default_str();
  cmd->add_option("--hbar", cfg.constants.hbar, "hbar")->capture_default_str();
  cmd->add_option("--mass", cfg.constants.mass, "particle mass")->capture_default_str();
  cmd->add_option("--phase-convention", flags.phase, "quantum kernel phase sign")
      ->check(CLI::IsMember({"plus", "minus"}))
      ->capture_default_str();
  auto* quick = cmd->add_flag("--quick", flags.quick, "small Monte Carlo sizes, < 60 s for 'all'");
  auto* full =
      cmd->add_flag("--full", flags.full, "desk-scale defaults (n_paths=200, n_steps=500)");
  quick->excludes(full);
}

// Config precedence: flags > config file > defaults. A key only applies when
// the matching flag was not given on the command line.
void apply_config_file(const CLI::App* cmd, const std::string& path,
                       furthlab::exp::RunConfig& cfg, CommonFlags& flags) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::string line;
  int lineno = 0;
  auto given = [&](const std::string& flag) {
    const auto* opt = cmd->get_option_no_throw(flag);
    return opt != nullptr && opt->count() > 0;
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
      line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = line.substr(start, eq - start);
    const std::string value = line.substr(eq + 1);

    if (key == "seed" && !given("--seed")) cfg.seed = std::stoull(value);
    else if (key == "out" && !given("--out")) cfg.output_dir = value;
    else if (key == "hbar" && !given("--hbar")) cfg.constants.hbar = std::stod(value);
    else if (key == "mass" && !given("--mass")) cfg.constants.mass = std::stod(value);
    else if (key == "phase-convention" && !given("--phase-convention")) flags.phase = value;
    else if (key == "quick" && !given("--quick")) flags.quick = value == "true" || value == "1";
    else if (key == "eps" && !given("--eps")) cfg.paths_epsilon = std::stod(value);
    else if (key == "n-paths" && !given("--n-paths")) cfg.paths_n_override = std::stoull(value);
    else if (key == "n-steps" && !given("--n-steps")) cfg.steps_n_override = std::stoull(value);
    else if (key == "potential" && !given("--potential")) cfg.radial_potential = value;
    else if (key == "l" && !given("--l")) cfg.radial_l = std::stoi(value);
    else if (key == "n-radial" && !given("--n-radial")) cfg.radial_n = std::stoi(value);
    else if (key == "seed" || key == "out" || key == "hbar" || key == "mass" ||
             key == "phase-convention" || key == "quick" || key == "eps" || key == "n-paths" ||
             key == "n-steps" || key == "potential" || key == "l" || key == "n-radial") {
      // flag given on the command line wins; ignore the file value
    } else {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": unknown key '" + key +
                                  "'");
    }
  }
  if (flags.phase != "plus" && flags.phase != "minus")
    throw std::invalid_argument("phase-convention must be plus or minus");
}

int run_and_report(furthlab::exp::RunConfig cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rep = furthlab::exp::run_experiment(cfg);
  furthlab::exp::write_report(cfg, rep);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  for (const auto& g : rep.gates) {
    std::printf("[%s] %s: measured %.6g %s %.6g\n", g.pass ? "PASS" : "FAIL", g.name.c_str(),
                g.measured, g.comparison.c_str(), g.tolerance);
  }
  std::printf("report: %s\n", (cfg.output_dir / "report.json").string().c_str());
  std::printf("wall_time_seconds=%.3f\n", wall);
  return rep.all_pass() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"furthlab: classical-diffusion vs quantum-propagator correspondence lab"};
  app.require_subcommand(1);

  furthlab::exp::RunConfig cfg;
  CommonFlags flags;

  const char* verbs[] = {"kernels", "paths", "evolve", "wkb", "radial", "dispersions", "all"};
  const char* blurbs[] = {
      "propagator kernels, Chapman-Kolmogorov composition, Fokker-Planck stepping",
      "Wiener ensembles: diffusivity, velocity gap, kinetic estimators, uncertainty products",
      "Feynman short-time-slice wavefunction evolution",
      "quasiclassical wavefunctions vs Numerov eigenstates",
      "spherical/cylindrical radial eigensolvers and the substitution map",
      "angular-momentum dispersion algebra and minimal-dispersion solutions",
      "every experiment in sequence"};
  for (int i = 0; i < 7; ++i) {
    auto* cmd = app.add_subcommand(verbs[i], blurbs[i]);
    add_common_options(cmd, cfg, flags);
    if (std::string(verbs[i]) == "paths" || std::string(verbs[i]) == "all") {
      cmd->add_option("--eps", cfg.paths_epsilon, "path time step")->capture_default_str();
      cmd->add_option("--n-paths", cfg.paths_n_override, "paths per ensemble (0 = preset)");
      cmd->add_option("--n-steps", cfg.steps_n_override, "steps per path (0 = preset)");
    }
    if (std::string(verbs[i]) == "radial" || std::string(verbs[i]) == "all") {
      cmd->add_option("--potential", cfg.radial_potential, "requested solve potential")
          ->check(CLI::IsMember({"coulomb", "harmonic"}))
          ->capture_default_str();
      cmd->add_option("--l", cfg.radial_l, "requested angular index")->capture_default_str();
      cmd->add_option("--n-radial", cfg.radial_n, "requested radial node count")
          ->capture_default_str();
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  auto* active = app.get_subcommands().front();
  cfg.experiment = active->get_name();

  try {
    if (!flags.config_file.empty()) apply_config_file(active, flags.config_file, cfg, flags);
    cfg.quick = flags.quick;
    cfg.constants.phase = flags.phase == "minus" ? furthlab::PhaseConvention::minus
                                                 : furthlab::PhaseConvention::plus;
    return run_and_report(cfg);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "furthlab: %s\n", e.what());
    return 1;
  }
}
