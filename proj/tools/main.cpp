// Command-line front end: reads a JSON experiment description, runs it, and
// writes the result artifacts. Exit codes: 0 all checks pass, 1 a check
// failed, 2 bad configuration, 3 a run stage failed, 4 filesystem trouble.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lowmode/harness.hpp"
#include "lowmode/io.hpp"

namespace {

struct CommonArgs {
  std::string spec_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool has_seed = false;
  bool quiet = false;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw lowmode::IoError("cannot open spec file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw lowmode::IoError("cannot read spec file: " + path);
  return ss.str();
}

void add_common(CLI::App* cmd, CommonArgs& args, bool spec_required) {
  auto* spec =
      cmd->add_option("--spec", args.spec_path, "JSON experiment description");
  if (spec_required) spec->required();
  cmd->add_option("--out", args.out_dir,
                  "output directory for result artifacts");
  cmd->add_option("--seed", args.seed,
                  "override the random seed of the experiment")
      ->each([&args](const std::string&) { args.has_seed = true; });
  cmd->add_flag("--quiet", args.quiet, "suppress the per-check summary");
}

int execute(const CommonArgs& args, const std::string& default_kind,
            const std::set<std::string>& allowed_kinds) {
  lowmode::ExperimentSpec spec;
  if (args.spec_path.empty()) {
    spec.kind = default_kind;
  } else {
    spec = lowmode::parse_experiment(slurp(args.spec_path));
    if (spec.kind.empty()) spec.kind = default_kind;
  }
  if (!allowed_kinds.count(spec.kind))
    throw lowmode::ConfigParseError("experiment kind '" + spec.kind +
                                    "' does not belong to this subcommand");
  if (args.has_seed) {
    spec.seed = args.seed;
    spec.locality.seed = args.seed;
  }

  const lowmode::RunResult result = lowmode::run(spec);

  if (!args.out_dir.empty()) lowmode::write_artifacts(result, args.out_dir);

  if (!args.quiet) {
    for (const auto& c : result.checks)
      std::printf("%-28s %s  lhs=%.6g rhs=%.6g slack=%.3g\n", c.name.c_str(),
                  c.pass ? "PASS" : "FAIL", c.lhs, c.rhs, c.slack);
    std::printf("%s (%zu checks, %zu artifacts%s%s)\n",
                result.pass ? "PASS" : "FAIL", result.checks.size(),
                result.artifacts.size(),
                args.out_dir.empty() ? "" : " -> ",
                args.out_dir.c_str());
  }
  return result.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral laboratory for low-mode forcing of the viscous "
               "Burgers equation"};
  app.require_subcommand(1);

  struct Sub {
    const char* name;
    const char* help;
    bool spec_required;
    std::string default_kind;
    std::set<std::string> allowed;
    CommonArgs args;
  };
  Sub subs[] = {
      {"simulate", "run one forced simulation with its validity checks", true,
       "simulate", {"simulate"}, {}},
      {"steer", "drive the state toward a target through the control chain",
       true, "steer", {"steer"}, {}},
      {"relax",
       "averaging, absorption, and locality studies of oscillating controls",
       true, "relax_study",
       {"relax_study", "extension_study", "locality_study"}, {}},
      {"lattice", "tabulate the frequency lattice and its density", true,
       "lattice_report", {"lattice_report"}, {}},
      {"sweep", "error versus one resolution axis", true, "sweep", {"sweep"},
       {}},
      {"verify", "built-in cross-checks against closed-form solutions", false,
       "verify", {"verify"}, {}},
  };
  for (auto& s : subs)
    add_common(app.add_subcommand(s.name, s.help), s.args, s.spec_required);

  CLI11_PARSE(app, argc, argv);

  try {
    for (const auto& s : subs)
      if (app.got_subcommand(s.name))
        return execute(s.args, s.default_kind, s.allowed);
    std::fprintf(stderr, "no subcommand selected\n");
    return 2;
  } catch (const lowmode::ConfigParseError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const lowmode::IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return 4;
  } catch (const lowmode::Error& e) {
    std::fprintf(stderr, "stage error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
