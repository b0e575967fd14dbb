// lattheta: exact theta-series invariants of integral lattices from Gram
// matrices. Subcommands: theta, invariant, compare, shortvec, heat-check.
//
// Exit codes: 0 success (compare: lattices distinguished), 1 usage error,
// 2 inconclusive compare, 3 input validation error, 4 tolerance failure.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lattheta/heat.hpp"
#include "lattheta/lattice.hpp"
#include "lattheta/qseries.hpp"
#include "lattheta/theta.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitInput = 3;
constexpr int kExitTolerance = 4;

struct RunConfig {
  std::string command;
  std::vector<std::string> gram_paths;
  long qprec = 0;
  std::string invariant_kind = "theta";
  double bound = 0.0;
  double t = 0.0;
  double epsilon = 1e-10;
  std::string output_path;
};

void emit(const RunConfig& config, const std::string& text) {
  if (config.output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(config.output_path);
  if (!out) throw std::runtime_error("cannot open output file " + config.output_path);
  out << text;
}

// invariant_kind is "theta", "theta11" or "thetann:<n>".
lattheta::QExpansion compute_invariant(const lattheta::GramLattice& lattice,
                                       const std::string& kind, long qprec) {
  if (kind == "theta") return lattheta::theta_series(lattice, qprec);
  if (kind == "theta11") return lattheta::theta11(lattice, qprec);
  if (kind.rfind("thetann:", 0) == 0) {
    std::string suffix = kind.substr(8);
    size_t used = 0;
    int n = 0;
    try {
      n = std::stoi(suffix, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != suffix.size() || n < 1)
      throw CLI::ValidationError("--kind", "thetann:<n> needs a positive integer n");
    return lattheta::theta_nn(lattice, n, qprec);
  }
  throw CLI::ValidationError("--kind", "unknown invariant kind: " + kind);
}

int cmd_theta(const RunConfig& config) {
  auto lattice = lattheta::read_gram_file(config.gram_paths[0]);
  emit(config, lattheta::to_text(lattheta::theta_series(lattice, config.qprec)));
  return kExitOk;
}

int cmd_invariant(const RunConfig& config) {
  auto lattice = lattheta::read_gram_file(config.gram_paths[0]);
  auto series = compute_invariant(lattice, config.invariant_kind, config.qprec);
  std::ostringstream out;
  if (series.weight) out << "weight " << lattheta::rat_str(*series.weight) << "\n";
  if (series.level) out << "level " << *series.level << "\n";
  out << lattheta::to_text(series);
  emit(config, out.str());
  return kExitOk;
}

int cmd_compare(const RunConfig& config) {
  auto a = lattheta::read_gram_file(config.gram_paths[0]);
  auto b = lattheta::read_gram_file(config.gram_paths[1]);
  if (a.dim() != b.dim())
    throw lattheta::LatticeError(lattheta::LatticeErrorCode::BadDimension,
                                 "compare: lattices must have equal dimension");

  std::vector<std::string> kinds{"theta", "theta11"};
  if (a.dim() == 2)
    for (int n = 1; n <= 4; ++n) kinds.push_back("thetann:" + std::to_string(n));

  std::ostringstream out;
  bool distinguished = false;
  for (const auto& kind : kinds) {
    auto sa = compute_invariant(a, kind, config.qprec);
    auto sb = compute_invariant(b, kind, config.qprec);
    auto diff = lattheta::first_difference(sa, sb);
    if (diff) {
      out << kind << " DIFFERS " << *diff << "\n";
      distinguished = true;
    } else {
      out << kind << " EQUAL\n";
    }
  }
  emit(config, out.str());
  return distinguished ? kExitOk : kExitInconclusive;
}

int cmd_shortvec(const RunConfig& config) {
  auto lattice = lattheta::read_gram_file(config.gram_paths[0]);
  if (config.bound < 0) throw CLI::ValidationError("--bound", "bound must be >= 0");
  std::ostringstream out;
  for (const auto& sv : lattice.short_vectors(lattheta::rational_of_double(config.bound))) {
    out << lattheta::rat_str(sv.norm2);
    for (long long c : sv.vector.coords) out << " " << c;
    out << "\n";
  }
  emit(config, out.str());
  return kExitOk;
}

int cmd_heat_check(const RunConfig& config) {
  auto lattice = lattheta::read_gram_file(config.gram_paths[0]);
  if (lattice.dim() > 4)
    throw lattheta::LatticeError(lattheta::LatticeErrorCode::BadDimension,
                                 "heat-check: supported for dim <= 4");
  lattheta::HeatContext ctx(lattice, config.t, config.epsilon);
  auto results = lattheta::heat_identities(ctx);

  std::ostringstream out;
  char buf[160];
  bool all_pass = true;
  for (const auto& r : results) {
    std::snprintf(buf, sizeof(buf), "%-28s %23.15e %23.15e %12.3e %s\n", r.name.c_str(), r.lhs,
                  r.rhs, r.error, r.pass ? "pass" : "FAIL");
    out << buf;
    all_pass = all_pass && r.pass;
  }
  emit(config, out.str());
  return all_pass ? kExitOk : kExitTolerance;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact theta-series invariants of integral lattices"};
  app.require_subcommand(1);
  RunConfig config;

  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("-o,--output", config.output_path, "write output to a file instead of stdout");
  };

  auto* theta = app.add_subcommand("theta", "classical theta series of a lattice");
  theta->add_option("--qprec", config.qprec, "q-expansion precision M")->required();
  theta->add_option("gram", config.gram_paths, "Gram matrix file")->required()->expected(1);
  add_output(theta);

  auto* invariant = app.add_subcommand("invariant", "O(n)-invariant theta form of a lattice");
  invariant->add_option("--kind", config.invariant_kind, "theta | theta11 | thetann:<n>")
      ->required();
  invariant->add_option("--qprec", config.qprec, "q-expansion precision M")->required();
  invariant->add_option("gram", config.gram_paths, "Gram matrix file")->required()->expected(1);
  add_output(invariant);

  auto* compare = app.add_subcommand("compare", "compare the invariants of two lattices");
  compare->add_option("--qprec", config.qprec, "q-expansion precision M")->required();
  compare->add_option("gram", config.gram_paths, "two Gram matrix files")
      ->required()
      ->expected(2);
  add_output(compare);

  auto* shortvec = app.add_subcommand("shortvec", "enumerate short vectors");
  shortvec->add_option("--bound", config.bound, "norm^2 bound B")->required();
  shortvec->add_option("gram", config.gram_paths, "Gram matrix file")->required()->expected(1);
  add_output(shortvec);

  auto* heat = app.add_subcommand("heat-check", "validate the heat-kernel identities");
  heat->add_option("--t", config.t, "heat flow time, 0 < t <= 1")->required();
  heat->add_option("--epsilon", config.epsilon, "truncation error target (default 1e-10)");
  heat->add_option("gram", config.gram_paths, "Gram matrix file")->required()->expected(1);
  add_output(heat);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (theta->parsed()) return cmd_theta(config);
    if (invariant->parsed()) return cmd_invariant(config);
    if (compare->parsed()) return cmd_compare(config);
    if (shortvec->parsed()) return cmd_shortvec(config);
    if (heat->parsed()) {
      if (!(config.t > 0.0 && config.t <= 1.0)) {
        std::cerr << "heat-check: --t must lie in (0, 1]\n";
        return kExitUsage;
      }
      if (!(config.epsilon > 0.0)) {
        std::cerr << "heat-check: --epsilon must be positive\n";
        return kExitUsage;
      }
      return cmd_heat_check(config);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const lattheta::LatticeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitTolerance;
  }
  return kExitUsage;
}
