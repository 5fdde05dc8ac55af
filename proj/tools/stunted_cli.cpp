// Command-line explorer for stunted sawtooth maps. Prints JSON certificates
// on stdout; scan writes CSV. Exit codes: 0 success, 2 precondition or input
// errors, 3 budget exhaustion with an Inconclusive result.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "stunted/errors.hpp"
#include "stunted/explorer.hpp"
#include "stunted/kneading.hpp"
#include "stunted/orbits.hpp"
#include "stunted/renorm.hpp"
#include "stunted/sawtooth.hpp"
#include "stunted/serialize.hpp"

using namespace stunted;

namespace {

constexpr int kExitPrecondition = 2;
constexpr int kExitBudget = 3;

// Accepts p/q, decimals, 2^-k and 1e-k.
Rat parse_rat(const std::string& text) {
  if (text.rfind("2^-", 0) == 0) return Rat::pow2_inv(static_cast<unsigned>(std::stoul(text.substr(3))));
  if (const auto e = text.find_first_of("eE"); e != std::string::npos) {
    const Rat mant = Rat::parse(text.substr(0, e));
    const long exp = std::stol(text.substr(e + 1));
    Rat scale(1);
    for (long i = 0; i < std::labs(exp); ++i) scale = scale * Rat(10);
    return exp < 0 ? mant / scale : mant * scale;
  }
  return Rat::parse(text);
}

std::vector<Rat> parse_rats(const std::string& text) {
  std::vector<Rat> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rat(item));
  return out;
}

struct MapArgs {
  std::string shape = "+-";
  std::string w = "1";

  void attach(CLI::App* app) {
    app->add_option("--shape", shape, "monotonicity signs, e.g. +- or +-+")->capture_default_str();
    app->add_option("--w", w, "critical values, comma separated (p/q, decimals, 2^-k)")
        ->capture_default_str();
  }
  StuntedSawtoothMap build() const { return build_stunted(Shape::parse(shape), parse_rats(w)); }
};

struct BudgetArgs {
  Budgets b;

  void attach(CLI::App* app) {
    app->add_option("--max-period-exp", b.max_period_exp, "periods searched up to 2^k")
        ->capture_default_str();
    app->add_option("--piece-budget", b.piece_budget)->capture_default_str();
    app->add_option("--tower-depth", b.tower_depth)->capture_default_str();
    app->add_option("--m-budget", b.homoclinic_m_budget, "homoclinic preimage depth")
        ->capture_default_str();
    app->add_option("--entropy-tol", b.entropy_tol)->capture_default_str();
  }
};

void print(const Json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explore stunted sawtooth maps: periods, entropy, kneading, renormalization"};
  app.require_subcommand(1);

  MapArgs map_args;

  auto* describe = app.add_subcommand("describe", "print the map structure");
  map_args.attach(describe);

  std::size_t period = 1;
  auto* orbits = app.add_subcommand("orbits", "periodic orbits of minimal period N");
  map_args.attach(orbits);
  orbits->add_option("--period", period)->required();

  std::string method = "markov";
  std::size_t n_max = 12;
  auto* entropy = app.add_subcommand("entropy", "topological entropy estimate");
  map_args.attach(entropy);
  entropy->add_option("--method", method)
      ->check(CLI::IsMember({"bowen", "lap", "markov"}))
      ->capture_default_str();
  entropy->add_option("--n-max", n_max, "iterates for lap and bowen")->capture_default_str();

  std::size_t depth = 6;
  auto* kneading = app.add_subcommand("kneading", "kneading data to a depth");
  map_args.attach(kneading);
  kneading->add_option("--depth", depth)->required();

  std::size_t plateau = 0;
  auto* renorm = app.add_subcommand("renorm", "doubling tower and odometer check");
  map_args.attach(renorm);
  renorm->add_option("--depth", depth)->required();
  renorm->add_option("--plateau", plateau, "1-based plateau, 0 for the deepest tower");

  BudgetArgs budget_args;
  auto* classify_cmd = app.add_subcommand("classify", "Finite / Boundary2Inf / Chaotic verdict");
  map_args.attach(classify_cmd);
  budget_args.attach(classify_cmd);

  std::string lo;
  std::string hi;
  std::string tol = "1e-9";
  std::string shape = "+-";
  bool quiet = false;
  auto* bisect = app.add_subcommand("bisect", "bisect the order/chaos boundary along a line");
  bisect->add_option("--shape", shape)->capture_default_str();
  bisect->add_option("--lo", lo, "one endpoint, comma separated")->required();
  bisect->add_option("--hi", hi, "other endpoint")->required();
  bisect->add_option("--tol", tol, "bracket width in w")->capture_default_str();
  bisect->add_flag("--quiet", quiet, "no per-step progress on stderr");
  budget_args.attach(bisect);

  std::string eps = "1/100,1/1000,1/10000";
  auto* theorem1 = app.add_subcommand("theorem1", "perturb a boundary map toward chaos and order");
  map_args.attach(theorem1);
  theorem1->add_option("--eps", eps, "comma separated")->capture_default_str();
  budget_args.attach(theorem1);

  std::string config_path;
  auto* scan = app.add_subcommand("scan", "classify a parameter grid");
  scan->add_option("--config", config_path, "JSON scan config")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*describe) {
      print(to_json(map_args.build()));
    } else if (*orbits) {
      const auto m = map_args.build();
      Json a = Json::array();
      for (const auto& o : periodic_points(m.map(), period)) a.push_back(to_json(o));
      print({{"period", period}, {"orbits", a}});
    } else if (*entropy) {
      const auto m = map_args.build();
      if (method == "markov") {
        print(to_json(entropy_markov(m.map())));
      } else if (method == "lap") {
        print(to_json(entropy_lap(m.map(), n_max)));
      } else {
        BowenOptions opts;
        opts.n_max = n_max;
        print(to_json(entropy_bowen(m.map(), opts)));
      }
    } else if (*kneading) {
      print(to_json(kneading_data(map_args.build(), depth)));
    } else if (*renorm) {
      const auto m = map_args.build();
      const auto tower = plateau ? build_tower(m, depth, plateau) : build_tower(m, depth);
      Json checks = Json::array();
      for (std::size_t n = 0; n <= tower.depth(); ++n) {
        checks.push_back(to_json(semiconjugacy_check(m, tower, n)));
      }
      print({{"tower", to_json(tower)}, {"semiconjugacy", checks}});
    } else if (*classify_cmd) {
      const auto rec = classify_escalating(map_args.build(), budget_args.b);
      print(to_json(rec));
      if (rec.verdict == Verdict::inconclusive) return kExitBudget;
    } else if (*bisect) {
      ParameterLine line{Shape::parse(shape), parse_rats(lo), parse_rats(hi)};
      auto progress = [&](const BisectStep& s) {
        if (!quiet) std::cerr << to_string(s.verdict) << (s.escalated ? "*" : "") << ' ';
      };
      const auto res = bisect_boundary(line, parse_rat(tol), budget_args.b, progress);
      if (!quiet) std::cerr << '\n';
      print(to_json(res));
      if (!res.stalled.empty()) return kExitBudget;
    } else if (*theorem1) {
      const auto rep = theorem1_experiment(map_args.build(), parse_rats(eps), budget_args.b);
      print(to_json(rep));
    } else if (*scan) {
      std::ifstream in(config_path);
      std::stringstream ss;
      ss << in.rdbuf();
      const auto sum = scan_grid(ScanConfig::from_json_text(ss.str()));
      print({{"cells", sum.cells},
             {"skipped", sum.skipped},
             {"resumed", sum.resumed},
             {"inconclusive", sum.inconclusive}});
      if (sum.inconclusive > 0) return kExitBudget;
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: bad number: " << e.what() << '\n';
    return kExitPrecondition;
  }
  return 0;
}
