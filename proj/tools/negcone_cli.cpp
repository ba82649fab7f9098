// Command-line front end over the C interface.

#include "negcone/negcone.h"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

struct Options {
  std::string space = "m06";
  std::string route;
  std::string criteria;
  std::string what;
  std::string curve;
  std::string covers_file;
  std::string input;
  std::string out;
  std::size_t max_size = 0;
  std::size_t max_rays = 0;
  double max_seconds = 0;
  std::size_t trials = 0;
  std::string seed;
  long drop_kv = -1;
  long perturb_curve = -1;
  bool quiet = false;
};

std::vector<std::string> read_covers(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line.erase(0, line.find_first_not_of(" \t\r"));
    line.erase(line.find_last_not_of(" \t\r") + 1);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

int run(const std::string& command, const Options& o) {
  negcone_config* raw = nullptr;
  if (negcone_config_create(command.c_str(), o.space.c_str(), &raw) != NEGCONE_OK) {
    std::cerr << negcone_last_error() << "\n";
    return NEGCONE_INVALID_ARGUMENT;
  }
  std::unique_ptr<negcone_config, decltype(&negcone_config_destroy)> cfg(raw, negcone_config_destroy);
  std::vector<std::pair<std::string, std::string>> kv;
  if (!o.route.empty()) kv.emplace_back("route", o.route);
  if (!o.criteria.empty()) kv.emplace_back("criteria", o.criteria);
  if (!o.what.empty()) kv.emplace_back("what", o.what);
  if (!o.curve.empty()) kv.emplace_back("curve", o.curve);
  if (!o.input.empty()) kv.emplace_back("input", o.input);
  if (o.max_size) kv.emplace_back("max-size", std::to_string(o.max_size));
  if (o.max_rays) kv.emplace_back("max-rays", std::to_string(o.max_rays));
  if (o.max_seconds > 0) kv.emplace_back("max-seconds", std::to_string(o.max_seconds));
  if (o.trials) kv.emplace_back("trials", std::to_string(o.trials));
  if (!o.seed.empty()) kv.emplace_back("seed", o.seed);
  if (o.drop_kv >= 0) kv.emplace_back("drop-kv", std::to_string(o.drop_kv));
  if (o.perturb_curve >= 0) kv.emplace_back("perturb-curve", std::to_string(o.perturb_curve));
  try {
    if (!o.covers_file.empty()) {
      for (const auto& c : read_covers(o.covers_file)) kv.emplace_back("cover", c);
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return NEGCONE_INVALID_ARGUMENT;
  }
  for (const auto& [k, v] : kv) {
    if (negcone_config_set(cfg.get(), k.c_str(), v.c_str()) != NEGCONE_OK) {
      std::cerr << negcone_last_error() << "\n";
      return NEGCONE_INVALID_ARGUMENT;
    }
  }

  negcone_result* res = nullptr;
  const negcone_status status = negcone_run(cfg.get(), &res);
  if (!res) {
    std::cerr << negcone_last_error() << "\n";
    return status;
  }
  std::unique_ptr<negcone_result, decltype(&negcone_result_destroy)> result(res, negcone_result_destroy);
  if (!o.quiet) std::cout << negcone_result_summary(res);
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    f << negcone_result_json(res) << "\n";
    if (!f) {
      std::cerr << "cannot write " << o.out << "\n";
      return NEGCONE_INVALID_ARGUMENT;
    }
  } else if (o.quiet) {
    std::cout << negcone_result_json(res) << "\n";
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of effective cones bounded by negative curves"};
  app.set_version_flag("--version", std::string(negcone_version()));
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--space", o.space, "m05 or m06")->check(CLI::IsMember({"m05", "m06"}));
    sub->add_option("--max-rays", o.max_rays, "ray-count ceiling for double description");
    sub->add_option("--max-seconds", o.max_seconds, "wall-clock ceiling");
    sub->add_option("--seed", o.seed, "seed recorded in the output");
    sub->add_option("--out", o.out, "write the JSON artifact here");
    sub->add_option("--drop-kv", o.drop_kv, "remove the given Keel-Vermiere divisor (0-based)");
    sub->add_option("--perturb-curve", o.perturb_curve, "shift catalog curve K by -l");
    sub->add_flag("--quiet", o.quiet, "print JSON instead of the summary when --out is absent");
  };

  auto* verify = app.add_subcommand("verify-eff", "verify that the divisor catalog generates the effective cone");
  common(verify);
  verify->add_option("--route", o.route, "qrays, nefmin or both")->check(CLI::IsMember({"qrays", "nefmin", "both"}));
  verify->add_option("--criteria", o.criteria, "1 or 123")->check(CLI::IsMember({"1", "123"}));
  verify->add_option("--covers", o.covers_file, "file with one covering curve per line");
  verify->add_option("--max-size", o.max_size, "subset size ceiling");
  verify->add_option("--cert", o.out, "certificate output (same as --out)");

  auto* enumerate = app.add_subcommand("enumerate-nefmin", "enumerate nef-minimal subsets up to symmetry");
  common(enumerate);
  enumerate->add_option("--covers", o.covers_file, "file with one covering curve per line");
  enumerate->add_option("--criteria", o.criteria, "1 or 123")->check(CLI::IsMember({"1", "123"}));
  enumerate->add_option("--max-size", o.max_size, "subset size ceiling");

  auto* orbits = app.add_subcommand("orbits", "orbits of the catalogs under the symmetric group");
  common(orbits);

  auto* face = app.add_subcommand("face", "face of a nef curve, its rays and their certificates");
  common(face);
  face->add_option("--curve", o.curve, "curve class, e.g. l-e12-e34")->required();

  auto* oracle = app.add_subcommand("oracle", "independent dual computations");
  common(oracle);
  oracle->add_option("--what", o.what, "rays, facets, sum or crosscheck")
      ->check(CLI::IsMember({"rays", "facets", "sum", "crosscheck"}));
  oracle->add_option("--trials", o.trials, "random subsets for crosscheck");

  auto* fixtures = app.add_subcommand("fixtures", "class identities used in the hand proof");
  common(fixtures);

  auto* contractions = app.add_subcommand("report-contractions", "covering classes and their fiber data");
  common(contractions);
  contractions->add_option("--covers", o.covers_file, "file with one covering curve per line");

  auto* check = app.add_subcommand("check-cert", "re-verify a verify-eff certificate");
  common(check);
  check->add_option("input", o.input, "certificate file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return NEGCONE_INVALID_ARGUMENT;
  }
  return run(app.get_subcommands().front()->get_name(), o);
}
