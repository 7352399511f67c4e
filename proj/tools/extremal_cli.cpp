// Command-line front end: constructs the algebras, runs the verification
// suites, exports geometries, and reproduces the library's reference numbers.

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"

#include "extremal/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "exact-arithmetic toolkit for Lie algebras built from infinitesimal "
      "transvections and their extremal geometries"};
  app.require_subcommand(0, 1);

  std::string config_path;
  extremal::RunConfig config;
  std::string field, type, gram, pi, out_json, out_dot;
  int n = -1;
  std::int64_t enum_cap = -1;
  int samples = -1;
  std::uint64_t seed = 0;

  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--field", field, "field descriptor, e.g. GF(9;t^2+1), Q, Q(sqrt:-1)");
  app.add_option("--type", type, "construction: sl | su | sp | flag_model");
  app.add_option("-n,--dim", n, "construction dimension");
  app.add_option("--gram", gram, "gram spec: standard | diag(...) | antidiag(...)");
  app.add_option("--pi", pi, "functional space spec (full)");
  app.add_option("--enum-cap", enum_cap, "enumeration cap for brute scans");
  app.add_option("--samples", samples, "sample count for local-system checks");
  app.add_option("--seed", seed, "seed for all sampled checks");
  app.add_option("--out-json", out_json, "write the JSON report here");
  app.add_option("--out-dot", out_dot, "write the DOT graph here (geometry)");

  for (const char* op : {"construct", "verify", "geometry", "classify", "extend",
                         "polarity", "local", "suite"}) {
    app.add_subcommand(op, std::string("run the ") + op + " operation")->fallthrough();
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_path.empty()) config = extremal::RunConfig::load_file(config_path);
    if (const char* cap = std::getenv("EXTREMAL_ENUM_CAP"))
      config.bounds.enum_cap = std::atoll(cap);
    if (!field.empty()) config.field = field;
    if (!type.empty()) config.construction.type = type;
    if (n > 0) config.construction.n = n;
    if (!gram.empty()) config.construction.gram = gram;
    if (!pi.empty()) config.construction.pi = pi;
    if (enum_cap > 0) config.bounds.enum_cap = enum_cap;
    if (samples > 0) config.bounds.samples = samples;
    if (seed != 0) config.seed = seed;
    if (!out_json.empty()) config.output.json_path = out_json;
    if (!out_dot.empty()) config.output.dot_path = out_dot;
    for (const auto* sub : app.get_subcommands()) config.operation = sub->get_name();
    // re-validate after overrides
    config = extremal::RunConfig::from_json(config.to_json());

    extremal::CommandResult result = extremal::run_command(config);
    std::cout << result.summary << "\n";
    return result.ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
