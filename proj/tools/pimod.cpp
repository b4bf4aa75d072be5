// pimod: homotopy invariants of moduli spaces of realizations of 2-stage Π-algebras.

#include "pimoduli/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char** argv) {
  CLI::App app{"Moduli of realizations of 2-stage Pi-algebras"};
  pimoduli::CliOptions opts;
  std::string spec_path, degrees, output;
  std::size_t max_group_order = 0;
  app.add_option("command", opts.command, "moduli | cohomology | check")->required();
  app.add_option("spec", spec_path, "input spec (JSON)")->required();
  app.add_option("--degrees", degrees, "cohomology degree range a..b");
  app.add_flag("--oracle", opts.oracle, "cross-check cohomology by brute-force enumeration");
  app.add_option("--max-group-order", max_group_order, "largest group whose bar complex is built");
  app.add_option("--output", output, "write the report here instead of stdout");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(pimoduli::ErrorCode::parse);
  }

  pimoduli::CliResult result;
  std::ifstream in(spec_path);
  if (!in) {
    result = {static_cast<int>(pimoduli::ErrorCode::parse),
              pimoduli::error_json(pimoduli::ParseError("cannot read spec file " + spec_path)).dump(2) + "\n"};
  } else {
    std::ostringstream text;
    text << in.rdbuf();
    try {
      if (!degrees.empty()) opts.degrees = pimoduli::parse_degree_range(degrees);
      if (app.count("--max-group-order")) opts.max_group_order = max_group_order;
      result = pimoduli::run(opts, text.str());
    } catch (const pimoduli::Error& e) {
      result = {static_cast<int>(e.code()), pimoduli::error_json(e).dump(2) + "\n"};
    }
  }

  if (output.empty()) {
    (result.exit_code == 0 || opts.command == "check" ? std::cout : std::cerr) << result.output;
  } else {
    std::ofstream out(output, std::ios::binary);
    out << result.output;
    if (!out) {
      std::cerr << "cannot write " << output << "\n";
      return static_cast<int>(pimoduli::ErrorCode::parse);
    }
  }
  return result.exit_code;
}
