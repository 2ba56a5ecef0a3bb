#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "czlab/config.hpp"
#include "czlab/driver.hpp"
#include "czlab/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"czlab: noncommutative Calderon-Zygmund experiments on the dyadic torus"};
  app.require_subcommand(1);

  std::string run_path, validate_path;
  auto* run = app.add_subcommand("run", "run the experiment described by a config file");
  run->add_option("config", run_path, "config JSON")->required();
  auto* validate = app.add_subcommand("validate", "check a config file without running it");
  validate->add_option("config", validate_path, "config JSON")->required();
  auto* schema = app.add_subcommand("schema", "print the config JSON schema");
  auto* version = app.add_subcommand("version", "print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : czlab::kExitConfig;
  }

  if (*run) return czlab::run(run_path, std::cerr);
  if (*validate) {
    try {
      const czlab::Config c = czlab::load_config(validate_path);
      std::cout << "ok: " << c.experiment << "\n";
      return czlab::kExitOk;
    } catch (const czlab::ConfigError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return czlab::kExitConfig;
    }
  }
  if (*schema) {
    std::cout << czlab::config_schema().dump(2) << "\n";
    return 0;
  }
  if (*version) {
    std::cout << "czlab " << CZLAB_VERSION << "\n";
    return 0;
  }
  return czlab::kExitConfig;
}
