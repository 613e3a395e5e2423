#include <iostream>
#include <string>
#include <vector>

#include "brownq/cli/config.hpp"
#include "brownq/cli/experiments.hpp"

int main(int argc, char** argv) {
  using namespace brownq::cli;
  const std::vector<std::string> args(argv + 1, argv + argc);
  RunConfig config;
  try {
    config = parse_config(args);
  } catch (const HelpRequested& help) {
    std::cout << help.text;
    return kExitPass;
  } catch (const UsageError& e) {
    std::cerr << "brownq: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  }
  return run_experiment(config, std::cerr);
}
