#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  auto parsed = bergman::cli::parse_args(argc, argv);
  if (auto* exit = std::get_if<bergman::cli::UsageExit>(&parsed)) {
    if (!exit->message.empty()) (exit->status == 0 ? std::cout : std::cerr) << exit->message << '\n';
    return exit->status;
  }
  return bergman::cli::run(std::get<bergman::cli::CliConfig>(parsed));
}
