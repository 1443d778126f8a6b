#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "kgmm/probes/transport.hpp"

namespace kgmm::cli {

enum ExitCode { kOk = 0, kBelowMinLevel = 1, kError = 2 };

struct Overrides {
  // Replaces the real HTTP transport when set (and no --http-fixture given).
  std::function<std::unique_ptr<probes::Transport>()> transport;
};

// Runs one command line (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Overrides& overrides = {});

}  // namespace kgmm::cli
