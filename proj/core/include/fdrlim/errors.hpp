#pragma once

#include <stdexcept>
#include <string>

namespace fdrlim {

// Bad user input: malformed spec strings, config files, CLI flags.
// The command line tool maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fdrlim
