#pragma once

#include <stdexcept>
#include <string>

namespace irbath {

// Exit code mapping used by the CLI: validation 2, numeric 3, I/O 4.
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

}  // namespace irbath
