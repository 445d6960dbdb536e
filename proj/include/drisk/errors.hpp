#pragma once

#include <stdexcept>
#include <string>

namespace drisk {

// Malformed data: unreadable file, bad CSV cell, unknown channel. CLI exit 1.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid configuration: bad rule table, missing inference input. CLI exit 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace drisk
