#pragma once

#include <stdexcept>
#include <string>

namespace wp {

// Exit-code contract: 0 ok, 2 input error, 3 cap error, 4 internal invariant
// violation.  The CLI maps these exception types onto those codes.

struct input_error : std::runtime_error {
  explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct cap_error : std::runtime_error {
  explicit cap_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct internal_error : std::runtime_error {
  explicit internal_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline void require_input(bool cond, const std::string& msg) {
  if (!cond) throw input_error(msg);
}

inline void require_cap(bool cond, const std::string& msg) {
  if (!cond) throw cap_error(msg);
}

inline void require_internal(bool cond, const std::string& msg) {
  if (!cond) throw internal_error(msg);
}

}  // namespace wp
