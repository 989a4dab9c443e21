#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace amp {

// Every precondition failure in the library throws Error with a stable `kind`
// tag (e.g. "NotInterior", "NotSaturated").  The CLI maps Error to exit code 2,
// any other exception to exit code 4, so tests can assert on kinds without
// string-matching log text.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

[[noreturn]] inline void fail(const char* kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool ok, const char* kind, const std::string& what) {
  if (!ok) fail(kind, what);
}

}  // namespace amp
