#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace fisheye {

// Guard violation. `guard` is the stable machine-readable name callers can
// test ("CoincidentPoints", "PoleProximity", ...); the CLI prints it and
// exits with the usage/domain error code.
class DomainError : public std::domain_error {
 public:
  DomainError(std::string guard, const std::string& detail)
      : std::domain_error(guard + ": " + detail), guard_(std::move(guard)) {}

  const std::string& guard() const noexcept { return guard_; }

 private:
  std::string guard_;
};

}  // namespace fisheye
