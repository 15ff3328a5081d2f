#pragma once

#include <stdexcept>
#include <string>

namespace motifvar {

/// Error with a short machine-readable category, e.g. "input-not-found".
/// The CLI prints the category verbatim so scripts can branch on it.
class Error : public std::runtime_error {
 public:
  Error(std::string category, const std::string& message)
      : std::runtime_error(message), category_(std::move(category)) {}

  const std::string& category() const noexcept { return category_; }

 private:
  std::string category_;
};

inline Error config_error(const std::string& message) { return Error("config-error", message); }

}  // namespace motifvar
