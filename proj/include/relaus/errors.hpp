#pragma once
#include <stdexcept>
#include <string>

namespace relaus {

// Error taxonomy mirrors the CLI exit codes:
//   input    -> bad user input (exit 4)
//   budget   -> hypothesis or computation not decidable within budget (exit 3)
//   critical -> internal invariant broken, result unusable (exit 5)
struct Error : std::runtime_error {
  enum class Kind { input, budget, critical };
  Kind kind;
  Error(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

inline Error input_error(const std::string& msg) { return Error(Error::Kind::input, msg); }
inline Error budget_error(const std::string& msg) { return Error(Error::Kind::budget, msg); }
inline Error critical_error(const std::string& msg) { return Error(Error::Kind::critical, msg); }

}  // namespace relaus
