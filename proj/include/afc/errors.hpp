#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace afc {

// Precondition / contract violations carry a short machine-parsable code
// next to the human message. The CLI maps these to exit code 1 and prints
// "error: <code>: <message>".
class contract_error : public std::invalid_argument {
 public:
  contract_error(std::string code, const std::string& message)
      : std::invalid_argument(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

[[noreturn]] inline void fail_contract(const char* code, const std::string& message) {
  throw contract_error(code, message);
}

inline void require(bool ok, const char* code, const std::string& message) {
  if (!ok) fail_contract(code, message);
}

}  // namespace afc
