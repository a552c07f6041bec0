#pragma once

#include <stdexcept>
#include <string>

namespace recmon {

enum class Errc {
  syntax,        // malformed input text
  input,         // well-formed but invalid (unknown action, wrong AST kind, ...)
  fragment,      // formula outside the fragment an operation requires
  precondition,  // operation precondition violated (unguarded, inconsistent, ...)
  cap_exceeded,  // internal exploration cap hit
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string msg, std::string stage = {})
      : std::runtime_error(stage.empty() ? msg : stage + ": " + msg),
        code_(code),
        stage_(std::move(stage)) {}

  Errc code() const { return code_; }
  const std::string &stage() const { return stage_; }

  // CLI exit-code mapping: input-shaped errors -> 2, caps -> 3.
  int exit_code() const { return code_ == Errc::cap_exceeded ? 3 : 2; }

 private:
  Errc code_;
  std::string stage_;
};

[[noreturn]] inline void fail(Errc code, const std::string &msg,
                              const std::string &stage = {}) {
  throw Error(code, msg, stage);
}

}  // namespace recmon
