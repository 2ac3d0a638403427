#pragma once

#include <stdexcept>
#include <string>

namespace tcnorm {

// Every failure mode has a stable code so callers (and the CLI) can react
// without parsing messages.
enum class Errc {
  LoopEdge,
  DuplicateEdge,
  DuplicateVertex,
  UnknownVertex,
  UnknownEdge,
  NonpositiveLength,
  Disconnected,
  TooManyTrees,
  NotSpanning,
  MassNotZero,
  SameVertex,
  NotATree,
  NotACycle,
  NonOptimalInput,
  EmptyInput,
  NotAPlan,
  TooLarge,
  NonMetric,
  CertificateGap,
  BadParams,
  ParseError,
  InternalCheck,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const { return code_; }

  // Cross-check failures mean the library contradicted itself; the CLI
  // reports them with a distinct exit code.
  bool is_internal() const { return code_ == Errc::CertificateGap || code_ == Errc::InternalCheck; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) { throw Error(code, message); }

}  // namespace tcnorm
