#pragma once

#include <stdexcept>
#include <string>

namespace tunnelgate {

enum class ErrorCode {
  InvalidInput,
  EnergyBelowRest,
  KleinRegime,
  Propagating,
  SingularDenominator,
  IllConditioned,
  StencilOutOfRegime,
  NoisyDerivative,
  WrongBranch,
  BranchDegenerate,
  ZeroPath,
};

const char* to_string(ErrorCode code);

/// Domain error carrying a stable machine-readable code; the CLI maps codes
/// to exit status and one-line diagnostics.
class TunnelError : public std::runtime_error {
 public:
  TunnelError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw TunnelError(code, std::string(to_string(code)) + ": " + message);
}

}  // namespace tunnelgate
