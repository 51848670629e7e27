#pragma once

#include <stdexcept>
#include <string>

namespace fermat4 {

enum class Errc {
  InvalidArgument,
  NotSquarefree,
  InvalidD,
  MissingTableEntry,
  ZeroElement,
  NotRealQuadratic,
  DiscriminantTooLarge,
  BoxTooLarge,
  EquationFails,
  ExponentTooSmall,
  NOrdTooLarge,
  SingularCurve,
  PreconditionFailed,
  DegenerateLambda,
  NotASolution,
  DegenerateTriple,
  WrongS,
  IncompleteProfiles,
  CutoffTooLarge,
  FieldMismatch,
  Internal,
};

const char* errc_name(Errc c);

// True for conditions caused by bad input rather than resource limits.
bool errc_is_input_error(Errc c);

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace fermat4
