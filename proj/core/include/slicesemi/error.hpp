#pragma once

#include <stdexcept>
#include <string>

namespace slicesemi {

enum class Err {
  DescriptorMismatch,
  WrongAlgebra,
  NonAssociative,
  NotInCone,
  ZeroElement,
  NotImaginaryUnit,
  OnSphere,
  Singular,
  NoConvergence,
  OnSpectrum,
  NotConvergent,
  NormConditionViolated,
  NotCauchy,
  GridTooShort,
  SpectrumOutsideCircle,
  LoopHitsSpectrum,
  NotSectorial,
  TailNotCertifiable,
  LambdaInsideKeyhole,
  SphereNotEnclosed,
  RealSliceRequired,
  UnknownSuite,
  BadInput,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
public:
  Error(Err code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}

  Err code() const noexcept { return code_; }

private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

}  // namespace slicesemi
