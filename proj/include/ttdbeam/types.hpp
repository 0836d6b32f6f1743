#ifndef TTDBEAM_TYPES_HPP
#define TTDBEAM_TYPES_HPP

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace ttdbeam {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSpeedOfLight = 299792458.0;

enum class Err {
  Ok = 0,
  InvalidArgument,
  InvalidDelaySpacing,
  InvalidPilotSet,
  OddSubcarrierCount,
  EmptyPilotSet,
  EmptyBlock,
  NonDivisible,
  IndexOutOfRange,
  CpViolation,
  DelayTooSmall,
  InvalidSpec,
  EmptyChannel,
  ParseError,
  IoError,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

// conj(a) . b
inline cplx cdot(const cvec& a, const cvec& b) {
  cplx s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

inline double norm2(const cvec& a) {
  double s = 0.0;
  for (const cplx& x : a) s += std::norm(x);
  return s;
}

}  // namespace ttdbeam

#endif
