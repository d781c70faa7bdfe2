#pragma once

#include <stdexcept>
#include <string>

namespace qzeros {

enum class ErrorKind {
  domain,              // argument outside the documented domain
  precondition,        // caller-supplied data violates a stated precondition
  overflow,            // value not representable; use the log-scaled route
  non_convergence,     // iteration or truncation did not reach tolerance
  degree_cap,          // truncation degree exceeded the configured cap
  boundary_collision,  // zero too close to the search circle
  contour_collision,   // zero on or near a winding contour
  insufficient_data,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::overflow: return "overflow";
    case ErrorKind::non_convergence: return "non-convergence";
    case ErrorKind::degree_cap: return "degree-cap";
    case ErrorKind::boundary_collision: return "boundary-collision";
    case ErrorKind::contour_collision: return "contour-collision";
    case ErrorKind::insufficient_data: return "insufficient-data";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // True for errors caused by bad input rather than by the numerics.
  bool is_input_error() const noexcept {
    return kind_ == ErrorKind::domain || kind_ == ErrorKind::precondition ||
           kind_ == ErrorKind::insufficient_data;
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace qzeros
