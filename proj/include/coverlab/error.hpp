#pragma once

#include <stdexcept>
#include <string>

namespace coverlab {

enum class ErrorKind {
  not_coprime,
  non_coprime_moduli,
  lcm_too_large,
  even_modulus,
  guard_exceeded,
  factor_budget_exceeded,
  order_cap_exceeded,
  unsupported,
  even_prime_in_d,
  imaginary_residual,
  table_validation_failed,
  cover_failed,
  wieferich_violation,
  range_too_large,
  invalid_argument,
  io,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::not_coprime: return "not-coprime";
    case ErrorKind::non_coprime_moduli: return "non-coprime-moduli";
    case ErrorKind::lcm_too_large: return "lcm-too-large";
    case ErrorKind::even_modulus: return "even-modulus";
    case ErrorKind::guard_exceeded: return "guard-exceeded";
    case ErrorKind::factor_budget_exceeded: return "factorization-budget-exceeded";
    case ErrorKind::order_cap_exceeded: return "order-cap-exceeded";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::even_prime_in_d: return "even-prime-in-d";
    case ErrorKind::imaginary_residual: return "imaginary-residual-too-large";
    case ErrorKind::table_validation_failed: return "table-validation-failed";
    case ErrorKind::cover_failed: return "cover-Astar-failed";
    case ErrorKind::wieferich_violation: return "wieferich-violation";
    case ErrorKind::range_too_large: return "range-too-large";
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace coverlab
