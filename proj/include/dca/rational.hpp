#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace dca {

using Rat = mpq_class;

// User-facing problems (bad input, cutoff too small): CLI exit code 1.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Violations of properties that are theorems (d^2 = 0 etc.): CLI exit code 2.
struct internal_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A product or differential left the computed weight window.  Distinct from
// zero on purpose; silent truncation would corrupt d^2 checks downstream.
struct window_error : input_error {
  using input_error::input_error;
};

inline std::string rat_str(const Rat& q) {
  return q.get_str();
}

inline Rat parse_rat(const std::string& s) {
  try {
    Rat q(s);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw input_error("bad rational literal '" + s + "'");
  }
}

}  // namespace dca

namespace Eigen {
template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 40,
    MulCost = 40,
  };
};
}  // namespace Eigen
