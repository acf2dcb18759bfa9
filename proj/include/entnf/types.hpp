#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace entnf {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Per-party local dimensions (N_1, ..., N_p), party 1 first.
using Dims = std::vector<std::size_t>;

/// Named numeric tolerances shared by all modules.
///
/// The defaults form the "default" profile; `Tolerances::profile` returns the
/// named alternatives used by the command-line front end.
struct Tolerances {
  double herm = 1e-9;   ///< hermiticity, relative to the largest entry
  double psd = 1e-9;    ///< smallest admissible eigenvalue, relative to trace
  double unit = 1e-9;   ///< ||U^dagger U - I||
  double det = 1e-9;    ///< |det A - 1| for special-linear sets
  double rel = 1e-12;   ///< generic relative comparison

  static Tolerances profile(const std::string& name);
};

/// Base for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}

  /// Short machine-readable code, e.g. "dimension_mismatch".
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class DimensionError : public Error {
 public:
  /// `party` is zero-based; the message reports it one-based.
  DimensionError(std::size_t party, const std::string& what)
      : Error("dimension_mismatch",
              "party " + std::to_string(party + 1) + ": " + what),
        party_(party) {}
  explicit DimensionError(const std::string& what)
      : Error("dimension_mismatch", what), party_(npos) {}

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t party() const noexcept { return party_; }

 private:
  std::size_t party_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error("invalid_argument", what) {}
};

std::size_t product(const Dims& dims);

}  // namespace entnf
