#pragma once

#include <map>
#include <string>

#include "tdlc/rational.hpp"

namespace tdlc {

// Positive rational kept in factored form {prime -> exponent}. Subgroup
// indices, cotrajectory quotients and moduli all live here so that equality
// and divisibility are exact. Exponents may be negative (moduli of inverses).
class IndexValue {
 public:
  IndexValue() = default;

  static IndexValue one() { return IndexValue(); }
  static IndexValue prime_power(const Int& p, const Int& e);
  static IndexValue from_integer(const Int& n);   // n >= 1, trial factored
  static IndexValue from_rational(const Rat& x);  // x > 0

  bool is_one() const { return exps_.empty(); }
  bool is_integer() const;  // all exponents >= 0
  bool divides(const IndexValue& other) const;

  IndexValue operator*(const IndexValue& o) const;
  IndexValue operator/(const IndexValue& o) const;
  IndexValue pow(const Int& k) const;
  IndexValue inverse() const { return pow(Int(-1)); }

  bool operator==(const IndexValue& o) const { return exps_ == o.exps_; }
  bool operator!=(const IndexValue& o) const { return !(*this == o); }

  // Exact order comparison: -1, 0, +1 as values compare.
  static int compare(const IndexValue& a, const IndexValue& b);

  Rat to_rational() const;
  std::string to_string() const;  // exact decimal "a" or "a/b"
  const std::map<Int, Int>& exponents() const { return exps_; }

  // Natural log, display only.
  double log_approx() const;

 private:
  std::map<Int, Int> exps_;  // prime -> nonzero exponent
  void set(const Int& p, const Int& e);
};

// Entropy value log(alpha) for a factored positive rational alpha, or
// infinity. Arithmetic is carried out on alpha; logs only ever reach the
// user as display strings.
class EntropyValue {
 public:
  EntropyValue() : infinite_(false) {}

  static EntropyValue log_of(const IndexValue& alpha);
  static EntropyValue zero() { return EntropyValue(); }
  static EntropyValue infinity();

  bool is_infinite() const { return infinite_; }
  bool is_zero() const { return !infinite_ && alpha_.is_one(); }
  const IndexValue& alpha() const;  // throws when infinite

  EntropyValue operator+(const EntropyValue& o) const;
  EntropyValue operator-(const EntropyValue& o) const;  // finite operands only
  EntropyValue times(const Int& k) const;

  bool operator==(const EntropyValue& o) const;
  bool operator!=(const EntropyValue& o) const { return !(*this == o); }

  static int compare(const EntropyValue& a, const EntropyValue& b);

  double approx() const;        // natural log, display only
  std::string display() const;  // "0", "log(12)", "log(3/2)", "infinity"

 private:
  bool infinite_;
  IndexValue alpha_;
};

}  // namespace tdlc
