#include "tdlc/factored.hpp"

#include <cmath>
#include <limits>

namespace tdlc {

void IndexValue::set(const Int& p, const Int& e) {
  if (e == 0)
    exps_.erase(p);
  else
    exps_[p] = e;
}

IndexValue IndexValue::prime_power(const Int& p, const Int& e) {
  if (!is_prime(p)) fail(ErrorKind::BadPrime, p.get_str() + " is not prime");
  IndexValue v;
  v.set(p, e);
  return v;
}

IndexValue IndexValue::from_integer(const Int& n) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "index must be a positive integer");
  IndexValue v;
  Int rem = n;
  Int d = 2;
  while (rem > 1) {
    if (d * d > rem) {
      v.set(rem, v.exps_.count(rem) ? Int(v.exps_[rem] + 1) : Int(1));
      break;
    }
    if (mpz_divisible_p(rem.get_mpz_t(), d.get_mpz_t())) {
      Int e = 0;
      while (mpz_divisible_p(rem.get_mpz_t(), d.get_mpz_t())) {
        rem /= d;
        ++e;
      }
      v.set(d, e);
    }
    d += (d == 2) ? 1 : 2;
  }
  return v;
}

IndexValue IndexValue::from_rational(const Rat& x) {
  if (x <= 0) fail(ErrorKind::InvalidArgument, "factored value must be positive");
  return from_integer(Int(x.get_num())) / from_integer(Int(x.get_den()));
}

bool IndexValue::is_integer() const {
  for (const auto& [p, e] : exps_)
    if (e < 0) return false;
  return true;
}

bool IndexValue::divides(const IndexValue& other) const {
  return (other / *this).is_integer();
}

IndexValue IndexValue::operator*(const IndexValue& o) const {
  IndexValue out = *this;
  for (const auto& [p, e] : o.exps_) {
    auto it = out.exps_.find(p);
    Int cur = it == out.exps_.end() ? Int(0) : it->second;
    out.set(p, cur + e);
  }
  return out;
}

IndexValue IndexValue::operator/(const IndexValue& o) const {
  return *this * o.pow(Int(-1));
}

IndexValue IndexValue::pow(const Int& k) const {
  IndexValue out;
  if (k == 0) return out;
  for (const auto& [p, e] : exps_) out.set(p, e * k);
  return out;
}

int IndexValue::compare(const IndexValue& a, const IndexValue& b) {
  Rat ra = a.to_rational(), rb = b.to_rational();
  return ra < rb ? -1 : (ra == rb ? 0 : 1);
}

Rat IndexValue::to_rational() const {
  Rat out(1);
  for (const auto& [p, e] : exps_) {
    if (e.fits_slong_p()) {
      out *= pow_rat(p, e.get_si());
    } else {
      fail(ErrorKind::InvalidArgument, "exponent too large to expand");
    }
  }
  return out;
}

std::string IndexValue::to_string() const { return to_rational().get_str(); }

double IndexValue::log_approx() const {
  double out = 0.0;
  for (const auto& [p, e] : exps_) out += e.get_d() * std::log(p.get_d());
  return out;
}

EntropyValue EntropyValue::log_of(const IndexValue& alpha) {
  EntropyValue v;
  v.alpha_ = alpha;
  return v;
}

EntropyValue EntropyValue::infinity() {
  EntropyValue v;
  v.infinite_ = true;
  return v;
}

const IndexValue& EntropyValue::alpha() const {
  if (infinite_) fail(ErrorKind::InvalidArgument, "infinite entropy has no finite alpha");
  return alpha_;
}

EntropyValue EntropyValue::operator+(const EntropyValue& o) const {
  if (infinite_ || o.infinite_) return infinity();
  return log_of(alpha_ * o.alpha_);
}

EntropyValue EntropyValue::operator-(const EntropyValue& o) const {
  if (infinite_ || o.infinite_)
    fail(ErrorKind::InvalidArgument, "difference with infinite entropy");
  return log_of(alpha_ / o.alpha_);
}

EntropyValue EntropyValue::times(const Int& k) const {
  if (infinite_) {
    if (k <= 0) fail(ErrorKind::InvalidArgument, "nonpositive multiple of infinity");
    return infinity();
  }
  return log_of(alpha_.pow(k));
}

bool EntropyValue::operator==(const EntropyValue& o) const {
  if (infinite_ != o.infinite_) return false;
  return infinite_ || alpha_ == o.alpha_;
}

int EntropyValue::compare(const EntropyValue& a, const EntropyValue& b) {
  if (a.infinite_ && b.infinite_) return 0;
  if (a.infinite_) return 1;
  if (b.infinite_) return -1;
  return IndexValue::compare(a.alpha_, b.alpha_);
}

double EntropyValue::approx() const {
  if (infinite_) return std::numeric_limits<double>::infinity();
  return alpha_.log_approx();
}

std::string EntropyValue::display() const {
  if (infinite_) return "infinity";
  if (alpha_.is_one()) return "0";
  return "log(" + alpha_.to_string() + ")";
}

}  // namespace tdlc
