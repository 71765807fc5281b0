#pragma once

#include <utility>
#include <vector>

#include "tdlc/factored.hpp"
#include "tdlc/matrix.hpp"

namespace tdlc {

// Lower Newton polygon of a polynomial over Q at the prime p. Convention,
// pinned by the probes x - p and x - 1/p: the p-adic valuations of the roots
// are the NEGATIVES of the lower-hull slopes.
struct NewtonSegment {
  Rat slope;
  long length;  // horizontal extent
  Int rise;     // slope * length, always an integer
};

struct NewtonPolygon {
  std::vector<std::pair<long, long>> points;  // (i, v_p(a_i)), zero coeffs skipped
  std::vector<NewtonSegment> segments;        // slopes strictly increasing

  static NewtonPolygon from_coefficients(const std::vector<Rat>& coeffs, const Int& p);

  // Sum of rises over positive-slope segments: the count e with
  // sum over expanding roots of (-v_p(root)) = e.
  Int positive_rise() const;
};

// Exact monic characteristic polynomial, coefficients a_0..a_n of
// x^n + a_{n-1} x^{n-1} + ... (a_n = 1), by the trace recurrence.
std::vector<Rat> char_poly(const RatMat& a);

// Closed forms for Q_p^n used to certify the engine:
//   entropy  = log p^e, e = total expansion read off the Newton polygon;
//   modulus  = p^(-v_p(det A));
//   scale    = p^e (equals the entropy exponent in this universe).
EntropyValue entropy_oracle_padic(const RatMat& a, const Int& p);
IndexValue modulus_oracle_padic(const RatMat& a, const Int& p);
IndexValue scale_oracle_padic(const RatMat& a, const Int& p);

}  // namespace tdlc
