#include "tdlc/oracles.hpp"

#include <algorithm>

namespace tdlc {

std::vector<Rat> char_poly(const RatMat& a) {
  if (a.rows() != a.cols()) fail(ErrorKind::DimMismatch, "char_poly of non-square matrix");
  std::size_t n = a.rows();
  // Faddeev-LeVerrier: M_1 = A, c_{n-k} = -tr(A M_k)/k with M_{k+1} = A(M_k + c_{n-k} I).
  std::vector<Rat> coeffs(n + 1, Rat(0));
  coeffs[n] = 1;
  RatMat m = RatMat::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m;
    Rat tr(0);
    for (std::size_t i = 0; i < n; ++i) tr += m.at(i, i);
    Rat c = -tr / Rat(static_cast<long>(k));
    coeffs[n - k] = c;
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) += c;
  }
  return coeffs;
}

NewtonPolygon NewtonPolygon::from_coefficients(const std::vector<Rat>& coeffs,
                                               const Int& p) {
  if (!is_prime(p)) fail(ErrorKind::BadPrime, p.get_str() + " is not prime");
  NewtonPolygon out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    out.points.emplace_back(static_cast<long>(i), valuation(coeffs[i], p));
  }
  if (out.points.size() < 2)
    fail(ErrorKind::InvalidArgument, "polygon needs at least two nonzero coefficients");
  // Monotone scan keeping the lower hull: slopes strictly increase.
  std::vector<std::pair<long, long>> hull;
  for (const auto& pt : out.points) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull[hull.size() - 1];
      // pop b unless it turns strictly upward: slope(a,b) < slope(b,pt)
      Rat s1 = Rat(Int(b.second - a.second), Int(b.first - a.first));
      Rat s2 = Rat(Int(pt.second - b.second), Int(pt.first - b.first));
      s1.canonicalize();
      s2.canonicalize();
      if (s1 < s2) break;
      hull.pop_back();
    }
    hull.push_back(pt);
  }
  for (std::size_t i = 1; i < hull.size(); ++i) {
    NewtonSegment seg;
    seg.length = hull[i].first - hull[i - 1].first;
    seg.rise = Int(hull[i].second - hull[i - 1].second);
    seg.slope = Rat(seg.rise, Int(seg.length));
    seg.slope.canonicalize();
    out.segments.push_back(std::move(seg));
  }
  return out;
}

Int NewtonPolygon::positive_rise() const {
  Int e = 0;
  for (const auto& seg : segments)
    if (seg.slope > 0) e += seg.rise;
  return e;
}

namespace {

std::vector<Rat> checked_char_poly(const RatMat& a) {
  std::vector<Rat> coeffs = char_poly(a);
  if (coeffs[0] == 0) fail(ErrorKind::Singular, "matrix is singular");
  return coeffs;
}

}  // namespace

EntropyValue entropy_oracle_padic(const RatMat& a, const Int& p) {
  std::vector<Rat> coeffs = checked_char_poly(a);
  NewtonPolygon polygon = NewtonPolygon::from_coefficients(coeffs, p);
  Int e = polygon.positive_rise();
  // Independent route: e = -min_i v_p(a_i) clipped at 0 (hull endpoints have
  // valuation 0 at i = n since the polynomial is monic).
  long vmin = 0;
  for (const Rat& c : coeffs) {
    if (c == 0) continue;
    vmin = std::min(vmin, valuation(c, p));
  }
  if (e != Int(-vmin))
    fail(ErrorKind::CrossCheckMismatch, "newton polygon routes disagree");
  return EntropyValue::log_of(IndexValue::prime_power(p, e));
}

IndexValue modulus_oracle_padic(const RatMat& a, const Int& p) {
  Rat d = det(a);
  if (d == 0) fail(ErrorKind::Singular, "matrix is singular");
  return IndexValue::prime_power(p, Int(-valuation(d, p)));
}

IndexValue scale_oracle_padic(const RatMat& a, const Int& p) {
  EntropyValue h = entropy_oracle_padic(a, p);
  return h.alpha();
}

}  // namespace tdlc
