#include <doctest.h>

#include "tdlc/oracles.hpp"
#include "test_support.hpp"

using namespace tdlc;
using testutil::mat;

TEST_CASE("characteristic polynomials via the trace recurrence") {
  std::vector<Rat> hyper = char_poly(mat({{"1/5", "0"}, {"0", "5"}}));
  REQUIRE(hyper.size() == 3);
  CHECK(hyper[0] == Rat(1));
  CHECK(hyper[1] == Rat("-26/5"));
  CHECK(hyper[2] == Rat(1));

  std::vector<Rat> ident = char_poly(mat({{"1", "0"}, {"0", "1"}}));
  CHECK(ident == std::vector<Rat>{Rat(1), Rat(-2), Rat(1)});

  std::vector<Rat> twist = char_poly(mat({{"0", "1/3"}, {"1", "0"}}));
  CHECK(twist == std::vector<Rat>{Rat("-1/3"), Rat(0), Rat(1)});

  std::vector<Rat> affine = char_poly(mat({{"2", "1"}, {"0", "1/2"}}));
  // (x-2)(x-1/2) = x^2 - 5/2 x + 1
  CHECK(affine == std::vector<Rat>{Rat(1), Rat("-5/2"), Rat(1)});
}

TEST_CASE("polygon convention probes: x - p and x - 1/p") {
  NewtonPolygon contracting = NewtonPolygon::from_coefficients({Rat(-5), Rat(1)}, 5);
  REQUIRE(contracting.segments.size() == 1);
  CHECK(contracting.segments[0].slope == Rat(-1));  // root p, valuation +1
  CHECK(contracting.positive_rise() == 0);

  NewtonPolygon expanding = NewtonPolygon::from_coefficients({Rat("-1/5"), Rat(1)}, 5);
  REQUIRE(expanding.segments.size() == 1);
  CHECK(expanding.segments[0].slope == Rat(1));  // root 1/p, valuation -1
  CHECK(expanding.positive_rise() == 1);
}

TEST_CASE("polygon of a split hyperbolic pair") {
  // (x - 1/3)(x - 3): one contracting root, one expanding root.
  NewtonPolygon poly =
      NewtonPolygon::from_coefficients(char_poly(mat({{"1/3", "0"}, {"0", "3"}})), 3);
  REQUIRE(poly.segments.size() == 2);
  CHECK(poly.segments[0].slope == Rat(-1));
  CHECK(poly.segments[1].slope == Rat(1));
  CHECK(poly.positive_rise() == 1);
}

TEST_CASE("polygon segments: slopes increase, lengths cover the degree") {
  std::vector<RatMat> samples = {
      mat({{"1/2", "0", "0"}, {"0", "4", "1"}, {"0", "0", "2"}}),
      mat({{"0", "1/3"}, {"1", "0"}}),
      mat({{"1", "1", "0"}, {"0", "1", "1"}, {"0", "0", "1"}}),
      mat({{"6", "1"}, {"0", "1/6"}}),
  };
  for (const auto& a : samples) {
    for (Int p : {Int(2), Int(3)}) {
      NewtonPolygon poly = NewtonPolygon::from_coefficients(char_poly(a), p);
      long total = 0;
      for (std::size_t i = 0; i < poly.segments.size(); ++i) {
        const auto& seg = poly.segments[i];
        total += seg.length;
        CHECK(Rat(seg.rise) == seg.slope * Rat(seg.length));
        if (i > 0) CHECK(poly.segments[i - 1].slope < seg.slope);
      }
      CHECK(total == static_cast<long>(a.rows()));
    }
  }
}

TEST_CASE("fractional slopes from an irreducible twist") {
  // x^2 - 1/p: both roots have valuation -1/2; one segment of length 2.
  NewtonPolygon poly = NewtonPolygon::from_coefficients({Rat("-1/2"), Rat(0), Rat(1)}, 2);
  REQUIRE(poly.segments.size() == 1);
  CHECK(poly.segments[0].slope == Rat("1/2"));
  CHECK(poly.segments[0].length == 2);
  CHECK(poly.segments[0].rise == 1);
  CHECK(poly.positive_rise() == 1);
}

TEST_CASE("entropy oracle sums the expanding valuations") {
  CHECK(entropy_oracle_padic(mat({{"1", "0"}, {"0", "1"}}), 5) == EntropyValue::zero());
  CHECK(entropy_oracle_padic(mat({{"1/5", "0"}, {"0", "5"}}), 5) ==
        EntropyValue::log_of(IndexValue::prime_power(5, 1)));
  CHECK(entropy_oracle_padic(mat({{"0", "1/3"}, {"1", "0"}}), 3) ==
        EntropyValue::log_of(IndexValue::prime_power(3, 1)));
  CHECK(entropy_oracle_padic(mat({{"1/4"}}), 2) ==
        EntropyValue::log_of(IndexValue::prime_power(2, 2)));
  // Integer matrices never expand.
  CHECK(entropy_oracle_padic(mat({{"2", "1"}, {"1", "1"}}), 2) == EntropyValue::zero());
}

TEST_CASE("modulus oracle is p to the negated determinant valuation") {
  CHECK(modulus_oracle_padic(mat({{"1", "0"}, {"0", "1"}}), 3) == IndexValue::one());
  CHECK(modulus_oracle_padic(mat({{"1/3"}}), 3) == IndexValue::prime_power(3, 1));
  CHECK(modulus_oracle_padic(mat({{"3"}}), 3) == IndexValue::prime_power(3, -1));
  CHECK(modulus_oracle_padic(mat({{"1/5", "0"}, {"0", "5"}}), 5) == IndexValue::one());
  CHECK(modulus_oracle_padic(mat({{"0", "1/3"}, {"1", "0"}}), 3) ==
        IndexValue::prime_power(3, 1));
}

TEST_CASE("scale oracle matches the entropy exponent on Q_p^n") {
  CHECK(scale_oracle_padic(mat({{"1"}}), 7) == IndexValue::one());
  CHECK(scale_oracle_padic(mat({{"1/7", "0"}, {"0", "7"}}), 7) ==
        IndexValue::prime_power(7, 1));
  CHECK(scale_oracle_padic(mat({{"7"}}), 7) == IndexValue::one());
  CHECK(scale_oracle_padic(mat({{"1/4"}}), 2) == IndexValue::prime_power(2, 2));
}

TEST_CASE("oracle relations: inverse swaps expansion and contraction") {
  RatMat a = mat({{"1/2", "1"}, {"0", "4"}});
  RatMat ainv = inverse(a);
  // scale(a) * scale(a^-1)^-1 relation: entropy difference equals log modulus.
  EntropyValue h = entropy_oracle_padic(a, 2);
  EntropyValue hinv = entropy_oracle_padic(ainv, 2);
  IndexValue delta = modulus_oracle_padic(a, 2);
  CHECK(h == hinv + EntropyValue::log_of(delta));
}
