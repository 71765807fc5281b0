#include <doctest.h>

#include "tdlc/finite_abelian.hpp"
#include "test_support.hpp"

using namespace tdlc;
using testutil::imat;
using testutil::ivec;
using testutil::thrown_kind;

TEST_CASE("cyclic subgroup canonicalization is forced") {
  FinAbGroup z4({Int(4)});
  FinAbSubgroup s = FinAbSubgroup::from_generators(z4, {ivec({2})});
  CHECK(s.order() == 2);
  CHECK(s.contains_element(ivec({2})));
  CHECK(s.contains_element(ivec({0})));
  CHECK_FALSE(s.contains_element(ivec({1})));
}

TEST_CASE("duplicate generators collapse to one subgroup") {
  FinAbGroup g({Int(2), Int(2)});
  FinAbSubgroup diag = FinAbSubgroup::from_generators(g, {ivec({1, 1}), ivec({1, 1})});
  CHECK(diag.order() == 2);
  CHECK(diag == FinAbSubgroup::from_generators(g, {ivec({1, 1})}));
}

TEST_CASE("generators with coprime gcd give the whole group") {
  FinAbGroup z6({Int(6)});
  FinAbSubgroup s = FinAbSubgroup::from_generators(z6, {ivec({2}), ivec({3})});
  CHECK(s == FinAbSubgroup::whole(z6));
  CHECK(s.order() == 6);
}

TEST_CASE("index of the trivial subgroup is the group order") {
  FinAbGroup z8({Int(8)});
  CHECK(fa_index(FinAbSubgroup::trivial(z8), FinAbSubgroup::whole(z8)) ==
        IndexValue::from_integer(8));
}

TEST_CASE("index arguments must be nested") {
  FinAbGroup z4({Int(4)});
  FinAbSubgroup s = FinAbSubgroup::from_generators(z4, {ivec({2})});
  CHECK(thrown_kind([&] { fa_index(FinAbSubgroup::whole(z4), s); }) ==
        ErrorKind::NotContained);
}

TEST_CASE("coset count matches the order ratio") {
  FinAbGroup z6({Int(6)});
  FinAbSubgroup s = FinAbSubgroup::from_generators(z6, {ivec({3})});
  CHECK(fa_index(s, FinAbSubgroup::whole(z6)) == IndexValue::from_integer(3));
  // Literal enumeration: {0,3},{1,4},{2,5}.
  auto elements = z6.enumerate_elements(100);
  REQUIRE(elements.has_value());
  long members = 0;
  for (const auto& x : *elements)
    if (s.contains_element(x)) ++members;
  CHECK(members == 2);
}

TEST_CASE("meet and join follow the subgroup lattice of Z6") {
  FinAbGroup z6({Int(6)});
  FinAbSubgroup even = FinAbSubgroup::from_generators(z6, {ivec({2})});
  FinAbSubgroup tri = FinAbSubgroup::from_generators(z6, {ivec({3})});
  CHECK(fa_meet(even, tri) == FinAbSubgroup::trivial(z6));
  CHECK(fa_join(even, tri) == FinAbSubgroup::whole(z6));
  CHECK(fa_meet(even, even) == even);
  CHECK(fa_join(even, even) == even);
}

TEST_CASE("parent mismatch is rejected") {
  FinAbGroup a({Int(4)});
  FinAbGroup b({Int(8)});
  CHECK(thrown_kind([&] {
          fa_meet(FinAbSubgroup::whole(a), FinAbSubgroup::whole(b));
        }) == ErrorKind::ParentMismatch);
}

TEST_CASE("generator arity must match the moduli") {
  FinAbGroup g({Int(2), Int(2)});
  CHECK(thrown_kind([&] { FinAbSubgroup::from_generators(g, {ivec({1})}); }) ==
        ErrorKind::DimMismatch);
}

TEST_CASE("automorphism images of subgroups") {
  FinAbGroup z5({Int(5)});
  CHECK(fa_apply(imat({{2}}), FinAbSubgroup::trivial(z5)) == FinAbSubgroup::trivial(z5));

  FinAbGroup z8({Int(8)});
  FinAbSubgroup s = FinAbSubgroup::from_generators(z8, {ivec({4})});
  CHECK(fa_apply(imat({{3}}), s) == s);  // 3*4 = 12 = 4 mod 8

  FinAbGroup g({Int(4), Int(2)});
  IntMat m = imat({{1, 0}, {1, 1}});
  IntMat minv = fa_invert_automorphism(g, m);
  FinAbSubgroup t = FinAbSubgroup::from_generators(g, {ivec({1, 0})});
  CHECK(fa_apply_inverse(m, fa_apply(m, t)) == t);
  CHECK(fa_apply(minv, fa_apply(m, t)) == t);
}

TEST_CASE("maps sharing a factor with a modulus are not automorphisms") {
  FinAbGroup z8({Int(8)});
  CHECK(thrown_kind([&] { fa_invert_automorphism(z8, imat({{2}})); }) ==
        ErrorKind::NotAutomorphism);
}

TEST_CASE("indices are preserved in quotients by a common subgroup") {
  FinAbGroup z8({Int(8)});
  FinAbSubgroup n = FinAbSubgroup::from_generators(z8, {ivec({4})});
  FinAbSubgroup h = FinAbSubgroup::from_generators(z8, {ivec({2})});
  FinAbSubgroup k = FinAbSubgroup::whole(z8);
  IndexValue before = fa_index(h, k);

  FinAbQuotient q = fa_quotient(z8, n);
  CHECK(q.group.order() == 4);
  auto project = [&](const FinAbSubgroup& s) {
    std::vector<std::vector<Int>> gens;
    for (const auto& x : s.generators()) {
      std::vector<Int> img(q.group.arity(), Int(0));
      for (std::size_t r = 0; r < img.size(); ++r)
        for (std::size_t c = 0; c < x.size(); ++c) img[r] += q.projection.at(r, c) * x[c];
      gens.push_back(q.group.reduce(img));
    }
    return FinAbSubgroup::from_generators(q.group, gens);
  };
  CHECK(fa_index(project(h), project(k)) == before);
  CHECK(before == IndexValue::from_integer(2));
}

TEST_CASE("quotient by a mixed-coordinate subgroup") {
  FinAbGroup g({Int(4), Int(2)});
  FinAbSubgroup n = FinAbSubgroup::from_generators(g, {ivec({2, 0})});
  FinAbQuotient q = fa_quotient(g, n);
  CHECK(q.group.order() == 4);
  // Projection must kill exactly N: image of (2,0) is the identity.
  std::vector<Int> img(q.group.arity(), Int(0));
  std::vector<Int> gen = ivec({2, 0});
  for (std::size_t r = 0; r < img.size(); ++r)
    for (std::size_t c = 0; c < gen.size(); ++c) img[r] += q.projection.at(r, c) * gen[c];
  img = q.group.reduce(img);
  for (const Int& x : img) CHECK(x == 0);
}

TEST_CASE("element enumeration respects the cap") {
  FinAbGroup big({Int(12), Int(12), Int(12)});
  CHECK_FALSE(big.enumerate_elements(1000).has_value());
  FinAbGroup small({Int(3), Int(2)});
  auto all = small.enumerate_elements(1000);
  REQUIRE(all.has_value());
  CHECK(all->size() == 6);
}

TEST_CASE("order and exponent of a product of cyclic groups") {
  FinAbGroup g({Int(4), Int(6)});
  CHECK(g.order() == 24);
  CHECK(g.exponent() == 12);
}
