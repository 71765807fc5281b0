#include <doctest.h>

#include "tdlc/entropy.hpp"
#include "tdlc/finite_universe.hpp"
#include "tdlc/padic_universe.hpp"
#include "tdlc/product_universe.hpp"
#include "tdlc/shift_universe.hpp"
#include "tdlc/subquotient.hpp"
#include "test_support.hpp"

using namespace tdlc;
using testutil::imat;
using testutil::ivec;
using testutil::mat;
using testutil::thrown_kind;

TEST_CASE("p-adic universe: subgroup calculus mirrors lattice arithmetic") {
  auto u = make_padic_universe(3, 2);
  CHECK(u->kind() == "padic");
  CHECK_FALSE(u->is_compact());
  CHECK_FALSE(u->whole_group().has_value());

  Subgroup std2 = u->default_subgroup();
  CHECK(u->equal(std2, make_lattice_subgroup(Lattice::standard(3, 2))));

  Subgroup small = make_lattice_subgroup(Lattice::diagonal(3, {1, 1}));
  CHECK(u->contains(std2, small));
  CHECK(u->index(small, std2) == IndexValue::prime_power(3, 2));
  CHECK(u->equal(u->intersect(std2, small), small));
  CHECK(u->equal(u->sum(std2, small), std2));
  CHECK(thrown_kind([&] { u->index(std2, small); }) == ErrorKind::NotContained);
}

TEST_CASE("p-adic universe: automorphism algebra is exact") {
  auto u = make_padic_universe(5, 2);
  Automorphism phi = make_matrix_automorphism(u, mat({{"1/5", "0"}, {"0", "5"}}));
  Automorphism psi = phi.inverse();
  Subgroup std2 = u->default_subgroup();

  CHECK(u->equal(phi.apply(std2), make_lattice_subgroup(Lattice::diagonal(5, {-1, 1}))));
  CHECK(u->equal(psi.apply(phi.apply(std2)), std2));
  CHECK(u->equal(phi.compose(psi).apply(std2), std2));
  CHECK(u->equal(phi.power(0).apply(std2), std2));
  CHECK(u->equal(phi.power(-2).apply(std2), psi.compose(psi).apply(std2)));
  CHECK(thrown_kind([&] { make_matrix_automorphism(u, mat({{"1", "1"}, {"1", "1"}})); }) ==
        ErrorKind::Singular);
}

TEST_CASE("p-adic universe: subgroups from a foreign universe are rejected") {
  auto u3 = make_padic_universe(3, 2);
  auto u5 = make_padic_universe(5, 2);
  Subgroup s5 = u5->default_subgroup();
  CHECK(thrown_kind([&] { u3->index(s5, u3->default_subgroup()); }) ==
        ErrorKind::MixedUniverse);
  auto sh = make_shift_universe(2);
  CHECK(thrown_kind([&] { u3->equal(sh->default_subgroup(), u3->default_subgroup()); }) ==
        ErrorKind::MixedUniverse);
}

TEST_CASE("p-adic modulus equals p to the negated det valuation") {
  auto u = make_padic_universe(3, 1);
  Lattice std1 = Lattice::standard(3, 1);
  CHECK(padic_modulus(make_matrix_automorphism(u, mat({{"1"}})), std1) == IndexValue::one());
  CHECK(padic_modulus(make_matrix_automorphism(u, mat({{"1/3"}})), std1) ==
        IndexValue::prime_power(3, 1));

  auto u2 = make_padic_universe(3, 2);
  Lattice std2 = Lattice::standard(3, 2);
  Automorphism hyper = make_matrix_automorphism(u2, mat({{"1/3", "0"}, {"0", "3"}}));
  CHECK(padic_modulus(hyper, std2) == IndexValue::one());

  // Module-of-automorphism identity: independent of the chosen lattice.
  CHECK(padic_modulus(hyper, Lattice::diagonal(3, {2, -1})) == IndexValue::one());

  // Multiplicativity over composition.
  Automorphism a = make_matrix_automorphism(u2, mat({{"1/3", "1"}, {"0", "1"}}));
  Automorphism b = make_matrix_automorphism(u2, mat({{"1", "0"}, {"2", "9"}}));
  CHECK(padic_modulus(a.compose(b), std2) ==
        padic_modulus(a, std2) * padic_modulus(b, std2));
}

TEST_CASE("shift universe: cylinder indices count released coordinates") {
  auto u = make_shift_universe(2);
  CHECK(u->kind() == "shift");
  CHECK(u->is_compact());
  REQUIRE(u->whole_group().has_value());

  Subgroup u0 = make_zero_cylinder(u, {0});
  CHECK(u->index(u0, *u->whole_group()) == IndexValue::from_integer(2));
  Subgroup u03 = make_zero_cylinder(u, {0, 3});
  CHECK(u->index(u03, u0) == IndexValue::from_integer(2));
  CHECK(thrown_kind([&] { u->index(*u->whole_group(), u0); }) == ErrorKind::NotContained);

  auto u3 = make_shift_universe(3);
  std::vector<long> run;
  for (long c = 0; c < 4; ++c) {
    run.push_back(c);
    CHECK(u3->index(make_zero_cylinder(u3, run), *u3->whole_group()) ==
          IndexValue::prime_power(3, static_cast<int>(run.size())));
  }
}

TEST_CASE("shift universe: the shift translates constraints") {
  auto u = make_shift_universe(2);
  Automorphism sigma = make_shift_automorphism(u, 1, 1);
  Subgroup u0 = make_zero_cylinder(u, {0});
  CHECK(u->equal(sigma.apply(u0), make_zero_cylinder(u, {-1})));
  CHECK(u->equal(sigma.apply_inverse(u0), make_zero_cylinder(u, {1})));
  CHECK(u->equal(u->intersect(u0, sigma.apply_inverse(u0)), make_zero_cylinder(u, {0, 1})));
  CHECK(u->equal(cotrajectory(sigma, u0, 2), make_zero_cylinder(u, {0, 1})));
}

TEST_CASE("shift universe: unit multiplication fixes every cylinder") {
  auto u = make_shift_universe(8);
  Automorphism mul3 = make_shift_automorphism(u, 0, 3);
  Subgroup s = make_zero_cylinder(u, {5});
  CHECK(u->equal(mul3.apply(s), s));
  CHECK(u->equal(mul3.inverse().apply(s), s));
}

TEST_CASE("shift universe: invalid alphabets and non-units are rejected") {
  CHECK(thrown_kind([] { make_shift_universe(1); }) == ErrorKind::BadModulus);
  auto u = make_shift_universe(6);
  CHECK(thrown_kind([&] { make_shift_automorphism(u, 1, 2); }) ==
        ErrorKind::NotAutomorphism);
}

TEST_CASE("finite universe: every automorphism has zero entropy oracle") {
  FinAbGroup g({Int(4), Int(2)});
  auto u = make_finite_universe(g);
  CHECK(u->kind() == "finite");
  CHECK(u->is_compact());
  REQUIRE(u->whole_group().has_value());
  CHECK(u->equal(u->default_subgroup(),
                 make_finite_subgroup(FinAbSubgroup::trivial(g))));

  Automorphism phi = make_finite_automorphism(u, imat({{1, 0}, {1, 1}}));
  auto oracle = u->entropy_oracle(phi.value());
  REQUIRE(oracle.has_value());
  CHECK(oracle->is_zero());

  Subgroup s = make_finite_subgroup(
      FinAbSubgroup::from_generators(g, {ivec({2, 0})}));
  CHECK(u->index(s, *u->whole_group()) == IndexValue::from_integer(4));
  CHECK(u->equal(phi.apply(phi.apply_inverse(s)), s));
}

TEST_CASE("product universe: indices multiply across factors") {
  auto qp = make_padic_universe(3, 2);
  FinAbGroup z2({Int(2)});
  auto fin = make_finite_universe(z2);
  auto prod = make_product_universe(qp, fin);
  CHECK(prod->kind() == "product");
  CHECK_FALSE(prod->is_compact());
  CHECK_FALSE(prod->whole_group().has_value());

  Subgroup sup = make_pair_subgroup(qp->default_subgroup(), *fin->whole_group());
  Subgroup sub = make_pair_subgroup(
      make_lattice_subgroup(Lattice::diagonal(3, {1, 1})),
      make_finite_subgroup(FinAbSubgroup::trivial(z2)));
  CHECK(prod->index(sub, sup) == IndexValue::from_integer(18));
}

TEST_CASE("product universe: automorphisms act componentwise") {
  auto qp = make_padic_universe(2, 1);
  auto sh = make_shift_universe(3);
  auto prod = make_product_universe(qp, sh);
  Automorphism phi = make_pair_automorphism(
      prod, make_matrix_automorphism(qp, mat({{"1/2"}})), make_shift_automorphism(sh, 1, 1));

  Subgroup s = make_pair_subgroup(qp->default_subgroup(), make_zero_cylinder(sh, {0}));
  Subgroup img = phi.apply(s);
  const auto& pv = pair_subgroup_of(img);
  CHECK(qp->equal(pv.first, make_lattice_subgroup(Lattice::diagonal(2, {-1}))));
  CHECK(sh->equal(pv.second, make_zero_cylinder(sh, {-1})));
  CHECK(prod->equal(phi.inverse().apply(img), s));
}

TEST_CASE("product universe: compact iff both factors are compact") {
  auto sh2 = make_shift_universe(2);
  auto sh3 = make_shift_universe(3);
  auto both = make_product_universe(sh2, sh3);
  CHECK(both->is_compact());
  REQUIRE(both->whole_group().has_value());
  Subgroup sub = make_pair_subgroup(make_zero_cylinder(sh2, {0}),
                                    make_zero_cylinder(sh3, {0, 1}));
  CHECK(both->index(sub, *both->whole_group()) == IndexValue::from_integer(18));
}

TEST_CASE("product universe: components from the wrong factor are rejected") {
  auto qp = make_padic_universe(3, 1);
  auto sh = make_shift_universe(2);
  auto prod = make_product_universe(qp, sh);
  Subgroup flipped = make_pair_subgroup(sh->default_subgroup(), qp->default_subgroup());
  CHECK(thrown_kind([&] { prod->index(flipped, flipped); }) == ErrorKind::MixedUniverse);
}

TEST_CASE("universe JSON round-trips preserve values") {
  auto qp = make_padic_universe(3, 2);
  Subgroup l = make_lattice_subgroup(Lattice::diagonal(3, {-1, 2}));
  CHECK(qp->equal(qp->subgroup_from_json(qp->subgroup_to_json(l)), l));
  Automorphism phi = make_matrix_automorphism(qp, mat({{"1/3", "1"}, {"0", "3"}}));
  AutHandle back = qp->automorphism_from_json(qp->automorphism_to_json(phi.value()));
  CHECK(qp->equal(qp->apply(back, l), phi.apply(l)));

  auto sh = make_shift_universe(4);
  Subgroup c = make_zero_cylinder(sh, {-1, 2});
  CHECK(sh->equal(sh->subgroup_from_json(sh->subgroup_to_json(c)), c));
  Automorphism sig = make_shift_automorphism(sh, -2, 3);
  AutHandle sback = sh->automorphism_from_json(sh->automorphism_to_json(sig.value()));
  CHECK(sh->equal(sh->apply(sback, c), sig.apply(c)));

  FinAbGroup g({Int(4), Int(2)});
  auto fin = make_finite_universe(g);
  Subgroup fs = make_finite_subgroup(FinAbSubgroup::from_generators(g, {ivec({1, 1})}));
  CHECK(fin->equal(fin->subgroup_from_json(fin->subgroup_to_json(fs)), fs));

  auto prod = make_product_universe(qp, sh);
  Subgroup pair = make_pair_subgroup(l, c);
  CHECK(prod->equal(prod->subgroup_from_json(prod->subgroup_to_json(pair)), pair));
  Automorphism pphi = make_pair_automorphism(prod, phi, sig);
  AutHandle pback = prod->automorphism_from_json(prod->automorphism_to_json(pphi.value()));
  CHECK(prod->equal(prod->apply(pback, pair), pphi.apply(pair)));
}

TEST_CASE("invariant coordinate subspaces split block-triangular maps") {
  auto u = make_padic_universe(5, 2);
  Automorphism phi = make_matrix_automorphism(u, mat({{"1/5", "1"}, {"0", "5"}}));
  InvariantSubquotient split(phi, 1);

  CHECK(matrix_of(split.restriction().value()).mat.at(0, 0) == Rat("1/5"));
  CHECK(matrix_of(split.quotient().value()).mat.at(0, 0) == Rat(5));

  Subgroup std2 = u->default_subgroup();
  auto r = split.restriction().universe();
  auto q = split.quotient().universe();
  CHECK(r->equal(split.restrict_subgroup(std2), r->default_subgroup()));
  CHECK(q->equal(split.project_subgroup(std2), q->default_subgroup()));
}

TEST_CASE("restriction cotrajectories agree with restricted cotrajectories") {
  auto u = make_padic_universe(3, 2);
  Automorphism phi = make_matrix_automorphism(u, mat({{"1/3", "1"}, {"0", "1"}}));
  InvariantSubquotient split(phi, 1);
  Subgroup std2 = u->default_subgroup();
  auto r = split.restriction().universe();
  for (int n = 1; n <= 6; ++n) {
    Subgroup cn = cotrajectory(phi, std2, n);
    Subgroup rn = cotrajectory(split.restriction(), split.restrict_subgroup(std2), n);
    CHECK(r->equal(split.restrict_subgroup(cn), rn));
  }
}

TEST_CASE("quotient cotrajectories contain projected cotrajectories") {
  auto u = make_padic_universe(3, 2);
  Automorphism phi = make_matrix_automorphism(u, mat({{"1", "1/9"}, {"0", "1"}}));
  InvariantSubquotient split(phi, 1);
  Subgroup std2 = u->default_subgroup();
  auto q = split.quotient().universe();
  for (int n = 1; n <= 6; ++n) {
    Subgroup qn = cotrajectory(split.quotient(), split.project_subgroup(std2), n);
    CHECK(q->contains(qn, split.project_subgroup(cotrajectory(phi, std2, n))));
  }
}

TEST_CASE("non-invariant subspaces are rejected") {
  auto u = make_padic_universe(3, 2);
  Automorphism swap = make_matrix_automorphism(u, mat({{"0", "1"}, {"1", "0"}}));
  CHECK(thrown_kind([&] { InvariantSubquotient(swap, 1); }) == ErrorKind::NotInvariant);
}

TEST_CASE("quotients of the compact factor preserve entropy") {
  auto qp = make_padic_universe(2, 1);
  FinAbGroup g({Int(4)});
  auto fin = make_finite_universe(g);
  auto prod = make_product_universe(qp, fin);
  Automorphism phi = make_pair_automorphism(
      prod, make_matrix_automorphism(qp, mat({{"1/2"}})),
      make_finite_automorphism(fin, imat({{3}})));

  FinAbSubgroup n = FinAbSubgroup::from_generators(g, {ivec({2})});
  CompactFactorQuotient cq(phi, n);

  Subgroup u_above = make_pair_subgroup(
      qp->default_subgroup(), make_finite_subgroup(n));
  EntropyValue before = entropy_local_limitfree(phi, u_above).value;
  EntropyValue after =
      entropy_local_limitfree(cq.induced(), cq.project_subgroup(u_above)).value;
  CHECK(before == after);
  CHECK(before == EntropyValue::log_of(IndexValue::from_integer(2)));

  // Quotient by the whole factor kills the finite component entirely.
  CompactFactorQuotient full(phi, FinAbSubgroup::whole(g));
  auto [f1, f2] = product_factors(full.universe());
  CHECK(finite_group_of(f2).order() == 1);
}

TEST_CASE("quotients by non-invariant finite subgroups are rejected") {
  auto qp = make_padic_universe(2, 1);
  FinAbGroup g({Int(2), Int(4)});
  auto fin = make_finite_universe(g);
  auto prod = make_product_universe(qp, fin);
  // (x,y) -> (y mod 2 twisted into x, ...): send e2 outside <e2 scaled>.
  Automorphism phi = make_pair_automorphism(
      prod, make_matrix_automorphism(qp, mat({{"1"}})),
      make_finite_automorphism(fin, imat({{1, 1}, {0, 1}})));
  FinAbSubgroup n = FinAbSubgroup::from_generators(g, {ivec({0, 1})});
  CHECK(thrown_kind([&] { CompactFactorQuotient(phi, n); }) == ErrorKind::NotInvariant);
}

TEST_CASE("base enumerators stay within budget and reach small subgroups") {
  auto qp = make_padic_universe(3, 2);
  auto base = qp->base_enumerator(12);
  CHECK(base.size() <= 12);
  REQUIRE(!base.empty());
  CHECK(qp->equal(base[0], qp->default_subgroup()));
  // Cofinality probe: some member sits inside 3Z x 3Z.
  Subgroup small = make_lattice_subgroup(Lattice::diagonal(3, {1, 1}));
  bool found = false;
  for (const auto& s : base) found = found || qp->contains(small, s);
  CHECK(found);

  auto sh = make_shift_universe(2);
  auto sbase = sh->base_enumerator(4);
  CHECK(sbase.size() <= 4);
  for (std::size_t i = 0; i + 1 < sbase.size(); ++i)
    CHECK(sh->contains(sbase[i], sbase[i + 1]));
}
