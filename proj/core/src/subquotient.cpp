#include "tdlc/subquotient.hpp"

#include "tdlc/finite_universe.hpp"
#include "tdlc/padic_universe.hpp"
#include "tdlc/product_universe.hpp"
#include "tdlc/serialize.hpp"

namespace tdlc {

namespace {

RatMat block(const RatMat& a, std::size_t r0, std::size_t c0, std::size_t rows,
             std::size_t cols) {
  RatMat out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out.at(i, j) = a.at(r0 + i, c0 + j);
  return out;
}

}  // namespace

InvariantSubquotient::InvariantSubquotient(const Automorphism& phi, std::size_t k)
    : parent_(phi) {
  if (!phi.universe() || phi.universe()->kind() != "padic")
    fail(ErrorKind::InvalidArgument, "subquotient decomposition needs a p-adic universe");
  const RatMat& a = matrix_of(phi.value()).mat;
  n_ = a.rows();
  k_ = k;
  if (k_ < 1 || k_ >= n_)
    fail(ErrorKind::InvalidArgument, "split position must be strictly inside the dimension");
  p_ = int_from_json(phi.universe()->descriptor().at("p"));
  for (std::size_t i = k_; i < n_; ++i)
    for (std::size_t j = 0; j < k_; ++j)
      if (a.at(i, j) != 0)
        fail(ErrorKind::NotInvariant,
             "coordinate subspace is not invariant (nonzero lower-left block)");
  auto ur = make_padic_universe(p_, k_);
  auto uq = make_padic_universe(p_, n_ - k_);
  restriction_ = make_matrix_automorphism(ur, block(a, 0, 0, k_, k_));
  quotient_ = make_matrix_automorphism(uq, block(a, k_, k_, n_ - k_, n_ - k_));
}

Subgroup InvariantSubquotient::restrict_subgroup(const Subgroup& s) const {
  const Lattice& l = lattice_of(s);
  if (l.dim() != n_) fail(ErrorKind::DimMismatch, "subgroup dimension mismatch");
  // Solve B_bot y = 0 over the local ring; x = B y then has its last n-k
  // coordinates zero and the solution columns span U cap span(e_1..e_k).
  RatMat bot = block(l.basis(), k_, 0, n_ - k_, n_);
  RatMat t = RatMat::identity(n_);
  std::size_t rank = echelon_columns(bot, p_, &t);
  if (rank != n_ - k_) fail(ErrorKind::RankDeficient, "basis lost rank in restriction");
  RatMat gens(k_, k_);
  for (std::size_t c = 0; c < k_; ++c)
    for (std::size_t i = 0; i < k_; ++i) {
      Rat v = 0;
      for (std::size_t j = 0; j < n_; ++j) v += l.basis().at(i, j) * t.at(j, rank + c);
      gens.at(i, c) = v;
    }
  return make_lattice_subgroup(Lattice::from_generators(p_, gens));
}

Subgroup InvariantSubquotient::project_subgroup(const Subgroup& s) const {
  const Lattice& l = lattice_of(s);
  if (l.dim() != n_) fail(ErrorKind::DimMismatch, "subgroup dimension mismatch");
  return make_lattice_subgroup(hnf_normalize(p_, block(l.basis(), k_, 0, n_ - k_, n_)));
}

CompactFactorQuotient::CompactFactorQuotient(const Automorphism& phi,
                                             const FinAbSubgroup& n)
    : quotient_group_({Int(1)}), projection_(1, 1) {
  if (!phi.universe() || phi.universe()->kind() != "product")
    fail(ErrorKind::InvalidArgument, "compact-factor quotient needs a product universe");
  auto [u1, u2] = product_factors(phi.universe());
  if (u2->kind() != "finite")
    fail(ErrorKind::InvalidArgument, "second factor must be finite");
  parent_first_ = u1;
  const FinAbGroup& g2 = finite_group_of(u2);
  if (n.parent() != g2) fail(ErrorKind::ParentMismatch, "subgroup of a different finite factor");
  const PairAut& pa = cast_value<PairAut>(phi.value(), "automorphism");
  const FinMatrixAut& psi = cast_value<FinMatrixAut>(pa.second, "automorphism");
  if (!(fa_apply(psi.mat, n) == n))
    fail(ErrorKind::NotInvariant, "subgroup is not invariant under the finite component");

  FinAbQuotient q = fa_quotient(g2, n);
  quotient_group_ = q.group;
  projection_ = q.projection;
  quotient_finite_ = make_finite_universe(quotient_group_);
  universe_ = make_product_universe(u1, quotient_finite_);

  // Induced matrix P M P^{-1}; P is unimodular so the inverse is integral.
  std::size_t k = g2.arity();
  RatMat pr(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) pr.at(i, j) = Rat(projection_.at(i, j));
  IntMat pinv = int_mat_from_rat(inverse(pr));
  IntMat induced_mat = projection_ * psi.mat * pinv;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      induced_mat.at(i, j) = [&] {
        Int r;
        mpz_mod(r.get_mpz_t(), induced_mat.at(i, j).get_mpz_t(),
                quotient_group_.moduli()[i].get_mpz_t());
        return r;
      }();
  IntMat induced_inv = fa_invert_automorphism(quotient_group_, induced_mat);
  AutHandle second = std::make_shared<FinMatrixAut>(quotient_group_, induced_mat, induced_inv);
  induced_ = Automorphism(universe_, std::make_shared<PairAut>(pa.first, second));
}

Subgroup CompactFactorQuotient::project_subgroup(const Subgroup& s) const {
  const PairSubgroupVal& pv = pair_subgroup_of(s);
  const FinAbSubgroup& s2 = finite_subgroup_of(pv.second);
  std::vector<std::vector<Int>> gens;
  for (const auto& g : s2.generators()) {
    std::vector<Int> img(quotient_group_.arity(), Int(0));
    for (std::size_t i = 0; i < img.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j) img[i] += projection_.at(i, j) * g[j];
    gens.push_back(quotient_group_.reduce(img));
  }
  return make_pair_subgroup(
      pv.first, make_finite_subgroup(FinAbSubgroup::from_generators(quotient_group_, gens)));
}

}  // namespace tdlc
