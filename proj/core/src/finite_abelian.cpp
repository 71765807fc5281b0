#include "tdlc/finite_abelian.hpp"

#include <algorithm>

namespace tdlc {

namespace {

Int floordiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int positive_mod(const Int& a, const Int& b) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Reduce below-diagonal entries of a lower-triangular column basis into
// [0, diagonal of their row). Diagonal entries must already be positive.
void reduce_lower_triangular(IntMat& b) {
  std::size_t k = b.rows();
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = j + 1; i < k; ++i) {
      if (b.at(i, j) == 0) continue;
      Int q = floordiv(b.at(i, j), b.at(i, i));
      if (q != 0) b.submul_col(j, q, i);
    }
}

IntMat preimage_columns(const FinAbGroup& g,
                        const std::vector<std::vector<Int>>& gens) {
  std::size_t k = g.arity();
  IntMat m(k, gens.size() + k);
  for (std::size_t c = 0; c < gens.size(); ++c) {
    if (gens[c].size() != k)
      fail(ErrorKind::DimMismatch, "generator arity mismatch");
    for (std::size_t i = 0; i < k; ++i) m.at(i, c) = gens[c][i];
  }
  for (std::size_t i = 0; i < k; ++i) m.at(i, gens.size() + i) = g.moduli()[i];
  return m;
}

IntMat canonical_from_columns(IntMat work) {
  std::size_t k = work.rows();
  std::size_t rank = int_echelon_columns(work, nullptr);
  if (rank != k) fail(ErrorKind::RankDeficient, "relation lattice lost full rank");
  IntMat basis(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) basis.at(i, j) = work.at(i, j);
  reduce_lower_triangular(basis);
  return basis;
}

Int det_diag(const IntMat& b) {
  Int d = 1;
  for (std::size_t i = 0; i < b.rows(); ++i) d *= b.at(i, i);
  return d;
}

}  // namespace

std::size_t int_echelon_columns(IntMat& m, IntMat* transform) {
  std::size_t rank = 0;
  for (std::size_t row = 0; row < m.rows() && rank < m.cols(); ++row) {
    while (true) {
      std::size_t best = m.cols();
      for (std::size_t j = rank; j < m.cols(); ++j) {
        if (m.at(row, j) == 0) continue;
        if (best == m.cols() || abs(m.at(row, j)) < abs(m.at(row, best))) best = j;
      }
      if (best == m.cols()) break;  // row cleared, no pivot
      m.swap_cols(best, rank);
      if (transform) transform->swap_cols(best, rank);
      if (m.at(row, rank) < 0) {
        m.scale_col(rank, Int(-1));
        if (transform) transform->scale_col(rank, Int(-1));
      }
      bool clean = true;
      for (std::size_t j = rank + 1; j < m.cols(); ++j) {
        if (m.at(row, j) == 0) continue;
        Int q = floordiv(m.at(row, j), m.at(row, rank));
        if (q != 0) {
          m.submul_col(j, q, rank);
          if (transform) transform->submul_col(j, q, rank);
        }
        if (m.at(row, j) != 0) clean = false;  // remainder survives, gcd loop
      }
      if (clean) {
        ++rank;
        break;
      }
    }
  }
  return rank;
}

FinAbGroup::FinAbGroup(std::vector<Int> moduli) : moduli_(std::move(moduli)) {
  if (moduli_.empty()) fail(ErrorKind::BadModulus, "group needs at least one modulus");
  for (const Int& m : moduli_)
    if (m < 1) fail(ErrorKind::BadModulus, "modulus " + m.get_str() + " < 1");
}

Int FinAbGroup::order() const {
  Int o = 1;
  for (const Int& m : moduli_) o *= m;
  return o;
}

Int FinAbGroup::exponent() const {
  Int e = 1;
  for (const Int& m : moduli_) mpz_lcm(e.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return e;
}

std::vector<Int> FinAbGroup::reduce(std::vector<Int> x) const {
  if (x.size() != arity()) fail(ErrorKind::DimMismatch, "element arity mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = positive_mod(x[i], moduli_[i]);
  return x;
}

std::optional<std::vector<std::vector<Int>>> FinAbGroup::enumerate_elements(
    const Int& cap) const {
  if (order() > cap) return std::nullopt;
  std::vector<std::vector<Int>> out;
  std::vector<Int> cur(arity(), Int(0));
  while (true) {
    out.push_back(cur);
    std::size_t i = 0;
    for (; i < arity(); ++i) {
      cur[i] += 1;
      if (cur[i] < moduli_[i]) break;
      cur[i] = 0;
    }
    if (i == arity()) break;
  }
  return out;
}

FinAbSubgroup FinAbSubgroup::from_generators(
    const FinAbGroup& parent, const std::vector<std::vector<Int>>& gens) {
  IntMat cols = preimage_columns(parent, gens);
  return FinAbSubgroup(parent, canonical_from_columns(std::move(cols)));
}

FinAbSubgroup FinAbSubgroup::trivial(const FinAbGroup& parent) {
  return from_generators(parent, {});
}

FinAbSubgroup FinAbSubgroup::whole(const FinAbGroup& parent) {
  std::vector<std::vector<Int>> gens;
  for (std::size_t i = 0; i < parent.arity(); ++i) {
    std::vector<Int> e(parent.arity(), Int(0));
    e[i] = 1;
    gens.push_back(std::move(e));
  }
  return from_generators(parent, gens);
}

Int FinAbSubgroup::order() const {
  // |S| = |G| / [G:S] and [G:S] = det(basis) for the preimage lattice.
  return parent_.order() / det_diag(basis_);
}

bool FinAbSubgroup::contains_element(const std::vector<Int>& x) const {
  if (x.size() != parent_.arity()) fail(ErrorKind::DimMismatch, "element arity mismatch");
  std::vector<Int> rem = x;
  for (std::size_t i = 0; i < rem.size(); ++i) {
    if (!mpz_divisible_p(rem[i].get_mpz_t(), basis_.at(i, i).get_mpz_t())) return false;
    Int y = rem[i] / basis_.at(i, i);
    for (std::size_t r = i; r < rem.size(); ++r) rem[r] -= y * basis_.at(r, i);
  }
  return true;
}

bool FinAbSubgroup::contains(const FinAbSubgroup& other) const {
  if (parent_ != other.parent_) fail(ErrorKind::ParentMismatch, "subgroups of different groups");
  for (std::size_t j = 0; j < basis_.cols(); ++j) {
    std::vector<Int> col(basis_.rows());
    for (std::size_t i = 0; i < basis_.rows(); ++i) col[i] = other.basis_.at(i, j);
    if (!contains_element(col)) return false;
  }
  return true;
}

bool FinAbSubgroup::operator==(const FinAbSubgroup& o) const {
  return parent_ == o.parent_ && basis_ == o.basis_;
}

std::vector<std::vector<Int>> FinAbSubgroup::generators() const {
  std::vector<std::vector<Int>> out;
  for (std::size_t j = 0; j < basis_.cols(); ++j) {
    std::vector<Int> col(basis_.rows());
    for (std::size_t i = 0; i < basis_.rows(); ++i) col[i] = basis_.at(i, j);
    out.push_back(parent_.reduce(col));
  }
  return out;
}

FinAbSubgroup fa_canonicalize(const FinAbGroup& parent,
                              const std::vector<std::vector<Int>>& gens) {
  return FinAbSubgroup::from_generators(parent, gens);
}

IndexValue fa_index(const FinAbSubgroup& sub, const FinAbSubgroup& sup) {
  if (sub.parent() != sup.parent())
    fail(ErrorKind::ParentMismatch, "index across different groups");
  if (!sup.contains(sub))
    fail(ErrorKind::NotContained, "index requires sub to be contained in sup");
  Int ratio = det_diag(sub.basis()) / det_diag(sup.basis());
  return IndexValue::from_integer(ratio);
}

FinAbSubgroup fa_meet(const FinAbSubgroup& a, const FinAbSubgroup& b) {
  if (a.parent() != b.parent()) fail(ErrorKind::ParentMismatch, "meet across different groups");
  std::size_t k = a.parent().arity();
  IntMat stacked(k, 2 * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      stacked.at(i, j) = a.basis().at(i, j);
      stacked.at(i, k + j) = b.basis().at(i, j);
    }
  IntMat u = IntMat::identity(2 * k);
  std::size_t rank = int_echelon_columns(stacked, &u);
  if (rank != k) fail(ErrorKind::RankDeficient, "unexpected rank in meet kernel");
  std::vector<std::vector<Int>> gens;
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<Int> g(k, Int(0));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) g[i] += a.basis().at(i, j) * u.at(j, k + c);
    gens.push_back(std::move(g));
  }
  return FinAbSubgroup::from_generators(a.parent(), gens);
}

FinAbSubgroup fa_join(const FinAbSubgroup& a, const FinAbSubgroup& b) {
  if (a.parent() != b.parent()) fail(ErrorKind::ParentMismatch, "join across different groups");
  std::vector<std::vector<Int>> gens = a.generators();
  for (auto& g : b.generators()) gens.push_back(g);
  return FinAbSubgroup::from_generators(a.parent(), gens);
}

namespace {

void check_well_defined(const FinAbGroup& g, const IntMat& m, const char* what) {
  std::size_t k = g.arity();
  if (m.rows() != k || m.cols() != k) fail(ErrorKind::DimMismatch, "matrix arity mismatch");
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      Int lhs = g.moduli()[i] * m.at(j, i);
      if (!mpz_divisible_p(lhs.get_mpz_t(), g.moduli()[j].get_mpz_t()))
        fail(ErrorKind::NotAutomorphism,
             std::string(what) + " does not respect the relations");
    }
}

}  // namespace

IntMat fa_invert_automorphism(const FinAbGroup& g, const IntMat& m) {
  check_well_defined(g, m, "matrix");
  if (g.exponent() == 1) return m;  // trivial group: every matrix is the identity
  std::size_t k = g.arity();
  // Modulus-1 coordinates carry no data; the map is determined by the block on
  // the remaining coordinates, so invert that block and zero the rest.
  std::vector<std::size_t> ess;
  for (std::size_t i = 0; i < k; ++i)
    if (g.moduli()[i] != 1) ess.push_back(i);
  std::size_t e = ess.size();
  RatMat mr(e, e);
  for (std::size_t i = 0; i < e; ++i)
    for (std::size_t j = 0; j < e; ++j) mr.at(i, j) = Rat(m.at(ess[i], ess[j]));
  Rat d = det(mr);
  if (d == 0) fail(ErrorKind::NotAutomorphism, "matrix is singular");
  Int det_int = d.get_num();
  for (const Int& mod : g.moduli()) {
    Int gcd;
    mpz_gcd(gcd.get_mpz_t(), det_int.get_mpz_t(), mod.get_mpz_t());
    if (gcd != 1)
      fail(ErrorKind::NotAutomorphism,
           "determinant " + det_int.get_str() + " shares a factor with modulus " + mod.get_str());
  }
  Int exp = g.exponent();
  Int dinv;
  if (mpz_invert(dinv.get_mpz_t(), det_int.get_mpz_t(), exp.get_mpz_t()) == 0)
    fail(ErrorKind::NotAutomorphism, "determinant not invertible mod exponent");
  RatMat inv = inverse(mr);
  IntMat out(k, k);
  for (std::size_t i = 0; i < e; ++i)
    for (std::size_t j = 0; j < e; ++j) {
      Rat adj = d * inv.at(i, j);
      if (adj.get_den() != 1)
        fail(ErrorKind::NotAutomorphism, "adjugate is not integral");
      out.at(ess[i], ess[j]) = positive_mod(Int(dinv * adj.get_num()), g.moduli()[ess[i]]);
    }
  check_well_defined(g, out, "inverse matrix");
  // Both composites must induce the identity map.
  for (const IntMat* lhs : {static_cast<const IntMat*>(&out), &m}) {
    const IntMat& a = *lhs;
    const IntMat& b = (lhs == &out) ? m : out;
    IntMat prod = a * b;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        Int v = prod.at(i, j) - (i == j ? Int(1) : Int(0));
        if (!mpz_divisible_p(v.get_mpz_t(), g.moduli()[i].get_mpz_t()))
          fail(ErrorKind::NotAutomorphism, "matrix has no two-sided inverse mod the relations");
      }
  }
  return out;
}

FinAbSubgroup fa_apply(const IntMat& m, const FinAbSubgroup& s) {
  check_well_defined(s.parent(), m, "matrix");
  std::vector<std::vector<Int>> gens;
  for (const auto& g : s.generators()) {
    std::vector<Int> img(s.parent().arity(), Int(0));
    for (std::size_t i = 0; i < img.size(); ++i)
      for (std::size_t j = 0; j < img.size(); ++j) img[i] += m.at(i, j) * g[j];
    gens.push_back(s.parent().reduce(img));
  }
  return FinAbSubgroup::from_generators(s.parent(), gens);
}

FinAbSubgroup fa_apply_inverse(const IntMat& m, const FinAbSubgroup& s) {
  return fa_apply(fa_invert_automorphism(s.parent(), m), s);
}

FinAbQuotient fa_quotient(const FinAbGroup& g, const FinAbSubgroup& n) {
  if (n.parent() != g) fail(ErrorKind::ParentMismatch, "quotient by foreign subgroup");
  std::size_t k = g.arity();
  IntMat r = n.basis();
  IntMat p = IntMat::identity(k);
  // Diagonalize r by row and column operations, tracking row ops in p.
  for (std::size_t top = 0; top < k; ++top) {
    while (true) {
      std::size_t bi = k, bj = k;
      for (std::size_t i = top; i < k; ++i)
        for (std::size_t j = top; j < k; ++j) {
          if (r.at(i, j) == 0) continue;
          if (bi == k || abs(r.at(i, j)) < abs(r.at(bi, bj))) {
            bi = i;
            bj = j;
          }
        }
      if (bi == k) fail(ErrorKind::RankDeficient, "quotient relation matrix singular");
      r.swap_rows(bi, top);
      p.swap_rows(bi, top);
      r.swap_cols(bj, top);
      if (r.at(top, top) < 0) {
        r.submul_row(top, Int(2), top);  // negate row
        p.submul_row(top, Int(2), top);
      }
      bool clean = true;
      for (std::size_t i = top + 1; i < k; ++i) {
        if (r.at(i, top) == 0) continue;
        Int q = floordiv(r.at(i, top), r.at(top, top));
        if (q != 0) {
          r.submul_row(i, q, top);
          p.submul_row(i, q, top);
        }
        if (r.at(i, top) != 0) clean = false;
      }
      for (std::size_t j = top + 1; j < k; ++j) {
        if (r.at(top, j) == 0) continue;
        Int q = floordiv(r.at(top, j), r.at(top, top));
        if (q != 0) r.submul_col(j, q, top);
        if (r.at(top, j) != 0) clean = false;
      }
      if (clean) break;
    }
  }
  std::vector<Int> moduli(k);
  for (std::size_t i = 0; i < k; ++i) moduli[i] = r.at(i, i);
  return FinAbQuotient{FinAbGroup(std::move(moduli)), std::move(p)};
}

}  // namespace tdlc
