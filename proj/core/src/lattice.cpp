#include "tdlc/lattice.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace tdlc {

namespace {

// Valuation with zero mapped past every finite value.
bool better_pivot(const Rat& cand, const Rat& cur, const Int& p) {
  if (cand == 0) return false;
  if (cur == 0) return true;
  return valuation(cand, p) < valuation(cur, p);
}

}  // namespace

std::size_t echelon_columns(RatMat& m, const Int& p, RatMat* transform) {
  std::size_t rank = 0;
  for (std::size_t row = 0; row < m.rows() && rank < m.cols(); ++row) {
    std::size_t best = m.cols();
    for (std::size_t j = rank; j < m.cols(); ++j) {
      if (m.at(row, j) == 0) continue;
      if (best == m.cols() || better_pivot(m.at(row, j), m.at(row, best), p))
        best = j;
    }
    if (best == m.cols()) continue;  // row already cleared
    m.swap_cols(best, rank);
    if (transform) transform->swap_cols(best, rank);
    const Rat piv = m.at(row, rank);
    for (std::size_t j = rank + 1; j < m.cols(); ++j) {
      if (m.at(row, j) == 0) continue;
      Rat f = m.at(row, j) / piv;  // v_p(f) >= 0 by pivot choice
      m.submul_col(j, f, rank);
      if (transform) transform->submul_col(j, f, rank);
    }
    ++rank;
  }
  return rank;
}

Lattice Lattice::from_generators(const Int& p, const RatMat& generators) {
  if (!is_prime(p)) fail(ErrorKind::BadPrime, p.get_str() + " is not prime");
  std::size_t n = generators.rows();
  if (n == 0) fail(ErrorKind::DimMismatch, "empty ambient dimension");
  RatMat work = generators;
  std::size_t rank = echelon_columns(work, p, nullptr);
  if (rank < n)
    fail(ErrorKind::RankDeficient,
         "generators span rank " + std::to_string(rank) + " < " + std::to_string(n));
  // Keep the n pivot columns; echelon places pivot of row r at column r.
  RatMat basis(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) basis.at(i, j) = work.at(i, j);
  // Unit-normalize the diagonal to pure powers of p.
  for (std::size_t j = 0; j < n; ++j) {
    long e = valuation(basis.at(j, j), p);
    Rat unit = basis.at(j, j) / pow_rat(p, e);
    basis.scale_col(j, Rat(1) / unit);
  }
  // Reduce below-diagonal entries to canonical residues mod the row pivot.
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = j + 1; i < n; ++i) {
      if (basis.at(i, j) == 0) continue;
      long e_i = valuation(basis.at(i, i), p);
      Rat r = residue_mod_ppow(basis.at(i, j), p, e_i);
      Rat f = (basis.at(i, j) - r) / basis.at(i, i);  // f in Z_(p)
      basis.submul_col(j, f, i);
    }
  }
  return Lattice(p, n, std::move(basis));
}

Lattice Lattice::standard(const Int& p, std::size_t dim) {
  return from_generators(p, RatMat::identity(dim));
}

Lattice Lattice::diagonal(const Int& p, const std::vector<long>& exponents) {
  RatMat m(exponents.size(), exponents.size());
  for (std::size_t i = 0; i < exponents.size(); ++i)
    m.at(i, i) = pow_rat(p, exponents[i]);
  return from_generators(p, m);
}

std::vector<long> Lattice::diagonal_exponents() const {
  std::vector<long> out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) out[i] = valuation(basis_.at(i, i), p_);
  return out;
}

long Lattice::det_valuation() const {
  long sum = 0;
  for (long e : diagonal_exponents()) sum += e;
  return sum;
}

bool Lattice::contains_vector(const std::vector<Rat>& x) const {
  if (x.size() != dim_) fail(ErrorKind::DimMismatch, "vector/lattice dimension mismatch");
  // Forward substitution against the lower-triangular basis.
  std::vector<Rat> rem = x;
  for (std::size_t i = 0; i < dim_; ++i) {
    Rat y = rem[i] / basis_.at(i, i);
    if (!in_local_ring(y, p_)) return false;
    for (std::size_t r = i; r < dim_; ++r) rem[r] -= y * basis_.at(r, i);
  }
  return true;
}

bool Lattice::contains(const Lattice& other) const {
  if (p_ != other.p_) fail(ErrorKind::MixedUniverse, "lattices at different primes");
  if (dim_ != other.dim_) fail(ErrorKind::MixedUniverse, "lattices of different dimension");
  for (std::size_t j = 0; j < dim_; ++j) {
    std::vector<Rat> col(dim_);
    for (std::size_t i = 0; i < dim_; ++i) col[i] = other.basis_.at(i, j);
    if (!contains_vector(col)) return false;
  }
  return true;
}

bool Lattice::operator==(const Lattice& other) const {
  return p_ == other.p_ && dim_ == other.dim_ && basis_ == other.basis_;
}

Lattice hnf_normalize(const Int& p, const RatMat& generators) {
  return Lattice::from_generators(p, generators);
}

Lattice lattice_sum(const Lattice& a, const Lattice& b) {
  if (a.p() != b.p()) fail(ErrorKind::MixedUniverse, "lattices at different primes");
  if (a.dim() != b.dim()) fail(ErrorKind::MixedUniverse, "lattices of different dimension");
  std::size_t n = a.dim();
  RatMat gens(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      gens.at(i, j) = a.basis().at(i, j);
      gens.at(i, n + j) = b.basis().at(i, j);
    }
  return Lattice::from_generators(a.p(), gens);
}

Lattice lattice_intersect(const Lattice& a, const Lattice& b) {
  if (a.p() != b.p()) fail(ErrorKind::MixedUniverse, "lattices at different primes");
  if (a.dim() != b.dim()) fail(ErrorKind::MixedUniverse, "lattices of different dimension");
  std::size_t n = a.dim();
  RatMat stacked(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      stacked.at(i, j) = a.basis().at(i, j);
      stacked.at(i, n + j) = b.basis().at(i, j);
    }
  RatMat u = RatMat::identity(2 * n);
  std::size_t rank = echelon_columns(stacked, a.p(), &u);
  if (rank != n) fail(ErrorKind::RankDeficient, "unexpected rank in intersection kernel");
  // Kernel columns (x; y) satisfy Ax + By = 0, so Ax ranges over the
  // intersection as the kernel is swept; the x-parts give generators.
  RatMat gens(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      Rat acc(0);
      for (std::size_t j = 0; j < n; ++j) acc += a.basis().at(i, j) * u.at(j, n + k);
      gens.at(i, k) = acc;
    }
  return Lattice::from_generators(a.p(), gens);
}

IndexValue lattice_index(const Lattice& sub, const Lattice& sup) {
  if (!sup.contains(sub))
    fail(ErrorKind::NotContained, "index requires sub to be contained in sup");
  long e = sub.det_valuation() - sup.det_valuation();
  return IndexValue::prime_power(sup.p(), Int(e));
}

IndexValue generalized_index(const Lattice& k, const Lattice& h) {
  Lattice meet = lattice_intersect(k, h);
  IndexValue via_meet = lattice_index(meet, k);       // [K : K cap H]
  Lattice join = lattice_sum(k, h);
  IndexValue via_join = lattice_index(h, join);       // [K+H : H]
  if (via_meet != via_join)
    fail(ErrorKind::CrossCheckMismatch, "generalized index routes disagree");
  return via_meet;
}

Lattice apply_matrix(const RatMat& a, const Lattice& l) {
  if (a.rows() != l.dim() || a.cols() != l.dim())
    fail(ErrorKind::DimMismatch, "matrix/lattice dimension mismatch");
  if (det(a) == 0) fail(ErrorKind::Singular, "applying a singular matrix");
  RatMat gens = a * l.basis();
  return Lattice::from_generators(l.p(), gens);
}

std::vector<long> Lattice::smith_exponents(const Lattice& sub) const {
  if (!contains(sub)) fail(ErrorKind::NotContained, "smith_exponents requires containment");
  RatMat c = inverse(basis_) * sub.basis();  // entries in Z_(p)
  std::size_t n = dim_;
  std::vector<long> out;
  // Smith form over the valuation ring: repeatedly move a minimum-valuation
  // entry to the corner and clear its row and column.
  std::size_t top = 0;
  while (top < n) {
    std::size_t bi = n, bj = n;
    long bv = 0;
    for (std::size_t i = top; i < n; ++i)
      for (std::size_t j = top; j < n; ++j) {
        if (c.at(i, j) == 0) continue;
        long v = valuation(c.at(i, j), p_);
        if (bi == n || v < bv) {
          bi = i;
          bj = j;
          bv = v;
        }
      }
    if (bi == n) fail(ErrorKind::RankDeficient, "singular quotient matrix");
    c.swap_rows(bi, top);
    c.swap_cols(bj, top);
    const Rat piv = c.at(top, top);
    for (std::size_t i = top + 1; i < n; ++i) {
      if (c.at(i, top) == 0) continue;
      c.submul_row(i, c.at(i, top) / piv, top);
    }
    for (std::size_t j = top + 1; j < n; ++j) {
      if (c.at(top, j) == 0) continue;
      c.submul_col(j, c.at(top, j) / piv, top);
    }
    out.push_back(bv);
    ++top;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Int> Lattice::enumerate_cosets(const Lattice& sub, const Int& cap) const {
  if (!contains(sub)) fail(ErrorKind::NotContained, "coset enumeration requires containment");
  RatMat sub_inv = inverse(sub.basis());
  auto label_of = [&](const std::vector<Rat>& x) {
    std::vector<Rat> y = sub_inv.apply(x);
    for (Rat& c : y) c = residue_mod_ppow(c, p_, 0);
    return y;
  };
  std::map<std::vector<Rat>, bool> seen;
  std::queue<std::vector<Rat>> frontier;
  std::vector<Rat> zero(dim_, Rat(0));
  seen[label_of(zero)] = true;
  frontier.push(zero);
  Int count = 1;
  while (!frontier.empty()) {
    std::vector<Rat> cur = frontier.front();
    frontier.pop();
    for (std::size_t j = 0; j < dim_; ++j) {
      for (int sign : {1, -1}) {
        std::vector<Rat> next = cur;
        for (std::size_t i = 0; i < dim_; ++i)
          next[i] += Rat(sign) * basis_.at(i, j);
        auto lab = label_of(next);
        if (seen.emplace(std::move(lab), true).second) {
          ++count;
          if (count > cap) return std::nullopt;
          frontier.push(std::move(next));
        }
      }
    }
  }
  return count;
}

}  // namespace tdlc
