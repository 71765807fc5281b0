#include "tdlc/matrix.hpp"

namespace tdlc {

Rat det(const RatMat& m) {
  if (m.rows() != m.cols()) fail(ErrorKind::DimMismatch, "det of non-square matrix");
  RatMat a = m;
  std::size_t n = a.rows();
  Rat out(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a.at(piv, c) == 0) ++piv;
    if (piv == n) return Rat(0);
    if (piv != c) {
      a.swap_rows(piv, c);
      out = -out;
    }
    out *= a.at(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a.at(r, c) == 0) continue;
      Rat f = a.at(r, c) / a.at(c, c);
      a.submul_row(r, f, c);
    }
  }
  return out;
}

RatMat inverse(const RatMat& m) {
  if (m.rows() != m.cols()) fail(ErrorKind::DimMismatch, "inverse of non-square matrix");
  std::size_t n = m.rows();
  RatMat a = m;
  RatMat inv = RatMat::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a.at(piv, c) == 0) ++piv;
    if (piv == n) fail(ErrorKind::Singular, "matrix is singular");
    if (piv != c) {
      a.swap_rows(piv, c);
      inv.swap_rows(piv, c);
    }
    Rat d = a.at(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a.at(c, j) /= d;
      inv.at(c, j) /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a.at(r, c) == 0) continue;
      Rat f = a.at(r, c);
      a.submul_row(r, f, c);
      inv.submul_row(r, f, c);
    }
  }
  return inv;
}

IntMat int_mat_from_rat(const RatMat& m) {
  IntMat out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Rat& x = m.at(i, j);
      if (x.get_den() != 1)
        fail(ErrorKind::InvalidArgument, "matrix entry " + x.get_str() + " is not an integer");
      out.at(i, j) = x.get_num();
    }
  return out;
}

}  // namespace tdlc
