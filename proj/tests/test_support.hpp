#pragma once

#include <string>
#include <vector>

#include "tdlc/errors.hpp"
#include "tdlc/matrix.hpp"
#include "tdlc/rational.hpp"

namespace tdlc::testutil {

// Row-major matrix from exact rational strings.
inline RatMat mat(const std::vector<std::vector<std::string>>& rows) {
  RatMat m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = parse_rat(rows[i][j]);
  return m;
}

inline IntMat imat(const std::vector<std::vector<long>>& rows) {
  IntMat m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = Int(rows[i][j]);
  return m;
}

inline std::vector<Int> ivec(const std::vector<long>& xs) {
  std::vector<Int> out;
  for (long x : xs) out.push_back(Int(x));
  return out;
}

// Error-kind matcher for CHECK_THROWS_WITH-style assertions.
template <typename Fn>
ErrorKind thrown_kind(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  throw std::runtime_error("expected a tdlc::Error");
}

}  // namespace tdlc::testutil
