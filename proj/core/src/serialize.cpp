#include "tdlc/serialize.hpp"

#include "tdlc/rational.hpp"

namespace tdlc {

nlohmann::json rat_matrix_to_json(const RatMat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rat_to_string(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

RatMat rat_matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty() || !j.front().is_array())
    fail(ErrorKind::ParseError, "matrix must be a non-empty array of rows");
  std::size_t r = j.size();
  std::size_t c = j.front().size();
  RatMat m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (!j[i].is_array() || j[i].size() != c)
      fail(ErrorKind::ParseError, "ragged matrix rows");
    for (std::size_t k = 0; k < c; ++k) {
      const nlohmann::json& cell = j[i][k];
      if (cell.is_string())
        m.at(i, k) = parse_rat(cell.get<std::string>());
      else if (cell.is_number_integer())
        m.at(i, k) = Rat(Int(cell.get<long>()));
      else
        fail(ErrorKind::ParseError, "matrix entries must be exact strings or integers");
    }
  }
  return m;
}

nlohmann::json int_matrix_to_json(const IntMat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(int_to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

IntMat int_matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty() || !j.front().is_array())
    fail(ErrorKind::ParseError, "matrix must be a non-empty array of rows");
  std::size_t r = j.size();
  std::size_t c = j.front().size();
  IntMat m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (!j[i].is_array() || j[i].size() != c)
      fail(ErrorKind::ParseError, "ragged matrix rows");
    for (std::size_t k = 0; k < c; ++k) m.at(i, k) = int_from_json(j[i][k]);
  }
  return m;
}

Int int_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) {
    Int x;
    if (x.set_str(j.get<std::string>(), 10) != 0)
      fail(ErrorKind::ParseError, "not an integer: " + j.get<std::string>());
    return x;
  }
  fail(ErrorKind::ParseError, "expected an integer (number or string)");
}

nlohmann::json int_to_json(const Int& x) {
  if (x.fits_slong_p()) return nlohmann::json(x.get_si());
  return nlohmann::json(x.get_str());
}

}  // namespace tdlc
