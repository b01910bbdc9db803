#include "surfsig/sympl.hpp"

#include <boost/integer/common_factor_rt.hpp>

#include <cctype>
#include <sstream>
#include <vector>

namespace surfsig {

std::string Convention::formula() const {
  return twist_sign == TwistSign::positive ? "T_c = I + c c^T J" : "T_c = I - c c^T J";
}

IntVector pad_vector(const IntVector& v, Eigen::Index genus) {
  detail::require_even(v.size(), "homology vector");
  if (v.size() > 2 * genus) {
    for (Eigen::Index i = 2 * genus; i < v.size(); ++i)
      if (v(i) != 0) throw DimensionMismatch("cannot truncate a vector with support beyond genus " + std::to_string(genus));
    return v.head(2 * genus);
  }
  IntVector r = IntVector::Zero(2 * genus);
  r.head(v.size()) = v;
  return r;
}

IntMatrix pad_matrix(const IntMatrix& m, Eigen::Index genus) {
  if (m.rows() > 2 * genus) throw DimensionMismatch("cannot shrink a matrix");
  IntMatrix r = IntMatrix::Identity(2 * genus, 2 * genus);
  r.topLeftCorner(m.rows(), m.cols()) = m;
  return r;
}

Integer content(const IntVector& v) {
  Integer g = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) g = boost::multiprecision::gcd(g, abs(Integer(v(i))));
  return g;
}

namespace {

std::string strip(std::string_view s) {
  std::string out;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) out += ch;
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

Integer parse_integer(const std::string& tok, int row, int col) {
  const bool ok = !tok.empty() && [&] {
    std::size_t i = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
    if (i == tok.size()) return false;
    for (; i < tok.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(tok[i]))) return false;
    return true;
  }();
  if (!ok) throw ParseError(row, col, {"integer"}, tok.empty() ? "empty entry" : tok);
  return Integer(tok[0] == '+' ? tok.substr(1) : tok);
}

}  // namespace

IntMatrix parse_matrix(std::string_view text, Eigen::Index genus) {
  const std::string s = strip(text);
  if (s == "I") return IntMatrix::Identity(2 * genus, 2 * genus);
  const auto rows = split(s, ';');
  std::vector<std::vector<Integer>> entries;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto cells = split(rows[r], ',');
    std::vector<Integer> row;
    for (std::size_t c = 0; c < cells.size(); ++c)
      row.push_back(parse_integer(cells[c], static_cast<int>(r + 1), static_cast<int>(c + 1)));
    if (!entries.empty() && row.size() != entries.front().size())
      throw DimensionMismatch("ragged matrix: row " + std::to_string(r + 1) + " has " +
                              std::to_string(row.size()) + " entries");
    entries.push_back(std::move(row));
  }
  const auto n = static_cast<Eigen::Index>(entries.size());
  if (n != static_cast<Eigen::Index>(entries.front().size()))
    throw DimensionMismatch("matrix is not square");
  if (n != 2 * genus)
    throw DimensionMismatch("matrix of size " + std::to_string(n) + " for genus " + std::to_string(genus));
  IntMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = entries[i][j];
  return m;
}

std::string format_matrix(const IntMatrix& m) {
  std::ostringstream out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) out << ';';
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << m(i, j);
  }
  return out.str();
}

IntVector parse_vector(std::string_view text) {
  const auto cells = split(strip(text), ',');
  IntVector v(static_cast<Eigen::Index>(cells.size()));
  for (std::size_t i = 0; i < cells.size(); ++i) v(static_cast<Eigen::Index>(i)) = parse_integer(cells[i], 1, static_cast<int>(i + 1));
  return v;
}

std::string format_vector(const IntVector& v) {
  std::ostringstream out;
  for (Eigen::Index i = 0; i < v.size(); ++i) out << (i ? "," : "") << v(i);
  return out.str();
}

}  // namespace surfsig
