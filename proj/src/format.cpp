#include "engel/format.hpp"

#include <sstream>

namespace engel {

std::string format_element(const quotient::AlgebraTable& table, const LieElement& x) {
  require_algebra(x, table.id());
  if (x.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const gf::Entry& e : x.coeffs.entries()) {
    if (!first) out << " + ";
    first = false;
    if (e.value != 1) out << e.value << '*';
    out << table.basis()[e.index].word;
  }
  return out.str();
}

std::string format_entries(const gf::FpVector& v) {
  std::ostringstream out;
  bool first = true;
  for (const gf::Entry& e : v.entries()) {
    if (!first) out << ' ';
    first = false;
    out << e.index << ':' << e.value;
  }
  return out.str();
}

std::string format_matrix(const gf::FpMatrix& m) {
  std::ostringstream out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (m.row(i).is_zero()) continue;
    out << "  row " << i << ": " << format_entries(m.row(i)) << '\n';
  }
  std::string s = out.str();
  return s.empty() ? "  (zero)\n" : s;
}

}  // namespace engel
