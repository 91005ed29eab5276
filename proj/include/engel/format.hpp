#pragma once

#include <string>

#include "engel/gf.hpp"
#include "engel/quotient.hpp"

namespace engel {

// "2*(g1,g2) + g3" using the table's basis words; "0" for zero.
std::string format_element(const quotient::AlgebraTable& table, const LieElement& x);

// Sparse coefficient list "i:c i:c ..." as used in table files.
std::string format_entries(const gf::FpVector& v);

// One line per row, "row i: <entries>".
std::string format_matrix(const gf::FpMatrix& m);

}  // namespace engel
