#pragma once

// Line-oriented text format for structure-constant tables:
//
//   %ENGELALG 1
//   p 5
//   rank 2
//   engel 3
//   cap 6
//   mdegcap none
//   wbound 1,2          (optional)
//   dim 5
//   basis 0 1,0 g1
//   ...
//   sc 0 1 2:1
//
// `sc i j k:c ...` lists [e_i, e_j] for i < j; omitted pairs are zero.

#include <filesystem>
#include <iosfwd>

#include "engel/quotient.hpp"

namespace engel::io {

inline constexpr int kFormatVersion = 1;

void write_table(std::ostream& out, const quotient::AlgebraTable& table);
// Throws VersionError, ParseError (with line number) or InvariantError.
quotient::AlgebraTable read_table(std::istream& in);

void save(const quotient::AlgebraTable& table, const std::filesystem::path& path);
quotient::AlgebraTable load(const std::filesystem::path& path);

// Grading, Jacobi on all triples and [v, u^n] = 0 on basis elements.
// Throws InvariantError naming the first failure.
void validate(const quotient::AlgebraTable& table);

}  // namespace engel::io
