#ifndef MPCC_PROBLEM_IO_HPP
#define MPCC_PROBLEM_IO_HPP

#include <string>

#include "mpcc/model.hpp"

// JSON instance files.  Keys in canonical order: "n0", "p", "Q" (upper
// triangle [row, col, value] triplets), "g", "l0"/"u0" (arrays, or null
// when the side is unbounded), "cc_pairs" ([j, k] zero-based variable
// indices), optional "A"/"a" (linear inequalities A x0 + a <= 0),
// optional "N"/"M"/"q" (linear complementarities), optional "name" and
// "seed".  Serialization is canonical: fixed key order and shortest
// round-trip number rendering, so files written here parse and
// re-serialize byte-identically.

namespace mpcc {

QuadraticMpcc parse_problem(const std::string& text);
std::string serialize_problem(const QuadraticMpcc& q);

/// Throws SchemaError on unreadable files or malformed content.
QuadraticMpcc load_problem(const std::string& path);
void save_problem(const std::string& path, const QuadraticMpcc& q);

}  // namespace mpcc

#endif  // MPCC_PROBLEM_IO_HPP
