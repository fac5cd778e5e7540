#ifndef CARNOT_IO_HPP
#define CARNOT_IO_HPP

#include <iosfwd>

#include "carnot/endpoint.hpp"

namespace carnot {

/// Algebra spec document: JSON with fields rank, step, layers,
/// brackets = [{i, j, terms: [{k, num, den}]}], 1-based indices,
/// i < j, reduced fractions (den > 0). dump/load round-trips
/// bit-exactly for canonical documents.
AlgebraPtr load_algebra(std::istream& in);
AlgebraPtr load_algebra_file(const std::string& path);
std::string dump_algebra(const CarnotAlgebra& alg);

/// Control document: JSON with an `algebra` field (either
/// {"free": [rank, step]}, {"builtin": "heisenberg"|"hxh"} or
/// {"file": path}), `breakpoints` (rationals as strings) and `values`
/// (per segment, coefficient lists over V_1 as strings).
PiecewiseControl load_control(std::istream& in, const std::string& base_dir = "");
PiecewiseControl load_control_file(const std::string& path);
std::string dump_control(const PiecewiseControl& u);

/// CSV trajectory with header "t,coord_1,...,coord_n".
void write_trajectory_csv(std::ostream& out, const std::vector<double>& times,
                          const std::vector<Vecd>& points);

}  // namespace carnot

#endif
