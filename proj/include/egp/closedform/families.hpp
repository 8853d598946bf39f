#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "egp/closedform/formula.hpp"
#include "egp/matmod/matrix.hpp"

namespace egp {

/// (-1)^(v-1) for a tree on v >= 2 vertices, p = n+1.
ClosedForm tree_formula(int vertices);
/// Wheel with w >= 3 spokes.
ClosedForm wheel_formula(int spokes);
/// Decompleted zig-zag whose completion is the circulant C^m_{1,2}, m >= 5.
ClosedForm zigzag_formula(int m);
ClosedForm k34_formula();
/// The 5 x 10 representation returned by r10_matrix().
ClosedForm r10_formula();
/// Square of the K4 sequence, realised by two K4 glued along an edge.
ClosedForm p31sq_formula();
/// The two-vertex glue of two copies of K4 minus an edge, and K4 minus an edge itself.
ClosedForm didntwork_g_formula();
ClosedForm didntwork_g1_formula();

/// Dispatches "tree(v)", "wheel(w)", "zigzag(m)", "k34", "r10", "p31sq", "didntwork_G", "didntwork_G1".
ClosedForm family_formula(std::string_view name);
std::vector<std::string> family_names();

/// [I_5 | A] representing the regular matroid R10.
IntMatrix r10_matrix();

/// Bundled formula table for decompleted census graphs P1_1 through P7_11.
std::vector<std::string> appendix_names();
std::string appendix_text(std::string_view name);
ClosedForm appendix_catalog(std::string_view name);

}  // namespace egp
