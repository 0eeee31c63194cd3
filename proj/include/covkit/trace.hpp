#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace covkit {

// Public operations of every module.  Each one marks itself in a per-thread
// record on entry, which the pipeline reads back as its coverage set.
enum class Op : unsigned {
    poly_arith,
    derivative,
    resultant,
    uni_factor,
    quotient_gcd,
    multiplicity,
    tangent_cone,
    blow_up,
    resolution_graph,
    classify,
    linear_system,
    intersection_multiplicity,
    singular_locus,
    common_points,
    absolute_factor_count,
    intersect,
    canonical_class,
    arithmetic_genus,
    strict_class,
    halve,
    h0,
    solve_character_sheet,
    validate_branch,
    euler_characteristic,
    geometric_genus,
    quotient_datum,
    pullback,
    canonical_on_cover,
    minimal_model,
    base_point_audit,
    run_scenario,
    emit,
    cache,
    count_
};

namespace detail {
extern thread_local std::uint64_t op_mask;
}

inline void note(Op op) { detail::op_mask |= std::uint64_t{1} << static_cast<unsigned>(op); }

std::string op_name(Op op);
// Names of all operations, in declaration order.
std::vector<std::string> all_ops();
// Operations marked on this thread since the last clear, in declaration order.
std::vector<std::string> recorded_ops();
void clear_ops();

} // namespace covkit
