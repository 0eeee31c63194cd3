#include "covkit/trace.hpp"

namespace covkit {

namespace detail {
thread_local std::uint64_t op_mask = 0;
}

namespace {

const char* const names[] = {
    "poly_arith",      "derivative",          "resultant",          "uni_factor",
    "quotient_gcd",    "multiplicity",        "tangent_cone",       "blow_up",
    "resolution_graph", "classify",           "linear_system",      "intersection_multiplicity",
    "singular_locus",  "common_points",       "absolute_factor_count", "intersect",
    "canonical_class", "arithmetic_genus",    "strict_class",       "halve",
    "h0",              "solve_character_sheet", "validate_branch",  "euler_characteristic",
    "geometric_genus", "quotient_datum",      "pullback",           "canonical_on_cover",
    "minimal_model",   "base_point_audit",    "run_scenario",       "emit",
    "cache",
};
static_assert(sizeof(names) / sizeof(names[0]) == static_cast<unsigned>(Op::count_));

} // namespace

std::string op_name(Op op) { return names[static_cast<unsigned>(op)]; }

std::vector<std::string> all_ops() { return {std::begin(names), std::end(names)}; }

std::vector<std::string> recorded_ops()
{
    std::vector<std::string> out;
    for (unsigned i = 0; i < static_cast<unsigned>(Op::count_); ++i)
        if (detail::op_mask >> i & 1)
            out.emplace_back(names[i]);
    return out;
}

void clear_ops() { detail::op_mask = 0; }

} // namespace covkit
