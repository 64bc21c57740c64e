/* simplex.hpp -- exact rational linear programming in standard form,
 * used for the quasi-Eulerian feasibility check.
 */

#ifndef SYNKIT_SIMPLEX_HPP_
#define SYNKIT_SIMPLEX_HPP_

#include "synkit/linalg.hpp"

namespace synkit {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status;
    Rat objective; // valid when Optimal
    RatVec x;      // valid when Optimal
};

/// Maximizes c.x subject to A x = b, x >= 0, with exact arithmetic.
/// Two-phase tableau simplex with Bland's rule, so it always terminates.
LpResult solve_lp_max(const RatMat& a, const RatVec& b, const RatVec& c);

} // namespace synkit

#endif // SYNKIT_SIMPLEX_HPP_
