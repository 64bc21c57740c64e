/* rational.hpp -- exact rational scalars used everywhere in the certificate path.
 */

#ifndef SYNKIT_RATIONAL_HPP_
#define SYNKIT_RATIONAL_HPP_

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "synkit/errors.hpp"

namespace synkit {

// cpp_rational keeps gcd(num, den) = 1 and den > 0 after every operation,
// which is exactly the canonical form the library relies on.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Serializes as `p/q`, or `p` when the denominator is 1.
inline std::string format_rat(const Rat& r) {
    return r.str();
}

/// Parses `p`, `p/q` or a plain integer; rejects q = 0 and malformed input.
inline Rat parse_rat(const std::string& s) {
    try {
        Rat r(s);
        return r;
    } catch (const std::exception&) {
        throw ValidationError("not a rational: '" + s + "'");
    }
}

} // namespace synkit

#endif // SYNKIT_RATIONAL_HPP_
