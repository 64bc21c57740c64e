/* errors.hpp -- error types shared across the library.
 */

#ifndef SYNKIT_ERRORS_HPP_
#define SYNKIT_ERRORS_HPP_

#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace synkit {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid input: malformed files, out-of-range parameters, violated preconditions.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A resource cap was reached (state count, subset budget, enumeration budget).
class BudgetError : public Error {
public:
    using Error::Error;
};

/// Distinct-subset-sum accumulation exceeded its cap; carries the trivial bound 2^n - 1.
class DsCapError : public BudgetError {
public:
    DsCapError(const std::string& msg, boost::multiprecision::cpp_int bound)
        : BudgetError(msg), trivial_bound(std::move(bound)) {}

    boost::multiprecision::cpp_int trivial_bound;
};

/// A synthesis premise failed at run time (no extension word, incompressible pair, ...).
/// Callers treat this as evidence that the input is outside the method's class.
class CriterionError : public Error {
public:
    using Error::Error;
};

/// The input does not belong to the automaton class a specialized method requires.
class ClassMismatchError : public Error {
public:
    using Error::Error;
};

/// An internal invariant failed; indicates a bug, maps to a distinct process exit code.
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace synkit

#endif // SYNKIT_ERRORS_HPP_
