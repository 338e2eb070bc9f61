#pragma once

#include <stdexcept>
#include <string>

namespace rigcert {

// Base class for every failure this library can certify *about itself*.
// A thrown error always means "not verified", never "verified false".
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Divisor interval contains zero.
struct DivisionByZeroInterval : Error {
    using Error::Error;
};

// Argument interval touches a singularity or leaves the function's domain.
struct DomainViolation : Error {
    using Error::Error;
};

// Complex box meets the nonpositive real axis, where the principal
// logarithm branch is not continuous.
struct BranchCutViolation : Error {
    using Error::Error;
};

// Interval determinant enclosure contains zero; the matrix family may
// contain singular members.
struct SingularEnclosure : Error {
    using Error::Error;
};

// A verified enclosure could not be established within the iteration budget.
struct VerificationFailed : Error {
    using Error::Error;
};

// The rank-8 regularity check on the 8x8 subsystem did not pass.
struct RankCheckFailed : Error {
    using Error::Error;
};

// Post-verification of the boundary-fixed vector failed.
struct FixedSpaceNotOneDimensional : Error {
    using Error::Error;
};

// No usable quotient entry survived the slope computation.
struct SlopeInconclusive : Error {
    using Error::Error;
};

// Malformed input file.
struct ParseError : Error {
    using Error::Error;
};

} // namespace rigcert
