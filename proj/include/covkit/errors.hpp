#pragma once

#include <stdexcept>
#include <string>

namespace covkit {

// Root of every exception thrown by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define COVKIT_ERROR(Name)                          \
    class Name : public Error {                     \
    public:                                         \
        using Error::Error;                         \
    }

// exact kernel
COVKIT_ERROR(ContextError);
COVKIT_ERROR(DegenerateInputError);
COVKIT_ERROR(InvalidModulusError);
COVKIT_ERROR(DivisionError);
COVKIT_ERROR(ParseError);

// plane curves
COVKIT_ERROR(NotOnCurveError);
COVKIT_ERROR(NonReducedError);
COVKIT_ERROR(ConditionError);
COVKIT_ERROR(InfiniteMultiplicityError);
COVKIT_ERROR(PositiveDimensionalError);
COVKIT_ERROR(UnsupportedError);

// lattice
COVKIT_ERROR(ConfigurationError);
COVKIT_ERROR(LatticeIntegrityError);
COVKIT_ERROR(NotTwoDivisibleError);
COVKIT_ERROR(ReductionBoundError);

// covers
COVKIT_ERROR(InvalidBuildingData);
COVKIT_ERROR(IntegrityError);
COVKIT_ERROR(SubgroupError);
COVKIT_ERROR(LedgerError);

// pipeline
COVKIT_ERROR(ValidationError);

#undef COVKIT_ERROR

} // namespace covkit
