#pragma once

#include <stdexcept>
#include <string>

namespace arbortile {

// All recoverable failures are typed; the CLI maps them to exit code 2,
// and "verified negative" results (no factor, nothing found) are ordinary
// return values, never exceptions.

struct Error : std::runtime_error {
    explicit Error(const std::string& m) : std::runtime_error(m) {}
};

#define ARBORTILE_ERROR(Name)                                  \
    struct Name : Error {                                      \
        explicit Name(const std::string& m) : Error(#Name ": " + m) {} \
    }

ARBORTILE_ERROR(ParseError);
ARBORTILE_ERROR(EmptyGraph);
ARBORTILE_ERROR(CapExceeded);
ARBORTILE_ERROR(NotAForest);
ARBORTILE_ERROR(DivisibilityError);
ARBORTILE_ERROR(ArityError);
ARBORTILE_ERROR(NotInHtilde);
ARBORTILE_ERROR(ClusterSizeError);
ARBORTILE_ERROR(NotDoubleEdge);
ARBORTILE_ERROR(EmbedFail);
ARBORTILE_ERROR(ChainFail);
ARBORTILE_ERROR(GenFail);
ARBORTILE_ERROR(NotApplicable);
ARBORTILE_ERROR(BadN);
ARBORTILE_ERROR(PremiseViolated);
ARBORTILE_ERROR(ConstructionBug);
ARBORTILE_ERROR(UnknownCase);
ARBORTILE_ERROR(BadInput);

#undef ARBORTILE_ERROR

} // namespace arbortile
