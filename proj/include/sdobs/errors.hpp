#pragma once

#include <stdexcept>
#include <string>

namespace sdobs {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};
struct NotHurwitz : Error {
    using Error::Error;
};
struct NotObservable : Error {
    using Error::Error;
};
struct NotSymmetric : Error {
    using Error::Error;
};
struct NotPositiveDefinite : Error {
    using Error::Error;
};
struct Overflow : Error {
    using Error::Error;
};
struct LipschitzViolated : Error {
    using Error::Error;
};
struct WrongPlantKind : Error {
    using Error::Error;
};
struct ThetaTooSmall : Error {
    using Error::Error;
};
struct DissipationFailed : Error {
    using Error::Error;
};
struct InvalidDiameter : Error {
    using Error::Error;
};
struct StepTooLarge : Error {
    using Error::Error;
};
struct NonFiniteState : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};
struct IncompatibleScenarios : Error {
    using Error::Error;
};
struct EmptySeries : Error {
    using Error::Error;
};

}  // namespace sdobs
