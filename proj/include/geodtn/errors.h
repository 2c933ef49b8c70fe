#pragma once

#include <stdexcept>
#include <string>

namespace geodtn {

struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// geometry
struct ZeroSpeedError : SimError {
    ZeroSpeedError() : SimError("relative angle undefined for a zero velocity") {}
};
struct CoincidentDestinationError : SimError {
    CoincidentDestinationError() : SimError("bearing undefined: position coincides with destination") {}
};
struct InvalidHeadingError : SimError {
    InvalidHeadingError() : SimError("intersect time undefined for phi >= pi/2") {}
};
struct AlreadyInRangeError : SimError {
    AlreadyInRangeError() : SimError("intersect time undefined: already within transmission range") {}
};

// mobility
struct UnreachableWaypointError : SimError {
    using SimError::SimError;
};
struct NoFeasibleCoordinateError : SimError {
    using SimError::SimError;
};

// messages
struct NotSplittableError : SimError {
    NotSplittableError() : SimError("copy ticket <= 1 cannot be split") {}
};
struct MismatchedMessageError : SimError {
    MismatchedMessageError() : SimError("threshold sync requires copies of the same message") {}
};
struct ExpiredError : SimError {
    ExpiredError() : SimError("message copy has no remaining lifetime") {}
};

// config / engine
struct ParseError : SimError {
    using SimError::SimError;
};
struct ConfigError : SimError {
    using SimError::SimError;
};

// analysis
struct DegenerateLambdaError : SimError {
    DegenerateLambdaError() : SimError("relaying possibility of zero gives an infinite distribution time") {}
};
struct InsufficientRunsError : SimError {
    using SimError::SimError;
};

// metrics
struct NoMessagesError : SimError {
    NoMessagesError() : SimError("no messages were generated") {}
};
struct NothingDeliveredError : SimError {
    NothingDeliveredError() : SimError("no messages were delivered") {}
};

}  // namespace geodtn
