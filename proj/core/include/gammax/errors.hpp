#pragma once

#include <stdexcept>
#include <string>

namespace gammax {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad caller input; the CLI maps these to exit code 2.
struct InvalidInput : Error {
    using Error::Error;
};

struct NotOddPrime : InvalidInput {
    using InvalidInput::InvalidInput;
};
struct NotCoprime : InvalidInput {
    using InvalidInput::InvalidInput;
};
struct OutOfRange : InvalidInput {
    using InvalidInput::InvalidInput;
};
struct UndefinedAt : InvalidInput {
    using InvalidInput::InvalidInput;
};
struct TooLarge : InvalidInput {
    using InvalidInput::InvalidInput;
};
struct EmptyInput : InvalidInput {
    using InvalidInput::InvalidInput;
};

// Internal consistency failures; these signal a bug upstream, not bad input.
struct NormalizationFailure : Error {
    using Error::Error;
};
struct LeakedMass : Error {
    using Error::Error;
};

// Checkpoint/config conflicts; the CLI maps this to exit code 3.
struct CheckpointCorrupt : Error {
    using Error::Error;
};

} // namespace gammax
