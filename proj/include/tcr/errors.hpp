#pragma once

#include <stdexcept>

namespace tcr {

struct ModeMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Tile dimension below 2.
struct InvalidTileDim : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain of a cost formula.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct UnknownOpClass : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace tcr
