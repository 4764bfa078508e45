#pragma once

#include <stdexcept>

namespace cvqp {

// Mode width must be strictly positive.
struct InvalidWidthError final : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Attenuation weight must satisfy 0 < |eta| <= 1.
struct InvalidWeightError final : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Mismatched sizes, malformed tables, bad option combinations.
struct ConfigurationError final : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Energy budget below the displacement floor.
struct InfeasibleBudgetError final : std::domain_error {
    using std::domain_error::domain_error;
};

// Grid extent too small for the requested wavepackets.
struct CoverageError final : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace cvqp
