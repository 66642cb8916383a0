#pragma once

#include <stdexcept>
#include <string>

namespace vekua {

// Base for mathematical precondition / validation failures.  The CLI maps
// these to exit code 1 (check failure), as opposed to IoError -> exit code 2.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonvanishingViolation : Error { using Error::Error; };
struct NotConservative : Error { using Error::Error; };
struct NotAVekuaSolution : Error { using Error::Error; };
struct ScalarPartNonzero : Error { using Error::Error; };
struct NotAV1Solution : Error { using Error::Error; };
struct NotASchrodingerSolution : Error { using Error::Error; };
struct NotAPhiSolution : Error { using Error::Error; };
struct NotParallel : Error { using Error::Error; };
struct NotOrthogonal : Error { using Error::Error; };
struct NotHarmonic : Error { using Error::Error; };
struct AxisInDomain : Error { using Error::Error; };
struct CompatibilityViolated : Error { using Error::Error; };

// File format / usage failures.  CLI exit code 2.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct VfldError : IoError { using IoError::IoError; };
struct ScenarioError : IoError { using IoError::IoError; };

} // namespace vekua
