#pragma once

#include <stdexcept>
#include <string>

namespace barrierlab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// geometry
struct NotInterior final : Error { using Error::Error; };
struct Unbounded final : Error { using Error::Error; };
struct DimensionDeficient final : Error { using Error::Error; };
struct InvalidPolytope final : Error { using Error::Error; };

// moments / barrier
struct ZeroDirection final : Error { using Error::Error; };
struct OrderUnsupported final : Error { using Error::Error; };
struct SamplingFailure final : Error { using Error::Error; };

// s-concave distributions
struct DegenerateSupport final : Error { using Error::Error; };
struct InvalidDensity final : Error { using Error::Error; };
struct HypothesisViolated final : Error { using Error::Error; };
struct NotNonIncreasing final : Error { using Error::Error; };
struct ZeroVariance final : Error { using Error::Error; };

// symbolic chain verification
struct ChainMismatch final : Error { using Error::Error; };
struct CertificateFailure final : Error { using Error::Error; };

// solver
struct MaxIterations final : Error { using Error::Error; };

// cli / io
struct InputError final : Error { using Error::Error; };

} // namespace barrierlab
