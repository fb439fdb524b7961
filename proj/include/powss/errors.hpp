#pragma once

#include <stdexcept>
#include <string>

namespace powss {

struct ZeroTotalWeight : std::runtime_error {
    ZeroTotalWeight() : std::runtime_error("total particle weight is zero") {}
};

struct LengthMismatch : std::runtime_error {
    LengthMismatch() : std::runtime_error("weights and values have different lengths") {}
};

// Theorem 1 validity condition t(lambda, N) > 0 not met: N too small for lambda.
struct InvalidRegime : std::runtime_error {
    explicit InvalidRegime(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroLikelihood : std::runtime_error {
    ZeroLikelihood() : std::runtime_error("observation has zero density under every successor state") {}
};

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

struct IntractableSize : std::runtime_error {
    explicit IntractableSize(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace powss
