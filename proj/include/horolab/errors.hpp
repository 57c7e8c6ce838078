#pragma once

#include <stdexcept>
#include <string>

namespace horolab {

struct NotInvertible : std::runtime_error {
    explicit NotInvertible(const std::string& what) : std::runtime_error(what) {}
};

struct NotSpecialLinear : std::runtime_error {
    explicit NotSpecialLinear(const std::string& what) : std::runtime_error(what) {}
};

struct NotPrimitive : std::runtime_error {
    explicit NotPrimitive(const std::string& what) : std::runtime_error(what) {}
};

struct EnumerationTooLarge : std::runtime_error {
    explicit EnumerationTooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct PreconditionViolated : std::runtime_error {
    explicit PreconditionViolated(const std::string& what) : std::runtime_error(what) {}
};

struct ArithmeticOverflow : std::runtime_error {
    explicit ArithmeticOverflow(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionTooLarge : std::runtime_error {
    explicit DimensionTooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigInvalid : std::runtime_error {
    explicit ConfigInvalid(const std::string& what) : std::runtime_error(what) {}
};

struct GoldenMismatch : std::runtime_error {
    explicit GoldenMismatch(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace horolab
