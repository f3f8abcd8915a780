#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace qlm {

/// Thrown when an input violates the admissibility hypotheses of a pipeline
/// (e.g. a flat run on a metric whose curvature floor is nonpositive).
/// Carries a short machine-readable reason code; the CLI maps these to exit 2.
class AdmissibilityError : public std::runtime_error {
public:
    AdmissibilityError(std::string reason, const std::string& message)
        : std::runtime_error(message), reason_(std::move(reason)) {}

    const std::string& reason() const { return reason_; }

private:
    std::string reason_;
};

/// Isometric embedding of the surface of revolution does not exist in the
/// axisymmetric chart (negative radicand, or nonpositive Gauss curvature).
class EmbeddingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace qlm
