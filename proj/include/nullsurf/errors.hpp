// nullsurf: error taxonomy shared by all modules
#pragma once

#include <stdexcept>
#include <string>

namespace nullsurf {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Point (or a finite-difference stencil around it) left the chart.
class ChartDomainError : public Error {
public:
    using Error::Error;
};

// g_ij not invertible within tolerance at the evaluation point.
class DegenerateMetricError : public Error {
public:
    using Error::Error;
};

// Tangent plane has no 1-dimensional radical (spacelike/timelike input).
class NotLightlikeError : public Error {
public:
    using Error::Error;
};

// Radical dimension >= 2, or tangent basis does not span a hyperplane.
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

// Gauge transform with c = 0 or singular screen mixing matrix.
class InvalidGaugeError : public Error {
public:
    using Error::Error;
};

// A relative invariant vanished where a normalization needs it.
class NormalizationUnavailableError : public Error {
public:
    using Error::Error;
};

// Why a screen construction could not be carried out at a point.
enum class ScreenUnavailability {
    totally_geodesic,
    k_is_eigenvalue,
    non_transversal,
    equal_eigenvalues,
    k_proportional_to_eigenvalues,
};

inline const char* to_string(ScreenUnavailability r) {
    switch (r) {
        case ScreenUnavailability::totally_geodesic: return "totally_geodesic";
        case ScreenUnavailability::k_is_eigenvalue: return "K_is_eigenvalue";
        case ScreenUnavailability::non_transversal: return "non_transversal";
        case ScreenUnavailability::equal_eigenvalues: return "equal_eigenvalues";
        case ScreenUnavailability::k_proportional_to_eigenvalues:
            return "K_proportional_to_eigenvalues";
    }
    return "unknown";
}

// A normalization construction is unavailable at this point; carries the
// violated hypothesis so pipelines can record a reason code and move on.
class ScreenUnavailableError : public Error {
public:
    ScreenUnavailableError(ScreenUnavailability reason, const std::string& what)
        : Error(what), reason_(reason) {}
    ScreenUnavailability reason() const { return reason_; }

private:
    ScreenUnavailability reason_;
};

// User-supplied screen fails its own contract (not tangent, not g-orthogonal
// to the radical, or the coframe decomposition does not close).
class InconsistentScreenError : public Error {
public:
    using Error::Error;
};

// Configuration file problems; message carries the offending field path.
class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace nullsurf
