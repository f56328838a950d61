#pragma once

#include <stdexcept>
#include <string>

namespace subgeom {

// Base for every recoverable failure raised by the geometry pipeline.
class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad dimensions, unknown ids, out-of-range parameters.
class InputError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

// A finite-difference stencil or sample point leaves the chart domain.
class DomainError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

// The chart returned a non-finite value or the wrong number of coordinates.
class EvaluationError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

// Induced metric is singular: the chart is not an immersion at the point.
class DegeneracyError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

// The seed basis does not span the normal space; reseed and retry.
class FrameError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

// The normal frame flipped sign across a difference stencil.
class GaugeError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

// A documented precondition does not hold (e.g. point not on the model).
class PreconditionError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

// Not enough samples for a grid-level statistic.
class SamplingError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

} // namespace subgeom
