#pragma once

#include <stdexcept>
#include <string>

namespace biquant {

/// f or g sits within the clamp band of {0, 1}; the stationarity function is
/// unbounded there and the level a has to move inward.
class DegenerateChannel : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The stationarity function keeps one sign over the admissible range.
class NoSignChange : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotConverged : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace biquant
