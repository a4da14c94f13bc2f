#pragma once

#include <initializer_list>
#include <span>
#include <vector>

#include "biquant/density.hpp"

namespace biquant {

/// Sorted boundaries h1 < h2 < ... < hn. Empty means a constant quantizer.
class ThresholdVector {
public:
    ThresholdVector() = default;
    explicit ThresholdVector(std::vector<double> values) : values_(std::move(values)) {
        require_strictly_increasing(values_);
    }
    ThresholdVector(std::initializer_list<double> values)
        : ThresholdVector(std::vector<double>(values)) {}

    [[nodiscard]] std::span<const double> values() const { return values_; }
    [[nodiscard]] const std::vector<double>& vector() const { return values_; }
    [[nodiscard]] std::size_t size() const { return values_.size(); }
    [[nodiscard]] bool empty() const { return values_.empty(); }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
    [[nodiscard]] auto begin() const { return values_.begin(); }
    [[nodiscard]] auto end() const { return values_.end(); }

    friend bool operator==(const ThresholdVector&, const ThresholdVector&) = default;

private:
    std::vector<double> values_;
};

} // namespace biquant
