// kjplus: exact half-integers
#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "errors.hpp"

namespace kjplus {

/**
 * @brief Exact value in (1/2)Z, stored as twice the value.
 */
class HalfInteger {
public:
    constexpr HalfInteger() = default;

    static constexpr HalfInteger from_twice(std::int64_t twice) { return HalfInteger(twice); }
    static constexpr HalfInteger from_integer(std::int64_t v) { return HalfInteger(2 * v); }

    /// Exact num/den; throws invalid_spec unless the value lies in (1/2)Z.
    static HalfInteger from_fraction(std::int64_t num, std::int64_t den) {
        if (den == 0) throw invalid_spec("zero denominator");
        if ((2 * num) % den != 0)
            throw invalid_spec(std::to_string(num) + "/" + std::to_string(den) + " is not a half-integer");
        return HalfInteger(2 * num / den);
    }

    constexpr std::int64_t twice() const { return twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }

    /// Integer value; throws invalid_spec for a proper half-integer.
    std::int64_t to_integer() const {
        if (!is_integer()) throw invalid_spec(to_string() + " is not an integer");
        return twice_ / 2;
    }

    constexpr double to_double() const { return static_cast<double>(twice_) / 2.0; }

    /// Reduced numerator and denominator (denominator 1 or 2).
    constexpr std::int64_t numerator() const { return is_integer() ? twice_ / 2 : twice_; }
    constexpr std::int64_t denominator() const { return is_integer() ? 1 : 2; }

    std::string to_string() const {
        if (is_integer()) return std::to_string(twice_ / 2);
        return std::to_string(twice_) + "/2";
    }

    friend constexpr HalfInteger operator+(HalfInteger a, HalfInteger b) { return HalfInteger(a.twice_ + b.twice_); }
    friend constexpr HalfInteger operator-(HalfInteger a, HalfInteger b) { return HalfInteger(a.twice_ - b.twice_); }
    friend constexpr HalfInteger operator*(std::int64_t s, HalfInteger a) { return HalfInteger(s * a.twice_); }
    friend constexpr bool operator==(HalfInteger, HalfInteger) = default;
    friend constexpr auto operator<=>(HalfInteger, HalfInteger) = default;

    friend std::ostream& operator<<(std::ostream& os, HalfInteger h) { return os << h.to_string(); }

private:
    explicit constexpr HalfInteger(std::int64_t twice) : twice_(twice) {}
    std::int64_t twice_ = 0;
};

} // namespace kjplus
