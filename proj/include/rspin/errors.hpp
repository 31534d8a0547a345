#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rspin {

// A computed result violated an invariant the artifact is required to check.
// Precondition failures on caller input use std::invalid_argument instead.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in addition");
    return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in subtraction");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in multiplication");
    return r;
}

// Floor modulo: result in [0, m) for m > 0.
inline int mod(int a, int m)
{
    int r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace detail
}  // namespace rspin
