#pragma once

#include <cstdint>
#include <stdexcept>

// Checked 64-bit arithmetic. All exact computations in this library go
// through these helpers; overflow is a hard failure, never a silent wrap.

namespace affweyl {

inline int64_t checked_add(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in addition");
    return r;
}

inline int64_t checked_sub(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_sub_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in subtraction");
    return r;
}

inline int64_t checked_mul(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in multiplication");
    return r;
}

inline int64_t checked_neg(int64_t a) { return checked_sub(0, a); }

inline int64_t checked_pow(int64_t base, int exp) {
    int64_t r = 1;
    for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

} // namespace affweyl
