// Arithmetic in the prime field GF(p), p < 2^16.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qhat {

// Thrown on malformed user input (bad primes, bad grammar, unknown names).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a computation exceeds a configured resource cap.
struct CapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a randomized procedure cannot certify its answer.
struct InconclusiveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool is_prime(std::uint32_t n);

// Value-type context for GF(p) arithmetic. All residues live in [0, p).
class Gf {
public:
    Gf() : p_(2) {}
    explicit Gf(std::uint32_t p);

    std::uint32_t p() const { return p_; }

    std::uint32_t reduce(std::int64_t x) const {
        std::int64_t r = x % static_cast<std::int64_t>(p_);
        return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
    }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
        return a >= b ? a - b : a + p_ - b;
    }
    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return static_cast<std::uint32_t>(
            (static_cast<std::uint64_t>(a) * b) % p_);
    }
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
    std::uint32_t inv(std::uint32_t a) const;

    bool operator==(const Gf&) const = default;

private:
    std::uint32_t p_;
};

} // namespace qhat
