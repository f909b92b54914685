#include "qhat/gf.hpp"

namespace qhat {

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Gf::Gf(std::uint32_t p) : p_(p) {
    if (p < 2 || p >= (1u << 16) || !is_prime(p))
        throw InputError("field modulus must be a prime in [2, 2^16): got " +
                         std::to_string(p));
}

std::uint32_t Gf::pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1 % p_;
    std::uint32_t base = a % p_;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

std::uint32_t Gf::inv(std::uint32_t a) const {
    if (a % p_ == 0) throw std::domain_error("inverse of zero in GF(p)");
    return pow(a, p_ - 2);
}

} // namespace qhat
