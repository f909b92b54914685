// Decomposition into indecomposables (Fitting splitting over the
// endomorphism algebra) and isomorphism testing.
#pragma once

#include "qhat/module.hpp"

namespace qhat {

// Deterministic splitmix64 stream.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : s_(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    std::uint32_t below(std::uint32_t n) {
        return static_cast<std::uint32_t>(next() % n);
    }

private:
    std::uint64_t s_;
};

struct DecomposeOptions {
    std::uint64_t seed = 0xA1;
    std::size_t rounds = 64;
};

struct Summand {
    Module module;
    std::size_t multiplicity;
};

// Splits M into indecomposables with multiplicities. Every piece carries a
// local endomorphism algebra certificate; if splitting stalls, throws
// InconclusiveError rather than returning an unverified answer.
std::vector<Summand> decompose(const Module& m, const DecomposeOptions& opts = {});

bool is_indecomposable(const Module& m, const DecomposeOptions& opts = {});

// True/false only when certain. Throws InconclusiveError when the search
// budget is exhausted without a verdict (never misreports false).
bool is_isomorphic(const Module& m, const Module& n,
                   const DecomposeOptions& opts = {});

} // namespace qhat
