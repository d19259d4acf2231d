// support.hpp — shared helpers for the unit tests

#pragma once

#include "tfd/complexity.hpp"
#include "tfd/model.hpp"

#include <cmath>
#include <cstdint>
#include <random>

namespace tfd::test {

inline bool rel_close(double a, double b, double tol)
{
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

private:
    std::mt19937_64 gen_;
};

inline EvaluationContext context(double omega1, double omega2, double beta, double omegaR = 1.0,
                                 double hbar = 1.0)
{
    return make_context(ModeFrequencies{omega1, omega2}, ThermalParams{beta},
                        ReferenceFrequencies{omegaR, omegaR}, hbar);
}

} // namespace tfd::test
