// oracle.hpp — slow, independent reference implementations for testing.
//
// Nothing here is used by the library's fast path. The brute-force complexity
// assembles the full 8x8 covariance and relative matrices in 100-digit binary
// floating point, so it stays exact where double-precision determinants and
// eigenvalues of strongly squeezed blocks would cancel catastrophically.

#pragma once

#include "tfd/complexity.hpp"
#include "tfd/covariance.hpp"
#include "tfd/model.hpp"

#include <array>
#include <cstddef>

namespace tfd::oracle {

// Row-major 8x8 in the basis (X1+, P1+, X1-, P1-, X2+, P2+, X2-, P2-).
struct FullCovariance {
    std::array<double, 64> entries{};

    double& operator()(std::size_t r, std::size_t c) { return entries[8 * r + c]; }
    double operator()(std::size_t r, std::size_t c) const { return entries[8 * r + c]; }
    Mat2 block(std::size_t b) const;  // diagonal block b in 0..3
};

struct FullAssembly {
    FullCovariance target;
    FullCovariance referenceInverse;
};

// Target blocks ordered (1+, 1-, 2+, 2-); referenceInverse = diag(m wRi, 1/(m wRi)) per block.
FullAssembly assemble_full(const EvaluationContext& ctx, double t);

// Product target * referenceInverse, formed as a full 8x8 matrix product.
FullCovariance relative_matrix(const EvaluationContext& ctx, double t);

// det of the full relative matrix by Gaussian elimination with partial pivoting.
double relative_determinant(const EvaluationContext& ctx, double t);

// All eight eigenvalues of the relative matrix, two per block, each block's
// pair ordered (smaller, larger).
std::array<double, 8> relative_eigenvalues_full(const EvaluationContext& ctx, double t);

// 1/2 sqrt(sum_s ln^2 e_s) over the eight eigenvalues above.
double complexity_bruteforce(const EvaluationContext& ctx, double t);

// exp(m) by scaling and squaring a Taylor series; terms are added until the
// next one's largest entry falls below tol (scaled for the squarings).
Mat2 matrix_exponential_small(const Mat2& m, double tol);

// sum_{n,k} exp(-beta E_{n,k}) truncated where the geometric tail of each mode
// falls below tol relative to its sum. The double sum is cross-checked against
// the product of the two single-mode sums.
double partition_series(const ModeFrequencies& freqs, double beta, double hbar, double tol);

// Central difference -[ln Z(beta + h) - ln Z(beta - h)] / 2h.
double internal_energy_fd(const ModeFrequencies& freqs, double beta, double hbar, double step);

// Central difference of complexity_at.
double rate_fd(const EvaluationContext& ctx, double t, double step);

// Root of tanh(alpha) = exp(-beta hbar omega / 2) by bisection to abs_tol.
double alpha_bisection(double omega, double beta, double hbar, double abs_tol);

// max_j |dC/dt| on a uniform grid, evaluated one point at a time.
double dense_max_abs_rate(const EvaluationContext& ctx, double t0, double t1, std::size_t points);

// max_j |beta -> 0 rate| on a uniform grid.
double dense_max_abs_high_temp_rate(const ModeFrequencies& freqs, const ReferenceFrequencies& refs,
                                    double t0, double t1, std::size_t points);

} // namespace tfd::oracle
