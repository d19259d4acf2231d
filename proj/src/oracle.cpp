// oracle.cpp — brute-force reference routines

#include "tfd/oracle.hpp"

#include "tfd/errors.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace tfd::oracle {

namespace {

using Real = boost::multiprecision::cpp_bin_float_100;
using Full = std::array<Real, 64>;

Real& at(Full& m, std::size_t r, std::size_t c) { return m[8 * r + c]; }
const Real& at(const Full& m, std::size_t r, std::size_t c) { return m[8 * r + c]; }

struct FullPair {
    Full target;
    Full reference_inverse;
};

// The phase w t is rounded to double first, exactly as any double-precision
// caller would see it; everything after that is carried at 100 digits.
FullPair assemble(const EvaluationContext& ctx, double t)
{
    validate(ctx);
    FullPair out;
    std::fill(out.target.begin(), out.target.end(), Real(0));
    std::fill(out.reference_inverse.begin(), out.reference_inverse.end(), Real(0));

    const double omegas[2] = {ctx.freqs.omega1, ctx.freqs.omega2};
    const double refs[2] = {ctx.refs.omegaR1, ctx.refs.omegaR2};
    const double alphas[2] = {ctx.alphas.alpha1, ctx.alphas.alpha2};
    const Real mass(ctx.mass);

    for (int i = 0; i < 2; ++i) {
        const double phase = omegas[i] * t;
        const Real c = cos(Real(phase));
        const Real s = sin(Real(phase));
        const Real two_alpha = 2 * Real(alphas[i]);
        const Real ch = cosh(two_alpha);
        const Real sh = sinh(two_alpha);
        const Real mw = mass * Real(omegas[i]);
        const Real mwr = mass * Real(refs[i]);
        for (int j = 0; j < 2; ++j) {
            const int sign = j == 0 ? 1 : -1;
            const std::size_t o = static_cast<std::size_t>(4 * i + 2 * j);
            at(out.target, o, o) = (ch + sign * sh * c) / mw;
            at(out.target, o, o + 1) = -sign * sh * s;
            at(out.target, o + 1, o) = -sign * sh * s;
            at(out.target, o + 1, o + 1) = mw * (ch - sign * sh * c);
            at(out.reference_inverse, o, o) = mwr;
            at(out.reference_inverse, o + 1, o + 1) = 1 / mwr;
        }
    }
    return out;
}

Full multiply(const Full& a, const Full& b)
{
    Full c;
    for (std::size_t r = 0; r < 8; ++r) {
        for (std::size_t k = 0; k < 8; ++k) {
            Real sum = 0;
            for (std::size_t j = 0; j < 8; ++j) sum += at(a, r, j) * at(b, j, k);
            at(c, r, k) = sum;
        }
    }
    return c;
}

Full relative(const EvaluationContext& ctx, double t)
{
    const FullPair pair = assemble(ctx, t);
    return multiply(pair.target, pair.reference_inverse);
}

FullCovariance to_double(const Full& m)
{
    FullCovariance out;
    for (std::size_t k = 0; k < 64; ++k) out.entries[k] = static_cast<double>(m[k]);
    return out;
}

// Roots of x^2 - tr x + det for each diagonal block; off-block entries must vanish.
std::array<Real, 8> block_eigenvalues(const Full& delta)
{
    for (std::size_t r = 0; r < 8; ++r) {
        for (std::size_t c = 0; c < 8; ++c) {
            if (r / 2 != c / 2 && at(delta, r, c) != 0) {
                throw NumericError("relative matrix is not block diagonal");
            }
        }
    }
    std::array<Real, 8> e;
    for (std::size_t b = 0; b < 4; ++b) {
        const std::size_t o = 2 * b;
        const Real tr = at(delta, o, o) + at(delta, o + 1, o + 1);
        const Real det = at(delta, o, o) * at(delta, o + 1, o + 1) - at(delta, o, o + 1) * at(delta, o + 1, o);
        const Real half = tr / 2;
        Real disc = half * half - det;
        if (disc < 0) {
            // Equal-root blocks can land a few ulps below zero.
            if (disc < -Real("1e-60") * half * half) throw NumericError("complex eigenvalues in relative block");
            disc = 0;
        }
        const Real large = half + sqrt(disc);
        if (!(large > 0) || !(det > 0)) {
            throw NumericError("nonpositive eigenvalue in relative block " + std::to_string(b));
        }
        e[o] = det / large;
        e[o + 1] = large;
    }
    return e;
}

template <class T>
T neumaier_sum(const std::vector<T>& terms)
{
    T sum = 0;
    T comp = 0;
    for (const T& x : terms) {
        const T s = sum + x;
        comp += std::abs(sum) >= std::abs(x) ? (sum - s) + x : (x - s) + sum;
        sum = s;
    }
    return sum + comp;
}

std::size_t truncation_index(double x, double tol)
{
    // Relative tail of a geometric series with ratio e^{-x} after N + 1 terms is e^{-x(N+1)}.
    const double n = std::ceil(std::log(1.0 / tol) / x);
    if (!(n <= 1e6)) throw NumericError("partition series needs more than 1e6 terms per mode");
    return static_cast<std::size_t>(n);
}

long double log_partition(const ModeFrequencies& freqs, long double beta, long double hbar)
{
    long double s = 0.0L;
    for (double w : {freqs.omega1, freqs.omega2}) {
        const long double x = beta * hbar * static_cast<long double>(w);
        s += -x / 2.0L - std::log(-std::expm1(-x));
    }
    return s;
}

} // namespace

Mat2 FullCovariance::block(std::size_t b) const
{
    const std::size_t o = 2 * b;
    return {(*this)(o, o), (*this)(o, o + 1), (*this)(o + 1, o), (*this)(o + 1, o + 1)};
}

FullAssembly assemble_full(const EvaluationContext& ctx, double t)
{
    const FullPair pair = assemble(ctx, t);
    return {to_double(pair.target), to_double(pair.reference_inverse)};
}

FullCovariance relative_matrix(const EvaluationContext& ctx, double t)
{
    return to_double(relative(ctx, t));
}

double relative_determinant(const EvaluationContext& ctx, double t)
{
    Full a = relative(ctx, t);
    Real det = 1;
    for (std::size_t col = 0; col < 8; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < 8; ++r) {
            if (abs(at(a, r, col)) > abs(at(a, pivot, col))) pivot = r;
        }
        if (at(a, pivot, col) == 0) return 0.0;
        if (pivot != col) {
            for (std::size_t c = 0; c < 8; ++c) std::swap(at(a, pivot, c), at(a, col, c));
            det = -det;
        }
        det *= at(a, col, col);
        for (std::size_t r = col + 1; r < 8; ++r) {
            const Real f = at(a, r, col) / at(a, col, col);
            if (f == 0) continue;
            for (std::size_t c = col; c < 8; ++c) at(a, r, c) -= f * at(a, col, c);
        }
    }
    return static_cast<double>(det);
}

std::array<double, 8> relative_eigenvalues_full(const EvaluationContext& ctx, double t)
{
    const std::array<Real, 8> e = block_eigenvalues(relative(ctx, t));
    std::array<double, 8> out;
    for (std::size_t k = 0; k < 8; ++k) out[k] = static_cast<double>(e[k]);
    return out;
}

double complexity_bruteforce(const EvaluationContext& ctx, double t)
{
    const std::array<Real, 8> e = block_eigenvalues(relative(ctx, t));
    Real sum = 0;
    for (const Real& v : e) {
        const Real l = log(v);
        sum += l * l;
    }
    return static_cast<double>(sqrt(sum) / 2);
}

Mat2 matrix_exponential_small(const Mat2& m, double tol)
{
    if (!(tol > 0.0)) throw ParameterError("tolerance must be positive");
    using L = long double;
    const L norm = std::max({std::abs(L(m.m00)) + std::abs(L(m.m01)), std::abs(L(m.m10)) + std::abs(L(m.m11))});
    int squarings = 0;
    if (norm > 0.5L) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5L)));
    const L scale = std::ldexp(1.0L, -squarings);
    const L a[4] = {m.m00 * scale, m.m01 * scale, m.m10 * scale, m.m11 * scale};

    L result[4] = {1, 0, 0, 1};
    L term[4] = {1, 0, 0, 1};
    const L term_tol = static_cast<L>(tol) * scale;
    bool converged = false;
    for (int k = 1; k <= 200; ++k) {
        const L next[4] = {(term[0] * a[0] + term[1] * a[2]) / k, (term[0] * a[1] + term[1] * a[3]) / k,
                           (term[2] * a[0] + term[3] * a[2]) / k, (term[2] * a[1] + term[3] * a[3]) / k};
        std::copy(next, next + 4, term);
        for (int j = 0; j < 4; ++j) result[j] += term[j];
        const L biggest = std::max({std::abs(term[0]), std::abs(term[1]), std::abs(term[2]), std::abs(term[3])});
        if (biggest < term_tol) {
            converged = true;
            break;
        }
    }
    if (!converged) throw NumericError("matrix exponential series did not converge in 200 terms");
    for (int s = 0; s < squarings; ++s) {
        const L sq[4] = {result[0] * result[0] + result[1] * result[2], result[0] * result[1] + result[1] * result[3],
                         result[2] * result[0] + result[3] * result[2], result[2] * result[1] + result[3] * result[3]};
        std::copy(sq, sq + 4, result);
    }
    return {static_cast<double>(result[0]), static_cast<double>(result[1]), static_cast<double>(result[2]),
            static_cast<double>(result[3])};
}

double partition_series(const ModeFrequencies& freqs, double beta, double hbar, double tol)
{
    if (!(freqs.omega1 > 0.0) || !(freqs.omega2 > 0.0)) throw ParameterError("mode frequencies must be positive");
    if (!(beta > 0.0) || !(hbar > 0.0)) throw ParameterError("beta and hbar must be positive");
    if (!(tol > 0.0) || !(tol < 1.0)) throw ParameterError("tolerance must be in (0, 1)");

    // Each mode gets an eighth of the budget so that the double sum's combined
    // truncation and the rounding below stay inside tol.
    const double x1 = beta * hbar * freqs.omega1;
    const double x2 = beta * hbar * freqs.omega2;
    const std::size_t n1 = truncation_index(x1, tol / 8.0);
    const std::size_t n2 = truncation_index(x2, tol / 8.0);
    if (static_cast<double>(n1 + 1) * static_cast<double>(n2 + 1) > 1e9) {
        throw NumericError("partition series needs more than 1e9 terms");
    }

    // Way one: the double sum of exp(-beta E_{n,k}).
    long double total = 0.0L;
    long double comp = 0.0L;
    for (std::size_t n = 0; n <= n1; ++n) {
        for (std::size_t k = 0; k <= n2; ++k) {
            const long double energy = static_cast<long double>(hbar) *
                                       (freqs.omega1 * (static_cast<long double>(n) + 0.5L) +
                                        freqs.omega2 * (static_cast<long double>(k) + 0.5L));
            const long double term = std::exp(-static_cast<long double>(beta) * energy);
            const long double s = total + term;
            comp += std::abs(total) >= term ? (total - s) + term : (term - s) + total;
            total = s;
        }
    }
    total += comp;

    // Way two: product of single-mode sums.
    auto mode_sum = [](double x, std::size_t n) {
        std::vector<long double> terms(n + 1);
        for (std::size_t j = 0; j <= n; ++j) {
            terms[j] = std::exp(-static_cast<long double>(x) * (static_cast<long double>(j) + 0.5L));
        }
        return neumaier_sum(terms);
    };
    const long double product = mode_sum(x1, n1) * mode_sum(x2, n2);
    if (std::abs(total - product) > 0.5L * tol * product) {
        throw NumericError("partition series orderings disagree beyond tolerance");
    }
    return static_cast<double>(total);
}

double internal_energy_fd(const ModeFrequencies& freqs, double beta, double hbar, double step)
{
    if (!(freqs.omega1 > 0.0) || !(freqs.omega2 > 0.0)) throw ParameterError("mode frequencies must be positive");
    if (!(beta > 0.0) || !(hbar > 0.0)) throw ParameterError("beta and hbar must be positive");
    if (!(step > 0.0) || !(step < beta / 10.0)) throw ParameterError("step must be in (0, beta/10)");
    const long double h = step;
    const long double up = log_partition(freqs, beta + h, hbar);
    const long double down = log_partition(freqs, beta - h, hbar);
    return static_cast<double>(-(up - down) / (2.0L * h));
}

double rate_fd(const EvaluationContext& ctx, double t, double step)
{
    if (!(step > 0.0)) throw ParameterError("step must be positive");
    return (complexity_at(ctx, t + step) - complexity_at(ctx, t - step)) / (2.0 * step);
}

double alpha_bisection(double omega, double beta, double hbar, double abs_tol)
{
    if (!(omega > 0.0) || !(beta > 0.0) || !(hbar > 0.0)) throw ParameterError("omega, beta, hbar must be positive");
    if (!(abs_tol > 0.0)) throw ParameterError("tolerance must be positive");
    using L = long double;
    // 1 - tanh(a) = 2/(e^{2a} + 1) against 1 - e^{-x/2}; both sides free of cancellation.
    const L target = -std::expm1(-static_cast<L>(beta) * hbar * omega / 2.0L);
    if (!(target > 0.0L)) throw DivergenceError("squeezing diverges for beta hbar omega -> 0");
    auto gap = [](L a) { return 2.0L / (std::exp(2.0L * a) + 1.0L); };
    L lo = 0.0L;
    L hi = 1.0L;
    while (gap(hi) > target) {
        hi *= 2.0L;
        if (hi > 1e4L) throw DivergenceError("squeezing parameter out of range");
    }
    for (int iter = 0; iter < 400 && hi - lo > abs_tol / 4; ++iter) {
        const L mid = 0.5L * (lo + hi);
        (gap(mid) > target ? lo : hi) = mid;
    }
    return static_cast<double>(0.5L * (lo + hi));
}

double dense_max_abs_rate(const EvaluationContext& ctx, double t0, double t1, std::size_t points)
{
    if (points < 2 || !(t1 > t0)) throw ParameterError("dense grid needs t1 > t0 and at least 2 points");
    double best = 0.0;
    for (std::size_t j = 0; j < points; ++j) {
        const double t = t0 + (t1 - t0) * static_cast<double>(j) / static_cast<double>(points - 1);
        best = std::max(best, std::abs(complexity_rate_at(ctx, t)));
    }
    return best;
}

double dense_max_abs_high_temp_rate(const ModeFrequencies& freqs, const ReferenceFrequencies& refs,
                                    double t0, double t1, std::size_t points)
{
    if (points < 2 || !(t1 > t0)) throw ParameterError("dense grid needs t1 > t0 and at least 2 points");
    double best = 0.0;
    for (std::size_t j = 0; j < points; ++j) {
        const double t = t0 + (t1 - t0) * static_cast<double>(j) / static_cast<double>(points - 1);
        best = std::max(best, std::abs(rate_high_temp_limit(freqs, refs, t)));
    }
    return best;
}

} // namespace tfd::oracle
