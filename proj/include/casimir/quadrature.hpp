#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

namespace casimir {

struct Tolerance
{
    double rel_tol = 1e-9;
    double abs_tol = 1e-14;
    std::size_t max_evaluations = 10'000'000;

    /// Throws std::invalid_argument unless rel_tol > 0 and abs_tol >= 0.
    void validate() const;
    /// Tolerance for a nested pass: both tolerances divided by `factor`.
    Tolerance tightened(double factor) const;
};

/// Value of an integral or sum with its error bookkeeping.
///
/// `converged` implies error_estimate <= max(abs_tol, rel_tol * |value|),
/// except when the value cancels: an estimate at the roundoff floor of the
/// integrand, or below rel_tol * abs_integral, also counts as converged. `message` is empty unless something
/// went wrong (e.g. which outer abscissa an inner integral failed at).
struct QuadratureResult
{
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
    bool converged = true;
    std::string message;
    double abs_integral = 0.0;  ///< integral of |f|; 0 when unknown
};

/// Root-sum-square combination a*x + b*y of two results.
QuadratureResult combine(const QuadratureResult& x, double a, const QuadratureResult& y, double b);
QuadratureResult operator+(const QuadratureResult& x, const QuadratureResult& y);
QuadratureResult operator-(const QuadratureResult& x, const QuadratureResult& y);
QuadratureResult scaled(const QuadratureResult& x, double factor);
/// Adds an exactly-known constant.
QuadratureResult shifted(const QuadratureResult& x, double offset);

/// Thrown when an integrand returns NaN; carries the offending abscissa.
class IntegrandError : public std::runtime_error
{
public:
    IntegrandError(const std::string& what, double abscissa);
    double abscissa() const { return abscissa_; }

private:
    double abscissa_;
};

/// Thrown by higher-level operations that need a converged result to
/// proceed (e.g. a root search) and did not get one.
class ConvergenceError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

using Integrand = std::function<double(double)>;
using Integrand2d = std::function<double(double, double)>;
/// A term whose own value carries an error estimate (e.g. an inner integral).
using NestedIntegrand = std::function<QuadratureResult(double)>;

/// Globally adaptive Gauss-Kronrod (10/21) on a finite interval [lo, hi].
QuadratureResult integrate_interval(const Integrand& f, double lo, double hi, const Tolerance& tol = {});
QuadratureResult integrate_interval(const NestedIntegrand& f, double lo, double hi, const Tolerance& tol = {});

/// Integral over [0, inf) via x = L s / (1 - s), L = decay_scale.
QuadratureResult integrate_semiinf(const Integrand& f, double decay_scale, const Tolerance& tol = {});
QuadratureResult integrate_semiinf(const NestedIntegrand& f, double decay_scale, const Tolerance& tol = {});

/// Integral over [0, 1].
QuadratureResult integrate_unit(const Integrand& f, const Tolerance& tol = {});

/// One axis of an iterated integral.
struct Domain
{
    enum class Kind { semi_infinite, unit };
    Kind kind = Kind::unit;
    double decay_scale = 1.0;

    static Domain semi_infinite(double decay_scale) { return {Kind::semi_infinite, decay_scale}; }
    static Domain unit() { return {Kind::unit, 1.0}; }
};

/// Iterated integral of f(x, y), x over `outer`, y over `inner`. The inner
/// pass runs at 10x tighter tolerance and its error estimates are integrated
/// along with the values.
QuadratureResult integrate_2d(const Integrand2d& f, const Domain& outer, const Domain& inner, const Tolerance& tol = {});

/// (1/beta) [ g(0)/2 + sum_{n>=1} g(2 pi n / beta) ].
///
/// Stops once three consecutive terms fall below
/// max(abs_tol, rel_tol * |partial sum|) in output units; gives up with
/// converged = false at n = 1e5.
QuadratureResult matsubara_sum(const NestedIntegrand& g, double beta, const Tolerance& tol = {});
QuadratureResult matsubara_sum(const Integrand& g, double beta, const Tolerance& tol = {});

inline constexpr std::size_t kMatsubaraTermCap = 100'000;

struct RootBracket
{
    double lo = 0.0;
    double hi = 0.0;
    std::size_t iterations = 0;

    double root() const { return 0.5 * (lo + hi); }
    double width() const { return hi - lo; }
};

/// Bisection of a sign change on [lo, hi] down to width rel_tol * |root|.
/// Returns std::nullopt when f(lo) and f(hi) have the same strict sign.
/// Exceptions from f propagate.
std::optional<RootBracket> bracket_root(const Integrand& f, double lo, double hi, double rel_tol = 1e-10);

}  // namespace casimir
