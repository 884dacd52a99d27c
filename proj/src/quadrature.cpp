#include "casimir/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <vector>

namespace casimir {

void Tolerance::validate() const
{
    if (!(rel_tol > 0.0) || !(abs_tol >= 0.0) || max_evaluations == 0) {
        throw std::invalid_argument("tolerance needs rel_tol > 0, abs_tol >= 0, max_evaluations > 0");
    }
}

Tolerance Tolerance::tightened(double factor) const
{
    Tolerance out = *this;
    out.rel_tol /= factor;
    out.abs_tol /= factor;
    return out;
}

QuadratureResult combine(const QuadratureResult& x, double a, const QuadratureResult& y, double b)
{
    QuadratureResult out;
    out.value = a * x.value + b * y.value;
    out.error_estimate = std::hypot(a * x.error_estimate, b * y.error_estimate);
    out.evaluations = x.evaluations + y.evaluations;
    out.converged = x.converged && y.converged;
    out.message = !x.message.empty() ? x.message : y.message;
    out.abs_integral = std::abs(a) * x.abs_integral + std::abs(b) * y.abs_integral;
    return out;
}

QuadratureResult operator+(const QuadratureResult& x, const QuadratureResult& y)
{
    return combine(x, 1.0, y, 1.0);
}

QuadratureResult operator-(const QuadratureResult& x, const QuadratureResult& y)
{
    return combine(x, 1.0, y, -1.0);
}

QuadratureResult scaled(const QuadratureResult& x, double factor)
{
    QuadratureResult out = x;
    out.value *= factor;
    out.error_estimate *= std::abs(factor);
    out.abs_integral *= std::abs(factor);
    return out;
}

QuadratureResult shifted(const QuadratureResult& x, double offset)
{
    QuadratureResult out = x;
    out.value += offset;
    out.abs_integral += std::abs(offset);
    return out;
}

IntegrandError::IntegrandError(const std::string& what, double abscissa)
    : std::runtime_error(what), abscissa_(abscissa)
{
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Kronrod 21-point abscissae/weights and the embedded 10-point Gauss weights.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208983237505, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Sample
{
    double value = 0.0;
    double error = 0.0;
    std::size_t evaluations = 1;
    bool converged = true;
    std::string message;
    double magnitude = 0.0;  // |f| before any inner cancellation, >= |value|
};

using SampleFn = std::function<Sample(double)>;

struct Segment
{
    double lo = 0.0;
    double hi = 0.0;
    double value = 0.0;
    double trunc_err = 0.0;  // rule error, floored at roundoff
    double inner_err = 0.0;  // integrated error of the samples themselves
    double abs_value = 0.0;  // integral of |f|
    double floor = 0.0;      // roundoff floor
};

struct SegmentByError
{
    bool operator()(const Segment& a, const Segment& b) const
    {
        if (a.trunc_err != b.trunc_err) {
            return a.trunc_err < b.trunc_err;
        }
        return a.lo > b.lo;  // ties resolved by position, leftmost first
    }
};

struct RunState
{
    std::size_t evaluations = 0;
    bool samples_converged = true;
    std::string message;
};

Sample checked(const SampleFn& f, double x, RunState& state)
{
    Sample s = f(x);
    s.magnitude = std::max(s.magnitude, std::abs(s.value));
    if (!std::isfinite(s.value)) {
        std::ostringstream os;
        os.precision(17);
        os << "integrand returned a non-finite value at abscissa " << x;
        throw IntegrandError(os.str(), x);
    }
    state.evaluations += s.evaluations;
    if (!s.converged && state.samples_converged) {
        state.samples_converged = false;
        state.message = s.message;
    }
    return s;
}

Segment gauss_kronrod(const SampleFn& f, double lo, double hi, RunState& state)
{
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    std::array<double, 21> fv{};
    const Sample mid = checked(f, center, state);
    double kronrod = kWgk[10] * mid.value;
    double gauss = 0.0;
    double abs_sum = kWgk[10] * mid.magnitude;
    double inner = kWgk[10] * mid.error;
    fv[20] = mid.value;

    for (std::size_t j = 0; j < 10; ++j) {
        const double dx = half * kXgk[j];
        const Sample left = checked(f, center - dx, state);
        const Sample right = checked(f, center + dx, state);
        fv[2 * j] = left.value;
        fv[2 * j + 1] = right.value;
        const double pair = left.value + right.value;
        kronrod += kWgk[j] * pair;
        abs_sum += kWgk[j] * (left.magnitude + right.magnitude);
        inner += kWgk[j] * (left.error + right.error);
        if (j % 2 == 1) {
            gauss += kWg[j / 2] * pair;
        }
    }

    const double mean = 0.5 * kronrod;
    double asc = kWgk[10] * std::abs(fv[20] - mean);
    for (std::size_t j = 0; j < 10; ++j) {
        asc += kWgk[j] * (std::abs(fv[2 * j] - mean) + std::abs(fv[2 * j + 1] - mean));
    }

    const double abs_half = std::abs(half);
    Segment seg;
    seg.lo = lo;
    seg.hi = hi;
    seg.value = kronrod * half;
    seg.abs_value = abs_sum * abs_half;
    seg.inner_err = inner * abs_half;
    asc *= abs_half;

    double err = std::abs((kronrod - gauss) * half);
    if (asc != 0.0 && err != 0.0) {
        err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    }
    seg.floor = 50.0 * kEps * seg.abs_value;
    seg.trunc_err = std::max(err, seg.floor);
    return seg;
}

QuadratureResult adaptive(const SampleFn& f, double lo, double hi, const Tolerance& tol)
{
    tol.validate();
    RunState state;
    std::priority_queue<Segment, std::vector<Segment>, SegmentByError> active;
    std::vector<Segment> frozen;

    double value = 0.0;
    double trunc = 0.0;
    double inner = 0.0;
    double abs_total = 0.0;
    double floor = 0.0;
    auto account = [&](const Segment& s, double sign) {
        value += sign * s.value;
        trunc += sign * s.trunc_err;
        inner += sign * s.inner_err;
        abs_total += sign * s.abs_value;
        floor += sign * s.floor;
    };

    const Segment first = gauss_kronrod(f, lo, hi, state);
    account(first, 1.0);
    active.push(first);

    bool converged = false;
    std::string message;
    for (;;) {
        const double target = std::max(tol.abs_tol, tol.rel_tol * std::abs(value));
        if (trunc + inner <= target) {
            converged = true;
            break;
        }
        if (trunc <= std::max(target, 2.0 * floor) && inner <= tol.rel_tol * abs_total) {
            converged = true;  // remaining error is roundoff or inner-pass error
            break;
        }
        if (active.empty()) {
            message = "interval could not be subdivided further";
            break;
        }
        if (state.evaluations + 42 > tol.max_evaluations) {
            message = "evaluation budget exhausted";
            break;
        }
        const Segment worst = active.top();
        active.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi) || worst.hi - worst.lo <= 4.0 * kEps * std::abs(mid)) {
            frozen.push_back(worst);
            continue;
        }
        account(worst, -1.0);
        const Segment left = gauss_kronrod(f, worst.lo, mid, state);
        const Segment right = gauss_kronrod(f, mid, worst.hi, state);
        account(left, 1.0);
        account(right, 1.0);
        active.push(left);
        active.push(right);
    }

    // Canonical reduction: left-to-right over the final partition.
    std::vector<Segment> all = std::move(frozen);
    while (!active.empty()) {
        all.push_back(active.top());
        active.pop();
    }
    std::sort(all.begin(), all.end(), [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
    QuadratureResult out;
    double err = 0.0;
    for (const Segment& s : all) {
        out.value += s.value;
        out.abs_integral += s.abs_value;
        err += s.trunc_err + s.inner_err;
    }
    out.error_estimate = err;
    out.evaluations = state.evaluations;
    out.converged = converged && state.samples_converged;
    if (!state.samples_converged) {
        out.message = state.message;
    } else {
        out.message = message;
    }
    return out;
}

SampleFn plain(const Integrand& f)
{
    return [&f](double x) { return Sample{f(x), 0.0, 1, true, {}}; };
}

SampleFn nested(const NestedIntegrand& f)
{
    return [&f](double x) {
        QuadratureResult r = f(x);
        return Sample{r.value, r.error_estimate, std::max<std::size_t>(r.evaluations, 1), r.converged,
                      std::move(r.message), r.abs_integral};
    };
}

void check_scale(double decay_scale)
{
    if (!(decay_scale > 0.0) || !std::isfinite(decay_scale)) {
        throw std::invalid_argument("decay_scale must be finite and > 0");
    }
}

// x = L s / (1 - s), dx = L / (1 - s)^2 ds
SampleFn compactified(const SampleFn& f, double scale)
{
    return [&f, scale](double s) {
        const double gap = 1.0 - s;
        const double x = scale * s / gap;
        Sample out = f(x);
        if (!std::isfinite(out.value)) {
            std::ostringstream os;
            os.precision(17);
            os << "integrand returned a non-finite value at abscissa " << x;
            throw IntegrandError(os.str(), x);
        }
        const double jac = scale / (gap * gap);
        if (out.value != 0.0) {
            out.value *= jac;
        }
        if (out.error != 0.0) {
            out.error *= jac;
        }
        if (out.magnitude != 0.0) {
            out.magnitude *= jac;
        }
        return out;
    };
}

}  // namespace

QuadratureResult integrate_interval(const Integrand& f, double lo, double hi, const Tolerance& tol)
{
    return adaptive(plain(f), lo, hi, tol);
}

QuadratureResult integrate_interval(const NestedIntegrand& f, double lo, double hi, const Tolerance& tol)
{
    return adaptive(nested(f), lo, hi, tol);
}

QuadratureResult integrate_semiinf(const Integrand& f, double decay_scale, const Tolerance& tol)
{
    check_scale(decay_scale);
    const SampleFn base = plain(f);
    return adaptive(compactified(base, decay_scale), 0.0, 1.0, tol);
}

QuadratureResult integrate_semiinf(const NestedIntegrand& f, double decay_scale, const Tolerance& tol)
{
    check_scale(decay_scale);
    const SampleFn base = nested(f);
    return adaptive(compactified(base, decay_scale), 0.0, 1.0, tol);
}

QuadratureResult integrate_unit(const Integrand& f, const Tolerance& tol)
{
    return adaptive(plain(f), 0.0, 1.0, tol);
}

namespace {

QuadratureResult integrate_over(const NestedIntegrand& f, const Domain& d, const Tolerance& tol)
{
    if (d.kind == Domain::Kind::semi_infinite) {
        return integrate_semiinf(f, d.decay_scale, tol);
    }
    return integrate_interval(f, 0.0, 1.0, tol);
}

QuadratureResult integrate_over(const Integrand& f, const Domain& d, const Tolerance& tol)
{
    if (d.kind == Domain::Kind::semi_infinite) {
        return integrate_semiinf(f, d.decay_scale, tol);
    }
    return integrate_interval(f, 0.0, 1.0, tol);
}

}  // namespace

QuadratureResult integrate_2d(const Integrand2d& f, const Domain& outer, const Domain& inner, const Tolerance& tol)
{
    tol.validate();
    const Tolerance inner_tol = tol.tightened(10.0);
    NestedIntegrand slice = [&](double x) {
        Integrand row = [&](double y) { return f(x, y); };
        QuadratureResult r = integrate_over(row, inner, inner_tol);
        if (!r.converged) {
            std::ostringstream os;
            os.precision(17);
            os << "inner integral did not converge at outer abscissa " << x;
            if (!r.message.empty()) {
                os << " (" << r.message << ")";
            }
            r.message = os.str();
        }
        return r;
    };
    return integrate_over(slice, outer, tol);
}

QuadratureResult matsubara_sum(const NestedIntegrand& g, double beta, const Tolerance& tol)
{
    tol.validate();
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw std::invalid_argument("matsubara_sum: beta must be finite and > 0");
    }
    const double spacing = 2.0 * std::numbers::pi / beta;

    QuadratureResult out;
    double sum = 0.0;
    double abs_sum = 0.0;
    double inner = 0.0;
    double previous = 0.0;
    int small_run = 0;

    auto term_at = [&](std::size_t n) {
        QuadratureResult t = g(spacing * static_cast<double>(n));
        if (!std::isfinite(t.value)) {
            std::ostringstream os;
            os << "Matsubara term n=" << n << " is not finite";
            throw IntegrandError(os.str(), spacing * static_cast<double>(n));
        }
        out.evaluations += std::max<std::size_t>(t.evaluations, 1);
        if (!t.converged && out.converged) {
            out.converged = false;
            std::ostringstream os;
            os << "Matsubara term n=" << n << " did not converge";
            if (!t.message.empty()) {
                os << " (" << t.message << ")";
            }
            out.message = os.str();
        }
        return t;
    };

    {
        const QuadratureResult t0 = term_at(0);
        sum = 0.5 * t0.value;
        abs_sum = 0.5 * std::max(std::abs(t0.value), t0.abs_integral);
        inner = 0.5 * t0.error_estimate;
        previous = t0.value;
    }

    for (std::size_t n = 1; n <= kMatsubaraTermCap; ++n) {
        const QuadratureResult t = term_at(n);
        sum += t.value;
        abs_sum += std::max(std::abs(t.value), t.abs_integral);
        inner += t.error_estimate;

        const double mag = std::abs(t.value);
        const double threshold = std::max(tol.abs_tol * beta, tol.rel_tol * std::abs(sum));
        small_run = (mag <= threshold) ? small_run + 1 : 0;

        double tail = mag;
        if (previous != 0.0) {
            const double ratio = mag / std::abs(previous);
            tail = ratio < 1.0 ? mag * ratio / (1.0 - ratio) : mag;
        }
        previous = t.value;

        if (small_run >= 3) {
            const double target = std::max(tol.abs_tol, tol.rel_tol * std::abs(sum) / beta);
            const double tail_out = tail / beta;
            const double inner_out = inner / beta;
            const bool strict = tail_out + inner_out <= target;
            const bool inner_limited = tail_out <= target && inner_out <= tol.rel_tol * abs_sum / beta;
            if (strict || inner_limited) {
                out.value = sum / beta;
                out.error_estimate = tail_out + inner_out;
                out.abs_integral = abs_sum / beta;
                return out;
            }
        }
    }

    out.value = sum / beta;
    out.error_estimate = (inner + std::abs(previous)) / beta;
    out.abs_integral = abs_sum / beta;
    out.converged = false;
    if (out.message.empty()) {
        out.message = "Matsubara sum hit the term cap without converging";
    }
    return out;
}

QuadratureResult matsubara_sum(const Integrand& g, double beta, const Tolerance& tol)
{
    NestedIntegrand wrapped = [&g](double zeta) {
        QuadratureResult r;
        r.value = g(zeta);
        r.evaluations = 1;
        return r;
    };
    return matsubara_sum(wrapped, beta, tol);
}

std::optional<RootBracket> bracket_root(const Integrand& f, double lo, double hi, double rel_tol)
{
    if (!(lo < hi)) {
        throw std::invalid_argument("bracket_root: need lo < hi");
    }
    if (!(rel_tol > 0.0)) {
        throw std::invalid_argument("bracket_root: rel_tol must be > 0");
    }
    double flo = f(lo);
    double fhi = f(hi);
    if (std::isnan(flo) || std::isnan(fhi)) {
        throw IntegrandError("bracket_root: function returned NaN at an endpoint", std::isnan(flo) ? lo : hi);
    }
    if (flo == 0.0) {
        return RootBracket{lo, lo, 0};
    }
    if (fhi == 0.0) {
        return RootBracket{hi, hi, 0};
    }
    if (std::signbit(flo) == std::signbit(fhi)) {
        return std::nullopt;
    }

    RootBracket b{lo, hi, 0};
    while (b.iterations < 2000) {
        const double mid = b.root();
        if (b.width() <= rel_tol * std::abs(mid) || !(mid > b.lo && mid < b.hi)) {
            break;
        }
        const double fm = f(mid);
        if (std::isnan(fm)) {
            throw IntegrandError("bracket_root: function returned NaN", mid);
        }
        ++b.iterations;
        if (fm == 0.0) {
            b.lo = b.hi = mid;
            break;
        }
        if (std::signbit(fm) == std::signbit(flo)) {
            b.lo = mid;
            flo = fm;
        } else {
            b.hi = mid;
        }
    }
    return b;
}

}  // namespace casimir
