#include "raysearch/analytic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace raysearch {

double radius_f(int w, int i) {
    if (w < 2) throw std::domain_error("radius_f: w must be >= 2");
    if (i < 0) return 0.0;
    return std::pow(static_cast<double>(w) / (w - 1), i);
}

double det_ratio(int w, int lambda) {
    if (w < 2) throw std::domain_error("det_ratio: w must be >= 2");
    if (lambda < 1 || lambda > w) throw std::domain_error("det_ratio: lambda must be in [1, w]");
    if (lambda == w) return static_cast<double>(w);
    const int wp = w - lambda + 1;
    return lambda + 2.0 * std::pow(wp, wp) / std::pow(wp - 1, wp - 1);
}

double rate_objective(int w, double r) {
    if (w < 2) throw std::domain_error("rate_objective: w must be >= 2");
    if (!(r > 1.0)) throw std::domain_error("rate_objective: r must be > 1");
    return (std::pow(r, w) - 1.0) / ((r - 1.0) * std::log(r));
}

double solve_rw(int w, double tol) {
    if (w < 2) throw std::domain_error("solve_rw: w must be >= 2");
    if (!(tol > 0.0)) throw std::domain_error("solve_rw: tol must be > 0");

    const double lo = 1.0 + 1e-9;
    double hi = 4.0;
    while (hi < 1e9 && rate_objective(w, hi) < rate_objective(w, hi * 0.999)) hi *= 2.0;

    // Golden-section reduction; the objective has a unique interior minimum.
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - gr * (b - a);
    double x2 = a + gr * (b - a);
    double f1 = rate_objective(w, x1);
    double f2 = rate_objective(w, x2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = rate_objective(w, x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = rate_objective(w, x2);
        }
    }
    return 0.5 * (a + b);
}

double c_w(int w, double tol) { return rate_objective(w, solve_rw(w, tol)); }

double rand_single_bound(int w, double tol) {
    if (w < 1) throw std::domain_error("rand_single_bound: w must be >= 1");
    if (w == 1) return 1.0;
    return 1.0 + (2.0 / w) * c_w(w, tol);
}

double rand_multi_bound(int w, int lambda, double tol) {
    if (w < 2) throw std::domain_error("rand_multi_bound: w must be >= 2");
    if (lambda < 1 || lambda > w)
        throw std::domain_error("rand_multi_bound: lambda must be in [1, w]");
    const int wp = w - lambda + 1;
    const double s = (lambda - 1) + std::sqrt(wp * rand_single_bound(wp, tol));
    return s * s / w;
}

double speed_v(int w, int lambda, double tol) {
    if (w < 2) throw std::domain_error("speed_v: w must be >= 2");
    if (lambda < 1 || lambda > w) throw std::domain_error("speed_v: lambda must be in [1, w]");
    const int wp = w - lambda + 1;
    return std::sqrt(wp * rand_single_bound(wp, tol));
}

AnalyticReport analyze(int w, int lambda, double tol) {
    AnalyticReport rep;
    rep.w = w;
    rep.lambda = lambda;
    rep.det_ratio = det_ratio(w, lambda);
    const int wp = w - lambda + 1;
    if (wp >= 2) rep.r_w_prime = solve_rw(wp, tol);
    rep.rand_single = rand_single_bound(wp, tol);
    rep.rand_multi_bound = rand_multi_bound(w, lambda, tol);
    rep.speed_v = speed_v(w, lambda, tol);
    rep.c_w = c_w(w, tol);
    return rep;
}

double GeometricTailSequence::value(std::size_t i) const {
    if (i < prefix.size()) return prefix[i];
    return prefix.back() * std::pow(rate, static_cast<double>(i - prefix.size() + 1));
}

void validate(const GeometricTailSequence& seq, int w) {
    if (w < 2) throw std::domain_error("sequence window w must be >= 2");
    if (seq.prefix.empty()) throw std::domain_error("sequence prefix must be non-empty");
    if (seq.prefix.front() != 1.0) throw std::domain_error("sequence must start at s_0 = 1");
    if (!(seq.rate > 1.0))
        throw std::domain_error("tail rate must be > 1 (sequence must diverge)");
    for (double v : seq.prefix) {
        if (!std::isfinite(v) || v <= 0.0)
            throw std::domain_error("sequence entries must be finite and positive");
    }
    // Beyond the prefix the window condition holds automatically: the tail
    // is strictly increasing geometric.
    for (std::size_t i = 0; i < seq.prefix.size(); ++i) {
        if (!(seq.value(i + static_cast<std::size_t>(w)) > seq.value(i)))
            throw std::domain_error("sequence violates s_{i+w} > s_i at i = " + std::to_string(i));
    }
}

double g_functional(int w, double epsilon, const GeometricTailSequence& seq, double trunc_tol) {
    if (!(epsilon > 0.0)) throw std::domain_error("g_functional: epsilon must be > 0");
    if (!(trunc_tol > 0.0)) throw std::domain_error("g_functional: trunc_tol must be > 0");
    validate(seq, w);

    const double r = seq.rate;
    const std::size_t n = seq.prefix.size();

    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double window = 0.0;
        for (int k = 0; k < w; ++k) window += seq.value(i + static_cast<std::size_t>(k));
        sum += epsilon * window / std::pow(seq.prefix[i], 1.0 + epsilon);
    }

    // From the last prefix entry on, the sequence is purely geometric:
    //   eps * ((r^w - 1)/(r - 1)) * sum_{k>=0} (s r^k)^(-eps)
    // with 1 - r^(-eps) evaluated via expm1 for small eps.
    const double s = seq.prefix.back();
    const double one_minus = -std::expm1(-epsilon * std::log(r));
    if (!(one_minus > 0.0)) throw std::domain_error("g_functional: series does not converge");
    sum += epsilon * ((std::pow(r, w) - 1.0) / (r - 1.0)) * std::pow(s, -epsilon) / one_minus;
    return sum;
}

AmGmBound amgm_chain(double epsilon, std::span<const double> xs) {
    if (!(epsilon > 0.0)) throw std::domain_error("amgm_chain: epsilon must be > 0");
    if (xs.size() < 2) throw std::domain_error("amgm_chain: need at least x_0 and x_1");
    for (double x : xs) {
        if (!std::isfinite(x) || x <= 0.0)
            throw std::domain_error("amgm_chain: inputs must be finite and positive");
    }
    const int m = static_cast<int>(xs.size()) - 1;

    AmGmBound out;
    for (int k = 1; k <= m; ++k)
        out.lhs += xs[static_cast<std::size_t>(k)] /
                   std::pow(xs[static_cast<std::size_t>(k - 1)], 1.0 + epsilon);

    const double pm = std::pow(1.0 + epsilon, m);
    const double pm_minus_1 = std::expm1(m * std::log1p(epsilon));
    const double exponent = epsilon * pm / pm_minus_1;
    const double shrink = std::pow(1.0 / (1.0 + epsilon), m);
    out.rhs = (m / pm) * std::pow(std::pow(xs.back(), shrink) / xs.front(), exponent);
    return out;
}

} // namespace raysearch
