#include "raysearch/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace raysearch {

namespace {

// Prefix sums over 1-based conceptual indexing: sums[i] = h_1 + ... + h_i.
std::vector<double> prefix_sums(const std::vector<double>& values) {
    std::vector<double> sums(values.size() + 1, 0.0);
    for (std::size_t i = 0; i < values.size(); ++i) sums[i + 1] = sums[i] + values[i];
    return sums;
}

// next_same[i] (0-based) = smallest 0-based t > i with a[t] == a[i], or
// npos when the label never recurs within the prefix.
std::vector<std::size_t> next_same_label(const std::vector<int>& labels) {
    constexpr auto npos = static_cast<std::size_t>(-1);
    std::vector<std::size_t> next(labels.size(), npos);
    std::map<int, std::size_t> last_seen;
    for (std::size_t i = labels.size(); i-- > 0;) {
        auto it = last_seen.find(labels[i]);
        if (it != last_seen.end()) next[i] = it->second;
        last_seen[labels[i]] = i;
    }
    return next;
}

} // namespace

void validate(const WSequence& seq) {
    if (seq.w < 2) throw std::domain_error("w-sequence: w must be >= 2");
    if (seq.h.empty()) throw std::domain_error("w-sequence: empty prefix");
    if (seq.h.size() != seq.a.size())
        throw std::domain_error("w-sequence: extents and labels differ in length");
    for (std::size_t i = 0; i < seq.h.size(); ++i) {
        if (!std::isfinite(seq.h[i]) || seq.h[i] <= 0.0)
            throw std::domain_error("w-sequence: extents must be finite and positive");
        if (seq.a[i] < 0) throw std::domain_error("w-sequence: labels must be >= 0");
    }
}

bool qualifies_as_prefix(const WSequence& seq) {
    std::map<int, int> counts;
    for (int label : seq.a) ++counts[label];
    int recurring = 0;
    for (const auto& [label, count] : counts)
        if (count >= 2) ++recurring;
    return recurring >= seq.w;
}

void validate(const CyclicSequence& seq) {
    if (seq.w < 2) throw std::domain_error("cyclic sequence: w must be >= 2");
    if (seq.s.empty()) throw std::domain_error("cyclic sequence: empty prefix");
    for (double v : seq.s) {
        if (!std::isfinite(v) || v <= 0.0)
            throw std::domain_error("cyclic sequence: entries must be finite and positive");
    }
}

RatioTable ratio_H(const WSequence& seq) {
    validate(seq);
    const auto sums = prefix_sums(seq.h);
    const auto next = next_same_label(seq.a);

    RatioTable table;
    for (std::size_t i = 0; i < seq.h.size(); ++i) {
        if (next[i] == static_cast<std::size_t>(-1)) {
            table.unresolved.push_back(static_cast<int>(i) + 1);
            continue;
        }
        // 1-based: H_i = (h_1 + ... + h_{i'-1}) / h_i with i' = next[i]+1.
        table.values.emplace_back(static_cast<int>(i) + 1, sums[next[i]] / seq.h[i]);
    }
    return table;
}

std::vector<double> ratio_S(const CyclicSequence& seq) {
    validate(seq);
    const int n = static_cast<int>(seq.s.size());
    if (n < seq.w) throw std::domain_error("ratio_S: prefix shorter than w");
    const auto sums = prefix_sums(seq.s);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n - seq.w + 1));
    for (int i = 1; i + seq.w - 1 <= n; ++i)
        out.push_back(sums[static_cast<std::size_t>(i + seq.w - 1)] /
                      seq.s[static_cast<std::size_t>(i - 1)]);
    return out;
}

CyclicSequence cyclic_convert(const WSequence& seq) {
    validate(seq);
    CyclicSequence out{seq.h, seq.w};
    std::sort(out.s.begin(), out.s.end());
    return out;
}

WitnessResult witness_check(const WSequence& seq, int j) {
    validate(seq);
    const int n = static_cast<int>(seq.h.size());
    const int w = seq.w;
    if (j < 1) throw std::domain_error("witness_check: j must be >= 1");
    if (j + w - 1 > n)
        throw insufficient_horizon_error("witness_check: prefix too short to evaluate S_j");

    const auto sorted = cyclic_convert(seq);
    const auto sums_h = prefix_sums(seq.h);
    const auto sums_s = prefix_sums(sorted.s);
    const auto next = next_same_label(seq.a);

    const double s_j = sorted.s[static_cast<std::size_t>(j - 1)];
    const double big_s = sums_s[static_cast<std::size_t>(j + w - 1)] / s_j;

    const auto ratio_at = [&](int t) { // H_t, 1-based, requires next within prefix
        const std::size_t t0 = static_cast<std::size_t>(t - 1);
        return sums_h[next[t0]] / seq.h[t0];
    };
    const auto resolvable = [&](int t) {
        return next[static_cast<std::size_t>(t - 1)] != static_cast<std::size_t>(-1);
    };
    // The construction guarantees S_j <= H_{j*} in real arithmetic; allow a
    // few ulps of rounding when the two sides tie.
    const auto dominates = [](double lhs, double rhs) { return lhs <= rhs * (1.0 + 1e-12); };

    // Case 1: some extent at index t >= j+w-1 is <= s_j.
    for (int t = j + w - 1; t <= n; ++t) {
        if (seq.h[static_cast<std::size_t>(t - 1)] > s_j) continue;
        if (!resolvable(t)) continue;
        const double h_t = ratio_at(t);
        if (dominates(big_s, h_t)) return WitnessResult{t, big_s, h_t};
    }

    // Case 2: all of them exceed s_j, so the j smallest extents sit below
    // index j+w-1. For each label, its last occurrence at or before j+w-2;
    // at least two of those extents are <= s_j, and one of them recurs no
    // earlier than j+w, which makes its ratio dominate S_j.
    std::map<int, int> last_occurrence; // label -> last 1-based index <= j+w-2
    for (int t = 1; t <= std::min(j + w - 2, n); ++t) last_occurrence[seq.a[static_cast<std::size_t>(t - 1)]] = t;

    int best = 0;
    for (const auto& [label, t] : last_occurrence) {
        if (seq.h[static_cast<std::size_t>(t - 1)] > s_j) continue;
        if (!resolvable(t)) continue;
        if (static_cast<int>(next[static_cast<std::size_t>(t - 1)]) + 1 < j + w) continue;
        if (best == 0 || seq.h[static_cast<std::size_t>(t - 1)] >
                             seq.h[static_cast<std::size_t>(best - 1)])
            best = t;
    }
    if (best != 0) {
        const double h_best = ratio_at(best);
        if (dominates(big_s, h_best)) return WitnessResult{best, big_s, h_best};
    }

    throw insufficient_horizon_error("witness_check: prefix too short to resolve j = " +
                                     std::to_string(j));
}

double cyclic_ratio_target(int w) {
    if (w < 2) throw std::domain_error("cyclic_ratio_target: w must be >= 2");
    return std::pow(w, w) / std::pow(w - 1, w - 1);
}

double limsup_gap(const CyclicSequence& seq, int window) {
    const auto ratios = ratio_S(seq);
    if (window < 1) throw std::domain_error("limsup_gap: window must be >= 1");
    if (static_cast<std::size_t>(window) > ratios.size())
        throw std::domain_error("limsup_gap: window exceeds available ratio count");
    double peak = 0.0;
    for (std::size_t i = ratios.size() - static_cast<std::size_t>(window); i < ratios.size(); ++i)
        peak = std::max(peak, ratios[i]);
    return peak - cyclic_ratio_target(seq.w);
}

double geometric_s_limit(int w, double rate, double tol) {
    if (w < 2) throw std::domain_error("geometric_s_limit: w must be >= 2");
    if (!(rate > 1.0)) throw std::domain_error("geometric_s_limit: rate must be > 1");
    if (!(tol > 0.0)) throw std::domain_error("geometric_s_limit: tol must be > 0");

    // S_i converges from below with remainder 1/((rate-1) rate^(i-1));
    // choose i so that the remainder is a decade below tol.
    const double needed = 1.0 / (0.1 * tol * (rate - 1.0));
    const int depth = 1 + std::max(1, static_cast<int>(std::ceil(std::log(needed) / std::log(rate))));

    double term = 1.0; // s_1 = 1
    double sum = 0.0;
    double s_i = 1.0;
    for (int t = 1; t <= depth + w - 1; ++t) {
        sum += term;
        if (t == depth) s_i = term;
        term *= rate;
    }
    return sum / s_i;
}

} // namespace raysearch
