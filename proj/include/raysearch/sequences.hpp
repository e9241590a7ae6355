#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

namespace raysearch {

/// Thrown when a finite prefix is too short to resolve an asymptotic
/// construction (the honest outcome, not a property failure).
class insufficient_horizon_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A finite prefix of a labeled extent sequence {(h_i, a_i), i >= 1}:
/// h_i > 0 is a searched extent, a_i the label of the path it was searched
/// on. NOTE: this module is 1-based throughout (entries are stored 0-based
/// internally; all indices in results are 1-based).
struct WSequence {
    std::vector<double> h;
    std::vector<int> a;
    int w = 2;
};

void validate(const WSequence& seq);

/// True when at least w distinct labels occur twice or more in the prefix,
/// the finite stand-in for "at least w labels recur forever".
bool qualifies_as_prefix(const WSequence& seq);

/// A finite prefix of a cyclic sequence {s_i, i >= 1} (labels implied
/// a_i = i mod w). 1-based like WSequence.
struct CyclicSequence {
    std::vector<double> s;
    int w = 2;
};

void validate(const CyclicSequence& seq);

struct RatioTable {
    /// (i, H_i) for every 1-based i whose next same-label index lies within
    /// the prefix.
    std::vector<std::pair<int, double>> values;
    /// Indices whose ratio is undefined within the prefix.
    std::vector<int> unresolved;
};

/// H_i = (h_1 + ... + h_{i'-1}) / h_i with i' the smallest index > i
/// carrying the same label as i.
RatioTable ratio_H(const WSequence& seq);

/// S_i = (s_1 + ... + s_{i+w-1}) / s_i for i = 1 .. N-w+1.
std::vector<double> ratio_S(const CyclicSequence& seq);

/// Sorts the extents ascending; the sorted prefix dominates the original
/// prefix sums from below (s_1+...+s_i <= h_1+...+h_i).
CyclicSequence cyclic_convert(const WSequence& seq);

struct WitnessResult {
    int j_star = 0;
    double s_j = 0.0;
    double h_j_star = 0.0;
};

/// Produces a 1-based witness index j* with S_j <= H_{j*}, where S is
/// taken over the sorted conversion of `seq` and H over `seq` itself.
/// Construction: if some index t >= j+w-1 carries an extent <= s_j, use the
/// first such t whose label recurs in the prefix; otherwise take, among the
/// last occurrences (up to index j+w-2) of each label, one with extent
/// <= s_j whose label recurs at an index >= j+w. Throws
/// insufficient_horizon_error when the prefix cannot resolve either case.
WitnessResult witness_check(const WSequence& seq, int j);

/// w^w / (w-1)^(w-1): the cyclic-sequence ratio every strategy must meet.
double cyclic_ratio_target(int w);

/// Finite-horizon limsup proxy: (max S_i over the trailing `window` valid
/// indices) minus cyclic_ratio_target(w).
double limsup_gap(const CyclicSequence& seq, int window);

/// S_i of the pure geometric cyclic sequence s_i = rate^(i-1), evaluated by
/// direct summation at a depth where the remaining change is below tol.
double geometric_s_limit(int w, double rate, double tol = 1e-7);

} // namespace raysearch
