#ifndef ULAM_GAPS_HPP
#define ULAM_GAPS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "ulam/sequence.hpp"

namespace ulam {

// min_{1 <= k <= n} a_{k+1}/a_k as an exact reduced fraction.
struct GapRatio {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    double value() const;
    double delta() const; // num/den - 1
};

// Exact minimum of consecutive-term ratios over 1 <= k <= n (compared by
// cross-multiplication).  Needs 2 <= n < size.
GapRatio min_gap_ratio(const UlamSequence& seq, std::size_t n);

struct TailEntry {
    std::uint64_t ell;   // smallest l at which this count is reached
    std::uint64_t count; // #{k <= n : a_k >= a_n / (1+delta)^l}
    std::uint64_t bound; // ell + 1
};

struct TailCheck {
    // Count change points only; between entries the count is constant while
    // the bound grows, so these are exactly the binding instances.
    std::vector<TailEntry> entries;
    bool pass = true;
    std::uint64_t first_violation_ell = 0;
};

// Verifies #( a_k >= a_n/(1+delta)^l ) <= l + 1 for every l until the
// threshold drops below a_1.  Threshold comparisons are exact integer
// arithmetic whenever num^l fits 64 bits (which covers every possible
// equality case) and long-double logs beyond.
TailCheck tail_count_check(const UlamSequence& seq, std::size_t n);

struct BlockingCount {
    std::uint64_t pairs = 0;     // X
    double analytic_bound = 0;   // (2 log 2)/delta + (4/delta) log(10/delta)
};

// X = #{(j,k): j < k <= n, a_n <= a_j + a_k <= (1 + delta/2) a_n} by a
// two-pointer sweep; the upper endpoint is decided exactly via
// 2 den (a_j + a_k) <= (num + den) a_n.
BlockingCount blocking_pairs(const UlamSequence& seq, std::size_t n);

struct GapReport {
    std::size_t n = 0;
    GapRatio ratio;
    double delta = 0;
    double c = 7.0;
    double rhs = 0;                 // c log(n) / n
    bool small_gap_verdict = false; // delta <= rhs
    std::uint64_t blocking = 0;     // X
    std::uint64_t candidate_sums = 0;
    double analytic_x_bound = 0;
    double chain_lower_bound = 0;   // n - (2/delta) log(2/delta) - 1
    TailCheck tail;
};

GapReport gap_report_at(const UlamSequence& seq, std::size_t n, double c);
std::vector<GapReport> gap_report(const UlamSequence& seq,
                                  std::span<const std::size_t> grid, double c);

// powers of 2 and of 10 in [4, max_n], sorted
std::vector<std::size_t> default_gap_grid(std::size_t max_n);

} // namespace ulam

#endif
