// Quantities behind the small-gap bound: the gap defect delta, the
// tail-counting inequality, and the blocking-pair count X.  Boundary cases
// are decided in integer arithmetic; floating point only enters where an
// exact tie is provably impossible and the (1+delta) separation dwarfs the
// rounding error.

#include "ulam/gaps.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ulam {

namespace {

using u128 = unsigned __int128;

// log(num/den) without cancellation
long double log_ratio(std::uint64_t num, std::uint64_t den) {
    return std::log1p(static_cast<long double>(num - den) / static_cast<long double>(den));
}

// sign of a_k * num^l - a_n * den^l.  Exact whenever num^l fits 64 bits;
// beyond that an equality would force num^l | a_n, which is impossible, and
// the log comparison is safe.
int threshold_compare(std::uint64_t ak, std::uint64_t an, std::uint64_t num,
                      std::uint64_t den, std::uint64_t ell) {
    if (ell == 0) return ak < an ? -1 : (ak == an ? 0 : 1);
    std::uint64_t np = 1, dp = 1;
    bool exact = true;
    for (std::uint64_t i = 0; i < ell && exact; ++i)
        exact = !__builtin_mul_overflow(np, num, &np) &&
                !__builtin_mul_overflow(dp, den, &dp);
    if (exact) {
        const u128 lhs = static_cast<u128>(ak) * np;
        const u128 rhs = static_cast<u128>(an) * dp;
        return lhs < rhs ? -1 : (lhs == rhs ? 0 : 1);
    }
    const long double t =
        static_cast<long double>(ell) * log_ratio(num, den) -
        (std::log(static_cast<long double>(an)) - std::log(static_cast<long double>(ak)));
    return t < 0 ? -1 : 1;
}

// smallest l >= 0 with a_k >= a_n / (num/den)^l
std::uint64_t entry_level(std::uint64_t ak, std::uint64_t an, std::uint64_t num,
                          std::uint64_t den) {
    if (ak >= an) return 0;
    const long double step = log_ratio(num, den);
    const long double gap = std::log(static_cast<long double>(an)) -
                            std::log(static_cast<long double>(ak));
    auto ell = static_cast<std::uint64_t>(std::max(0.0L, std::floor(gap / step) - 2.0L));
    while (threshold_compare(ak, an, num, den, ell) < 0) ++ell;
    while (ell > 0 && threshold_compare(ak, an, num, den, ell - 1) >= 0) --ell;
    return ell;
}

} // namespace

double GapRatio::value() const {
    return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
}

double GapRatio::delta() const {
    return static_cast<double>(static_cast<long double>(num - den) / static_cast<long double>(den));
}

GapRatio min_gap_ratio(const UlamSequence& seq, std::size_t n) {
    if (n < 2 || n >= seq.size())
        throw std::invalid_argument("min_gap_ratio needs 2 <= n < size");
    std::uint64_t num = seq.a(2), den = seq.a(1);
    for (std::size_t k = 2; k <= n; ++k) {
        // a_{k+1}/a_k < num/den  <=>  a_{k+1} * den < num * a_k
        const u128 lhs = static_cast<u128>(seq.a(k + 1)) * den;
        const u128 rhs = static_cast<u128>(num) * seq.a(k);
        if (lhs < rhs) {
            num = seq.a(k + 1);
            den = seq.a(k);
        }
    }
    const std::uint64_t g = std::gcd(num, den);
    return {num / g, den / g};
}

TailCheck tail_count_check(const UlamSequence& seq, std::size_t n) {
    if (n < 3 || n >= seq.size())
        throw std::invalid_argument("tail_count_check needs 3 <= n < size");
    const GapRatio ratio = min_gap_ratio(seq, n);
    const std::uint64_t an = seq.a(n), a1 = seq.a(1);

    // largest l with a_n / (1+delta)^l >= a_1
    std::uint64_t lmax = entry_level(a1, an, ratio.num, ratio.den);
    if (threshold_compare(a1, an, ratio.num, ratio.den, lmax) > 0 && lmax > 0) --lmax;

    TailCheck out;
    std::uint64_t count = 0;
    std::uint64_t prev_ell = UINT64_MAX;
    for (std::size_t k = n; k >= 1; --k) {
        const std::uint64_t ell = entry_level(seq.a(k), an, ratio.num, ratio.den);
        ++count;
        if (count > ell + 1 && out.pass) {
            out.pass = false;
            out.first_violation_ell = ell;
        }
        if (ell > lmax) break; // threshold dropped below a_1; range ends
        if (ell == prev_ell)
            out.entries.back().count = count;
        else
            out.entries.push_back({ell, count, ell + 1});
        prev_ell = ell;
        if (k == 1) break;
    }
    return out;
}

BlockingCount blocking_pairs(const UlamSequence& seq, std::size_t n) {
    if (n < 3 || n >= seq.size())
        throw std::invalid_argument("blocking_pairs needs 3 <= n < size");
    const GapRatio ratio = min_gap_ratio(seq, n);
    const std::uint64_t an = seq.a(n);
    // window: a_n <= a_j + a_k and 2 den (a_j + a_k) <= (num + den) a_n
    const u128 cap = static_cast<u128>(ratio.num + ratio.den) * an;
    const u128 two_den = 2 * static_cast<u128>(ratio.den);

    // As k decreases a_k shrinks, so both admissible-j endpoints move up;
    // two monotone pointers give the exact count in O(n).
    BlockingCount out;
    std::size_t lo = 1; // smallest j with a_j + a_k >= a_n
    std::size_t hi = 0; // largest j with the upper constraint, 0 = none yet
    for (std::size_t k = n; k >= 2; --k) {
        const std::uint64_t akv = seq.a(k);
        while (lo <= n && static_cast<u128>(seq.a(lo)) + akv < an) ++lo;
        while (hi < n && two_den * (static_cast<u128>(seq.a(hi + 1)) + akv) <= cap) ++hi;
        if (lo > k - 1) continue;
        const std::size_t top = std::min(hi, k - 1);
        if (top >= lo) out.pairs += top - lo + 1;
    }

    const double delta = ratio.delta();
    out.analytic_bound =
        2.0 * std::log(2.0) / delta + 4.0 / delta * std::log(10.0 / delta);
    return out;
}

GapReport gap_report_at(const UlamSequence& seq, std::size_t n, double c) {
    if (n < 3 || n >= seq.size())
        throw std::invalid_argument("gap report needs 3 <= n < size");
    GapReport rep;
    rep.n = n;
    rep.c = c;
    rep.ratio = min_gap_ratio(seq, n);
    rep.delta = rep.ratio.delta();
    rep.rhs = c * std::log(static_cast<double>(n)) / static_cast<double>(n);
    rep.small_gap_verdict = rep.delta <= rep.rhs;
    const BlockingCount bc = blocking_pairs(seq, n);
    rep.blocking = bc.pairs;
    rep.analytic_x_bound = bc.analytic_bound;
    // candidate sums a_n + a_k with k < n staying within (1 + delta/2) a_n,
    // exactly: 2 den a_k <= (num - den) a_n
    const u128 cand_cap = static_cast<u128>(rep.ratio.num - rep.ratio.den) * seq.a(n);
    std::uint64_t cand = 0;
    for (std::size_t k = 1; k < n; ++k) {
        if (2 * static_cast<u128>(rep.ratio.den) * seq.a(k) <= cand_cap) ++cand;
        else break; // terms increase
    }
    rep.candidate_sums = cand;
    rep.chain_lower_bound = static_cast<double>(n) -
                            (2.0 / rep.delta) * std::log(2.0 / rep.delta) - 1.0;
    rep.tail = tail_count_check(seq, n);
    return rep;
}

std::vector<GapReport> gap_report(const UlamSequence& seq,
                                  std::span<const std::size_t> grid, double c) {
    std::vector<GapReport> out;
    out.reserve(grid.size());
    for (std::size_t n : grid) out.push_back(gap_report_at(seq, n, c));
    return out;
}

std::vector<std::size_t> default_gap_grid(std::size_t max_n) {
    std::vector<std::size_t> g;
    for (std::size_t p = 4; p <= max_n; p *= 2) g.push_back(p);
    for (std::size_t p = 10; p <= max_n; p *= 10) g.push_back(p);
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

} // namespace ulam
