#ifndef ULAM_SIGNAL_HPP
#define ULAM_SIGNAL_HPP

#include <cstdint>
#include <vector>

#include "ulam/sequence.hpp"

namespace ulam {

namespace detail {
// (alpha * m) mod 2*pi in [0, 2*pi), with alpha split into high/low doubles
// and Cody-Waite reduction; per-term phase error stays far below 1e-8 for
// terms up to ~2^27.
double phase_mod_two_pi(double alpha, std::uint64_t m);
} // namespace detail

// S(alpha) = |sum_{n<=N} exp(i alpha a_n)| / N, compensated summation.
// S(0) = 1 exactly; S(2*pi - alpha) = S(alpha); 0 <= S <= 1.
// n_terms = 0 means all terms.
double signal_statistic(const UlamSequence& seq, double alpha, std::size_t n_terms = 0);

struct SignalScanResult {
    double alpha_min = 0;
    double alpha_max = 0;
    std::size_t points = 0;
    std::vector<double> s_values; // S at alpha_min + i * spacing
    double alpha_star = 0;        // refined peak
    double s_star = 0;
    std::size_t n_used = 0;
    bool nyquist_ok = true; // spacing <= 1 / (4 a_N)
    double spacing() const;
    double alpha_at(std::size_t i) const { return alpha_min + spacing() * static_cast<double>(i); }
};

// Evaluates S on the uniform grid (fast baby-step/giant-step evaluation,
// cross-checked against signal_statistic in the tests), then refines the
// best grid point by golden-section search to bracket width 1e-9.
// Requires 0 <= alpha_min < alpha_max <= pi and points >= 2; a grid too
// coarse for a_N only flags nyquist_ok.  threads = 0 picks the hardware
// count; the result does not depend on it.
SignalScanResult scan(const UlamSequence& seq, double alpha_min, double alpha_max,
                      std::size_t points, std::size_t n_terms = 0, unsigned threads = 0);

struct ResidueHistogram {
    double alpha = 0;
    std::vector<std::uint64_t> counts; // equal bins over [0, 2*pi)
    std::size_t total = 0;
};

ResidueHistogram residue_histogram(const UlamSequence& seq, double alpha,
                                   std::size_t bins, std::size_t n_terms = 0);

} // namespace ulam

#endif
