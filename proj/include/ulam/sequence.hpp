#ifndef ULAM_SEQUENCE_HPP
#define ULAM_SEQUENCE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ulam {

// How a sequence run is bounded: either a term count N or a value limit V.
struct GenerationConfig {
    enum class Target { Count, Limit };

    std::uint64_t first = 1;
    std::uint64_t second = 2;
    Target target = Target::Count;
    std::uint64_t amount = 0; // N when Count, V when Limit

    static GenerationConfig by_count(std::uint64_t n, std::uint64_t first = 1,
                                     std::uint64_t second = 2);
    static GenerationConfig by_limit(std::uint64_t v, std::uint64_t first = 1,
                                     std::uint64_t second = 2);

    // Throws std::invalid_argument unless 1 <= first < second and the target
    // is reachable (N >= 2, or V >= second).
    void validate() const;
};

// Strictly increasing terms a_1 < a_2 < ...; all index arithmetic in this
// project is 1-based to match the usual a_n notation.
struct UlamSequence {
    std::vector<std::uint64_t> terms;
    GenerationConfig config;

    std::size_t size() const { return terms.size(); }
    std::uint64_t a(std::size_t n) const { return terms[n - 1]; } // 1-based
};

// Number of pairs (i, j), i < j, with terms[i] + terms[j] == x.  Terms must be
// strictly increasing; only distinct-index pairs count (4+4 is not a pair).
std::size_t representation_count(std::uint64_t x, std::span<const std::uint64_t> terms);

// Reference generator: literally re-derives each next term as the smallest
// integer > last with exactly one representation as a sum of two distinct
// earlier terms.  Quadratic; intended for cross-checking the fast sieve at
// modest sizes (<= ~1e5 terms).
UlamSequence generate_oracle(const GenerationConfig& config);

// Bit-parallel sieve.  Maintains bit arrays ONCE/TWICE of representation
// counts over candidate values; appending term t folds in the membership
// array shifted by t (one shift-OR pass), and the next term is the smallest
// x > t with ONCE(x) and not TWICE(x).  Output is identical to
// generate_oracle on the same config.
UlamSequence generate_fast(const GenerationConfig& config);

// First n >= 2 with a_{n+1} <= a_n, if any.
std::optional<std::size_t> first_monotonicity_violation(const UlamSequence& seq);

// First n >= 3 violating a_{n+1} <= a_n + a_{n-2}, if any.
std::optional<std::size_t> first_eggleton_violation(const UlamSequence& seq);

} // namespace ulam

#endif
