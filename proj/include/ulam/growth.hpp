#ifndef ULAM_GROWTH_HPP
#define ULAM_GROWTH_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

#include "ulam/sequence.hpp"

namespace ulam {

// 4x4 step matrices acting on the state (b_n, b_{n-1}, b_{n-2}, b_{n-3}).
using Matrix4u = Eigen::Matrix<std::uint64_t, 4, 4>;
using Vector4u = Eigen::Matrix<std::uint64_t, 4, 1>;

// Generator k in {1, 2, 3}:
//   T1 (Type I)   : b_{n+1} = b_n     + b_{n-3}
//   T2 (Type II)  : b_{n+1} = b_{n-1} + b_{n-2}
//   T3 (Eggleton) : b_{n+1} = b_n     + b_{n-2}
// Rows 2-4 shift the state window down by one.
Matrix4u step_matrix(int kind);

// A product word over {1,2,3}; letter at position p is the p-th factor from
// the left in T_{k_1} T_{k_2} ... T_{k_L}.  Admissible words avoid the
// factor "33" (Eggleton cannot repeat).
struct Word {
    std::vector<std::uint8_t> letters;

    Word() = default;
    explicit Word(std::vector<std::uint8_t> l) : letters(std::move(l)) {}
    static Word parse(const std::string& digits); // e.g. "313"

    std::size_t length() const { return letters.size(); }
    bool admissible() const;
    // admissible and WW admissible too (not both first and last letter 3)
    bool self_concatenable() const;
    std::string digits() const;

    auto operator<=>(const Word&) const = default;
};

// Ordered product of the word's step matrices, exact in 64 bits.
// Throws OverflowError if an entry would wrap.
Matrix4u matrix_product(const Word& word);

enum class NormKind { Spectral, Frobenius, RowSum };

std::string_view to_string(NormKind k);

// Spectral norm is the largest singular value, obtained by power iteration
// on M^T M (all-ones start vector, relative tolerance 1e-12, cap 1e4
// iterations; throws ConvergenceError carrying the last estimate at the
// cap).  Frobenius and row-sum are exact.  All three are submultiplicative.
double operator_norm(const Matrix4u& m, NormKind kind);

// Largest eigenvalue modulus of a non-negative matrix (its Perron root).
// Exact integer characteristic polynomial via the Faddeev-LeVerrier
// recurrence, then the largest real root by safeguarded Newton/bisection to
// 1e-12, cross-checked against ||M^64||^(1/64).
double spectral_radius(const Matrix4u& m);

// Number of admissible words of length L: t(L) = 2 t(L-1) + 2 t(L-2) with
// t(1) = 3, t(2) = 8.
std::uint64_t admissible_count(int length);

// Visit every admissible word of the given length in lexicographic order.
template <class F>
void for_each_admissible(int length, F&& visit) {
    std::vector<std::uint8_t> letters(static_cast<std::size_t>(length));
    auto rec = [&](auto&& self, int depth) -> void {
        if (depth == length) {
            visit(const_cast<const std::vector<std::uint8_t>&>(letters));
            return;
        }
        for (std::uint8_t k = 1; k <= 3; ++k) {
            if (k == 3 && depth > 0 && letters[static_cast<std::size_t>(depth) - 1] == 3)
                continue;
            letters[static_cast<std::size_t>(depth)] = k;
            self(self, depth + 1);
        }
    };
    if (length > 0) rec(rec, 0);
}

std::vector<Word> enumerate_admissible(int length); // materialized; L <= 12

struct BoundResult {
    int length = 0;
    NormKind kind = NormKind::Spectral;
    double bound = 0;              // max ||product||^(1/L)
    Word argmax;                   // lexicographically smallest within 1e-9 of the max
    std::uint64_t words_examined = 0;
};

// DFS over the admissibility tree with incremental left products.  Result
// (bound, argmax, words_examined) is identical for any thread count; the
// optional prune never discards a word within 1e-9 of the maximum.
BoundResult best_bound(int length, NormKind kind, unsigned threads = 1, bool prune = true);

struct SpectralEstimate {
    Word word;
    double value = 0; // rho(product)^(1/|word|)
    // how the radius was computed; the exact route is the default, power
    // iteration only backs the internal cross-check
    std::string_view method = "characteristic-polynomial";
};

// Best Gelfand-style lower bound over admissible self-concatenable words of
// length <= max_period (<= 10).
SpectralEstimate periodic_lower_bound(int max_period);

struct GrowthVerdict {
    bool pass = true;
    std::size_t first_violation_n = 0;
    std::size_t checked = 0;
};

// Checks a_n <= base^n for all start <= n <= size, in log space.
GrowthVerdict growth_check(const UlamSequence& seq, double base, std::size_t start);

} // namespace ulam

#endif
