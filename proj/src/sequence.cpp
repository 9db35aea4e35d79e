// Ulam sequence generation: a naive re-derivation oracle and a bit-parallel
// sieve.  The sieve keeps three bit arrays indexed by value:
//
//   member(v) : v is a term appended so far
//   once(v)   : v has >= 1 representation as a sum of two distinct terms
//   twice(v)  : v has >= 2 such representations
//
// Appending a term t creates exactly the new sums {a_i + t : a_i < t}, which
// is member << t as a bit pattern.  So per appended term one word-level
// shift-OR pass updates both counts, and the next term is the lowest set bit
// of once & ~twice above t.  Total cost O(N * V / w) for N terms of value
// at most V with w-bit words.

#include "ulam/sequence.hpp"

#include "ulam/errors.hpp"

#include <algorithm>
#include <new>
#include <stdexcept>
#include <string>

namespace ulam {

GenerationConfig GenerationConfig::by_count(std::uint64_t n, std::uint64_t first,
                                            std::uint64_t second) {
    GenerationConfig c;
    c.first = first;
    c.second = second;
    c.target = Target::Count;
    c.amount = n;
    c.validate();
    return c;
}

GenerationConfig GenerationConfig::by_limit(std::uint64_t v, std::uint64_t first,
                                            std::uint64_t second) {
    GenerationConfig c;
    c.first = first;
    c.second = second;
    c.target = Target::Limit;
    c.amount = v;
    c.validate();
    return c;
}

void GenerationConfig::validate() const {
    if (first < 1) throw std::invalid_argument("first term must be >= 1");
    if (first >= second) throw std::invalid_argument("need first < second");
    if (target == Target::Count) {
        if (amount < 2) throw std::invalid_argument("term count must be >= 2");
    } else {
        if (amount < second) throw std::invalid_argument("value limit must be >= second");
    }
}

std::size_t representation_count(std::uint64_t x, std::span<const std::uint64_t> terms) {
    if (terms.size() < 2) return 0;
    std::size_t lo = 0, hi = terms.size() - 1, count = 0;
    while (lo < hi) {
        // terms fit in 64 bits and are < x in any counted pair, so the sum
        // cannot wrap when x does not
        const std::uint64_t a = terms[lo], b = terms[hi];
        if (b >= x) { --hi; continue; }
        const std::uint64_t s = a + b;
        if (s == x) { ++count; ++lo; --hi; }
        else if (s < x) ++lo;
        else --hi;
    }
    return count;
}

UlamSequence generate_oracle(const GenerationConfig& config) {
    config.validate();
    UlamSequence seq;
    seq.config = config;
    auto& t = seq.terms;
    t.reserve(config.target == GenerationConfig::Target::Count ? config.amount : 64);
    t.push_back(config.first);
    if (config.target == GenerationConfig::Target::Limit && config.second > config.amount)
        return seq; // only the first term fits; cannot happen after validate()
    t.push_back(config.second);

    const bool by_count = config.target == GenerationConfig::Target::Count;
    while (by_count ? t.size() < config.amount : true) {
        const std::uint64_t last = t.back(), prev = t[t.size() - 2];
        if (last > UINT64_MAX - prev)
            throw OverflowError("next Ulam term would exceed 64 bits after " +
                                std::to_string(t.size()) + " terms");
        // a_{n-1} + a_n always has a unique representation, so the scan below
        // terminates at or before it
        const std::uint64_t stop = last + prev;
        std::uint64_t x = last + 1;
        for (; x <= stop; ++x)
            if (representation_count(x, t) == 1) break;
        if (x > stop)
            throw DataError("no next term found; input sequence is not Ulam-like");
        if (!by_count && x > config.amount) break;
        t.push_back(x);
    }
    return seq;
}

namespace {

struct BitArray {
    std::vector<std::uint64_t> words;

    explicit BitArray(std::size_t nwords) : words(nwords, 0) {}

    bool test(std::uint64_t bit) const {
        return (words[bit >> 6] >> (bit & 63)) & 1u;
    }
    void set(std::uint64_t bit) { words[bit >> 6] |= std::uint64_t{1} << (bit & 63); }
};

// once |= member << t, twice |= once_old & (member << t), clipped to values
// <= limit.  member only holds bits < t, so destination words above
// (2t - 1) / 64 are untouched.
void fold_in_term(const BitArray& member, std::uint64_t t, std::uint64_t limit,
                  BitArray& once, BitArray& twice) {
    const std::size_t q = static_cast<std::size_t>(t >> 6);
    const unsigned s = static_cast<unsigned>(t & 63);
    const std::uint64_t max_sum = std::min(2 * t - 1, limit);
    const std::size_t wlast = static_cast<std::size_t>(max_sum >> 6);
    const std::uint64_t* __restrict m = member.words.data();
    std::uint64_t* __restrict on = once.words.data();
    std::uint64_t* __restrict tw = twice.words.data();
    if (s == 0) {
        for (std::size_t w = q; w <= wlast; ++w) {
            const std::uint64_t sh = m[w - q];
            tw[w] |= on[w] & sh;
            on[w] |= sh;
        }
    } else {
        {
            const std::uint64_t sh = m[0] << s;
            tw[q] |= on[q] & sh;
            on[q] |= sh;
        }
        // overlapping loads instead of a carried register keep the loop
        // free of cross-iteration dependencies (vectorizable)
        for (std::size_t w = q + 1; w <= wlast; ++w) {
            const std::size_t i = w - q;
            const std::uint64_t sh = (m[i] << s) | (m[i - 1] >> (64 - s));
            tw[w] |= on[w] & sh;
            on[w] |= sh;
        }
    }
}

// One sieve run up to value `limit`, stopping early once max_terms terms are
// found.  Returns the terms.
std::vector<std::uint64_t> sieve_pass(std::uint64_t first, std::uint64_t second,
                                      std::uint64_t limit, std::uint64_t max_terms) {
    const std::size_t nwords = static_cast<std::size_t>(limit / 64 + 1);
    BitArray member(nwords), once(nwords), twice(nwords);

    std::vector<std::uint64_t> terms;
    terms.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(max_terms, limit / 8 + 16)));
    terms.push_back(first);
    member.set(first);

    std::uint64_t t = second;
    while (true) {
        terms.push_back(t);
        if (terms.size() >= max_terms) break;
        fold_in_term(member, t, limit, once, twice);
        member.set(t);

        // smallest x > t with once(x) and not twice(x)
        std::uint64_t next = 0;
        std::size_t w = static_cast<std::size_t>((t + 1) >> 6);
        std::uint64_t mask = ~std::uint64_t{0} << ((t + 1) & 63);
        for (; w < nwords; ++w, mask = ~std::uint64_t{0}) {
            const std::uint64_t cand = (once.words[w] & ~twice.words[w]) & mask;
            if (cand) {
                next = (static_cast<std::uint64_t>(w) << 6) +
                       static_cast<unsigned>(__builtin_ctzll(cand));
                break;
            }
        }
        if (next == 0 || next > limit) break; // limit exhausted
        t = next;
    }
    return terms;
}

} // namespace

UlamSequence generate_fast(const GenerationConfig& config) {
    config.validate();
    UlamSequence seq;
    seq.config = config;

    if (config.target == GenerationConfig::Target::Limit) {
        try {
            seq.terms = sieve_pass(config.first, config.second, config.amount, UINT64_MAX);
        } catch (const std::bad_alloc&) {
            throw ResourceError("bit arrays for value limit " + std::to_string(config.amount) +
                                " do not fit in memory");
        }
        return seq;
    }

    const std::uint64_t n = config.amount;
    if (n == 2) {
        seq.terms = {config.first, config.second};
        return seq;
    }
    // Start from a limit sized for the observed linear growth of Ulam(1,2)
    // and double until the requested count is reached.
    std::uint64_t limit = std::max<std::uint64_t>({1024, config.second + 1, 16 * n});
    while (true) {
        std::vector<std::uint64_t> terms;
        try {
            terms = sieve_pass(config.first, config.second, limit, n);
        } catch (const std::bad_alloc&) {
            throw ResourceError("bit arrays exhausted memory at value limit " +
                                std::to_string(limit) + "; last complete attempt held " +
                                std::to_string(seq.terms.size()) + " terms");
        }
        if (terms.size() >= n) {
            seq.terms = std::move(terms);
            return seq;
        }
        seq.terms = std::move(terms); // progress record for error reporting
        if (limit > UINT64_MAX / 2)
            throw OverflowError("value limit doubled past 64 bits");
        limit *= 2;
    }
}

std::optional<std::size_t> first_monotonicity_violation(const UlamSequence& seq) {
    for (std::size_t n = 1; n + 1 <= seq.size(); ++n)
        if (seq.a(n + 1) <= seq.a(n)) return n;
    return std::nullopt;
}

std::optional<std::size_t> first_eggleton_violation(const UlamSequence& seq) {
    for (std::size_t n = 3; n + 1 <= seq.size(); ++n)
        if (seq.a(n + 1) > seq.a(n) + seq.a(n - 2)) return n;
    return std::nullopt;
}

} // namespace ulam
