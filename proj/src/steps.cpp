#include "ulam/steps.hpp"

#include "ulam/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ulam {

std::string_view to_string(StepType t) {
    switch (t) {
        case StepType::Eggleton: return "Eggleton";
        case StepType::TypeI: return "TypeI";
        case StepType::TypeII: return "TypeII";
        case StepType::Other: return "Other";
    }
    return "?";
}

namespace {

// Lexicographically smallest (i, j), i < j, with a_i + a_j = x.  The unique
// representation of an Ulam term usually pairs a small early term with a
// late one, so the scan over i terminates after a handful of probes.
StepRecord other_pair(const UlamSequence& seq, std::size_t upto, std::uint64_t x) {
    const auto& t = seq.terms;
    for (std::size_t i = 1; i <= upto; ++i) {
        const std::uint64_t ai = seq.a(i);
        if (2 * ai >= x) break;
        const std::uint64_t want = x - ai;
        const auto it = std::lower_bound(t.begin(), t.begin() + upto, want);
        if (it != t.begin() + upto && *it == want) {
            const auto j = static_cast<std::uint32_t>(it - t.begin()) + 1;
            return {StepType::Other, static_cast<std::uint32_t>(i), j};
        }
    }
    throw DataError("no realizing pair for value " + std::to_string(x) +
                    "; input is not an Ulam sequence");
}

} // namespace

StepTrace classify_steps(const UlamSequence& seq) {
    if (seq.size() < 5) throw std::invalid_argument("classify_steps needs >= 5 terms");
    StepTrace trace;
    trace.first_n = 4;
    trace.steps.reserve(seq.size() - 4);
    for (std::size_t n = 4; n + 1 <= seq.size(); ++n) {
        const std::uint64_t next = seq.a(n + 1);
        const auto un = [&](std::size_t k) { return static_cast<std::uint32_t>(k); };
        if (next == seq.a(n) + seq.a(n - 2))
            trace.steps.push_back({StepType::Eggleton, un(n - 2), un(n)});
        else if (next == seq.a(n) + seq.a(n - 3))
            trace.steps.push_back({StepType::TypeI, un(n - 3), un(n)});
        else if (next == seq.a(n - 1) + seq.a(n - 2))
            trace.steps.push_back({StepType::TypeII, un(n - 2), un(n - 1)});
        else
            trace.steps.push_back(other_pair(seq, n, next));
    }
    return trace;
}

LemmaReport verify_lemmas(const UlamSequence& seq) {
    if (seq.size() < 6) throw std::invalid_argument("verify_lemmas needs >= 6 terms");
    LemmaReport rep;
    bool prev_eggleton = false;
    for (std::size_t n = 4; n + 1 <= seq.size(); ++n) {
        const std::uint64_t next = seq.a(n + 1);
        const std::uint64_t egg = seq.a(n) + seq.a(n - 2);
        const std::uint64_t type1 = seq.a(n) + seq.a(n - 3);
        const std::uint64_t type2 = seq.a(n - 1) + seq.a(n - 2);
        if (next == egg) {
            if (type1 != type2 && rep.eggleton_forces_coincidence.pass)
                rep.eggleton_forces_coincidence = {false, n};
            if (prev_eggleton && rep.no_consecutive_eggleton.pass)
                rep.no_consecutive_eggleton = {false, n};
            prev_eggleton = true;
        } else {
            if (next > std::max(type1, type2) && rep.dominated_by_types.pass)
                rep.dominated_by_types = {false, n};
            prev_eggleton = false;
        }
    }
    // the below-window steps n = 3, 4
    if (seq.size() >= 5 && seq.a(4) == seq.a(3) + seq.a(1) &&
        seq.a(5) == seq.a(4) + seq.a(2))
        rep.early_consecutive_eggleton_note = true;
    return rep;
}

namespace {

// log2(2^x + 2^y)
double log2_add(double x, double y) {
    if (x < y) std::swap(x, y);
    return x + std::log2(1.0 + std::exp2(y - x));
}

} // namespace

MajorantSequence majorant(const StepTrace& trace, const UlamSequence& seq) {
    if (seq.size() < 5) throw std::invalid_argument("majorant needs >= 5 terms");
    if (trace.first_n > 5 || trace.last_n() + 1 < seq.size())
        throw std::invalid_argument("trace does not cover the sequence");

    MajorantSequence b;
    b.log2_values.reserve(seq.size());
    for (std::size_t n = 1; n <= 5; ++n) {
        b.exact.push_back(seq.a(n));
        b.log2_values.push_back(std::log2(static_cast<double>(seq.a(n))));
    }

    bool exact_mode = true;
    for (std::size_t n = 5; n + 1 <= seq.size(); ++n) {
        StepType kind = trace.at(n).type;
        if (kind == StepType::Other) {
            const std::uint64_t next = seq.a(n + 1);
            const bool t1_ok = seq.a(n) + seq.a(n - 3) >= next;
            const bool t2_ok = seq.a(n - 1) + seq.a(n - 2) >= next;
            if (!t1_ok && !t2_ok)
                throw DataError("a_" + std::to_string(n + 1) +
                                " exceeds both Type I and Type II bounds");
            if (t1_ok && t2_ok) {
                // both recursions dominate; take the tighter majorant,
                // deciding in whichever representation is still exact
                if (exact_mode) {
                    std::uint64_t v1 = 0, v2 = 0;
                    const bool o1 = __builtin_add_overflow(b.exact[n - 1], b.exact[n - 4], &v1);
                    const bool o2 = __builtin_add_overflow(b.exact[n - 2], b.exact[n - 3], &v2);
                    if (o1 || o2)
                        kind = (log2_add(b.log2_at(n), b.log2_at(n - 3)) <=
                                log2_add(b.log2_at(n - 1), b.log2_at(n - 2)))
                                   ? StepType::TypeI
                                   : StepType::TypeII;
                    else
                        kind = v1 <= v2 ? StepType::TypeI : StepType::TypeII;
                } else {
                    kind = (log2_add(b.log2_at(n), b.log2_at(n - 3)) <=
                            log2_add(b.log2_at(n - 1), b.log2_at(n - 2)))
                               ? StepType::TypeI
                               : StepType::TypeII;
                }
            } else {
                kind = t1_ok ? StepType::TypeI : StepType::TypeII;
            }
        }

        std::size_t hi = 0, lo = 0; // b_{n+1} = b_hi + b_lo (1-based)
        switch (kind) {
            case StepType::Eggleton: hi = n; lo = n - 2; break;
            case StepType::TypeI: hi = n; lo = n - 3; break;
            case StepType::TypeII: hi = n - 1; lo = n - 2; break;
            case StepType::Other: break; // resolved above
        }

        if (exact_mode) {
            std::uint64_t v = 0;
            if (__builtin_add_overflow(b.exact[hi - 1], b.exact[lo - 1], &v)) {
                exact_mode = false;
            } else {
                b.exact.push_back(v);
                b.log2_values.push_back(std::log2(static_cast<double>(v)));
                continue;
            }
        }
        b.log2_values.push_back(log2_add(b.log2_at(hi), b.log2_at(lo)));
    }

    // domination check a_n <= b_n
    for (std::size_t n = 1; n <= seq.size(); ++n) {
        bool ok;
        if (b.has_exact(n))
            ok = seq.a(n) <= b.exact_at(n);
        else
            ok = std::log2(static_cast<double>(seq.a(n))) <= b.log2_at(n) + 1e-9;
        if (!ok)
            throw DataError("majorant fails domination at n=" + std::to_string(n));
    }
    return b;
}

} // namespace ulam
