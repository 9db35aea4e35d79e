// Exponential-sum detector for the hidden dilation of the sequence.  The
// statistic is the first Fourier coefficient magnitude of the empirical
// residue measure of alpha * a_n mod 2*pi.
//
// Phases are reduced with alpha split into high/low doubles (the high part
// carries 26 bits, so alpha_hi * a_n is exact for a_n < 2^27) and a
// three-part Cody-Waite subtraction of k * 2*pi; each reduced phase is
// accurate to ~1e-15, far inside the 1e-8 per-term budget.

#include "ulam/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace ulam {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct SplitDouble {
    double hi;
    double lo;
};

SplitDouble split(double x) {
    const double c = 134217729.0 * x; // 2^27 + 1
    const double hi = c - (c - x);
    return {hi, x - hi};
}

// 2*pi = A + B + C with A and B carrying 26-bit significands, so k * A and
// k * B are exact for multipliers k below 2^27
struct TwoPiSplit {
    double a, b, c;
};

const TwoPiSplit& two_pi_split() {
    static const TwoPiSplit s = [] {
        const long double tp = 6.283185307179586476925286766559005768L;
        TwoPiSplit out{};
        out.a = split(static_cast<double>(tp)).hi;
        const long double r1 = tp - static_cast<long double>(out.a);
        out.b = split(static_cast<double>(r1)).hi;
        out.c = static_cast<double>(r1 - static_cast<long double>(out.b));
        return out;
    }();
    return s;
}

double reduce_product(double p) {
    if (std::abs(p) < kTwoPi) return p;
    const TwoPiSplit& tp = two_pi_split();
    const double k = std::nearbyint(p / kTwoPi);
    return ((p - k * tp.a) - k * tp.b) - k * tp.c;
}

struct Cis {
    double re;
    double im;
};

} // namespace

namespace detail {

double phase_mod_two_pi(double alpha, std::uint64_t m) {
    const SplitDouble a = split(alpha);
    const double md = static_cast<double>(m);
    double r = reduce_product(a.hi * md) + reduce_product(a.lo * md);
    while (r < 0.0) r += kTwoPi;
    while (r >= kTwoPi) r -= kTwoPi;
    return r;
}

} // namespace detail

namespace {

Cis cis_of(double alpha, std::uint64_t m) {
    const double r = detail::phase_mod_two_pi(alpha, m);
    return {std::cos(r), std::sin(r)};
}

struct KahanSum {
    double s = 0, c = 0;
    void add(double x) {
        const double y = x - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

} // namespace

double signal_statistic(const UlamSequence& seq, double alpha, std::size_t n_terms) {
    const std::size_t n = n_terms == 0 ? seq.size() : std::min(n_terms, seq.size());
    if (n < 1) throw std::invalid_argument("signal statistic needs at least one term");
    KahanSum re, im;
    for (std::size_t k = 1; k <= n; ++k) {
        const Cis z = cis_of(alpha, seq.a(k));
        re.add(z.re);
        im.add(z.im);
    }
    const double nn = static_cast<double>(n);
    return std::sqrt(re.s * re.s + im.s * im.s) / nn;
}

namespace {

// Per-scan context: terms decomposed as m = q * block + r once, so each grid
// point costs two small unit-circle tables plus one complex add per term.
struct GridEvaluator {
    std::vector<std::uint32_t> q, r;
    std::uint32_t block;
    std::uint32_t qmax = 0;
    std::size_t n;

    GridEvaluator(const UlamSequence& seq, std::size_t n_used) : n(n_used) {
        const std::uint64_t top = seq.a(n);
        block = std::max<std::uint32_t>(
            1, static_cast<std::uint32_t>(std::sqrt(static_cast<double>(top)) + 1));
        q.resize(n);
        r.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            const std::uint64_t m = seq.terms[k];
            q[k] = static_cast<std::uint32_t>(m / block);
            r[k] = static_cast<std::uint32_t>(m % block);
            qmax = std::max(qmax, q[k]);
        }
    }

    // fill table[j] = exp(i alpha base j), re-anchored with a full reduction
    // every 32 steps to stop the recurrence drifting
    static void fill_table(std::vector<Cis>& t, double alpha, std::uint64_t base,
                           std::size_t count) {
        t.resize(count);
        const Cis stepz = cis_of(alpha, base);
        for (std::size_t j = 0; j < count; ++j) {
            if (j % 32 == 0) {
                t[j] = cis_of(alpha, base * j);
            } else {
                const Cis& p = t[j - 1];
                t[j] = {p.re * stepz.re - p.im * stepz.im,
                        p.re * stepz.im + p.im * stepz.re};
            }
        }
    }

    double evaluate(double alpha, std::vector<Cis>& giant, std::vector<Cis>& baby) const {
        fill_table(giant, alpha, block, static_cast<std::size_t>(qmax) + 1);
        fill_table(baby, alpha, 1, block);
        KahanSum re, im;
        std::size_t k = 0;
        while (k < n) {
            const std::uint32_t grp = q[k];
            double gre = 0, gim = 0;
            do {
                gre += baby[r[k]].re;
                gim += baby[r[k]].im;
                ++k;
            } while (k < n && q[k] == grp);
            const Cis& g = giant[grp];
            re.add(gre * g.re - gim * g.im);
            im.add(gre * g.im + gim * g.re);
        }
        const double nn = static_cast<double>(n);
        return std::sqrt(re.s * re.s + im.s * im.s) / nn;
    }
};

} // namespace

double SignalScanResult::spacing() const {
    return points < 2 ? 0.0 : (alpha_max - alpha_min) / static_cast<double>(points - 1);
}

SignalScanResult scan(const UlamSequence& seq, double alpha_min, double alpha_max,
                      std::size_t points, std::size_t n_terms, unsigned threads) {
    if (!(alpha_min >= 0.0) || !(alpha_min < alpha_max) ||
        !(alpha_max <= std::numbers::pi + 1e-12))
        throw std::invalid_argument("scan needs 0 <= alpha_min < alpha_max <= pi");
    if (points < 2) throw std::invalid_argument("scan needs at least 2 grid points");
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

    SignalScanResult res;
    res.alpha_min = alpha_min;
    res.alpha_max = alpha_max;
    res.points = points;
    res.n_used = n_terms == 0 ? seq.size() : std::min(n_terms, seq.size());
    if (res.n_used < 1) throw std::invalid_argument("scan needs at least one term");

    const double h = res.spacing();
    res.nyquist_ok = h <= 1.0 / (4.0 * static_cast<double>(seq.a(res.n_used)));
    res.s_values.assign(points, 0.0);

    const GridEvaluator ev(seq, res.n_used);
    auto worker = [&](unsigned tid) {
        std::vector<Cis> giant, baby;
        for (std::size_t i = tid; i < points; i += threads)
            res.s_values[i] = ev.evaluate(alpha_min + h * static_cast<double>(i), giant, baby);
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < points; ++i)
        if (res.s_values[i] > res.s_values[best]) best = i;

    // golden-section refinement around the best grid point
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = std::max(alpha_min, res.alpha_at(best) - h);
    double hi = std::min(alpha_max, res.alpha_at(best) + h);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = signal_statistic(seq, x1, res.n_used);
    double f2 = signal_statistic(seq, x2, res.n_used);
    while (hi - lo > 1e-9) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = signal_statistic(seq, x2, res.n_used);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = signal_statistic(seq, x1, res.n_used);
        }
    }
    res.alpha_star = 0.5 * (lo + hi);
    res.s_star = signal_statistic(seq, res.alpha_star, res.n_used);
    return res;
}

ResidueHistogram residue_histogram(const UlamSequence& seq, double alpha,
                                   std::size_t bins, std::size_t n_terms) {
    if (bins < 1) throw std::invalid_argument("histogram needs at least one bin");
    ResidueHistogram h;
    h.alpha = alpha;
    h.counts.assign(bins, 0);
    h.total = n_terms == 0 ? seq.size() : std::min(n_terms, seq.size());
    for (std::size_t k = 1; k <= h.total; ++k) {
        const double r = detail::phase_mod_two_pi(alpha, seq.a(k));
        auto b = static_cast<std::size_t>(r / kTwoPi * static_cast<double>(bins));
        if (b >= bins) b = bins - 1;
        ++h.counts[b];
    }
    return h;
}

} // namespace ulam
