// Constrained products of the step matrices T1, T2, T3.  The growth constant
// of the majorant recursion is bounded above by
//
//     max over admissible words w of length L of  ||T_{w_1} ... T_{w_L}||^(1/L)
//
// for any submultiplicative norm and any L, and bounded below by
// rho(W)^(1/|W|) for any admissible self-concatenable word W.  best_bound
// runs the max by depth-first search over the no-"33" tree; the lower bound
// enumerates short periodic words.

#include "ulam/growth.hpp"

#include "ulam/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

namespace ulam {

Matrix4u step_matrix(int kind) {
    Matrix4u m = Matrix4u::Zero();
    switch (kind) {
        case 1: m(0, 0) = 1; m(0, 3) = 1; break; // b_n + b_{n-3}
        case 2: m(0, 1) = 1; m(0, 2) = 1; break; // b_{n-1} + b_{n-2}
        case 3: m(0, 0) = 1; m(0, 2) = 1; break; // b_n + b_{n-2}
        default: throw std::invalid_argument("step matrix kind must be 1, 2 or 3");
    }
    m(1, 0) = 1;
    m(2, 1) = 1;
    m(3, 2) = 1;
    return m;
}

Word Word::parse(const std::string& digits) {
    Word w;
    w.letters.reserve(digits.size());
    for (char c : digits) {
        if (c < '1' || c > '3') throw std::invalid_argument("word digits must be 1..3");
        w.letters.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return w;
}

bool Word::admissible() const {
    for (std::size_t p = 1; p < letters.size(); ++p)
        if (letters[p] == 3 && letters[p - 1] == 3) return false;
    return true;
}

bool Word::self_concatenable() const {
    if (!admissible()) return false;
    return letters.empty() || !(letters.front() == 3 && letters.back() == 3);
}

std::string Word::digits() const {
    std::string s;
    s.reserve(letters.size());
    for (auto l : letters) s.push_back(static_cast<char>('0' + l));
    return s;
}

namespace {

// c = a * b with per-entry overflow detection
Matrix4u checked_multiply(const Matrix4u& a, const Matrix4u& b) {
    Matrix4u c;
    for (int r = 0; r < 4; ++r) {
        for (int col = 0; col < 4; ++col) {
            std::uint64_t acc = 0;
            for (int k = 0; k < 4; ++k) {
                std::uint64_t prod = 0;
                if (__builtin_mul_overflow(a(r, k), b(k, col), &prod) ||
                    __builtin_add_overflow(acc, prod, &acc))
                    throw OverflowError("matrix product entry exceeds 64 bits");
            }
            c(r, col) = acc;
        }
    }
    return c;
}

const std::array<Matrix4u, 3>& generators() {
    static const std::array<Matrix4u, 3> g = {step_matrix(1), step_matrix(2),
                                              step_matrix(3)};
    return g;
}

double spectral_norm(const Eigen::Matrix4d& m) {
    const Eigen::Matrix4d s = m.transpose() * m;
    Eigen::Vector4d v = Eigen::Vector4d::Ones();
    v /= v.norm();
    double lambda = 0;
    for (int it = 0; it < 10000; ++it) {
        const Eigen::Vector4d w = s * v;
        const double next = v.dot(w);
        const double wn = w.norm();
        if (wn == 0.0) return 0.0;
        v = w / wn;
        if (it > 0 && std::abs(next - lambda) <= 1e-12 * std::abs(next))
            return std::sqrt(next);
        lambda = next;
    }
    throw ConvergenceError("power iteration did not converge in 1e4 steps",
                           std::sqrt(lambda));
}

} // namespace

Matrix4u matrix_product(const Word& word) {
    if (word.letters.empty()) throw std::invalid_argument("empty word");
    Matrix4u p = generators()[word.letters[0] - 1];
    for (std::size_t i = 1; i < word.letters.size(); ++i)
        p = checked_multiply(p, generators()[word.letters[i] - 1]);
    return p;
}

std::string_view to_string(NormKind k) {
    switch (k) {
        case NormKind::Spectral: return "spectral";
        case NormKind::Frobenius: return "frobenius";
        case NormKind::RowSum: return "rowsum";
    }
    return "?";
}

double operator_norm(const Matrix4u& m, NormKind kind) {
    switch (kind) {
        case NormKind::Spectral:
            return spectral_norm(m.cast<double>());
        case NormKind::Frobenius: {
            double sq = 0;
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) {
                    const double e = static_cast<double>(m(r, c));
                    sq += e * e;
                }
            return std::sqrt(sq);
        }
        case NormKind::RowSum: {
            std::uint64_t best = 0;
            for (int r = 0; r < 4; ++r) {
                std::uint64_t s = 0;
                for (int c = 0; c < 4; ++c) s += m(r, c);
                best = std::max(best, s);
            }
            return static_cast<double>(best);
        }
    }
    throw std::invalid_argument("unknown norm kind");
}

namespace {

using int128 = __int128;

// Monic characteristic polynomial x^4 + c1 x^3 + c2 x^2 + c3 x + c4 of a
// 4x4 integer matrix, exact (Faddeev-LeVerrier; each trace division is
// exact over the integers).
std::array<int128, 4> characteristic_polynomial(const Matrix4u& m) {
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            if (m(r, c) > (std::uint64_t{1} << 30))
                throw OverflowError("characteristic polynomial needs entries < 2^30");

    int128 a[4][4];
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) a[r][c] = static_cast<int128>(m(r, c));

    std::array<int128, 4> coef{}; // c1..c4
    int128 mk[4][4];
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) mk[r][c] = a[r][c];

    for (int k = 1; k <= 4; ++k) {
        int128 tr = 0;
        for (int r = 0; r < 4; ++r) tr += mk[r][r];
        coef[static_cast<std::size_t>(k - 1)] = -tr / k; // exact
        if (k == 4) break;
        // mk <- a * (mk + c_k I)
        int128 tmp[4][4];
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                tmp[r][c] = mk[r][c] + (r == c ? coef[static_cast<std::size_t>(k - 1)] : 0);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) {
                int128 s = 0;
                for (int j = 0; j < 4; ++j) s += a[r][j] * tmp[j][c];
                mk[r][c] = s;
            }
    }
    return coef;
}

double eval_poly(const std::array<double, 4>& c, double x) {
    return (((x + c[0]) * x + c[1]) * x + c[2]) * x + c[3];
}

double eval_poly_deriv(const std::array<double, 4>& c, double x) {
    return ((4 * x + 3 * c[0]) * x + 2 * c[1]) * x + c[2];
}

// Largest real root of the monic quartic.  For a non-negative matrix the
// Perron root dominates every eigenvalue modulus, so p, p', p'' are all
// positive to its right and Newton from above descends monotonically; a
// bisection bracket takes over if rounding ever pushes an iterate past the
// root.
double largest_real_root(const std::array<int128, 4>& icoef) {
    std::array<double, 4> c;
    double maxc = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        c[i] = static_cast<double>(icoef[i]);
        maxc = std::max(maxc, std::abs(c[i]));
    }
    double x = maxc + 2.0; // beyond the Cauchy bound
    for (int it = 0; it < 500; ++it) {
        const double p = eval_poly(c, x);
        if (p < 0.0) {
            // overshot: bisect the sign change [x, hi]
            double lo = x, hi = x;
            do hi = hi == 0.0 ? 1.0 : hi * (hi > 0 ? 1.0 + 1e-9 : 1.0 - 1e-9) + 1e-12;
            while (eval_poly(c, hi) < 0.0);
            for (int b = 0; b < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++b) {
                const double mid = 0.5 * (lo + hi);
                if (eval_poly(c, mid) < 0.0) lo = mid; else hi = mid;
            }
            return 0.5 * (lo + hi);
        }
        const double d = eval_poly_deriv(c, x);
        if (p == 0.0 || d <= 0.0) return x;
        const double nx = x - p / d;
        if (!(nx < x) || std::abs(x - nx) <= 1e-15 * std::max(1.0, std::abs(x)))
            return nx < x ? nx : x;
        x = nx;
    }
    return x;
}

// log2 ||M^64|| without overflow: six scaled squarings in doubles.
double log2_norm_pow64(const Matrix4u& m) {
    Eigen::Matrix4d a = m.cast<double>();
    double log2_scale = 0;
    for (int i = 0; i < 6; ++i) {
        a = (a * a).eval();
        const double mx = a.cwiseAbs().maxCoeff();
        if (mx == 0.0) return -4096.0; // nilpotent
        a /= mx;
        log2_scale = 2 * log2_scale + std::log2(mx);
    }
    return std::log2(spectral_norm(a)) + log2_scale;
}

} // namespace

double spectral_radius(const Matrix4u& m) {
    const double rho = largest_real_root(characteristic_polynomial(m));
    // Gelfand cross-check: ||M^64||^(1/64) can never fall below rho, and the
    // transient excess at k = 64 stays within a few percent for 4x4
    // non-negative matrices, so a wrong root is caught either way.
    const double gelfand = std::exp2(log2_norm_pow64(m) / 64.0);
    if (rho > gelfand * (1.0 + 1e-9) || gelfand - rho > 0.05 * std::max(1.0, rho))
        throw ConvergenceError("spectral radius disagrees with ||M^64||^(1/64)", rho);
    return rho;
}

std::uint64_t admissible_count(int length) {
    if (length < 1) throw std::invalid_argument("length must be >= 1");
    std::uint64_t prev = 3, cur = 8; // t(1), t(2)
    if (length == 1) return prev;
    for (int l = 3; l <= length; ++l) {
        const std::uint64_t next = 2 * (cur + prev);
        prev = cur;
        cur = next;
    }
    return cur;
}

std::vector<Word> enumerate_admissible(int length) {
    if (length < 1 || length > 12)
        throw std::invalid_argument("enumerate_admissible materializes only L <= 12");
    std::vector<Word> out;
    out.reserve(admissible_count(length));
    for_each_admissible(length, [&](const std::vector<std::uint8_t>& letters) {
        out.emplace_back(letters);
    });
    return out;
}

namespace {

struct SearchResult {
    double best = 0;                                     // best ||P||^(1/L)
    std::vector<std::pair<double, std::string>> nearby;  // within tie window
    std::uint64_t examined = 0;
};

constexpr double kTieWindow = 1e-9;

// DFS below a fixed prefix.  `prods[d]` is the left product of the first d
// letters.  Pruning compares an upper bound on any completion against the
// subtree's own best-so-far; the extra 2e-9 slack keeps every potential
// argmax under the global tie window alive.
class SubtreeSearch {
  public:
    SubtreeSearch(int length, NormKind kind, bool prune, double seed)
        : length_(length), kind_(kind), prune_(prune) {
        letter_bound_ = 0;
        for (int k = 1; k <= 3; ++k)
            letter_bound_ = std::max(letter_bound_, operator_norm(step_matrix(k), kind_));
        res_.best = seed;
    }

    SearchResult run(const std::vector<std::uint8_t>& prefix) {
        prods_.resize(static_cast<std::size_t>(length_) + 1);
        prods_[0] = Matrix4u::Identity();
        letters_.assign(prefix.begin(), prefix.end());
        for (std::size_t d = 0; d < prefix.size(); ++d)
            prods_[d + 1] = checked_multiply(prods_[d], generators()[prefix[d] - 1]);
        descend(static_cast<int>(prefix.size()));
        return std::move(res_);
    }

  private:
    void descend(int depth) {
        if (depth == length_) {
            evaluate();
            return;
        }
        if (prune_ && depth > 0) {
            // frobenius dominates the spectral norm; row-sum bounds itself
            const double here = kind_ == NormKind::RowSum
                                    ? operator_norm(prods_[static_cast<std::size_t>(depth)], NormKind::RowSum)
                                    : operator_norm(prods_[static_cast<std::size_t>(depth)], NormKind::Frobenius);
            const double cap = std::log2(here) + (length_ - depth) * std::log2(letter_bound_);
            const double floor_norm = std::max(res_.best - 2e-9, 1e-300);
            if (cap < length_ * std::log2(floor_norm)) return;
        }
        for (std::uint8_t k = 1; k <= 3; ++k) {
            if (k == 3 && depth > 0 && letters_[static_cast<std::size_t>(depth) - 1] == 3)
                continue;
            letters_.resize(static_cast<std::size_t>(depth) + 1);
            letters_[static_cast<std::size_t>(depth)] = k;
            prods_[static_cast<std::size_t>(depth) + 1] =
                checked_multiply(prods_[static_cast<std::size_t>(depth)], generators()[k - 1]);
            descend(depth + 1);
        }
    }

    void evaluate() {
        ++res_.examined;
        const double nrm = operator_norm(prods_[static_cast<std::size_t>(length_)], kind_);
        const double val = std::pow(nrm, 1.0 / length_);
        if (val > res_.best) {
            res_.best = val;
            std::erase_if(res_.nearby,
                          [&](const auto& c) { return c.first < res_.best - kTieWindow; });
        }
        if (val >= res_.best - kTieWindow) {
            std::string w(letters_.begin(), letters_.end());
            for (auto& ch : w) ch = static_cast<char>('0' + ch);
            res_.nearby.emplace_back(val, std::move(w));
        }
    }

    int length_;
    NormKind kind_;
    bool prune_;
    double letter_bound_ = 0;
    std::vector<Matrix4u> prods_;
    std::vector<std::uint8_t> letters_;
    SearchResult res_;
};

} // namespace

BoundResult best_bound(int length, NormKind kind, unsigned threads, bool prune) {
    if (length < 1 || length > 18)
        throw std::invalid_argument("best_bound supports 1 <= L <= 18");
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

    // deterministic seed: the alternating word 3131... is near-extremal
    std::vector<std::uint8_t> seed_letters;
    for (int i = 0; i < length; ++i)
        seed_letters.push_back(i % 2 == 0 ? std::uint8_t{3} : std::uint8_t{1});
    const double seed =
        std::pow(operator_norm(matrix_product(Word(seed_letters)), kind), 1.0 / length);

    // one subtree per admissible prefix of length min(2, L)
    std::vector<std::vector<std::uint8_t>> roots;
    const int plen = std::min(2, length);
    for_each_admissible(plen, [&](const std::vector<std::uint8_t>& p) { roots.push_back(p); });

    std::vector<SearchResult> results(roots.size());
    auto work = [&](unsigned tid) {
        for (std::size_t r = tid; r < roots.size(); r += threads) {
            SubtreeSearch s(length, kind, prune, seed);
            results[r] = s.run(roots[r]);
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }

    BoundResult out;
    out.length = length;
    out.kind = kind;
    for (const auto& r : results) {
        out.bound = std::max(out.bound, r.best);
        out.words_examined += r.examined;
    }
    std::string best_word;
    for (const auto& r : results)
        for (const auto& [val, w] : r.nearby)
            if (val >= out.bound - kTieWindow && (best_word.empty() || w < best_word))
                best_word = w;
    out.argmax = Word::parse(best_word);
    return out;
}

SpectralEstimate periodic_lower_bound(int max_period) {
    if (max_period < 1 || max_period > 10)
        throw std::invalid_argument("periodic_lower_bound supports periods 1..10");
    SpectralEstimate best;
    for (int len = 1; len <= max_period; ++len) {
        for_each_admissible(len, [&](const std::vector<std::uint8_t>& letters) {
            Word w(letters);
            if (!w.self_concatenable()) return;
            const double val = std::pow(spectral_radius(matrix_product(w)), 1.0 / len);
            if (val > best.value) {
                best.value = val;
                best.word = std::move(w);
            }
        });
    }
    return best;
}

GrowthVerdict growth_check(const UlamSequence& seq, double base, std::size_t start) {
    if (!(base >= 1.0)) throw std::invalid_argument("growth base must be >= 1");
    const double log2_base = std::log2(base);
    GrowthVerdict v;
    for (std::size_t n = std::max<std::size_t>(1, start); n <= seq.size(); ++n) {
        ++v.checked;
        if (std::log2(static_cast<double>(seq.a(n))) > static_cast<double>(n) * log2_base) {
            v.pass = false;
            v.first_violation_n = n;
            break;
        }
    }
    return v;
}

} // namespace ulam
