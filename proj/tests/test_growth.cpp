#include <doctest.h>

#include "ulam/errors.hpp"
#include "ulam/growth.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <cstdint>
#include <map>
#include <random>

using namespace ulam;

namespace {

double svd_norm(const Matrix4u& m) {
    Eigen::JacobiSVD<Eigen::Matrix4d> svd(m.cast<double>());
    return svd.singularValues()(0);
}

double eigen_rho(const Matrix4u& m) {
    Eigen::EigenSolver<Eigen::Matrix4d> es(m.cast<double>());
    double r = 0;
    for (int i = 0; i < 4; ++i) r = std::max(r, std::abs(es.eigenvalues()(i)));
    return r;
}

// root of x^3 - x^2 - 1, the growth rate of the Eggleton recursion
double eggleton_root() {
    long double x = 1.5L;
    for (int i = 0; i < 60; ++i) x -= (x * x * x - x * x - 1) / (3 * x * x - 2 * x);
    return static_cast<double>(x);
}

} // namespace

TEST_SUITE("growth") {

TEST_CASE("step matrices act as their recursions") {
    const Vector4u state{13, 11, 8, 6};
    const Vector4u s3 = step_matrix(3) * state;
    CHECK(s3 == Vector4u{21, 13, 11, 8}); // b_n + b_{n-2}
    const Vector4u s1 = step_matrix(1) * state;
    CHECK(s1 == Vector4u{19, 13, 11, 8}); // b_n + b_{n-3}
    const Vector4u s2 = step_matrix(2) * state;
    CHECK(s2 == Vector4u{19, 13, 11, 8}); // b_{n-1} + b_{n-2}
    CHECK_THROWS_AS(step_matrix(4), std::invalid_argument);
}

TEST_CASE("matrix products") {
    CHECK(matrix_product(Word::parse("1")) == step_matrix(1));
    // inadmissible words still have a well-defined raw product
    const Matrix4u p33 = matrix_product(Word::parse("33"));
    CHECK(p33 == Matrix4u(step_matrix(3) * step_matrix(3)));
    const Matrix4u p31 = matrix_product(Word::parse("31"));
    CHECK(p31.row(0) == (Eigen::Matrix<std::uint64_t, 1, 4>{1, 1, 0, 1}));
    // entries grow like 1.45^L; a few hundred letters must overflow 64 bits
    std::string long_word;
    for (int i = 0; i < 200; ++i) long_word += (i % 2 == 0) ? '3' : '1';
    CHECK_THROWS_AS(matrix_product(Word::parse(long_word)), OverflowError);
}

TEST_CASE("admissibility") {
    CHECK(Word::parse("313").admissible());
    CHECK(!Word::parse("1331").admissible());
    CHECK(Word::parse("31").self_concatenable());
    CHECK(!Word::parse("313").self_concatenable()); // 313|313 has "33"
    CHECK_THROWS_AS(Word::parse("104"), std::invalid_argument);
}

TEST_CASE("admissible word counts match the recurrence") {
    CHECK(admissible_count(1) == 3);
    CHECK(admissible_count(2) == 8);
    CHECK(admissible_count(3) == 22);
    CHECK(admissible_count(4) == 60);
    for (int l = 1; l <= 12; ++l) {
        std::uint64_t seen = 0;
        Word prev;
        for_each_admissible(l, [&](const std::vector<std::uint8_t>& letters) {
            Word w(letters);
            CHECK(w.admissible());
            if (seen > 0) CHECK(prev < w); // lexicographic, no repeats
            prev = std::move(w);
            ++seen;
        });
        CHECK(seen == admissible_count(l));
    }
    // and the closed-form count keeps going where enumeration would not
    CHECK(admissible_count(15) == 3799168);
    CHECK(admissible_count(18) == 77473792);
}

TEST_CASE("operator norms on the identity") {
    const Matrix4u id = Matrix4u::Identity();
    CHECK(operator_norm(id, NormKind::Spectral) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(operator_norm(id, NormKind::RowSum) == 1.0);
    CHECK(operator_norm(id, NormKind::Frobenius) == 2.0);
}

TEST_CASE("spectral norm agrees with an SVD oracle on every short product") {
    for (int l = 1; l <= 6; ++l) {
        for_each_admissible(l, [&](const std::vector<std::uint8_t>& letters) {
            const Matrix4u m = matrix_product(Word(letters));
            const double mine = operator_norm(m, NormKind::Spectral);
            CHECK(mine == doctest::Approx(svd_norm(m)).epsilon(1e-9));
            CHECK(mine <= operator_norm(m, NormKind::Frobenius) + 1e-12);
        });
    }
}

TEST_CASE("norm submultiplicativity on random admissible pairs") {
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<int> len(1, 6), letter(1, 3);
    auto random_word = [&] {
        std::vector<std::uint8_t> l(static_cast<std::size_t>(len(rng)));
        for (auto& c : l)
            do c = static_cast<std::uint8_t>(letter(rng));
            while (false);
        return Word(l);
    };
    int done = 0;
    while (done < 200) {
        Word u = random_word(), v = random_word();
        Word uv;
        uv.letters = u.letters;
        uv.letters.insert(uv.letters.end(), v.letters.begin(), v.letters.end());
        if (!u.admissible() || !v.admissible() || !uv.admissible()) continue;
        ++done;
        const Matrix4u pu = matrix_product(u), pv = matrix_product(v), puv = matrix_product(uv);
        for (NormKind k : {NormKind::Spectral, NormKind::Frobenius, NormKind::RowSum}) {
            CHECK(operator_norm(puv, k) <=
                  operator_norm(pu, k) * operator_norm(pv, k) * (1 + 1e-12));
            CHECK(eigen_rho(puv) <= operator_norm(puv, k) + 1e-9);
        }
    }
}

TEST_CASE("every norm of T3 dominates its spectral radius") {
    const Matrix4u t3 = step_matrix(3);
    const double rho = eggleton_root(); // ~1.46557
    for (NormKind k : {NormKind::Spectral, NormKind::Frobenius, NormKind::RowSum})
        CHECK(operator_norm(t3, k) >= rho - 1e-12);
}

TEST_CASE("spectral radius of the generators") {
    CHECK(spectral_radius(step_matrix(3)) ==
          doctest::Approx(eggleton_root()).epsilon(1e-12));
    // T1: x^4 = x^3 + 1, T2: x^3 = x + 1 (after dropping the zero eigenvalue)
    CHECK(spectral_radius(step_matrix(1)) == doctest::Approx(1.3802775690976141).epsilon(1e-9));
    CHECK(spectral_radius(step_matrix(2)) == doctest::Approx(1.3247179572447460).epsilon(1e-9));
}

TEST_CASE("spectral radius agrees with an eigensolver oracle") {
    for (int l = 1; l <= 6; ++l) {
        for_each_admissible(l, [&](const std::vector<std::uint8_t>& letters) {
            const Matrix4u m = matrix_product(Word(letters));
            CHECK(spectral_radius(m) == doctest::Approx(eigen_rho(m)).epsilon(1e-8));
        });
    }
}

TEST_CASE("gelfand anchors from the periodic words") {
    CHECK(std::sqrt(spectral_radius(matrix_product(Word::parse("31")))) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
    const double v = std::cbrt(spectral_radius(matrix_product(Word::parse("311"))));
    CHECK(std::abs(v - 1.4146) < 5e-4);
}

TEST_CASE("periodic lower bounds") {
    const auto p1 = periodic_lower_bound(1);
    // T3 alone is excluded (33 inadmissible); T1 beats T2
    CHECK(p1.word.digits() == "1");
    CHECK(p1.value == doctest::Approx(spectral_radius(step_matrix(1))).epsilon(1e-12));

    const auto p2 = periodic_lower_bound(2);
    CHECK(p2.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
    CHECK((p2.word.digits() == "13" || p2.word.digits() == "31"));

    const auto p3 = periodic_lower_bound(3);
    CHECK(std::abs(p3.value - 1.4146) < 5e-4);
    // some cyclic arrangement of {3,1,1}
    CHECK(p3.word.length() == 3);
}

TEST_CASE("best_bound at L=1 is the largest single-letter norm") {
    const auto r = best_bound(1, NormKind::Spectral);
    double expect = 0;
    for (int k = 1; k <= 3; ++k)
        expect = std::max(expect, operator_norm(step_matrix(k), NormKind::Spectral));
    CHECK(r.bound == doctest::Approx(expect).epsilon(1e-12));
    CHECK(r.words_examined == 3);
}

TEST_CASE("bound sequence properties over block lengths") {
    std::map<int, double> bb;
    for (int l = 2; l <= 14; ++l) bb[l] = best_bound(l, NormKind::Spectral, 2).bound;
    // concatenation cannot beat the worse of its halves
    for (int l1 = 2; l1 <= 7; ++l1)
        for (int l2 = 2; l2 <= 7; ++l2)
            CHECK(bb[l1 + l2] <= std::max(bb[l1], bb[l2]) + 1e-9);
    for (int l = 2; l <= 7; ++l) CHECK(bb[2 * l] <= bb[l] + 1e-9);
    // lower bounds stay below upper bounds
    for (int p = 1; p <= 6; ++p)
        CHECK(periodic_lower_bound(p).value <= bb[14] + 1e-6);
}

TEST_CASE("pruning does not change the search result") {
    for (int l : {4, 7, 10}) {
        for (NormKind k : {NormKind::Spectral, NormKind::Frobenius, NormKind::RowSum}) {
            const auto a = best_bound(l, k, 1, true);
            const auto b = best_bound(l, k, 1, false);
            CHECK(a.bound == b.bound);
            CHECK(a.argmax.digits() == b.argmax.digits());
            CHECK(b.words_examined == admissible_count(l));
        }
    }
}

TEST_CASE("search result is independent of the thread count") {
    const auto r1 = best_bound(10, NormKind::Spectral, 1);
    const auto r2 = best_bound(10, NormKind::Spectral, 2);
    const auto r4 = best_bound(10, NormKind::Spectral, 4);
    CHECK(r1.bound == r2.bound);
    CHECK(r2.bound == r4.bound);
    CHECK(r1.argmax.digits() == r2.argmax.digits());
    CHECK(r2.argmax.digits() == r4.argmax.digits());
    CHECK(r1.words_examined == r2.words_examined);
    CHECK(r2.words_examined == r4.words_examined);
}

TEST_CASE("growth witnesses on generated data") {
    const auto seq = generate_fast(GenerationConfig::by_count(10000));
    CHECK(growth_check(seq, 1.466, 1).pass);
    CHECK(growth_check(seq, 1.454, 1).pass);
    const auto fail = growth_check(seq, 1.0, 1);
    CHECK(!fail.pass);
    CHECK(fail.first_violation_n == 2); // a_1 = 1 <= 1, a_2 = 2 > 1
}

}
