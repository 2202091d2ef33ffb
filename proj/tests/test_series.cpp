#include <doctest.h>

#include "fsa/random.hpp"
#include "fsa/series.hpp"
#include "oracles.hpp"

using namespace fsa;

namespace {

const Alphabet A2(2);

Word w2(std::string_view s) { return parse_word(s, A2); }
Series xi(std::string_view s) { return Series::basis(w2(s)); }

}  // namespace

TEST_CASE("construction and pruning") {
    CHECK(Series::unit(A2).coefficient(Word::unit(A2)) == Complex(1.0));
    CHECK(xi("z0").size() == 1);
    Series s(A2);
    s.add_term(w2("z0"), 2.0);
    s.add_term(w2("z0"), -2.0);
    CHECK(s.is_zero());
    CHECK_FALSE(Series(A2).degree().has_value());
    CHECK((xi("z0") + xi("z0z1z0")).degree() == 3u);
    CHECK_THROWS_AS(xi("z0") + Series::basis(Word::generator(Alphabet(3), 0)), std::invalid_argument);
}

TEST_CASE("convolution examples") {
    CHECK(convolve(xi("z0"), xi("z1")) == xi("z0z1"));
    CHECK(convolve(xi("z0") + xi("z0z1"), xi("z1")) == xi("z0z1") + xi("z0z1z1"));
    Rng rng(3);
    const Series phi = random_series(rng, A2, 3, 5);
    CHECK(convolve(Series::unit(A2), phi) == phi);
    CHECK(convolve(phi, Series::unit(A2)) == phi);
    CHECK(apply_right(xi("z1"), xi("z0")) == xi("z0z1"));
}

TEST_CASE("convolution matches the double-sum oracle and is associative") {
    Rng rng(5);
    for (int i = 0; i < 300; ++i) {
        const Series a = random_series(rng, Alphabet(3), 3, 5);
        const Series b = random_series(rng, Alphabet(3), 3, 5);
        const Series c = random_series(rng, Alphabet(3), 2, 3);
        CHECK(convolve(a, b) == oracle::convolve(a, b));
        CHECK(approx_equal(convolve(convolve(a, b), c), convolve(a, convolve(b, c)), 0.0));
    }
}

TEST_CASE("adjoint compression") {
    CHECK(adjoint_compress(w2("z0"), xi("z0z1")) == xi("z1"));
    CHECK(adjoint_compress(w2("z0"), xi("z1z0")).is_zero());
    CHECK(adjoint_compress(w2("z0"), 2.0 * xi("z0") + 3.0 * xi("z1")) == 2.0 * Series::unit(A2));
    Rng rng(9);
    for (int i = 0; i < 200; ++i) {
        const Series phi = random_series(rng, A2, 4, 6);
        const Word u = random_word(rng, A2, 2);
        CHECK(adjoint_compress(u, phi) == oracle::adjoint_compress(u, phi, 4));
    }
}

TEST_CASE("conjugate series") {
    CHECK(conjugate_series(w2("z0"), xi("z1")).is_zero());
    CHECK(conjugate_series(w2("z0"), xi("z0")) == xi("z0"));
    CHECK(conjugate_series(w2("z0z1"), xi("z0z1z0z1")) == xi("z0z1z0z1"));
    Rng rng(13);
    for (int i = 0; i < 300; ++i) {
        const Series phi = random_series(rng, A2, 4, 6);
        const Word w = random_word(rng, A2, 3, 1);
        CHECK(conjugate_series(w, phi) == oracle::conjugate(w, phi));
    }
}

TEST_CASE("degree projections and Cesaro means") {
    CHECK(phi_j(3.0 * Series::unit(A2) + xi("z0"), 0) == 3.0 * Series::unit(A2));
    CHECK(phi_j(xi("z0z1"), 2) == xi("z0z1"));
    const Series s = Series::unit(A2) + xi("z0") + xi("z0z0");
    CHECK(cesaro(s, 2) == Series::unit(A2) + 0.5 * xi("z0"));
    CHECK(cesaro(Series::unit(A2), 7) == Series::unit(A2));
    CHECK(cesaro(xi("z0z1z1"), 4) == 0.25 * xi("z0z1z1"));
    CHECK_THROWS_AS(cesaro(s, 0), std::invalid_argument);
}

TEST_CASE("conditional expectation") {
    CHECK(conditional_expectation(xi("z0z1"), {0}).is_zero());
    CHECK(conditional_expectation(xi("z0z0") + xi("z1"), {0}) == xi("z0z0"));
    Rng rng(17);
    for (int i = 0; i < 2000; ++i) {
        const Alphabet a3(3);
        const Series phi = random_series(rng, a3, 3, 4);
        const Series psi = random_series(rng, a3, 3, 4);
        LetterSet letters;
        for (Letter a = 0; a < 3; ++a) {
            if (rng() % 2) letters.insert(a);
        }
        CHECK(conditional_expectation(convolve(phi, psi), letters) ==
              convolve(conditional_expectation(phi, letters), conditional_expectation(psi, letters)));
        CHECK(conditional_expectation(phi, letters_of(phi)) == phi);
    }
}

TEST_CASE("first-letter filter") {
    const Series s = 2.0 * Series::unit(A2) + 3.0 * xi("z0z1") + xi("z1");
    CHECK(upsilon(s, 0) == 3.0 * xi("z0z1"));
    CHECK(upsilon(Series::unit(A2), 1).is_zero());
}

TEST_CASE("norms") {
    CHECK(l2_norm(xi("z0z1")) == doctest::Approx(1.0));
    CHECK(l2_norm(3.0 * xi("z0") + 4.0 * xi("z1")) == doctest::Approx(5.0));
    CHECK(l2_norm(Series(A2)) == 0.0);
    CHECK(l1_norm(3.0 * xi("z0") - 4.0 * xi("z1")) == doctest::Approx(7.0));
}
