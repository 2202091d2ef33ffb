#include <doctest.h>

#include <sstream>

#include "fsa/operators.hpp"
#include "fsa/random.hpp"
#include "oracles.hpp"

using namespace fsa;

namespace {

const Alphabet A2(2);

Word w2(std::string_view s) { return parse_word(s, A2); }
Series xi(std::string_view s) { return Series::basis(w2(s)); }

Eigen::MatrixXcd dense(const TruncatedOperator& t) { return Eigen::MatrixXcd(t.matrix()); }

}  // namespace

TEST_CASE("truncation basis") {
    const auto b = TruncationBasis::make(A2, 2);
    CHECK(b->dimension() == 7);
    CHECK(b->index_of(w2("z1z0")) == 5u);
    CHECK_FALSE(b->index_of(w2("z0z0z0")).has_value());
    const Series s = 2.0 * xi("z0") + Complex(0, 1) * xi("z1z1") + xi("z0z0z0");
    CHECK(b->to_series(b->to_vector(s)) == 2.0 * xi("z0") + Complex(0, 1) * xi("z1z1"));
}

TEST_CASE("left and right matrices") {
    const auto b = TruncationBasis::make(A2, 3);
    const auto l = left_matrix(w2("z0"), b);
    CHECK(l.entry(w2("z0"), Word::unit(A2)) == Complex(1.0));
    CHECK(max_abs_entry(left_matrix(Series::unit(A2), b) - TruncatedOperator::identity(b)) == 0.0);
    CHECK(right_matrix(w2("z1"), b).apply(xi("z0")) == xi("z0z1"));
    CHECK(left_matrix(w2("z1"), b).apply(xi("z0")) == xi("z1z0"));

    Rng rng(21);
    for (int i = 0; i < 30; ++i) {
        const Series phi = random_series(rng, A2, 3, 5);
        const Series psi = random_series(rng, A2, 3, 4);
        CHECK(dense(left_matrix(phi, b)).isApprox(oracle::dense_left(phi, b->words()), 0.0));
        if (phi.degree().value_or(0) + psi.degree().value_or(0) <= 3) {
            CHECK(left_matrix(phi, b).apply(psi) == convolve(phi, psi));
        }
        const std::size_t dp = phi.degree().value_or(0);
        const std::size_t dq = psi.degree().value_or(0);
        if (dp + dq <= 3) {
            CHECK(max_deviation_on_subspace(left_matrix(phi, b) * left_matrix(psi, b), left_matrix(convolve(phi, psi), b),
                                            3 - dp - dq) == 0.0);
        }
    }
}

TEST_CASE("Phi_j and Cesaro operators") {
    const auto b = TruncationBasis::make(A2, 4);
    CHECK(max_abs_entry(phi_j_op(left_matrix(w2("z0"), b), -1)) == 0.0);
    CHECK_THROWS_AS(phi_j_op(TruncatedOperator::identity(b), 5), std::invalid_argument);
    CHECK(max_abs_entry(cesaro_op(TruncatedOperator::identity(b), 3) - TruncatedOperator::identity(b)) == 0.0);
    CHECK_THROWS_AS(cesaro_op(TruncatedOperator::identity(b), 0), std::invalid_argument);

    Rng rng(23);
    for (int i = 0; i < 20; ++i) {
        const Series phi = random_series(rng, A2, 4, 6);
        const auto lphi = left_matrix(phi, b);
        for (std::size_t j = 0; j <= 4; ++j) {
            CHECK(max_abs_entry(phi_j_op(lphi, static_cast<long>(j)) - left_matrix(phi_j(phi, j), b)) <= 1e-15);
        }
        for (std::size_t k = 1; k <= 6; ++k) {
            CHECK(max_abs_entry(cesaro_op(lphi, k) - left_matrix(cesaro(phi, k), b)) <= 1e-15);
        }
        const auto t = random_operator(rng, b);
        TruncatedOperator sum = TruncatedOperator::zero(b);
        for (long j = -4; j <= 4; ++j) {
            const auto pj = phi_j_op(t, j);
            CHECK(max_abs_entry(phi_j_op(pj, j) - pj) == 0.0);
            if (j != 0) CHECK(max_abs_entry(phi_j_op(pj, -j)) == 0.0);
            sum = sum + pj;
        }
        CHECK(max_abs_entry(sum - t) <= 1e-15);
    }
}

TEST_CASE("norm estimate against a dense SVD") {
    const auto b = TruncationBasis::make(A2, 3);
    CHECK(norm_estimate(TruncatedOperator::identity(b)) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(norm_estimate(left_matrix(w2("z0z1"), b)) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(norm_estimate(TruncatedOperator::zero(b)) == 0.0);

    SparseMatrix rank_one(static_cast<Eigen::Index>(b->dimension()), static_cast<Eigen::Index>(b->dimension()));
    rank_one.insert(static_cast<Eigen::Index>(*b->index_of(w2("z1z0"))), static_cast<Eigen::Index>(*b->index_of(w2("z0"))))
        = 3.0;
    CHECK(norm_estimate(TruncatedOperator(b, rank_one)) == doctest::Approx(3.0).epsilon(1e-9));

    Rng rng(29);
    for (int i = 0; i < 40; ++i) {
        const auto t = random_operator(rng, b, 0.2 + 0.02 * i);
        const auto est = norm_estimate_detailed(t, 1e-12);
        CHECK(est.iterations <= kPowerIterationCap);
        CHECK(est.value == doctest::Approx(oracle::svd_norm(dense(t))).epsilon(1e-5));
    }
}

TEST_CASE("structural checks") {
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto b = TruncationBasis::make(Alphabet(3), n);
        CHECK(isometry_relations_check(b).passed());
    }
    CHECK_THROWS_AS(isometry_relations_check(TruncationBasis::make(A2, 0)), std::invalid_argument);

    const auto b = TruncationBasis::make(A2, 7);
    for (const Word& u : enumerate_words(A2, 2)) {
        for (const Word& v : enumerate_words(A2, 2)) CHECK(commutant_check(u, v, b));
    }
    CHECK(conjugation_check(w2("z0"), xi("z0"), b));
    CHECK(conjugation_check(w2("z0"), xi("z1"), b));
    Rng rng(31);
    for (int i = 0; i < 50; ++i) {
        const Word w = random_word(rng, A2, 2, 1);
        CHECK(conjugation_check(w, random_series(rng, A2, 3, 5), b));
    }
    CHECK_THROWS_AS(conjugation_check(w2("z0z1"), xi("z0z0z0z0"), b), std::invalid_argument);
}

TEST_CASE("Moebius witness") {
    const Series f = mobius_series(0.5, 3);
    CHECK(f.coefficient(Word::unit(Alphabet(1))) == Complex(0.5));
    CHECK(std::abs(f.coefficient(Word(Alphabet(1), {0})) - Complex(-0.75)) < 1e-15);
    CHECK(std::abs(f.coefficient(Word(Alphabet(1), {0, 0})) - Complex(-0.375)) < 1e-15);
    CHECK(upsilon_norm_witness(0.0, 20) == doctest::Approx(1.0));
    const double r40 = upsilon_norm_witness(0.9, 40);
    const double r120 = upsilon_norm_witness(0.9, 120);
    CHECK(r40 < r120);
    CHECK(r120 <= 2.0 + 1e-9);
    CHECK(r120 < 1.9 + 1e-9);
    CHECK_THROWS_AS(upsilon_norm_witness(1.0, 10), std::invalid_argument);
}

TEST_CASE("csv dump") {
    const auto b = TruncationBasis::make(A2, 1);
    std::ostringstream os;
    write_csv(os, left_matrix(xi("z1"), b));
    CHECK(os.str() == "row,col,re,im\nz1,e,1,0\n");
}
