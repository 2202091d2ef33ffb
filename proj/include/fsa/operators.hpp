#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "fsa/series.hpp"
#include "fsa/word.hpp"

namespace fsa {

using SparseMatrix = Eigen::SparseMatrix<Complex>;
using Vector = Eigen::VectorXcd;

// The words of length <= cutoff, in increasing order, with their positions.
class TruncationBasis {
public:
    TruncationBasis(Alphabet alphabet, std::size_t cutoff);

    static std::shared_ptr<const TruncationBasis> make(Alphabet alphabet, std::size_t cutoff) {
        return std::make_shared<const TruncationBasis>(alphabet, cutoff);
    }

    Alphabet alphabet() const noexcept { return alphabet_; }
    std::size_t cutoff() const noexcept { return cutoff_; }
    std::size_t dimension() const noexcept { return words_.size(); }
    const std::vector<Word>& words() const noexcept { return words_; }
    const Word& word(std::size_t i) const { return words_[i]; }
    std::size_t degree(std::size_t i) const { return words_[i].length(); }
    std::optional<std::size_t> index_of(const Word& w) const;

    // Coordinates of phi; terms above the cutoff are dropped.
    Vector to_vector(const Series& phi) const;
    Series to_series(const Vector& x) const;

private:
    Alphabet alphabet_;
    std::size_t cutoff_;
    std::vector<Word> words_;
    std::unordered_map<Word, std::size_t> index_;
};

using BasisPtr = std::shared_ptr<const TruncationBasis>;

// Compression of an operator on l2(F+) to the span of words of length <= N:
// entry (v, u) is <T xi_u, xi_v>.
class TruncatedOperator {
public:
    TruncatedOperator(BasisPtr basis, SparseMatrix matrix);

    static TruncatedOperator zero(BasisPtr basis);
    static TruncatedOperator identity(BasisPtr basis);

    const TruncationBasis& basis() const noexcept { return *basis_; }
    const BasisPtr& basis_ptr() const noexcept { return basis_; }
    const SparseMatrix& matrix() const noexcept { return matrix_; }
    std::size_t dimension() const noexcept { return basis_->dimension(); }

    Complex entry(const Word& row, const Word& col) const;
    TruncatedOperator adjoint() const;
    Vector apply(const Vector& x) const { return matrix_ * x; }
    Series apply(const Series& phi) const;

    friend TruncatedOperator operator*(const TruncatedOperator& a, const TruncatedOperator& b);
    friend TruncatedOperator operator+(const TruncatedOperator& a, const TruncatedOperator& b);
    friend TruncatedOperator operator-(const TruncatedOperator& a, const TruncatedOperator& b);
    friend TruncatedOperator operator*(Complex c, const TruncatedOperator& a);

private:
    BasisPtr basis_;
    SparseMatrix matrix_;
};

// Largest |A(v,u) - B(v,u)| over columns u with |u| <= max_column_degree.
double max_deviation_on_subspace(const TruncatedOperator& a, const TruncatedOperator& b,
                                 std::size_t max_column_degree);
double max_abs_entry(const TruncatedOperator& a);

TruncatedOperator left_matrix(const Series& phi, const BasisPtr& basis);
TruncatedOperator right_matrix(const Series& phi, const BasisPtr& basis);
inline TruncatedOperator left_matrix(const Word& w, const BasisPtr& basis) {
    return left_matrix(Series::basis(w), basis);
}
inline TruncatedOperator right_matrix(const Word& w, const BasisPtr& basis) {
    return right_matrix(Series::basis(w), basis);
}

// Projection onto the words of length exactly k.
TruncatedOperator q_projection(const BasisPtr& basis, std::size_t k);
// Rank-one projection onto C xi_e.
TruncatedOperator pe_projection(const BasisPtr& basis);

// sum_k Q_k T Q_{k-j}: the entries whose row degree exceeds the column degree by j.
// Throws std::invalid_argument when |j| > N.
TruncatedOperator phi_j_op(const TruncatedOperator& t, long j);

// sum_{|j| < k} (1 - |j|/k) Phi_j(T). Throws for k = 0.
TruncatedOperator cesaro_op(const TruncatedOperator& t, std::size_t k);

class NonConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct NormEstimate {
    double value;
    std::size_t iterations;
};

inline constexpr std::size_t kPowerIterationCap = 10000;

// Largest singular value by power iteration on T^*T, started from the
// normalized all-ones vector. Stops when the relative change of the estimate
// falls below tol; throws NonConvergenceError after the iteration cap.
NormEstimate norm_estimate_detailed(const TruncatedOperator& t, double tol = 1e-10);
double norm_estimate(const TruncatedOperator& t, double tol = 1e-10);

// L_u R_v xi_w = R_v L_u xi_w = xi_{uwv} for every |w| <= N - |u| - |v|.
bool commutant_check(const Word& u, const Word& v, const BasisPtr& basis);

struct IsometryReport {
    bool orthogonal_ranges = false;  // L_a^* L_b = delta_ab I below the top degree
    bool range_sum = false;          // sum_a L_a L_a^* = I - P_e below the top degree
    bool vacuum = false;             // <(I - sum_a L_a L_a^*) xi_e, xi_e> = 1
    double max_deviation = 0.0;

    bool passed() const noexcept { return orthogonal_ranges && range_sum && vacuum; }
};

// Requires N >= 1.
IsometryReport isometry_relations_check(const BasisPtr& basis, double tol = kExactTolerance);

// L_w^* L_phi L_w against L_{conjugate_series(w, phi)} on degrees <= N - deg(phi) - 2|w|.
// Throws std::invalid_argument when deg(phi) + 2|w| > N.
bool conjugation_check(const Word& w, const Series& phi, const BasisPtr& basis,
                       double tol = kExactTolerance);

// Taylor coefficients of (c - z)/(1 - c z) up to degree n, as a one-letter series.
Series mobius_series(double c, std::size_t n);

// ||Upsilon(L_f)|| / ||L_f|| for the (N+1)x(N+1) Toeplitz section of the
// Moebius map f; tends to 1 + c as N grows. Requires 0 <= c < 1.
double upsilon_norm_witness(double c, std::size_t n, double tol = 1e-12);

// Rows "row,col,re,im" for every stored nonzero, with a header line.
void write_csv(std::ostream& os, const TruncatedOperator& t);

}  // namespace fsa
