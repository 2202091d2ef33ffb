#include "fsa/operators.hpp"

#include <cmath>
#include <ostream>
#include <random>

namespace fsa {

TruncationBasis::TruncationBasis(Alphabet alphabet, std::size_t cutoff)
    : alphabet_(alphabet), cutoff_(cutoff), words_(enumerate_words(alphabet, cutoff)) {
    index_.reserve(words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i) index_.emplace(words_[i], i);
}

std::optional<std::size_t> TruncationBasis::index_of(const Word& w) const {
    auto it = index_.find(w);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Vector TruncationBasis::to_vector(const Series& phi) const {
    Vector x = Vector::Zero(static_cast<Eigen::Index>(dimension()));
    for (const auto& [w, c] : phi.terms()) {
        if (auto i = index_of(w)) x[static_cast<Eigen::Index>(*i)] = c;
    }
    return x;
}

Series TruncationBasis::to_series(const Vector& x) const {
    Series out(alphabet_);
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (x[i] != Complex()) out.add_term(words_[static_cast<std::size_t>(i)], x[i]);
    }
    return out;
}

TruncatedOperator::TruncatedOperator(BasisPtr basis, SparseMatrix matrix)
    : basis_(std::move(basis)), matrix_(std::move(matrix)) {
    const auto n = static_cast<Eigen::Index>(basis_->dimension());
    if (matrix_.rows() != n || matrix_.cols() != n) {
        throw std::invalid_argument("matrix dimension does not match truncation basis");
    }
    matrix_.makeCompressed();
}

TruncatedOperator TruncatedOperator::zero(BasisPtr basis) {
    const auto n = static_cast<Eigen::Index>(basis->dimension());
    return TruncatedOperator(std::move(basis), SparseMatrix(n, n));
}

TruncatedOperator TruncatedOperator::identity(BasisPtr basis) {
    const auto n = static_cast<Eigen::Index>(basis->dimension());
    SparseMatrix id(n, n);
    id.setIdentity();
    return TruncatedOperator(std::move(basis), std::move(id));
}

Complex TruncatedOperator::entry(const Word& row, const Word& col) const {
    auto r = basis_->index_of(row);
    auto c = basis_->index_of(col);
    if (!r || !c) throw std::out_of_range("word outside truncation basis");
    return matrix_.coeff(static_cast<Eigen::Index>(*r), static_cast<Eigen::Index>(*c));
}

TruncatedOperator TruncatedOperator::adjoint() const {
    return TruncatedOperator(basis_, SparseMatrix(matrix_.adjoint()));
}

Series TruncatedOperator::apply(const Series& phi) const {
    return basis_->to_series(matrix_ * basis_->to_vector(phi));
}

namespace {

void require_same_basis(const TruncatedOperator& a, const TruncatedOperator& b) {
    if (a.basis_ptr() != b.basis_ptr() &&
        (a.basis().alphabet() != b.basis().alphabet() || a.basis().cutoff() != b.basis().cutoff())) {
        throw std::invalid_argument("operators on different truncation bases");
    }
}

using Triplets = std::vector<Eigen::Triplet<Complex>>;

TruncatedOperator from_triplets(const BasisPtr& basis, const Triplets& triplets) {
    const auto n = static_cast<Eigen::Index>(basis->dimension());
    SparseMatrix m(n, n);
    m.setFromTriplets(triplets.begin(), triplets.end());
    return TruncatedOperator(basis, std::move(m));
}

template <class Weight>
TruncatedOperator reweight(const TruncatedOperator& t, Weight weight) {
    const auto& basis = t.basis();
    Triplets triplets;
    const SparseMatrix& m = t.matrix();
    for (Eigen::Index col = 0; col < m.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(m, col); it; ++it) {
            const long shift = static_cast<long>(basis.degree(static_cast<std::size_t>(it.row()))) -
                               static_cast<long>(basis.degree(static_cast<std::size_t>(col)));
            const double w = weight(shift);
            if (w != 0.0) triplets.emplace_back(it.row(), col, w * it.value());
        }
    }
    return from_triplets(t.basis_ptr(), triplets);
}

template <class Product>
TruncatedOperator convolution_matrix(const Series& phi, const BasisPtr& basis, Product product) {
    if (phi.alphabet() != basis->alphabet()) throw std::invalid_argument("series and basis over different alphabets");
    Triplets triplets;
    for (std::size_t col = 0; col < basis->dimension(); ++col) {
        const Word& u = basis->word(col);
        for (const auto& [w, c] : phi.terms()) {
            if (w.length() + u.length() > basis->cutoff()) continue;
            const auto row = basis->index_of(product(w, u));
            triplets.emplace_back(static_cast<Eigen::Index>(*row), static_cast<Eigen::Index>(col), c);
        }
    }
    return from_triplets(basis, triplets);
}

bool column_matches_basis_vector(const TruncatedOperator& t, std::size_t col, std::size_t row, double tol) {
    for (SparseMatrix::InnerIterator it(t.matrix(), static_cast<Eigen::Index>(col)); it; ++it) {
        const Complex expected = static_cast<std::size_t>(it.row()) == row ? Complex(1.0) : Complex();
        if (std::abs(it.value() - expected) > tol) return false;
    }
    return std::abs(t.matrix().coeff(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) - 1.0) <= tol;
}

}  // namespace

TruncatedOperator operator*(const TruncatedOperator& a, const TruncatedOperator& b) {
    require_same_basis(a, b);
    return TruncatedOperator(a.basis_, SparseMatrix(a.matrix_ * b.matrix_));
}

TruncatedOperator operator+(const TruncatedOperator& a, const TruncatedOperator& b) {
    require_same_basis(a, b);
    return TruncatedOperator(a.basis_, SparseMatrix(a.matrix_ + b.matrix_));
}

TruncatedOperator operator-(const TruncatedOperator& a, const TruncatedOperator& b) {
    require_same_basis(a, b);
    return TruncatedOperator(a.basis_, SparseMatrix(a.matrix_ - b.matrix_));
}

TruncatedOperator operator*(Complex c, const TruncatedOperator& a) {
    return TruncatedOperator(a.basis_, SparseMatrix(c * a.matrix_));
}

double max_deviation_on_subspace(const TruncatedOperator& a, const TruncatedOperator& b,
                                 std::size_t max_column_degree) {
    require_same_basis(a, b);
    const SparseMatrix diff = a.matrix() - b.matrix();
    double worst = 0.0;
    for (Eigen::Index col = 0; col < diff.outerSize(); ++col) {
        if (a.basis().degree(static_cast<std::size_t>(col)) > max_column_degree) continue;
        for (SparseMatrix::InnerIterator it(diff, col); it; ++it) worst = std::max(worst, std::abs(it.value()));
    }
    return worst;
}

double max_abs_entry(const TruncatedOperator& a) {
    double worst = 0.0;
    for (Eigen::Index col = 0; col < a.matrix().outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(a.matrix(), col); it; ++it) worst = std::max(worst, std::abs(it.value()));
    }
    return worst;
}

TruncatedOperator left_matrix(const Series& phi, const BasisPtr& basis) {
    return convolution_matrix(phi, basis, [](const Word& w, const Word& u) { return concat(w, u); });
}

TruncatedOperator right_matrix(const Series& phi, const BasisPtr& basis) {
    return convolution_matrix(phi, basis, [](const Word& w, const Word& u) { return concat(u, w); });
}

TruncatedOperator q_projection(const BasisPtr& basis, std::size_t k) {
    Triplets triplets;
    for (std::size_t i = 0; i < basis->dimension(); ++i) {
        if (basis->degree(i) == k) triplets.emplace_back(i, i, Complex(1.0));
    }
    return from_triplets(basis, triplets);
}

TruncatedOperator pe_projection(const BasisPtr& basis) { return q_projection(basis, 0); }

TruncatedOperator phi_j_op(const TruncatedOperator& t, long j) {
    if (static_cast<std::size_t>(std::labs(j)) > t.basis().cutoff()) {
        throw std::invalid_argument("|j| exceeds the truncation cutoff");
    }
    return reweight(t, [j](long shift) { return shift == j ? 1.0 : 0.0; });
}

TruncatedOperator cesaro_op(const TruncatedOperator& t, std::size_t k) {
    if (k == 0) throw std::invalid_argument("cesaro_op requires k >= 1");
    const double kd = static_cast<double>(k);
    return reweight(t, [kd](long shift) {
        const double s = static_cast<double>(std::labs(shift));
        return s < kd ? 1.0 - s / kd : 0.0;
    });
}

NormEstimate norm_estimate_detailed(const TruncatedOperator& t, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("norm_estimate requires tol > 0");
    const SparseMatrix& m = t.matrix();
    const Eigen::Index n = m.cols();
    if (n == 0 || max_abs_entry(t) == 0.0) return {0.0, 0};

    const SparseMatrix mh = m.adjoint();
    Vector x = Vector::Ones(n).normalized();
    bool reseeded = false;
    double sigma = 0.0;
    for (std::size_t iter = 1; iter <= kPowerIterationCap; ++iter) {
        const Vector y = m * x;
        const double next = y.norm();
        Vector z = mh * y;
        const double zn = z.norm();
        if (zn == 0.0) {
            // x is annihilated by T although T != 0: take a seeded random start instead.
            if (reseeded) throw NonConvergenceError("power iteration collapsed to the zero vector");
            std::mt19937_64 rng(0x5eedULL);
            std::normal_distribution<double> gauss;
            for (Eigen::Index i = 0; i < n; ++i) x[i] = Complex(gauss(rng), gauss(rng));
            x.normalize();
            reseeded = true;
            continue;
        }
        const bool converged = iter > 1 && std::abs(next - sigma) <= tol * next;
        sigma = next;
        if (converged) return {sigma, iter};
        x = z / zn;
    }
    throw NonConvergenceError("power iteration did not converge within the iteration cap");
}

double norm_estimate(const TruncatedOperator& t, double tol) { return norm_estimate_detailed(t, tol).value; }

bool commutant_check(const Word& u, const Word& v, const BasisPtr& basis) {
    const auto lu = left_matrix(u, basis);
    const auto rv = right_matrix(v, basis);
    const auto lr = lu * rv;
    const auto rl = rv * lu;
    const std::size_t raised = u.length() + v.length();
    if (raised > basis->cutoff()) return true;
    for (std::size_t col = 0; col < basis->dimension(); ++col) {
        const Word& w = basis->word(col);
        if (w.length() > basis->cutoff() - raised) continue;
        const std::size_t target = *basis->index_of(concat(concat(u, w), v));
        if (!column_matches_basis_vector(lr, col, target, 0.0)) return false;
        if (!column_matches_basis_vector(rl, col, target, 0.0)) return false;
    }
    return true;
}

IsometryReport isometry_relations_check(const BasisPtr& basis, double tol) {
    if (basis->cutoff() < 1) throw std::invalid_argument("isometry relations need cutoff >= 1");
    const Alphabet alphabet = basis->alphabet();
    const std::size_t below_top = basis->cutoff() - 1;
    const auto id = TruncatedOperator::identity(basis);
    const auto zero = TruncatedOperator::zero(basis);

    std::vector<TruncatedOperator> gens;
    for (Letter a = 0; a < alphabet.size(); ++a) gens.push_back(left_matrix(Word::generator(alphabet, a), basis));

    IsometryReport report;
    double worst = 0.0;
    for (std::size_t a = 0; a < gens.size(); ++a) {
        for (std::size_t b = 0; b < gens.size(); ++b) {
            const auto product = gens[a].adjoint() * gens[b];
            worst = std::max(worst, max_deviation_on_subspace(product, a == b ? id : zero, below_top));
        }
    }
    report.orthogonal_ranges = worst <= tol;

    auto range_sum = zero;
    for (const auto& g : gens) range_sum = range_sum + g * g.adjoint();
    const auto complement = id - pe_projection(basis);
    const double range_dev = max_deviation_on_subspace(range_sum, complement, below_top);
    report.range_sum = range_dev <= tol;
    worst = std::max(worst, range_dev);

    const Word e = Word::unit(alphabet);
    const Complex vac = (id - range_sum).entry(e, e);
    report.vacuum = std::abs(vac - 1.0) <= tol;
    worst = std::max(worst, std::abs(vac - 1.0));
    report.max_deviation = worst;
    return report;
}

bool conjugation_check(const Word& w, const Series& phi, const BasisPtr& basis, double tol) {
    const std::size_t deg = phi.degree().value_or(0);
    if (deg + 2 * w.length() > basis->cutoff()) {
        throw std::invalid_argument("cutoff too small for conjugation check");
    }
    const auto lw = left_matrix(w, basis);
    const auto lhs = lw.adjoint() * left_matrix(phi, basis) * lw;
    const auto rhs = left_matrix(conjugate_series(w, phi), basis);
    return max_deviation_on_subspace(lhs, rhs, basis->cutoff() - deg - 2 * w.length()) <= tol;
}

Series mobius_series(double c, std::size_t n) {
    const Alphabet one(1);
    Series f(one);
    f.add_term(Word::unit(one), c);
    double tail = c * c - 1.0;  // coefficient of z^k is (c^2 - 1) c^{k-1}
    for (std::size_t k = 1; k <= n; ++k) {
        f.add_term(power(Word::generator(one, 0), k), tail);
        tail *= c;
    }
    return f;
}

double upsilon_norm_witness(double c, std::size_t n, double tol) {
    if (!(c >= 0.0 && c < 1.0)) throw std::invalid_argument("witness requires 0 <= c < 1");
    const auto basis = TruncationBasis::make(Alphabet(1), n);
    const Series f = mobius_series(c, n);
    const double full = norm_estimate(left_matrix(f, basis), tol);
    const double cut = norm_estimate(left_matrix(upsilon(f, 0), basis), tol);
    return cut / full;
}

void write_csv(std::ostream& os, const TruncatedOperator& t) {
    os << "row,col,re,im\n";
    const auto old_precision = os.precision(17);
    const SparseMatrix& m = t.matrix();
    for (Eigen::Index col = 0; col < m.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(m, col); it; ++it) {
            os << to_string(t.basis().word(static_cast<std::size_t>(it.row()))) << ','
               << to_string(t.basis().word(static_cast<std::size_t>(col))) << ',' << it.value().real() << ','
               << it.value().imag() << '\n';
        }
    }
    os.precision(old_precision);
}

}  // namespace fsa
