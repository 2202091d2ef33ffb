#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <set>

#include "fsa/word.hpp"

namespace fsa {

using Complex = std::complex<double>;

// Coefficients with magnitude at or below this are dropped after arithmetic.
inline constexpr double kPruneEpsilon = 1e-14;
// Equality tolerance for identities that are exact in exact arithmetic.
inline constexpr double kExactTolerance = 1e-12;

// A finitely supported complex function on words.
//
// The same type plays two roles: a vector of l2(F+) and the symbol phi of the
// left convolution operator L_phi (so that L_phi xi_e = phi). Call sites say
// which role they mean.
class Series {
public:
    using Terms = std::map<Word, Complex>;

    explicit Series(Alphabet alphabet) : alphabet_(alphabet) {}

    static Series zero(Alphabet alphabet) { return Series(alphabet); }
    // delta_e, the identity for convolution.
    static Series unit(Alphabet alphabet);
    static Series basis(const Word& w);

    Alphabet alphabet() const noexcept { return alphabet_; }
    const Terms& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    Complex coefficient(const Word& w) const;
    Complex operator[](const Word& w) const { return coefficient(w); }

    // Accumulates c at w, then prunes.
    void add_term(const Word& w, Complex c);

    // Largest word length in the support; empty for the zero series.
    std::optional<std::size_t> degree() const;

    Series& operator+=(const Series& other);
    Series& operator-=(const Series& other);
    Series& operator*=(Complex c);

    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator-(Series a) { return a *= Complex(-1.0); }
    friend Series operator*(Complex c, Series a) { return a *= c; }
    friend Series operator*(Series a, Complex c) { return a *= c; }

    // Exact equality of the pruned term tables.
    friend bool operator==(const Series&, const Series&) = default;

private:
    void require_alphabet(const Word& w) const;
    void require_alphabet(const Series& s) const;

    Alphabet alphabet_;
    Terms terms_;
};

using LetterSet = std::set<Letter>;

bool approx_equal(const Series& a, const Series& b, double tol = kExactTolerance);
double max_abs_difference(const Series& a, const Series& b);

double l2_norm(const Series& phi);
double l1_norm(const Series& phi);

// (phi * psi)(w) = sum over u | w of phi(u) psi(u^{-1} w).
Series convolve(const Series& phi, const Series& psi);

// R_phi psi = psi * phi.
Series apply_right(const Series& phi, const Series& psi);

// L_u^* applied to the vector phi.
Series adjoint_compress(const Word& u, const Series& phi);

// Symbol of L_w^* L_phi L_w: each u with uw = wv contributes phi(u) at v.
Series conjugate_series(const Word& w, const Series& phi);

// Homogeneous part of degree j.
Series phi_j(const Series& phi, std::size_t j);

// sum_{0 <= j < k} (1 - j/k) phi_j(phi). Throws for k = 0.
Series cesaro(const Series& phi, std::size_t k);

// Restriction to words over the letters in I.
Series conditional_expectation(const Series& phi, const LetterSet& letters);

// Restriction to words that start with z_alpha.
Series upsilon(const Series& phi, Letter alpha);

// Letters occurring anywhere in the support.
LetterSet letters_of(const Series& phi);

}  // namespace fsa
