#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fsa/series.hpp"
#include "fsa/word.hpp"

namespace fsa {

// A derivation of the disc algebra given by its values D(L_a) on the
// generators; D(L_w) for longer words follows from the Leibniz rule.
class GeneratorDerivation {
public:
    explicit GeneratorDerivation(Alphabet alphabet);
    GeneratorDerivation(Alphabet alphabet, std::vector<Series> values);

    // The inner derivation A -> AT - TA restricted to the generators.
    static GeneratorDerivation inner(const Series& t);

    Alphabet alphabet() const noexcept { return alphabet_; }
    const Series& value(Letter a) const { return values_.at(a); }
    void set_value(Letter a, Series value);
    const std::vector<Series>& values() const noexcept { return values_; }

    GeneratorDerivation& operator-=(const GeneratorDerivation& other);
    friend bool operator==(const GeneratorDerivation&, const GeneratorDerivation&) = default;

private:
    Alphabet alphabet_;
    std::vector<Series> values_;
};

bool approx_equal(const GeneratorDerivation& a, const GeneratorDerivation& b,
                  double tol = kExactTolerance);

// Which necessary condition failed for derivation data that cannot come from
// a continuous derivation.
enum class Violation {
    commuting_coefficient,  // D(L_w) has weight on a word commuting with w
    short_word,             // D(L_w) has weight on a word shorter than w
    no_stabilization,       // the averaged sums S_w did not settle
    residual,               // the local commutator does not reproduce D(L_w)
    structure,              // after D(L_a) = 0, D(L_b) is not of the form sum c_k (z_b a^k - a^k z_b)
};

std::string to_string(Violation v);

class InconsistentDerivation : public std::runtime_error {
public:
    InconsistentDerivation(Violation violation, Word word, std::optional<Word> offending, Complex coefficient,
                           const std::string& detail);

    Violation violation() const noexcept { return violation_; }
    // The word w at which the check was made.
    const Word& word() const noexcept { return word_; }
    // The support word carrying the offending coefficient, when there is one.
    const std::optional<Word>& offending() const noexcept { return offending_; }
    Complex coefficient() const noexcept { return coefficient_; }

private:
    Violation violation_;
    Word word_;
    std::optional<Word> offending_;
    Complex coefficient_;
};

// L_phi T - T L_phi, as a symbol: phi * T - T * phi.
Series inner_derivation(const Series& t, const Series& phi);

// D(L_w) = sum_i L_{a_1..a_{i-1}} D(L_{a_i}) L_{a_{i+1}..a_n}; zero for w = e.
Series extend_to_word(const GeneratorDerivation& d, const Word& w);

// D applied to a finite combination sum phi(w) L_w.
Series apply_derivation(const GeneratorDerivation& d, const Series& phi);

// D(L_w^k) = sum_{i<k} L_w^{k-1-i} D(L_w) L_w^i. Throws for k = 0.
Series power_expand(const GeneratorDerivation& d, const Word& w, std::size_t k);

// First support word of D(L_w) that commutes with w, if any.
std::optional<Word> find_commuting_coefficient(const GeneratorDerivation& d, const Word& w);
// First support word of D(L_w) shorter than w, if any.
std::optional<Word> find_short_coefficient(const GeneratorDerivation& d, const Word& w);

// D(L_w) vanishes at every word commuting with w.
bool vanishes_on_commuting_words(const GeneratorDerivation& d, const Word& w);
// D(L_w) vanishes at every word shorter than w.
bool vanishes_below_length(const GeneratorDerivation& d, const Word& w);

// Default iteration cap for compute_s: deg D(L_w) + 3.
std::size_t default_k_max(const GeneratorDerivation& d, const Word& w);

struct AveragedSum {
    Series s;
    // Smallest k with P_k = P_{k+1}, where P_k = sum_{m<k} Gamma_w^m(D(L_w)).
    std::size_t stabilization_index;
};

// S_w = sum_m L_w^{*m} D(L_w) L_w^m, computed by iterating conjugate_series
// until two partial sums agree. Throws InconsistentDerivation (no_stabilization)
// when that does not happen within k_max terms. Requires w != e.
AveragedSum compute_s(const GeneratorDerivation& d, const Word& w, std::optional<std::size_t> k_max = {});

// T_w with D(L_w) = L_w T_w - T_w L_w, e-coefficient normalized to 0.
// Throws InconsistentDerivation when a necessary condition fails.
Series solve_local_t(const GeneratorDerivation& d, const Word& w, std::optional<std::size_t> k_max = {});

struct GlobalSolution {
    Series t;
    Series t_first;    // local solution at the first generator
    Series t_second;   // L_b^* D'(L_b) for the second generator (zero when m = 1)
};

// T with D = D_T on every generator, e-coefficient normalized to 0.
// Throws InconsistentDerivation when the data fails one of the checks.
GlobalSolution solve_global_t_detailed(const GeneratorDerivation& d, std::optional<std::size_t> k_max = {});
Series solve_global_t(const GeneratorDerivation& d, std::optional<std::size_t> k_max = {});

struct NormalApproxReport {
    // D(E_I(Sigma_k phi)) equals D_T(E_I(Sigma_k phi)).
    bool truncated_identity = false;
    // I contains every letter of phi.
    bool covers_letters = false;
    // E_I(Sigma_k phi) = Sigma_k phi; checked only when covers_letters.
    bool expectation_fixed = false;
    // ||D_T(Sigma_k phi) - D_T(phi)||_2 against 2 ||T||_1 (deg phi / k) ||phi||_2.
    double cesaro_error = 0.0;
    double cesaro_bound = 0.0;

    bool passed() const noexcept {
        return truncated_identity && (!covers_letters || expectation_fixed) &&
               cesaro_error <= cesaro_bound + kExactTolerance;
    }
};

NormalApproxReport normal_approx_check(const GeneratorDerivation& d, const Series& t, const Series& phi,
                                       std::size_t k, const LetterSet& letters);
NormalApproxReport normal_approx_check(const Series& t, const Series& phi, std::size_t k,
                                       const LetterSet& letters);

}  // namespace fsa
