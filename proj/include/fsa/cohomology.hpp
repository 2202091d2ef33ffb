#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "fsa/series.hpp"
#include "fsa/word.hpp"

namespace fsa {

using WordTuple = std::vector<Word>;

// An n-linear functional on span{L_w} with values in the scalar bimodule C,
// stored as its finitely supported table on word tuples. Arity 0 holds one
// scalar, keyed by the empty tuple.
class Cochain {
public:
    using Table = std::map<WordTuple, Complex>;

    Cochain(std::size_t arity, Alphabet alphabet) : arity_(arity), alphabet_(alphabet) {}
    static Cochain scalar(Alphabet alphabet, Complex value);

    std::size_t arity() const noexcept { return arity_; }
    Alphabet alphabet() const noexcept { return alphabet_; }
    const Table& table() const noexcept { return table_; }
    bool is_zero() const noexcept { return table_.empty(); }

    Complex at(const WordTuple& words) const;
    // Accumulates c at the tuple, then prunes.
    void add(const WordTuple& words, Complex c);

    // Multilinear extension to series arguments.
    Complex evaluate(std::span<const Series> args) const;

    Cochain& operator+=(const Cochain& other);
    Cochain& operator*=(Complex c);
    friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
    friend Cochain operator*(Complex c, Cochain a) { return a *= c; }
    friend bool operator==(const Cochain&, const Cochain&) = default;

private:
    void check_tuple(const WordTuple& words) const;

    std::size_t arity_;
    Alphabet alphabet_;
    Table table_;
};

bool approx_equal(const Cochain& a, const Cochain& b, double tol = kExactTolerance);

// gamma . L_phi = gamma phi(e) and L_phi . gamma = phi(e) gamma.
Complex module_left(Complex gamma, const Series& phi);
Complex module_right(const Series& phi, Complex gamma);

// w = first * rest with first the leading letter (both e when w = e).
struct CuttingPair {
    Word first;
    Word rest;
};
CuttingPair cut(const Word& w);

// The Hochschild coboundary with scalar coefficients:
//   [w_1 = e] phi(w_2..) + sum_i (-1)^i phi(.., w_i w_{i+1}, ..) + (-1)^{n+1} phi(..w_n) [w_{n+1} = e].
// Output support comes from the two-factor splittings of each support word.
Cochain coboundary(const Cochain& phi);

// Requires arity >= 1.
bool is_cocycle(const Cochain& phi);

class NotACocycle : public std::invalid_argument {
public:
    NotACocycle(WordTuple witness, Complex value);
    // A tuple where the coboundary is nonzero.
    const WordTuple& witness() const noexcept { return witness_; }
    Complex value() const noexcept { return value_; }

private:
    WordTuple witness_;
    Complex value_;
};

// An (n-1)-cochain psi with coboundary(psi) = phi, built by cutting the first
// argument at its first letter:
//   psi(w_1, ..) = -phi(first(w_1), rest(w_1), ..)  for w_1 != e,
//   psi(e, ..)  =  phi(e, e, ..).
// Requires arity >= 2; throws NotACocycle for a non-cocycle.
Cochain homotopy(const Cochain& phi);

// The same psi evaluated from its first-letter-filter form:
//   -sum_a phi(L_a, L_a^* Upsilon_a(phi_1), phi_2, ..) + phi_1(e) phi(L_e, L_e, phi_2, ..).
// Requires arity >= 2 and one argument per slot of psi.
Complex homotopy_via_upsilon(const Cochain& phi, std::span<const Series> args);

// For each letter a, the 1-cocycle with coefficient 1 at z_a.
std::vector<Cochain> h1_generator_cocycles(Alphabet alphabet);

// Dimension of the space of 1-cocycles supported on words of length <=
// max_len, by rank of the coboundary map written in the word basis.
std::size_t one_cocycle_dimension(Alphabet alphabet, std::size_t max_len);

// A basis of that space, from the kernel of the same matrix.
std::vector<Cochain> one_cocycle_kernel(Alphabet alphabet, std::size_t max_len);

// Rank of a family of cochains of equal arity, as vectors in the tuple basis.
std::size_t cochain_rank(std::span<const Cochain> family);

}  // namespace fsa
