#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "fsa/cohomology.hpp"
#include "fsa/operators.hpp"
#include "fsa/series.hpp"
#include "fsa/word.hpp"

namespace fsa {

using Rng = std::mt19937_64;

// Uniform length in [min_len, max_len], then uniform letters.
Word random_word(Rng& rng, Alphabet alphabet, std::size_t max_len, std::size_t min_len = 0);

// Up to `terms` words of length <= max_deg with Gaussian-integer coefficients
// whose parts lie in [-bound, bound]. Exact arithmetic stays exact on these.
Series random_series(Rng& rng, Alphabet alphabet, std::size_t max_deg, std::size_t terms, int bound = 3);

// Each entry independently nonzero with probability `density`, parts uniform in [-1, 1].
TruncatedOperator random_operator(Rng& rng, const BasisPtr& basis, double density = 0.3);

// Up to `terms` tuples with entries of length <= max_len and Gaussian-integer values.
Cochain random_cochain(Rng& rng, Alphabet alphabet, std::size_t arity, std::size_t max_len, std::size_t terms,
                       int bound = 3);

}  // namespace fsa
