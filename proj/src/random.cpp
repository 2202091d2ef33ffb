#include "fsa/random.hpp"

#include <vector>

namespace fsa {

namespace {

Complex gaussian_integer(Rng& rng, int bound) {
    std::uniform_int_distribution<int> part(-bound, bound);
    const int re = part(rng);
    const int im = part(rng);
    return {static_cast<double>(re), static_cast<double>(im)};
}

}  // namespace

Word random_word(Rng& rng, Alphabet alphabet, std::size_t max_len, std::size_t min_len) {
    std::uniform_int_distribution<std::size_t> len(min_len, std::max(min_len, max_len));
    std::uniform_int_distribution<Letter> letter(0, static_cast<Letter>(alphabet.size() - 1));
    std::vector<Letter> letters(len(rng));
    for (Letter& a : letters) a = letter(rng);
    return Word(alphabet, std::move(letters));
}

Series random_series(Rng& rng, Alphabet alphabet, std::size_t max_deg, std::size_t terms, int bound) {
    Series s(alphabet);
    for (std::size_t i = 0; i < terms; ++i) {
        const Word w = random_word(rng, alphabet, max_deg);
        s.add_term(w, gaussian_integer(rng, bound));
    }
    return s;
}

TruncatedOperator random_operator(Rng& rng, const BasisPtr& basis, double density) {
    std::bernoulli_distribution keep(density);
    std::uniform_real_distribution<double> part(-1.0, 1.0);
    const auto n = static_cast<Eigen::Index>(basis->dimension());
    std::vector<Eigen::Triplet<Complex>> entries;
    for (Eigen::Index col = 0; col < n; ++col) {
        for (Eigen::Index row = 0; row < n; ++row) {
            if (!keep(rng)) continue;
            const double re = part(rng);
            const double im = part(rng);
            entries.emplace_back(row, col, Complex(re, im));
        }
    }
    SparseMatrix m(n, n);
    m.setFromTriplets(entries.begin(), entries.end());
    return TruncatedOperator(basis, std::move(m));
}

Cochain random_cochain(Rng& rng, Alphabet alphabet, std::size_t arity, std::size_t max_len, std::size_t terms,
                       int bound) {
    Cochain c(arity, alphabet);
    for (std::size_t i = 0; i < terms; ++i) {
        WordTuple words;
        for (std::size_t k = 0; k < arity; ++k) words.push_back(random_word(rng, alphabet, max_len));
        c.add(words, gaussian_integer(rng, bound));
        if (arity == 0) break;
    }
    return c;
}

}  // namespace fsa
