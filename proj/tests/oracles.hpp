#pragma once

// Brute-force reference implementations. Each one follows the defining
// formula directly and shares no code path with the library routine it checks.

#include <algorithm>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "fsa/cohomology.hpp"
#include "fsa/series.hpp"
#include "fsa/word.hpp"

namespace oracle {

using fsa::Complex;
using fsa::Series;
using fsa::Word;

inline std::vector<fsa::Letter> letters(const Word& w) { return {w.letters().begin(), w.letters().end()}; }

inline bool less(const Word& u, const Word& v) {
    return std::make_tuple(u.length(), letters(u)) < std::make_tuple(v.length(), letters(v));
}

inline Word min_scan(const std::vector<Word>& words) {
    Word best = words.front();
    for (const Word& w : words) {
        if (less(w, best)) best = w;
    }
    return best;
}

inline Word glue(const Word& u, const Word& v) {
    auto ls = letters(u);
    auto rs = letters(v);
    ls.insert(ls.end(), rs.begin(), rs.end());
    return Word(u.alphabet(), ls);
}

// Double sum over the supports.
inline Series convolve(const Series& phi, const Series& psi) {
    Series out(phi.alphabet());
    for (const auto& [u, a] : phi.terms()) {
        for (const auto& [v, b] : psi.terms()) out.add_term(glue(u, v), a * b);
    }
    return out;
}

// (L_u^* phi)(v) = phi(uv), scanning every candidate v.
inline Series adjoint_compress(const Word& u, const Series& phi, std::size_t max_len) {
    Series out(phi.alphabet());
    for (const Word& v : fsa::enumerate_words(phi.alphabet(), max_len)) out.add_term(v, phi.coefficient(glue(u, v)));
    return out;
}

// Gamma_w(phi)(v) = sum over u with uw = wv, searching all v of the same length.
inline Series conjugate(const Word& w, const Series& phi) {
    Series out(phi.alphabet());
    for (const auto& [u, c] : phi.terms()) {
        for (const Word& v : fsa::enumerate_words_of_length(phi.alphabet(), u.length())) {
            if (glue(u, w) == glue(w, v)) out.add_term(v, c);
        }
    }
    return out;
}

// Dense compression of L_phi: entry (v, u) = phi(x) where v = x u.
inline Eigen::MatrixXcd dense_left(const Series& phi, const std::vector<Word>& basis) {
    const auto n = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            const Word& v = basis[static_cast<std::size_t>(r)];
            const Word& u = basis[static_cast<std::size_t>(c)];
            if (v.length() < u.length()) continue;
            const Word x = v.prefix(v.length() - u.length());
            if (glue(x, u) == v) m(r, c) = phi.coefficient(x);
        }
    }
    return m;
}

inline double svd_norm(const Eigen::MatrixXcd& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues()(0);
}

// The coboundary evaluated pointwise from its formula.
inline Complex coboundary_at(const fsa::Cochain& phi, const fsa::WordTuple& a) {
    const std::size_t n = phi.arity();
    const Word e = Word::unit(phi.alphabet());
    Complex total;
    if (a.front() == e) total += phi.at(fsa::WordTuple(a.begin() + 1, a.end()));
    for (std::size_t i = 0; i < n; ++i) {
        fsa::WordTuple t(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(i));
        t.push_back(glue(a[i], a[i + 1]));
        t.insert(t.end(), a.begin() + static_cast<std::ptrdiff_t>(i + 2), a.end());
        total += ((i + 1) % 2 == 0 ? 1.0 : -1.0) * phi.at(t);
    }
    if (a.back() == e) total += ((n + 1) % 2 == 0 ? 1.0 : -1.0) * phi.at(fsa::WordTuple(a.begin(), a.end() - 1));
    return total;
}

// Every tuple of the given arity with entries of length <= max_len.
inline std::vector<fsa::WordTuple> all_tuples(fsa::Alphabet alphabet, std::size_t arity, std::size_t max_len) {
    const auto words = fsa::enumerate_words(alphabet, max_len);
    std::vector<fsa::WordTuple> out{{}};
    for (std::size_t k = 0; k < arity; ++k) {
        std::vector<fsa::WordTuple> next;
        for (const auto& t : out) {
            for (const Word& w : words) {
                auto u = t;
                u.push_back(w);
                next.push_back(std::move(u));
            }
        }
        out = std::move(next);
    }
    return out;
}

}  // namespace oracle
