#include "fsa/series.hpp"

#include <cmath>
#include <stdexcept>

namespace fsa {

Series Series::unit(Alphabet alphabet) { return basis(Word::unit(alphabet)); }

Series Series::basis(const Word& w) {
    Series s(w.alphabet());
    s.terms_.emplace(w, Complex(1.0));
    return s;
}

Complex Series::coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Complex() : it->second;
}

void Series::add_term(const Word& w, Complex c) {
    require_alphabet(w);
    auto [it, inserted] = terms_.try_emplace(w, Complex());
    it->second += c;
    if (std::abs(it->second) <= kPruneEpsilon) terms_.erase(it);
}

std::optional<std::size_t> Series::degree() const {
    if (terms_.empty()) return std::nullopt;
    // The map is ordered length-first, so the last key is of maximal length.
    return terms_.rbegin()->first.length();
}

Series& Series::operator+=(const Series& other) {
    require_alphabet(other);
    for (const auto& [w, c] : other.terms_) add_term(w, c);
    return *this;
}

Series& Series::operator-=(const Series& other) {
    require_alphabet(other);
    for (const auto& [w, c] : other.terms_) add_term(w, -c);
    return *this;
}

Series& Series::operator*=(Complex c) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        it->second *= c;
        if (std::abs(it->second) <= kPruneEpsilon) {
            it = terms_.erase(it);
        } else {
            ++it;
        }
    }
    return *this;
}

void Series::require_alphabet(const Word& w) const {
    if (w.alphabet() != alphabet_) throw std::invalid_argument("word and series over different alphabets");
}

void Series::require_alphabet(const Series& s) const {
    if (s.alphabet_ != alphabet_) throw std::invalid_argument("series over different alphabets");
}

double max_abs_difference(const Series& a, const Series& b) {
    double worst = 0.0;
    for (const auto& [w, c] : a.terms()) worst = std::max(worst, std::abs(c - b.coefficient(w)));
    for (const auto& [w, c] : b.terms()) {
        if (!a.terms().contains(w)) worst = std::max(worst, std::abs(c));
    }
    return worst;
}

bool approx_equal(const Series& a, const Series& b, double tol) {
    return a.alphabet() == b.alphabet() && max_abs_difference(a, b) <= tol;
}

double l2_norm(const Series& phi) {
    double s = 0.0;
    for (const auto& [w, c] : phi.terms()) s += std::norm(c);
    return std::sqrt(s);
}

double l1_norm(const Series& phi) {
    double s = 0.0;
    for (const auto& [w, c] : phi.terms()) s += std::abs(c);
    return s;
}

Series convolve(const Series& phi, const Series& psi) {
    if (phi.alphabet() != psi.alphabet()) throw std::invalid_argument("series over different alphabets");
    Series out(phi.alphabet());
    for (const auto& [u, a] : phi.terms()) {
        for (const auto& [v, b] : psi.terms()) out.add_term(concat(u, v), a * b);
    }
    return out;
}

Series apply_right(const Series& phi, const Series& psi) { return convolve(psi, phi); }

Series adjoint_compress(const Word& u, const Series& phi) {
    Series out(phi.alphabet());
    for (const auto& [v, c] : phi.terms()) {
        if (auto rest = left_divide(u, v)) out.add_term(*rest, c);
    }
    return out;
}

Series conjugate_series(const Word& w, const Series& phi) {
    Series out(phi.alphabet());
    for (const auto& [u, c] : phi.terms()) {
        if (auto v = conjugate_transport(w, u)) out.add_term(*v, c);
    }
    return out;
}

Series phi_j(const Series& phi, std::size_t j) {
    Series out(phi.alphabet());
    for (const auto& [w, c] : phi.terms()) {
        if (w.length() == j) out.add_term(w, c);
    }
    return out;
}

Series cesaro(const Series& phi, std::size_t k) {
    if (k == 0) throw std::invalid_argument("cesaro requires k >= 1");
    Series out(phi.alphabet());
    const double kd = static_cast<double>(k);
    for (const auto& [w, c] : phi.terms()) {
        if (w.length() < k) out.add_term(w, c * (1.0 - static_cast<double>(w.length()) / kd));
    }
    return out;
}

Series conditional_expectation(const Series& phi, const LetterSet& letters) {
    Series out(phi.alphabet());
    for (const auto& [w, c] : phi.terms()) {
        bool inside = true;
        for (Letter a : w.letters()) inside = inside && letters.contains(a);
        if (inside) out.add_term(w, c);
    }
    return out;
}

Series upsilon(const Series& phi, Letter alpha) {
    Series out(phi.alphabet());
    for (const auto& [w, c] : phi.terms()) {
        if (!w.is_unit() && w[0] == alpha) out.add_term(w, c);
    }
    return out;
}

LetterSet letters_of(const Series& phi) {
    LetterSet out;
    for (const auto& [w, c] : phi.terms()) out.insert(w.letters().begin(), w.letters().end());
    return out;
}

}  // namespace fsa
