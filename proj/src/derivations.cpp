#include "fsa/derivations.hpp"

#include <algorithm>
#include <cmath>

namespace fsa {

GeneratorDerivation::GeneratorDerivation(Alphabet alphabet)
    : alphabet_(alphabet), values_(alphabet.size(), Series(alphabet)) {}

GeneratorDerivation::GeneratorDerivation(Alphabet alphabet, std::vector<Series> values)
    : alphabet_(alphabet), values_(std::move(values)) {
    if (values_.size() != alphabet_.size()) throw std::invalid_argument("one value per generator required");
    for (const Series& v : values_) {
        if (v.alphabet() != alphabet_) throw std::invalid_argument("derivation value over a different alphabet");
    }
}

GeneratorDerivation GeneratorDerivation::inner(const Series& t) {
    GeneratorDerivation d(t.alphabet());
    for (Letter a = 0; a < t.alphabet().size(); ++a) {
        d.values_[a] = inner_derivation(t, Series::basis(Word::generator(t.alphabet(), a)));
    }
    return d;
}

void GeneratorDerivation::set_value(Letter a, Series value) {
    if (value.alphabet() != alphabet_) throw std::invalid_argument("derivation value over a different alphabet");
    values_.at(a) = std::move(value);
}

GeneratorDerivation& GeneratorDerivation::operator-=(const GeneratorDerivation& other) {
    if (other.alphabet_ != alphabet_) throw std::invalid_argument("derivations over different alphabets");
    for (std::size_t a = 0; a < values_.size(); ++a) values_[a] -= other.values_[a];
    return *this;
}

bool approx_equal(const GeneratorDerivation& a, const GeneratorDerivation& b, double tol) {
    if (a.alphabet() != b.alphabet()) return false;
    for (Letter x = 0; x < a.alphabet().size(); ++x) {
        if (!approx_equal(a.value(x), b.value(x), tol)) return false;
    }
    return true;
}

std::string to_string(Violation v) {
    switch (v) {
        case Violation::commuting_coefficient: return "commuting-coefficient";
        case Violation::short_word: return "short-word";
        case Violation::no_stabilization: return "no-stabilization";
        case Violation::residual: return "residual";
        case Violation::structure: return "structure";
    }
    return "unknown";
}

InconsistentDerivation::InconsistentDerivation(Violation violation, Word word, std::optional<Word> offending,
                                               Complex coefficient, const std::string& detail)
    : std::runtime_error(to_string(violation) + " at " + to_string(word) + ": " + detail),
      violation_(violation),
      word_(std::move(word)),
      offending_(std::move(offending)),
      coefficient_(coefficient) {}

Series inner_derivation(const Series& t, const Series& phi) { return convolve(phi, t) - convolve(t, phi); }

Series extend_to_word(const GeneratorDerivation& d, const Word& w) {
    Series out(d.alphabet());
    for (std::size_t i = 0; i < w.length(); ++i) {
        const Word before = w.prefix(i);
        const Word after = w.suffix(w.length() - i - 1);
        for (const auto& [u, c] : d.value(w[i]).terms()) out.add_term(concat(concat(before, u), after), c);
    }
    return out;
}

Series apply_derivation(const GeneratorDerivation& d, const Series& phi) {
    Series out(d.alphabet());
    for (const auto& [w, c] : phi.terms()) out += c * extend_to_word(d, w);
    return out;
}

Series power_expand(const GeneratorDerivation& d, const Word& w, std::size_t k) {
    if (k == 0) throw std::invalid_argument("power_expand requires k >= 1");
    const Series dw = extend_to_word(d, w);
    Series out(d.alphabet());
    for (std::size_t i = 0; i < k; ++i) {
        const Word left = power(w, k - 1 - i);
        const Word right = power(w, i);
        for (const auto& [u, c] : dw.terms()) out.add_term(concat(concat(left, u), right), c);
    }
    return out;
}

std::optional<Word> find_commuting_coefficient(const GeneratorDerivation& d, const Word& w) {
    const Series dw = extend_to_word(d, w);
    for (const auto& [u, c] : dw.terms()) {
        if (commutes(w, u)) return u;
    }
    return std::nullopt;
}

std::optional<Word> find_short_coefficient(const GeneratorDerivation& d, const Word& w) {
    const Series dw = extend_to_word(d, w);
    // Terms are ordered by length, so the first one is the shortest.
    if (!dw.is_zero() && dw.terms().begin()->first.length() < w.length()) return dw.terms().begin()->first;
    return std::nullopt;
}

bool vanishes_on_commuting_words(const GeneratorDerivation& d, const Word& w) {
    return !find_commuting_coefficient(d, w).has_value();
}

bool vanishes_below_length(const GeneratorDerivation& d, const Word& w) {
    return !find_short_coefficient(d, w).has_value();
}

std::size_t default_k_max(const GeneratorDerivation& d, const Word& w) {
    return extend_to_word(d, w).degree().value_or(0) + 3;
}

namespace {

bool negligible(const Series& s) { return max_abs_difference(s, Series(s.alphabet())) <= kExactTolerance; }

Series drop_unit_coefficient(Series t) {
    const Word e = Word::unit(t.alphabet());
    t.add_term(e, -t.coefficient(e));
    return t;
}

}  // namespace

AveragedSum compute_s(const GeneratorDerivation& d, const Word& w, std::optional<std::size_t> k_max) {
    if (w.is_unit()) throw std::invalid_argument("compute_s requires w != e");
    const std::size_t cap = k_max.value_or(default_k_max(d, w));
    Series term = extend_to_word(d, w);
    Series partial(d.alphabet());
    for (std::size_t k = 1; k <= cap; ++k) {
        partial += term;
        Series next = conjugate_series(w, term);
        if (negligible(next)) return {std::move(partial), k};
        term = std::move(next);
    }
    const auto& [u, c] = *term.terms().begin();
    throw InconsistentDerivation(Violation::no_stabilization, w, u, c,
                                 "partial sums still changing after " + std::to_string(cap) + " terms");
}

Series solve_local_t(const GeneratorDerivation& d, const Word& w, std::optional<std::size_t> k_max) {
    if (w.is_unit()) throw std::invalid_argument("solve_local_t requires w != e");
    const Series dw = extend_to_word(d, w);
    if (auto u = find_commuting_coefficient(d, w)) {
        throw InconsistentDerivation(Violation::commuting_coefficient, w, *u, dw.coefficient(*u),
                                     "nonzero coefficient at commuting word " + to_string(*u));
    }
    if (auto u = find_short_coefficient(d, w)) {
        throw InconsistentDerivation(Violation::short_word, w, *u, dw.coefficient(*u),
                                     "nonzero coefficient at shorter word " + to_string(*u));
    }

    const Series s = compute_s(d, w, k_max).s;
    Series t0(d.alphabet());
    for (const auto& [u, c] : s.terms()) {
        if (u.length() >= w.length()) t0.add_term(u, c);
    }
    if (!approx_equal(t0 - conjugate_series(w, t0), dw)) {
        throw InconsistentDerivation(Violation::residual, w, std::nullopt, {},
                                     "low-degree part of S_w does not cancel");
    }
    for (const auto& [u, c] : t0.terms()) {
        if (!left_divide(w, u) && std::abs(c) > kExactTolerance) {
            throw InconsistentDerivation(Violation::residual, w, u, c,
                                         "S_w has weight on " + to_string(u) + ", which w does not divide");
        }
    }

    Series tw = drop_unit_coefficient(adjoint_compress(w, t0));
    if (!approx_equal(inner_derivation(tw, Series::basis(w)), dw)) {
        throw InconsistentDerivation(Violation::residual, w, std::nullopt, {},
                                     "local commutator does not reproduce D(L_w)");
    }
    return tw;
}

GlobalSolution solve_global_t_detailed(const GeneratorDerivation& d, std::optional<std::size_t> k_max) {
    const Alphabet alphabet = d.alphabet();
    const Letter first = 0;
    const Word za = Word::generator(alphabet, first);

    GlobalSolution sol{Series(alphabet), solve_local_t(d, za, k_max), Series(alphabet)};
    GeneratorDerivation rest = d;
    rest -= GeneratorDerivation::inner(sol.t_first);
    if (!negligible(rest.value(first))) {
        throw InconsistentDerivation(Violation::residual, za, std::nullopt, {},
                                     "first generator not cleared by its local solution");
    }

    if (alphabet.size() >= 2) {
        const Letter second = 1;
        const Word zb = Word::generator(alphabet, second);
        const Series& phi = rest.value(second);
        // phi must be sum_k c_k (z_b z_a^k - z_a^k z_b) with k >= 1.
        for (const auto& [u, c] : phi.terms()) {
            if (std::abs(c) <= kExactTolerance) continue;
            if (u.length() < 2) {
                throw InconsistentDerivation(Violation::structure, zb, u, c,
                                             "unexpected coefficient at " + to_string(u));
            }
            const std::size_t k = u.length() - 1;
            const Word ak = power(za, k);
            const Word left_form = concat(zb, ak);
            const Word right_form = concat(ak, zb);
            const bool shaped = k >= 1 && (u == left_form || u == right_form);
            const Word& partner = u == left_form ? right_form : left_form;
            if (!shaped || std::abs(c + phi.coefficient(partner)) > kExactTolerance) {
                throw InconsistentDerivation(Violation::structure, zb, u, c,
                                             "unexpected coefficient at " + to_string(u));
            }
        }
        sol.t_second = drop_unit_coefficient(adjoint_compress(zb, phi));
        rest -= GeneratorDerivation::inner(sol.t_second);

        for (Letter g = 0; g < alphabet.size(); ++g) {
            if (negligible(rest.value(g))) continue;
            const auto& [u, c] = *rest.value(g).terms().begin();
            throw InconsistentDerivation(Violation::structure, Word::generator(alphabet, g), u, c,
                                         "generator not cleared once the first two vanish");
        }
    }

    sol.t = drop_unit_coefficient(sol.t_first + sol.t_second);
    if (!approx_equal(GeneratorDerivation::inner(sol.t), d)) {
        throw InconsistentDerivation(Violation::residual, za, std::nullopt, {},
                                     "recovered T does not reproduce D on the generators");
    }
    return sol;
}

Series solve_global_t(const GeneratorDerivation& d, std::optional<std::size_t> k_max) {
    return solve_global_t_detailed(d, k_max).t;
}

NormalApproxReport normal_approx_check(const GeneratorDerivation& d, const Series& t, const Series& phi,
                                       std::size_t k, const LetterSet& letters) {
    NormalApproxReport report;
    const Series averaged = cesaro(phi, k);
    const Series restricted = conditional_expectation(averaged, letters);
    report.truncated_identity = approx_equal(apply_derivation(d, restricted), inner_derivation(t, restricted));

    const LetterSet used = letters_of(phi);
    report.covers_letters = std::includes(letters.begin(), letters.end(), used.begin(), used.end());
    report.expectation_fixed = report.covers_letters && approx_equal(restricted, averaged);

    report.cesaro_error = l2_norm(inner_derivation(t, averaged) - inner_derivation(t, phi));
    const double deg = static_cast<double>(phi.degree().value_or(0));
    report.cesaro_bound = 2.0 * l1_norm(t) * (deg / static_cast<double>(k)) * l2_norm(phi);
    return report;
}

NormalApproxReport normal_approx_check(const Series& t, const Series& phi, std::size_t k,
                                       const LetterSet& letters) {
    return normal_approx_check(GeneratorDerivation::inner(t), t, phi, k, letters);
}

}  // namespace fsa
