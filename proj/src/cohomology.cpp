#include "fsa/cohomology.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace fsa {

Cochain Cochain::scalar(Alphabet alphabet, Complex value) {
    Cochain c(0, alphabet);
    c.add({}, value);
    return c;
}

Complex Cochain::at(const WordTuple& words) const {
    auto it = table_.find(words);
    return it == table_.end() ? Complex() : it->second;
}

void Cochain::check_tuple(const WordTuple& words) const {
    if (words.size() != arity_) throw std::invalid_argument("tuple size does not match cochain arity");
    for (const Word& w : words) {
        if (w.alphabet() != alphabet_) throw std::invalid_argument("tuple word over a different alphabet");
    }
}

void Cochain::add(const WordTuple& words, Complex c) {
    check_tuple(words);
    auto [it, inserted] = table_.try_emplace(words, Complex());
    it->second += c;
    if (std::abs(it->second) <= kPruneEpsilon) table_.erase(it);
}

Complex Cochain::evaluate(std::span<const Series> args) const {
    if (args.size() != arity_) throw std::invalid_argument("argument count does not match cochain arity");
    Complex total;
    for (const auto& [words, c] : table_) {
        Complex term = c;
        for (std::size_t i = 0; i < arity_ && term != Complex(); ++i) term *= args[i].coefficient(words[i]);
        total += term;
    }
    return total;
}

Cochain& Cochain::operator+=(const Cochain& other) {
    if (other.arity_ != arity_ || other.alphabet_ != alphabet_) {
        throw std::invalid_argument("cochains of different shape");
    }
    for (const auto& [words, c] : other.table_) add(words, c);
    return *this;
}

Cochain& Cochain::operator*=(Complex c) {
    for (auto it = table_.begin(); it != table_.end();) {
        it->second *= c;
        if (std::abs(it->second) <= kPruneEpsilon) {
            it = table_.erase(it);
        } else {
            ++it;
        }
    }
    return *this;
}

bool approx_equal(const Cochain& a, const Cochain& b, double tol) {
    if (a.arity() != b.arity() || a.alphabet() != b.alphabet()) return false;
    for (const auto& [words, c] : a.table()) {
        if (std::abs(c - b.at(words)) > tol) return false;
    }
    for (const auto& [words, c] : b.table()) {
        if (!a.table().contains(words) && std::abs(c) > tol) return false;
    }
    return true;
}

Complex module_left(Complex gamma, const Series& phi) { return gamma * phi.coefficient(Word::unit(phi.alphabet())); }

Complex module_right(const Series& phi, Complex gamma) { return phi.coefficient(Word::unit(phi.alphabet())) * gamma; }

CuttingPair cut(const Word& w) {
    if (w.is_unit()) return {w, w};
    return {w.prefix(1), w.suffix(w.length() - 1)};
}

Cochain coboundary(const Cochain& phi) {
    const std::size_t n = phi.arity();
    const Word e = Word::unit(phi.alphabet());
    Cochain out(n + 1, phi.alphabet());
    const double last_sign = (n + 1) % 2 == 0 ? 1.0 : -1.0;
    for (const auto& [s, c] : phi.table()) {
        // a_1 . phi(a_2, ..) picks the e-coefficient of a_1.
        WordTuple head;
        head.reserve(n + 1);
        head.push_back(e);
        head.insert(head.end(), s.begin(), s.end());
        out.add(head, c);

        // phi(.., a_i a_{i+1}, ..): every two-factor splitting of the i-th entry.
        const double sign_base = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double sign = (i + 1) % 2 == 0 ? sign_base : -sign_base;
            const Word& target = s[i];
            for (std::size_t split = 0; split <= target.length(); ++split) {
                WordTuple t;
                t.reserve(n + 1);
                t.insert(t.end(), s.begin(), s.begin() + static_cast<std::ptrdiff_t>(i));
                t.push_back(target.prefix(split));
                t.push_back(target.suffix(target.length() - split));
                t.insert(t.end(), s.begin() + static_cast<std::ptrdiff_t>(i + 1), s.end());
                out.add(t, sign * c);
            }
        }

        WordTuple tail(s.begin(), s.end());
        tail.push_back(e);
        out.add(tail, last_sign * c);
    }
    return out;
}

bool is_cocycle(const Cochain& phi) {
    if (phi.arity() == 0) throw std::invalid_argument("is_cocycle requires arity >= 1");
    return coboundary(phi).is_zero();
}

NotACocycle::NotACocycle(WordTuple witness, Complex value)
    : std::invalid_argument("not a cocycle"), witness_(std::move(witness)), value_(value) {}

namespace {

void require_cocycle(const Cochain& phi) {
    if (phi.arity() < 2) throw std::invalid_argument("homotopy requires arity >= 2");
    const Cochain d = coboundary(phi);
    if (!d.is_zero()) {
        const auto& [witness, value] = *d.table().begin();
        throw NotACocycle(witness, value);
    }
}

}  // namespace

Cochain homotopy(const Cochain& phi) {
    require_cocycle(phi);
    const std::size_t n = phi.arity();
    Cochain psi(n - 1, phi.alphabet());
    for (const auto& [s, c] : phi.table()) {
        if (s[0].length() == 1) {
            WordTuple t;
            t.reserve(n - 1);
            t.push_back(concat(s[0], s[1]));
            t.insert(t.end(), s.begin() + 2, s.end());
            psi.add(t, -c);
        } else if (s[0].is_unit() && s[1].is_unit()) {
            WordTuple t;
            t.reserve(n - 1);
            t.push_back(s[0]);
            t.insert(t.end(), s.begin() + 2, s.end());
            psi.add(t, c);
        }
    }
    return psi;
}

Complex homotopy_via_upsilon(const Cochain& phi, std::span<const Series> args) {
    require_cocycle(phi);
    if (args.size() + 1 != phi.arity()) throw std::invalid_argument("homotopy takes arity - 1 arguments");
    const Alphabet alphabet = phi.alphabet();
    std::vector<Series> full;
    full.reserve(phi.arity());
    full.emplace_back(alphabet);
    full.emplace_back(alphabet);
    full.insert(full.end(), args.begin() + 1, args.end());

    Complex total;
    for (Letter a = 0; a < alphabet.size(); ++a) {
        const Word za = Word::generator(alphabet, a);
        full[0] = Series::basis(za);
        full[1] = adjoint_compress(za, upsilon(args[0], a));
        total -= phi.evaluate(full);
    }
    const Word e = Word::unit(alphabet);
    full[0] = Series::basis(e);
    full[1] = Series::basis(e);
    total += args[0].coefficient(e) * phi.evaluate(full);
    return total;
}

std::vector<Cochain> h1_generator_cocycles(Alphabet alphabet) {
    std::vector<Cochain> out;
    for (Letter a = 0; a < alphabet.size(); ++a) {
        Cochain delta(1, alphabet);
        delta.add({Word::generator(alphabet, a)}, 1.0);
        out.push_back(std::move(delta));
    }
    return out;
}

namespace {

struct CoboundaryMatrix {
    std::vector<Word> unknowns;
    Eigen::MatrixXd matrix;
};

// Column j is the table of coboundary(delta_{unknowns[j]}).
CoboundaryMatrix one_cochain_coboundary_matrix(Alphabet alphabet, std::size_t max_len) {
    CoboundaryMatrix cm{enumerate_words(alphabet, max_len), {}};
    std::map<WordTuple, Eigen::Index> rows;
    std::vector<Cochain> images;
    for (const Word& w : cm.unknowns) {
        Cochain delta(1, alphabet);
        delta.add({w}, 1.0);
        images.push_back(coboundary(delta));
        for (const auto& [t, c] : images.back().table()) rows.try_emplace(t, static_cast<Eigen::Index>(rows.size()));
    }
    cm.matrix = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()),
                                      static_cast<Eigen::Index>(cm.unknowns.size()));
    for (std::size_t j = 0; j < images.size(); ++j) {
        for (const auto& [t, c] : images[j].table()) cm.matrix(rows.at(t), static_cast<Eigen::Index>(j)) = c.real();
    }
    return cm;
}

constexpr double kRankThreshold = 1e-9;

}  // namespace

std::size_t one_cocycle_dimension(Alphabet alphabet, std::size_t max_len) {
    const auto cm = one_cochain_coboundary_matrix(alphabet, max_len);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(cm.matrix);
    lu.setThreshold(kRankThreshold);
    return cm.unknowns.size() - static_cast<std::size_t>(lu.rank());
}

std::vector<Cochain> one_cocycle_kernel(Alphabet alphabet, std::size_t max_len) {
    const auto cm = one_cochain_coboundary_matrix(alphabet, max_len);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(cm.matrix);
    lu.setThreshold(kRankThreshold);
    std::vector<Cochain> out;
    if (lu.rank() == cm.matrix.cols()) return out;
    const Eigen::MatrixXd kernel = lu.kernel();
    for (Eigen::Index j = 0; j < kernel.cols(); ++j) {
        Cochain c(1, alphabet);
        for (Eigen::Index i = 0; i < kernel.rows(); ++i) {
            if (std::abs(kernel(i, j)) > kRankThreshold) c.add({cm.unknowns[static_cast<std::size_t>(i)]}, kernel(i, j));
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::size_t cochain_rank(std::span<const Cochain> family) {
    if (family.empty()) return 0;
    std::map<WordTuple, Eigen::Index> rows;
    for (const Cochain& c : family) {
        if (c.arity() != family.front().arity()) throw std::invalid_argument("cochains of different arity");
        for (const auto& [t, v] : c.table()) rows.try_emplace(t, static_cast<Eigen::Index>(rows.size()));
    }
    if (rows.empty()) return 0;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows.size()),
                                                static_cast<Eigen::Index>(family.size()));
    for (std::size_t j = 0; j < family.size(); ++j) {
        for (const auto& [t, v] : family[j].table()) m(rows.at(t), static_cast<Eigen::Index>(j)) = v;
    }
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(m);
    lu.setThreshold(kRankThreshold);
    return static_cast<std::size_t>(lu.rank());
}

}  // namespace fsa
