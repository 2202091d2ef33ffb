#include "fsa/word.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace fsa {

Alphabet::Alphabet(std::size_t size) : size_(size) {
    if (size == 0) throw std::invalid_argument("alphabet must have at least one letter");
}

Word::Word(Alphabet alphabet, std::vector<Letter> letters)
    : alphabet_(alphabet), letters_(std::move(letters)) {
    for (Letter a : letters_) {
        if (!alphabet_.contains(a)) {
            throw std::invalid_argument("letter z" + std::to_string(a) + " outside alphabet of size " +
                                        std::to_string(alphabet_.size()));
        }
    }
}

Word Word::generator(Alphabet alphabet, Letter a) { return Word(alphabet, {a}); }

Word Word::subword(std::size_t pos, std::size_t count) const {
    if (pos + count > letters_.size()) throw std::out_of_range("subword out of range");
    Word out(alphabet_);
    out.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(pos),
                        letters_.begin() + static_cast<std::ptrdiff_t>(pos + count));
    return out;
}

std::strong_ordering operator<=>(const Word& u, const Word& v) noexcept {
    if (auto c = u.length() <=> v.length(); c != 0) return c;
    if (auto c = std::lexicographical_compare_three_way(u.letters_.begin(), u.letters_.end(),
                                                        v.letters_.begin(), v.letters_.end());
        c != 0) {
        return c;
    }
    return u.alphabet_.size() <=> v.alphabet_.size();
}

namespace {

void require_same_alphabet(const Word& u, const Word& v) {
    if (u.alphabet() != v.alphabet()) throw std::invalid_argument("words over different alphabets");
}

bool starts_with(std::span<const Letter> s, std::span<const Letter> prefix) {
    return prefix.size() <= s.size() && std::equal(prefix.begin(), prefix.end(), s.begin());
}

bool ends_with(std::span<const Letter> s, std::span<const Letter> suffix) {
    return suffix.size() <= s.size() && std::equal(suffix.begin(), suffix.end(), s.end() - static_cast<std::ptrdiff_t>(suffix.size()));
}

}  // namespace

Word concat(const Word& u, const Word& v) {
    require_same_alphabet(u, v);
    std::vector<Letter> letters;
    letters.reserve(u.length() + v.length());
    letters.insert(letters.end(), u.letters().begin(), u.letters().end());
    letters.insert(letters.end(), v.letters().begin(), v.letters().end());
    return Word(u.alphabet(), std::move(letters));
}

Word power(const Word& w, std::size_t k) {
    std::vector<Letter> letters;
    letters.reserve(w.length() * k);
    for (std::size_t i = 0; i < k; ++i) letters.insert(letters.end(), w.letters().begin(), w.letters().end());
    return Word(w.alphabet(), std::move(letters));
}

std::optional<Word> left_divide(const Word& u, const Word& w) {
    if (u.alphabet() != w.alphabet() || !starts_with(w.letters(), u.letters())) return std::nullopt;
    return w.suffix(w.length() - u.length());
}

std::optional<Word> right_divide(const Word& u, const Word& w) {
    if (u.alphabet() != w.alphabet() || !ends_with(w.letters(), u.letters())) return std::nullopt;
    return w.prefix(w.length() - u.length());
}

std::strong_ordering compare(const Word& u, const Word& v) {
    require_same_alphabet(u, v);
    return u <=> v;
}

Word min_word(std::span<const Word> words) {
    if (words.empty()) throw std::invalid_argument("min_word of an empty set");
    const Alphabet alphabet = words.front().alphabet();
    for (const Word& w : words) require_same_alphabet(words.front(), w);

    std::size_t n = words.front().length();
    for (const Word& w : words) n = std::min(n, w.length());
    std::vector<const Word*> survivors;
    for (const Word& w : words) {
        if (w.length() == n) survivors.push_back(&w);
    }

    // Stage k keeps the survivors whose k-th letter is least.
    for (std::size_t k = 0; k < n; ++k) {
        Letter least = static_cast<Letter>(alphabet.size());
        for (const Word* w : survivors) least = std::min(least, (*w)[k]);
        std::erase_if(survivors, [&](const Word* w) { return (*w)[k] != least; });
    }
    return *survivors.front();
}

bool commutes(const Word& u, const Word& w) { return concat(u, w) == concat(w, u); }

PrimitiveRoot primitive_root(const Word& w) {
    if (w.is_unit()) throw std::invalid_argument("primitive root of the unit word");
    const std::size_t n = w.length();
    for (std::size_t p = 1; p <= n; ++p) {
        if (n % p != 0) continue;
        bool periodic = true;
        for (std::size_t i = p; i < n && periodic; ++i) periodic = w[i] == w[i - p];
        if (periodic) return {w.prefix(p), n / p};
    }
    return {w, 1};  // unreachable: p = n always succeeds
}

std::optional<Word> conjugate_transport(const Word& w, const Word& u) {
    const Word uw = concat(u, w);
    if (!starts_with(uw.letters(), w.letters())) return std::nullopt;
    return uw.suffix(u.length());
}

std::size_t cancellation_min_power(const Word& w, const Word& u) {
    if (w.is_unit()) throw std::invalid_argument("power cancellation requires w != e");
    // k |w| >= |u| + |w|
    return (u.length() + w.length() + w.length() - 1) / w.length();
}

bool power_cancellation_holds(const Word& w, const Word& u, const Word& v, std::size_t k) {
    if (w.is_unit()) throw std::invalid_argument("power cancellation requires w != e");
    if (k < cancellation_min_power(w, u)) throw std::invalid_argument("power cancellation requires k >= |u|/|w| + 1");
    const Word wk = power(w, k);
    const bool hypothesis = concat(v, wk) == concat(wk, u);
    return !hypothesis || (commutes(u, w) && u == v);
}

std::vector<Word> enumerate_words_of_length(Alphabet alphabet, std::size_t len) {
    std::vector<Word> out;
    std::vector<Letter> letters(len, 0);
    const auto m = static_cast<Letter>(alphabet.size());
    while (true) {
        out.emplace_back(alphabet, letters);
        // Odometer increment, last letter fastest: yields increasing order.
        std::size_t i = len;
        while (i > 0 && letters[i - 1] + 1 == m) letters[--i] = 0;
        if (i == 0) break;
        ++letters[i - 1];
    }
    return out;
}

std::vector<Word> enumerate_words(Alphabet alphabet, std::size_t max_len) {
    std::vector<Word> out;
    for (std::size_t len = 0; len <= max_len; ++len) {
        auto layer = enumerate_words_of_length(alphabet, len);
        out.insert(out.end(), std::make_move_iterator(layer.begin()), std::make_move_iterator(layer.end()));
    }
    return out;
}

std::string to_string(const Word& w) {
    if (w.is_unit()) return "e";
    std::string out;
    for (Letter a : w.letters()) {
        out += 'z';
        out += std::to_string(a);
    }
    return out;
}

Word parse_word(std::string_view text, Alphabet alphabet) {
    if (text == "e") return Word::unit(alphabet);
    if (text.empty()) throw std::invalid_argument("empty word text (the unit is written \"e\")");
    std::vector<Letter> letters;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (text[pos] != 'z') throw std::invalid_argument("malformed word \"" + std::string(text) + "\"");
        ++pos;
        const char* first = text.data() + pos;
        const char* last = text.data() + text.size();
        Letter a = 0;
        auto [ptr, ec] = std::from_chars(first, last, a);
        if (ec != std::errc{} || ptr == first) {
            throw std::invalid_argument("malformed word \"" + std::string(text) + "\"");
        }
        // Reject leading zeros such as z01 so that printing is the inverse of parsing.
        if (*first == '0' && ptr - first > 1) {
            throw std::invalid_argument("malformed word \"" + std::string(text) + "\"");
        }
        letters.push_back(a);
        pos = static_cast<std::size_t>(ptr - text.data());
    }
    return Word(alphabet, std::move(letters));
}

}  // namespace fsa

std::size_t std::hash<fsa::Word>::operator()(const fsa::Word& w) const noexcept {
    std::size_t h = w.alphabet().size() * 0x9e3779b97f4a7c15ULL;
    for (fsa::Letter a : w.letters()) h = (h ^ (a + 0x9e3779b9U)) * 0x100000001b3ULL;
    return h ^ w.length();
}
