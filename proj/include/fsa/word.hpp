#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fsa {

using Letter = std::uint32_t;

// A finite alphabet {z_0, ..., z_{m-1}}. Letters are ordered by index.
class Alphabet {
public:
    explicit Alphabet(std::size_t size);

    std::size_t size() const noexcept { return size_; }
    bool contains(Letter a) const noexcept { return a < size_; }

    friend bool operator==(Alphabet, Alphabet) = default;

private:
    std::size_t size_;
};

// An element of the free semigroup over an alphabet. The empty word is the unit e.
//
// Words are immutable values. The built-in ordering (operator<=>) is the
// length-first, then letter-by-letter order, which is also the order used for
// every enumeration and every associative container in this library.
class Word {
public:
    explicit Word(Alphabet alphabet) : alphabet_(alphabet) {}
    Word(Alphabet alphabet, std::vector<Letter> letters);

    static Word unit(Alphabet alphabet) { return Word(alphabet); }
    static Word generator(Alphabet alphabet, Letter a);

    Alphabet alphabet() const noexcept { return alphabet_; }
    std::span<const Letter> letters() const noexcept { return letters_; }
    std::size_t length() const noexcept { return letters_.size(); }
    bool is_unit() const noexcept { return letters_.empty(); }
    Letter operator[](std::size_t i) const { return letters_[i]; }

    // Subword [pos, pos + count).
    Word subword(std::size_t pos, std::size_t count) const;
    Word prefix(std::size_t count) const { return subword(0, count); }
    Word suffix(std::size_t count) const { return subword(length() - count, count); }

    friend bool operator==(const Word&, const Word&) = default;
    friend std::strong_ordering operator<=>(const Word& u, const Word& v) noexcept;

private:
    Alphabet alphabet_;
    std::vector<Letter> letters_;
};

inline std::size_t length(const Word& w) noexcept { return w.length(); }

// Juxtaposition uv. Throws std::invalid_argument on mixed alphabets.
Word concat(const Word& u, const Word& v);
Word power(const Word& w, std::size_t k);

// v with w = uv, if u left-divides w.
std::optional<Word> left_divide(const Word& u, const Word& w);
// v with w = vu, if u right-divides w.
std::optional<Word> right_divide(const Word& u, const Word& w);

// Length first, ties broken at the first differing letter. Throws on mixed alphabets.
std::strong_ordering compare(const Word& u, const Word& v);

// Least element of a nonempty set, found by filtering on length and then on
// one letter position at a time. Throws std::invalid_argument on an empty set.
Word min_word(std::span<const Word> words);

bool commutes(const Word& u, const Word& w);

struct PrimitiveRoot {
    Word root;
    std::size_t exponent;
};

// Shortest v with w = v^m. Throws std::invalid_argument for w = e.
PrimitiveRoot primitive_root(const Word& w);

// The unique v with uw = wv, when one exists.
std::optional<Word> conjugate_transport(const Word& w, const Word& u);

// Smallest k with k >= |u|/|w| + 1.
std::size_t cancellation_min_power(const Word& w, const Word& u);

// Instance check of: v w^k = w^k u  implies  uw = wu and u = v.
// Requires w != e and k >= |u|/|w| + 1; throws std::invalid_argument otherwise.
bool power_cancellation_holds(const Word& w, const Word& u, const Word& v, std::size_t k);

// All words of length <= max_len in increasing order.
std::vector<Word> enumerate_words(Alphabet alphabet, std::size_t max_len);
// All words of length exactly len in increasing order.
std::vector<Word> enumerate_words_of_length(Alphabet alphabet, std::size_t len);

// Text form: "e" or z<i> blocks, e.g. "z0z1z0".
std::string to_string(const Word& w);
Word parse_word(std::string_view text, Alphabet alphabet);

}  // namespace fsa

template <>
struct std::hash<fsa::Word> {
    std::size_t operator()(const fsa::Word& w) const noexcept;
};
