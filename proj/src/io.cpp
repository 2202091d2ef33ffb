#include "fsa/io.hpp"

#include <fstream>
#include <sstream>

namespace fsa {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) throw FormatError("expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) throw FormatError(std::string("missing field \"") + key + "\"");
    return *it;
}

std::size_t size_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw FormatError(std::string("field \"") + key + "\" must be a nonnegative integer");
    }
    return v.get<std::size_t>();
}

Alphabet alphabet_field(const Json& j) {
    const std::size_t m = size_field(j, "alphabet");
    if (m == 0) throw FormatError("alphabet must have at least one letter");
    return Alphabet(m);
}

Complex coefficient_of(const Json& term) {
    const Json& re = field(term, "re");
    const Json& im = field(term, "im");
    if (!re.is_number() || !im.is_number()) throw FormatError("coefficients must be numbers");
    return {re.get<double>(), im.get<double>()};
}

Word word_of(const Json& j, Alphabet alphabet) {
    if (!j.is_string()) throw FormatError("word must be a string");
    try {
        return parse_word(j.get<std::string>(), alphabet);
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
}

const Json& terms_array(const Json& j) {
    const Json& terms = field(j, "terms");
    if (!terms.is_array()) throw FormatError("\"terms\" must be an array");
    return terms;
}

}  // namespace

Json to_json(const Series& s) {
    Json terms = Json::array();
    for (const auto& [w, c] : s.terms()) terms.push_back({{"word", to_string(w)}, {"re", c.real()}, {"im", c.imag()}});
    return {{"alphabet", s.alphabet().size()}, {"terms", std::move(terms)}};
}

Series series_from_json(const Json& j) {
    const Alphabet alphabet = alphabet_field(j);
    Series s(alphabet);
    for (const Json& term : terms_array(j)) s.add_term(word_of(field(term, "word"), alphabet), coefficient_of(term));
    return s;
}

Json to_json(const GeneratorDerivation& d) {
    Json values = Json::object();
    for (Letter a = 0; a < d.alphabet().size(); ++a) values[std::to_string(a)] = to_json(d.value(a));
    return {{"alphabet", d.alphabet().size()}, {"values", std::move(values)}};
}

GeneratorDerivation derivation_from_json(const Json& j) {
    const Alphabet alphabet = alphabet_field(j);
    const Json& values = field(j, "values");
    if (!values.is_object()) throw FormatError("\"values\" must be an object");
    GeneratorDerivation d(alphabet);
    for (const auto& [key, value] : values.items()) {
        Letter a = 0;
        try {
            std::size_t used = 0;
            const unsigned long parsed = std::stoul(key, &used);
            if (used != key.size() || parsed >= alphabet.size()) throw std::out_of_range(key);
            a = static_cast<Letter>(parsed);
        } catch (const std::logic_error&) {
            throw FormatError("generator key \"" + key + "\" is not a letter index");
        }
        Series s = series_from_json(value);
        if (s.alphabet() != alphabet) throw FormatError("value for generator " + key + " has a different alphabet");
        d.set_value(a, std::move(s));
    }
    return d;
}

Json to_json(const Cochain& c) {
    Json terms = Json::array();
    for (const auto& [words, v] : c.table()) {
        Json ws = Json::array();
        for (const Word& w : words) ws.push_back(to_string(w));
        terms.push_back({{"words", std::move(ws)}, {"re", v.real()}, {"im", v.imag()}});
    }
    return {{"arity", c.arity()}, {"alphabet", c.alphabet().size()}, {"terms", std::move(terms)}};
}

Cochain cochain_from_json(const Json& j) {
    const std::size_t arity = size_field(j, "arity");
    const Alphabet alphabet = alphabet_field(j);
    Cochain c(arity, alphabet);
    for (const Json& term : terms_array(j)) {
        const Json& ws = field(term, "words");
        if (!ws.is_array() || ws.size() != arity) throw FormatError("\"words\" must list one word per slot");
        WordTuple words;
        for (const Json& w : ws) words.push_back(word_of(w, alphabet));
        c.add(words, coefficient_of(term));
    }
    return c;
}

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(e.what());
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write " + path);
    out << text;
    if (!out) throw FormatError("write to " + path + " failed");
}

}  // namespace fsa
