#include <doctest.h>

#include <cfloat>
#include <cmath>

#include "fsa/io.hpp"
#include "fsa/random.hpp"

using namespace fsa;

namespace {

const Alphabet A2(2);

Word w2(std::string_view s) { return parse_word(s, A2); }

}  // namespace

TEST_CASE("series json shape") {
    const Series s = Complex(1.0, -0.5) * Series::basis(w2("z0z1")) + 2.0 * Series::unit(A2);
    const Json j = to_json(s);
    CHECK(j["alphabet"] == 2);
    CHECK(j["terms"][0]["word"] == "e");
    CHECK(j["terms"][1]["word"] == "z0z1");
    CHECK(j["terms"][1]["im"] == -0.5);
    CHECK(series_from_json(j) == s);
}

TEST_CASE("round trips are lossless through text") {
    Rng rng(101);
    std::uniform_real_distribution<double> any(-1e6, 1e6);
    for (int i = 0; i < 100; ++i) {
        Series s(Alphabet(3));
        for (int k = 0; k < 6; ++k) s.add_term(random_word(rng, Alphabet(3), 4), Complex(any(rng), any(rng) * 1e-9));
        s.add_term(Word::unit(Alphabet(3)), Complex(DBL_MIN, std::nextafter(1.0, 2.0)));
        CHECK(series_from_json(parse_json_text(to_json(s).dump())) == s);

        const Cochain c = random_cochain(rng, A2, 1 + i % 3, 3, 5);
        CHECK(cochain_from_json(parse_json_text(to_json(c).dump())) == c);

        const GeneratorDerivation d = GeneratorDerivation::inner(random_series(rng, A2, 3, 4));
        CHECK(derivation_from_json(parse_json_text(to_json(d).dump())) == d);
    }
}

TEST_CASE("derivation json") {
    const Json j = parse_json_text(R"({"alphabet": 2, "values": {"1": {"alphabet": 2, "terms": [
        {"word": "z1z0", "re": 1, "im": 0}, {"word": "z0z1", "re": -1, "im": 0}]}}})");
    const GeneratorDerivation d = derivation_from_json(j);
    CHECK(d.value(0).is_zero());
    CHECK(d.value(1) == Series::basis(w2("z1z0")) - Series::basis(w2("z0z1")));
    CHECK(to_json(d)["values"].size() == 2);
}

TEST_CASE("cochain json") {
    const Json j = parse_json_text(R"({"arity": 2, "alphabet": 2, "terms": [
        {"words": ["z0", "z1z0"], "re": 1.5, "im": 2}]})");
    const Cochain c = cochain_from_json(j);
    CHECK(c.arity() == 2);
    CHECK(c.at({w2("z0"), w2("z1z0")}) == Complex(1.5, 2.0));
    const Cochain scalar = cochain_from_json(parse_json_text(R"({"arity": 0, "alphabet": 1, "terms": [
        {"words": [], "re": 3, "im": 0}]})"));
    CHECK(scalar.at({}) == Complex(3.0));
}

TEST_CASE("malformed input") {
    const char* bad[] = {
        "{",
        R"([])",
        R"({"terms": []})",
        R"({"alphabet": 0, "terms": []})",
        R"({"alphabet": -1, "terms": []})",
        R"({"alphabet": 2, "terms": {}})",
        R"({"alphabet": 2, "terms": [{"word": "z2", "re": 1, "im": 0}]})",
        R"({"alphabet": 2, "terms": [{"word": "z0", "re": "1", "im": 0}]})",
        R"({"alphabet": 2, "terms": [{"word": "z0", "re": 1}]})",
        R"({"alphabet": 2, "terms": [{"word": 3, "re": 1, "im": 0}]})",
    };
    for (const char* text : bad) {
        CHECK_THROWS_AS(series_from_json(parse_json_text(text)), FormatError);
    }
    CHECK_THROWS_AS(derivation_from_json(parse_json_text(R"({"alphabet": 2, "values": {"2": {"alphabet": 2, "terms": []}}})")),
                    FormatError);
    CHECK_THROWS_AS(derivation_from_json(parse_json_text(R"({"alphabet": 2, "values": {"x": {"alphabet": 2, "terms": []}}})")),
                    FormatError);
    CHECK_THROWS_AS(derivation_from_json(parse_json_text(R"({"alphabet": 2, "values": {"0": {"alphabet": 3, "terms": []}}})")),
                    FormatError);
    CHECK_THROWS_AS(cochain_from_json(parse_json_text(R"({"arity": 2, "alphabet": 2, "terms": [
        {"words": ["z0"], "re": 1, "im": 0}]})")),
                    FormatError);
    CHECK_THROWS_AS(read_text_file("/nonexistent/file.json"), FormatError);
}
