#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "fsa/cohomology.hpp"
#include "fsa/derivations.hpp"
#include "fsa/series.hpp"

namespace fsa {

using Json = nlohmann::ordered_json;

// Malformed or inconsistent JSON input.
class FormatError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// {"alphabet": m, "terms": [{"word": "z0z1", "re": .., "im": ..}, ..]}
Json to_json(const Series& s);
Series series_from_json(const Json& j);

// {"alphabet": m, "values": {"0": <series>, ..}}; absent generators map to 0.
Json to_json(const GeneratorDerivation& d);
GeneratorDerivation derivation_from_json(const Json& j);

// {"arity": n, "alphabet": m, "terms": [{"words": ["z0", "e"], "re": .., "im": ..}, ..]}
Json to_json(const Cochain& c);
Cochain cochain_from_json(const Json& j);

// Parses text, converting parser errors to FormatError.
Json parse_json_text(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace fsa
