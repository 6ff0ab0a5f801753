#pragma once

#include <filesystem>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cmsent/textprep.hpp"

namespace cmsent {

// Dictionary + suffix tagger resources, loaded from a sectioned text file:
//
//   [map]          optional; maps fine-grained tag names to the coarse set,
//   JJ<TAB>ADJ     one pair per line
//   [dict]
//   good<TAB>ADJ   word to tag (mapped names allowed once [map] was seen)
//   [suffix]
//   ly<TAB>ADV     tried in file order; a leading '-' on the suffix is ok
//   [default]
//   NOUN           single line; tag for words nothing else matched
//
// '#' starts a full-line comment. An empty [dict] section is an error.
struct TagResources {
    std::unordered_map<std::string, Pos> dictionary;
    std::vector<std::pair<std::string, Pos>> suffix_rules;  // tried in order
    Pos default_tag = Pos::Noun;
};

TagResources load_tag_resources(const std::filesystem::path& path);

// Tags every token that does not already carry a tag. Tokens marked
// Lang::Bn get Pos::Other; everything else goes dictionary, then suffix
// rules (first rule whose suffix is a proper suffix of the word wins),
// then the default tag. Surfaces are matched as-is (pipeline lowercases).
std::vector<TaggedToken> tag(std::vector<TaggedToken> tokens, const TagResources& res);

}  // namespace cmsent
