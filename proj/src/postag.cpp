#include "cmsent/postag.hpp"

#include <fstream>

#include "cmsent/error.hpp"

namespace cmsent {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return s.substr(b, e - b);
}

// "word<TAB or spaces>tag"
std::pair<std::string, std::string> split_pair(const std::string& line,
                                               const std::string& where) {
    const std::size_t cut = line.find_first_of(" \t");
    if (cut == std::string::npos)
        throw DataError(where + ": expected \"entry<TAB>tag\", got \"" + line + "\"");
    std::string left = trim(line.substr(0, cut));
    std::string right = trim(line.substr(cut + 1));
    if (left.empty() || right.empty())
        throw DataError(where + ": expected \"entry<TAB>tag\", got \"" + line + "\"");
    return {std::move(left), std::move(right)};
}

}  // namespace

TagResources load_tag_resources(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open tagger resources: " + path.string());

    TagResources res;
    std::unordered_map<std::string, Pos> tag_map;  // fine-grained name -> coarse
    bool have_default = false;

    auto resolve_tag = [&](const std::string& name, const std::string& where) -> Pos {
        if (auto p = pos_from_string(name)) return *p;
        auto it = tag_map.find(name);
        if (it != tag_map.end()) return it->second;
        throw DataError(where + ": unknown tag \"" + name + "\"");
    };

    enum class Section { None, Map, Dict, Suffix, Default };
    Section section = Section::None;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string where = path.string() + ":" + std::to_string(lineno);
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[') {
            if (line == "[map]") section = Section::Map;
            else if (line == "[dict]") section = Section::Dict;
            else if (line == "[suffix]") section = Section::Suffix;
            else if (line == "[default]") section = Section::Default;
            else throw DataError(where + ": unknown section " + line);
            continue;
        }
        switch (section) {
            case Section::None:
                throw DataError(where + ": entry before any section header");
            case Section::Map: {
                auto [name, coarse] = split_pair(line, where);
                auto p = pos_from_string(coarse);
                if (!p) throw DataError(where + ": map target must be a coarse tag, got \"" + coarse + "\"");
                tag_map[name] = *p;
                break;
            }
            case Section::Dict: {
                auto [word, tagname] = split_pair(line, where);
                res.dictionary[word] = resolve_tag(tagname, where);
                break;
            }
            case Section::Suffix: {
                auto [suffix, tagname] = split_pair(line, where);
                if (suffix.front() == '-') suffix.erase(0, 1);
                if (suffix.empty()) throw DataError(where + ": empty suffix");
                res.suffix_rules.emplace_back(suffix, resolve_tag(tagname, where));
                break;
            }
            case Section::Default: {
                if (have_default) throw DataError(where + ": second [default] entry");
                res.default_tag = resolve_tag(line, where);
                have_default = true;
                break;
            }
        }
    }
    if (res.dictionary.empty())
        throw DataError("tagger resources have an empty [dict] section: " + path.string());
    return res;
}

std::vector<TaggedToken> tag(std::vector<TaggedToken> tokens, const TagResources& res) {
    for (auto& t : tokens) {
        if (t.pos) continue;
        if (t.lang == Lang::Bn) {
            t.pos = Pos::Other;
            continue;
        }
        auto it = res.dictionary.find(t.surface);
        if (it != res.dictionary.end()) {
            t.pos = it->second;
            continue;
        }
        for (const auto& [suffix, pos] : res.suffix_rules) {
            if (t.surface.size() > suffix.size()
                && t.surface.compare(t.surface.size() - suffix.size(), suffix.size(), suffix) == 0) {
                t.pos = pos;
                break;
            }
        }
        if (!t.pos) t.pos = res.default_tag;
    }
    return tokens;
}

}  // namespace cmsent
