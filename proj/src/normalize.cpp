#include "morphprobe/normalize.hpp"

#include <sstream>

#include "morphprobe/util.hpp"

namespace morphprobe {

TagRewriteTable::TagRewriteTable(std::vector<std::pair<std::string, std::string>> mappings,
                                 std::vector<std::string> drop_markers) {
    for (auto& [from, to] : mappings) {
        if (map_.count(from))
            throw DataError("rewrite table lists source tag twice: '" + from + "'");
        map_.emplace(from, to);
    }
    for (const auto& [from, to] : map_) {
        if (map_.count(to))
            throw DataError("rewrite table is not confluent: '" + to +
                            "' is both a target and a source");
    }
    for (auto& tag : drop_markers) drop_.insert(std::move(tag));
}

TagRewriteTable TagRewriteTable::parse(std::string_view text) {
    std::vector<std::pair<std::string, std::string>> mappings;
    std::vector<std::string> drops;
    long line_no = 0;
    for (auto& line : split_on(text, '\n')) {
        ++line_no;
        line = strip_cr(std::move(line));
        if (line.empty() || line[0] == '#') continue;
        auto cols = split_on(line, '\t');
        if (cols[0] == "MAP" && cols.size() == 3 && !cols[1].empty() && !cols[2].empty()) {
            mappings.emplace_back(cols[1], cols[2]);
        } else if (cols[0] == "DROP" && cols.size() == 2 && !cols[1].empty()) {
            drops.push_back(cols[1]);
        } else {
            throw DataError("rewrite table line " + std::to_string(line_no) +
                            ": expected 'MAP\\tFROM\\tTO' or 'DROP\\tTAG'");
        }
    }
    return TagRewriteTable(std::move(mappings), std::move(drops));
}

std::string TagRewriteTable::serialize() const {
    std::ostringstream out;
    for (const auto& [from, to] : map_) out << "MAP\t" << from << "\t" << to << "\n";
    for (const auto& tag : drop_) out << "DROP\t" << tag << "\n";
    return out.str();
}

std::string TagRewriteTable::apply(const std::string& tag) const {
    auto it = map_.find(tag);
    return it == map_.end() ? tag : it->second;
}

Canonicalized canonicalize_feature_set(const std::vector<std::string>& raw_tags,
                                       const TagRewriteTable& table, const TagOrdering& ordering,
                                       const std::unordered_set<std::string>* inventory) {
    if (raw_tags.empty()) throw DataError("canonicalize_feature_set: empty tag list");
    std::vector<std::string> rewritten;
    rewritten.reserve(raw_tags.size());
    for (const auto& tag : raw_tags) {
        if (table.drops(tag)) return {std::nullopt, "drop marker tag: '" + tag + "'"};
        std::string out = table.apply(tag);
        if (inventory && !inventory->empty() && !inventory->count(out))
            return {std::nullopt, "tag outside inventory: '" + out + "'"};
        rewritten.push_back(std::move(out));
    }
    return {FeatureSet(std::move(rewritten), ordering), ""};
}

NormalizeResult normalize_corpus(const Corpus& corpus, const TagRewriteTable& table,
                                 const std::unordered_set<std::string>* inventory) {
    NormalizeResult result;
    std::vector<Triple> kept;
    for (const auto& t : corpus.triples()) {
        Canonicalized c =
            canonicalize_feature_set(t.features.tags(), table, corpus.ordering(), inventory);
        if (!c.features) {
            result.dropped.push_back({t, c.drop_reason});
            continue;
        }
        kept.push_back(Triple{t.lemma, t.form, std::move(*c.features)});
    }
    long before = static_cast<long>(kept.size());
    result.corpus = Corpus(corpus.language(), std::move(kept), corpus.ordering());
    result.n_merged = before - static_cast<long>(result.corpus.triples().size());
    return result;
}

const TagRewriteTable& swahili_rewrite_table() {
    static const TagRewriteTable table({{"PRF", "PFV"}}, {});
    return table;
}

}  // namespace morphprobe
