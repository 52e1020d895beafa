#ifndef MORPHPROBE_NORMALIZE_HPP
#define MORPHPROBE_NORMALIZE_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "morphprobe/corpus.hpp"

namespace morphprobe {

// Tag repair table: renames plus markers whose presence makes a triple
// unmappable. Rewrites must be confluent (no target is also a source), so
// applying the table twice equals applying it once.
class TagRewriteTable {
public:
    TagRewriteTable() = default;
    TagRewriteTable(std::vector<std::pair<std::string, std::string>> mappings,
                    std::vector<std::string> drop_markers);

    // File format: lines "MAP\tFROM\tTO" or "DROP\tTAG"; '#' comments.
    static TagRewriteTable parse(std::string_view text);
    std::string serialize() const;

    bool empty() const { return map_.empty() && drop_.empty(); }
    const std::map<std::string, std::string>& mappings() const { return map_; }
    const std::set<std::string>& drop_markers() const { return drop_; }

    std::string apply(const std::string& tag) const;
    bool drops(const std::string& tag) const { return drop_.count(tag) > 0; }

private:
    std::map<std::string, std::string> map_;
    std::set<std::string> drop_;
};

// Unmappable is a value, not a failure.
struct Canonicalized {
    std::optional<FeatureSet> features;
    std::string drop_reason;  // set when features is empty
};

Canonicalized canonicalize_feature_set(const std::vector<std::string>& raw_tags,
                                       const TagRewriteTable& table, const TagOrdering& ordering,
                                       const std::unordered_set<std::string>* inventory = nullptr);

struct DroppedTriple {
    Triple triple;
    std::string reason;
};

struct NormalizeResult {
    Corpus corpus;
    std::vector<DroppedTriple> dropped;
    long n_merged = 0;  // triples that became identical after rewriting
};

NormalizeResult normalize_corpus(const Corpus& corpus, const TagRewriteTable& table,
                                 const std::unordered_set<std::string>* inventory = nullptr);

// The Swahili repairs described for the shipped data: PRF and PFV both mark
// perfect aspect and are unified as PFV.
const TagRewriteTable& swahili_rewrite_table();

}  // namespace morphprobe

#endif
