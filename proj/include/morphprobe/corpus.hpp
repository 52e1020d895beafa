#ifndef MORPHPROBE_CORPUS_HPP
#define MORPHPROBE_CORPUS_HPP

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace morphprobe {

// Total order over feature tags. Tags listed in the table sort by table
// position; tags outside the table sort after all listed ones, by code point.
// The table doubles as the tag inventory when the language is closed.
class TagOrdering {
public:
    TagOrdering() = default;
    explicit TagOrdering(std::vector<std::string> table);

    // Shared default covering the UniMorph verb tags of the three shipped
    // languages; unknown tags fall back to code-point order after it.
    static const TagOrdering& default_order();

    bool less(const std::string& a, const std::string& b) const;
    bool contains(const std::string& tag) const { return rank_.count(tag) > 0; }
    const std::vector<std::string>& table() const { return table_; }

private:
    std::vector<std::string> table_;
    std::unordered_map<std::string, int> rank_;
};

// A set of morphological tags with a canonical display order. Construction
// deduplicates and sorts, so equal sets compare equal regardless of the
// order tags arrived in, and serialization is stable.
class FeatureSet {
public:
    FeatureSet() = default;
    FeatureSet(std::vector<std::string> tags, const TagOrdering& order);

    const std::vector<std::string>& tags() const { return tags_; }
    bool empty() const { return tags_.empty(); }
    bool contains(const std::string& tag) const;
    // Head segment match: "V" also matches compound tags such as "V.PTCP".
    bool contains_or_head(const std::string& tag) const;
    std::string serialize() const;  // tags joined by ';' in canonical order

    bool operator==(const FeatureSet& other) const;
    bool operator!=(const FeatureSet& other) const { return !(*this == other); }

private:
    std::vector<std::string> tags_;  // canonical order
};

struct Triple {
    std::string lemma;
    std::string form;
    FeatureSet features;

    // Identity used for dedup, disjointness checks, and canonical sorting.
    std::string identity() const;
    // Canonical order: (lemma, serialized features, form), code-point-wise.
    bool operator<(const Triple& other) const;
    bool operator==(const Triple& other) const;
};

struct CorpusSummary {
    long n_lemmas = 0;
    long n_feature_sets = 0;
    long n_triples = 0;
    bool operator==(const CorpusSummary&) const = default;
};

struct LanguageConfig {
    std::string language = "und";
    TagOrdering ordering = TagOrdering::default_order();
    // Empty inventory = open: any tag is accepted. Non-empty = closed: tags
    // outside it are rejected at parse time (unless normalization handles
    // them downstream).
    std::unordered_set<std::string> inventory;
};

class Corpus {
public:
    Corpus() = default;
    Corpus(std::string language, std::vector<Triple> triples, const TagOrdering& ordering);

    const std::string& language() const { return language_; }
    const std::vector<Triple>& triples() const { return triples_; }
    const TagOrdering& ordering() const { return *ordering_; }

    CorpusSummary summarize() const;
    std::vector<std::string> distinct_feature_serials() const;

private:
    std::string language_ = "und";
    std::vector<Triple> triples_;  // deduplicated, canonically sorted
    std::shared_ptr<const TagOrdering> ordering_ =
        std::make_shared<TagOrdering>(TagOrdering::default_order());
};

struct LineDiagnostic {
    long line = 0;
    std::string reason;
};

struct ParseResult {
    Corpus corpus;
    std::vector<LineDiagnostic> rejected;
    long n_blank = 0;
    long n_duplicates = 0;        // lines merged away by dedup
    long n_overabundant_cells = 0;  // (lemma, features) pairs with >1 form; retained
};

// UniMorph TSV: lemma TAB form TAB ";"-joined tags. Malformed rows become
// diagnostics, not failures. '#' lines and blank lines are skipped.
ParseResult parse_unimorph(std::string_view text, const LanguageConfig& config);

Corpus filter_pos(const Corpus& corpus, const std::string& pos_tag);
Corpus exclude_multiword(const Corpus& corpus);

Corpus merge_corpora(const std::vector<Corpus>& parts);

// Canonical corpus file: '#' header with language and counts, then sorted
// deduplicated rows in the same TSV layout.
std::string serialize_corpus(const Corpus& corpus);
std::string tsv_line(const Triple& t);

// Reads language id from a canonical corpus header if present.
std::optional<std::string> corpus_header_language(std::string_view text);

}  // namespace morphprobe

#endif
