#include "morphprobe/corpus.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "morphprobe/util.hpp"

namespace morphprobe {

TagOrdering::TagOrdering(std::vector<std::string> table) : table_(std::move(table)) {
    for (std::size_t i = 0; i < table_.size(); ++i)
        rank_.emplace(table_[i], static_cast<int>(i));
}

const TagOrdering& TagOrdering::default_order() {
    static const TagOrdering order(std::vector<std::string>{
        "V", "V.PTCP", "V.CVB", "V.MSDR", "N", "ADJ",
        "IND", "SBJV", "COND", "IMP", "OPT", "POT",
        "PRS", "PST", "FUT",
        "IPFV", "PFV", "PRF", "PROG", "HAB",
        "NFIN", "FIN",
        "1", "2", "3",
        "SG", "PL", "DU",
        "INFM", "FORM",
        "POS", "NEG",
        "ACT", "PASS", "MID",
    });
    return order;
}

bool TagOrdering::less(const std::string& a, const std::string& b) const {
    auto ia = rank_.find(a);
    auto ib = rank_.find(b);
    int ra = ia == rank_.end() ? static_cast<int>(table_.size()) : ia->second;
    int rb = ib == rank_.end() ? static_cast<int>(table_.size()) : ib->second;
    if (ra != rb) return ra < rb;
    return a < b;  // both unknown (or identical rank): code-point order
}

FeatureSet::FeatureSet(std::vector<std::string> tags, const TagOrdering& order)
    : tags_(std::move(tags)) {
    std::sort(tags_.begin(), tags_.end(),
              [&order](const std::string& a, const std::string& b) { return order.less(a, b); });
    tags_.erase(std::unique(tags_.begin(), tags_.end()), tags_.end());
}

bool FeatureSet::contains(const std::string& tag) const {
    return std::find(tags_.begin(), tags_.end(), tag) != tags_.end();
}

bool FeatureSet::contains_or_head(const std::string& tag) const {
    for (const auto& t : tags_) {
        if (t == tag) return true;
        if (t.size() > tag.size() && t.compare(0, tag.size(), tag) == 0 && t[tag.size()] == '.')
            return true;
    }
    return false;
}

std::string FeatureSet::serialize() const {
    return join(tags_, ";");
}

bool FeatureSet::operator==(const FeatureSet& other) const {
    // Construction canonicalizes, so set equality reduces to vector equality
    // as long as both sides were built under the same ordering. Fall back to
    // an order-free comparison when sizes match but vectors differ.
    if (tags_ == other.tags_) return true;
    if (tags_.size() != other.tags_.size()) return false;
    return std::is_permutation(tags_.begin(), tags_.end(), other.tags_.begin());
}

std::string Triple::identity() const {
    return lemma + "\t" + features.serialize() + "\t" + form;
}

bool Triple::operator<(const Triple& other) const {
    if (lemma != other.lemma) return lemma < other.lemma;
    std::string fa = features.serialize();
    std::string fb = other.features.serialize();
    if (fa != fb) return fa < fb;
    return form < other.form;
}

bool Triple::operator==(const Triple& other) const {
    return lemma == other.lemma && form == other.form && features == other.features;
}

Corpus::Corpus(std::string language, std::vector<Triple> triples, const TagOrdering& ordering)
    : language_(std::move(language)),
      triples_(std::move(triples)),
      ordering_(std::make_shared<TagOrdering>(ordering)) {
    std::sort(triples_.begin(), triples_.end());
    triples_.erase(std::unique(triples_.begin(), triples_.end()), triples_.end());
}

CorpusSummary Corpus::summarize() const {
    std::unordered_set<std::string> lemmas;
    std::unordered_set<std::string> feats;
    for (const auto& t : triples_) {
        lemmas.insert(t.lemma);
        feats.insert(t.features.serialize());
    }
    return CorpusSummary{static_cast<long>(lemmas.size()), static_cast<long>(feats.size()),
                         static_cast<long>(triples_.size())};
}

std::vector<std::string> Corpus::distinct_feature_serials() const {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    for (const auto& t : triples_) {
        std::string s = t.features.serialize();
        if (seen.insert(s).second) out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end());
    return out;
}

static bool has_whitespace(const std::string& s) {
    for (char c : s)
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f') return true;
    return false;
}

ParseResult parse_unimorph(std::string_view text, const LanguageConfig& config) {
    ParseResult result;
    std::vector<Triple> triples;
    std::vector<LineDiagnostic>& rejected = result.rejected;

    long line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view raw =
            nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        if (nl == std::string_view::npos && raw.empty()) break;  // no trailing newline artifact
        ++line_no;
        std::string line = strip_cr(std::string(raw));
        if (line.empty()) {
            ++result.n_blank;
            continue;
        }
        if (line[0] == '#') continue;

        auto cols = split_on(line, '\t');
        if (cols.size() != 3) {
            rejected.push_back({line_no, "expected 3 tab-separated columns, found " +
                                             std::to_string(cols.size())});
            continue;
        }
        const std::string& lemma = cols[0];
        const std::string& form = cols[1];
        if (lemma.empty() || form.empty()) {
            rejected.push_back({line_no, "empty lemma or form"});
            continue;
        }

        auto tags = split_on(cols[2], ';');
        bool bad = false;
        for (const auto& tag : tags) {
            if (tag.empty()) {
                rejected.push_back({line_no, "empty feature tag"});
                bad = true;
                break;
            }
            if (has_whitespace(tag)) {
                rejected.push_back({line_no, "feature tag contains whitespace: '" + tag + "'"});
                bad = true;
                break;
            }
            if (!config.inventory.empty() && !config.inventory.count(tag)) {
                rejected.push_back({line_no, "tag outside inventory: '" + tag + "'"});
                bad = true;
                break;
            }
        }
        if (bad) continue;

        triples.push_back(Triple{lemma, form, FeatureSet(std::move(tags), config.ordering)});
    }

    long before = static_cast<long>(triples.size());
    result.corpus = Corpus(config.language, std::move(triples), config.ordering);
    result.n_duplicates = before - static_cast<long>(result.corpus.triples().size());

    // Overabundance: same (lemma, features) cell filled by several forms.
    // Retained in the corpus, surfaced here.
    std::unordered_map<std::string, long> cell_forms;
    for (const auto& t : result.corpus.triples())
        ++cell_forms[t.lemma + "\t" + t.features.serialize()];
    for (const auto& [cell, n] : cell_forms)
        if (n > 1) ++result.n_overabundant_cells;
    return result;
}

Corpus filter_pos(const Corpus& corpus, const std::string& pos_tag) {
    std::vector<Triple> kept;
    for (const auto& t : corpus.triples())
        if (t.features.contains_or_head(pos_tag)) kept.push_back(t);
    return Corpus(corpus.language(), std::move(kept), corpus.ordering());
}

Corpus exclude_multiword(const Corpus& corpus) {
    std::vector<Triple> kept;
    for (const auto& t : corpus.triples())
        if (t.lemma.find(' ') == std::string::npos && t.form.find(' ') == std::string::npos)
            kept.push_back(t);
    return Corpus(corpus.language(), std::move(kept), corpus.ordering());
}

Corpus merge_corpora(const std::vector<Corpus>& parts) {
    if (parts.empty()) return Corpus();
    std::vector<Triple> all;
    for (const auto& c : parts)
        all.insert(all.end(), c.triples().begin(), c.triples().end());
    return Corpus(parts.front().language(), std::move(all), parts.front().ordering());
}

std::string tsv_line(const Triple& t) {
    return t.lemma + "\t" + t.form + "\t" + t.features.serialize();
}

std::string serialize_corpus(const Corpus& corpus) {
    CorpusSummary s = corpus.summarize();
    std::ostringstream out;
    out << "# morphprobe corpus\n";
    out << "# language: " << corpus.language() << "\n";
    out << "# lemmas: " << s.n_lemmas << "\n";
    out << "# feature_sets: " << s.n_feature_sets << "\n";
    out << "# triples: " << s.n_triples << "\n";
    for (const auto& t : corpus.triples()) out << tsv_line(t) << "\n";
    return out.str();
}

std::optional<std::string> corpus_header_language(std::string_view text) {
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line =
            nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
        if (line.empty() || line[0] != '#') break;
        constexpr std::string_view key = "# language: ";
        if (line.substr(0, key.size()) == key) {
            std::string lang(line.substr(key.size()));
            if (!lang.empty() && lang.back() == '\r') lang.pop_back();
            return lang;
        }
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    return std::nullopt;
}

}  // namespace morphprobe
