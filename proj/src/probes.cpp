#include "morphprobe/probes.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

#include "morphprobe/utf8.hpp"
#include "morphprobe/util.hpp"

namespace morphprobe {

using nlohmann::json;

namespace {

// Swahili affix inventories used by {stem-of-gold} and the shipped
// taxonomies. Longest-first so "ni" wins over "n...".
const std::vector<std::string> kPersonPrefixes = {"ni", "u", "a", "tu", "m", "wa"};
const std::vector<std::string> kTenseMarkers = {"ta", "li", "me", "na"};

std::vector<std::string> longest_first(std::vector<std::string> v) {
    std::stable_sort(v.begin(), v.end(), [](const std::string& a, const std::string& b) {
        return a.size() > b.size();
    });
    return v;
}

std::string stem_of_gold(const std::string& gold) {
    std::string rest = gold;
    for (const auto& p : longest_first(kPersonPrefixes)) {
        if (rest.size() > p.size() && rest.compare(0, p.size(), p) == 0) {
            rest = rest.substr(p.size());
            break;
        }
    }
    for (const auto& t : longest_first(kTenseMarkers)) {
        if (rest.size() > t.size() && rest.compare(0, t.size(), t) == 0) {
            rest = rest.substr(t.size());
            break;
        }
    }
    return rest;
}

void replace_all(std::string& s, std::string_view what, std::string_view with) {
    std::size_t pos = 0;
    while ((pos = s.find(what, pos)) != std::string::npos) {
        s.replace(pos, what.size(), with);
        pos += with.size();
    }
}

// Expands "(e)" optionals into all concrete alternatives.
void expand_optionals(const std::string& tmpl, std::vector<std::string>& out) {
    std::size_t pos = tmpl.find("(e)");
    if (pos == std::string::npos) {
        out.push_back(tmpl);
        return;
    }
    expand_optionals(tmpl.substr(0, pos) + "e" + tmpl.substr(pos + 3), out);
    expand_optionals(tmpl.substr(0, pos) + tmpl.substr(pos + 3), out);
}

}  // namespace

bool RelevancePredicate::matches(const Triple& triple) const {
    for (const auto& tag : exclude_tags)
        if (triple.features.contains(tag)) return false;
    switch (kind) {
        case Kind::ContainsAll:
            for (const auto& tag : tags)
                if (!triple.features.contains(tag)) return false;
            return true;
        case Kind::ExactSet: {
            std::vector<std::string> want(tags);
            std::vector<std::string> have(triple.features.tags());
            std::sort(want.begin(), want.end());
            std::sort(have.begin(), have.end());
            return want == have;
        }
        case Kind::LemmaSuffixIn:
            for (const auto& suffix : suffixes)
                if (ends_with(triple.lemma, suffix)) return true;
            return false;
    }
    return false;
}

bool ErrorPattern::matches(const std::string& lemma, const std::string& gold,
                           const std::string& predicted) const {
    switch (kind) {
        case Kind::Template: {
            for (const auto& tmpl : templates) {
                std::string inst = tmpl;
                replace_all(inst, "{lemma}", lemma);
                replace_all(inst, "{gold}", gold);
                replace_all(inst, "{stem-of-gold}", stem_of_gold(gold));
                std::vector<std::string> alts;
                expand_optionals(inst, alts);
                for (const auto& alt : alts)
                    if (alt == predicted) return true;
            }
            return false;
        }
        case Kind::StressOnly:
            return predicted != gold &&
                   strip_accents_utf8(predicted) == strip_accents_utf8(gold);
        case Kind::VowelSubstitution: {
            std::u32string g = strip_accents(utf8_decode(gold));
            std::u32string p = strip_accents(utf8_decode(predicted));
            if (g.size() != p.size()) return false;
            std::u32string from = utf8_decode(subst_from);
            std::u32string to = utf8_decode(subst_to);
            if (to.size() != 1) return false;
            bool substituted = false;
            for (std::size_t i = 0; i < g.size(); ++i) {
                if (g[i] == p[i]) continue;
                if (from.find(g[i]) != std::u32string::npos && p[i] == to[0]) {
                    substituted = true;
                    continue;
                }
                return false;
            }
            return substituted;
        }
        case Kind::PrefixSwap: {
            for (const auto& pg : affixes) {
                if (gold.size() <= pg.size() || gold.compare(0, pg.size(), pg) != 0) continue;
                std::string rest = gold.substr(pg.size());
                for (const auto& pp : affixes) {
                    if (pp == pg) continue;
                    if (predicted == pp + rest) return true;
                }
            }
            return false;
        }
        case Kind::InfixSwap: {
            for (const auto& tg : affixes) {
                for (std::size_t pos = gold.find(tg, 1); pos != std::string::npos;
                     pos = gold.find(tg, pos + 1)) {
                    for (const auto& tp : affixes) {
                        if (tp == tg) continue;
                        std::string candidate = gold;
                        candidate.replace(pos, tg.size(), tp);
                        if (candidate == predicted) return true;
                    }
                }
            }
            return false;
        }
        case Kind::InfixMissing: {
            for (const auto& tg : affixes) {
                for (std::size_t pos = gold.find(tg, 1); pos != std::string::npos;
                     pos = gold.find(tg, pos + 1)) {
                    std::string candidate = gold;
                    candidate.erase(pos, tg.size());
                    if (candidate == predicted) return true;
                }
            }
            return false;
        }
        case Kind::CatchAll:
            return true;
    }
    return false;
}

bool ProbeSpec::is_relevant(const Triple& triple) const {
    for (const auto& pred : relevance)
        if (pred.matches(triple)) return true;
    return false;
}

bool evaluate_relevance(const ProbeSpec& probe, const Triple& triple) {
    return probe.is_relevant(triple);
}

namespace {

RelevancePredicate contains_all(std::vector<std::string> tags,
                                std::vector<std::string> exclude = {}) {
    RelevancePredicate p;
    p.kind = RelevancePredicate::Kind::ContainsAll;
    p.tags = std::move(tags);
    p.exclude_tags = std::move(exclude);
    return p;
}

RelevancePredicate exact_set(std::vector<std::string> tags) {
    RelevancePredicate p;
    p.kind = RelevancePredicate::Kind::ExactSet;
    p.tags = std::move(tags);
    return p;
}

RelevancePredicate lemma_suffix_in(std::vector<std::string> suffixes) {
    RelevancePredicate p;
    p.kind = RelevancePredicate::Kind::LemmaSuffixIn;
    p.suffixes = std::move(suffixes);
    return p;
}

PartitionRule exclude_all() {
    PartitionRule r;
    r.kind = PartitionRule::Kind::ExcludeAll;
    return r;
}

PartitionRule k_feature_sets(int k) {
    PartitionRule r;
    r.kind = PartitionRule::Kind::KRandomFeatureSets;
    r.k = k;
    return r;
}

PartitionRule k_lemmas(int k) {
    PartitionRule r;
    r.kind = PartitionRule::Kind::KRandomLemmas;
    r.k = k;
    return r;
}

PartitionRule grouped(std::vector<PartitionRule::Group> groups) {
    PartitionRule r;
    r.kind = PartitionRule::Kind::GroupedKRandom;
    r.groups = std::move(groups);
    return r;
}

ErrorPattern tpl(std::string taxon, std::vector<std::string> templates) {
    ErrorPattern p;
    p.taxon = std::move(taxon);
    p.kind = ErrorPattern::Kind::Template;
    p.templates = std::move(templates);
    return p;
}

ErrorPattern nonsense() {
    ErrorPattern p;
    p.taxon = "nonsense";
    p.kind = ErrorPattern::Kind::CatchAll;
    return p;
}

std::vector<ErrorPattern> english_taxonomy() {
    std::vector<ErrorPattern> t;
    t.push_back(tpl("bare-lemma", {"{lemma}"}));
    t.push_back(tpl("ing", {"{lemma}ing"}));
    t.push_back(tpl("ed", {"{lemma}(e)d"}));
    t.push_back(tpl("es", {"{lemma}(e)s"}));
    t.push_back(nonsense());
    return t;
}

std::vector<ErrorPattern> spanish_taxonomy() {
    std::vector<ErrorPattern> t;
    ErrorPattern er;
    er.taxon = "er-form";
    er.kind = ErrorPattern::Kind::VowelSubstitution;
    er.subst_from = "ai";
    er.subst_to = "e";
    t.push_back(er);
    ErrorPattern afe;
    afe.taxon = "a-for-e";
    afe.kind = ErrorPattern::Kind::VowelSubstitution;
    afe.subst_from = "e";
    afe.subst_to = "a";
    t.push_back(afe);
    ErrorPattern ife;
    ife.taxon = "i-for-e";
    ife.kind = ErrorPattern::Kind::VowelSubstitution;
    ife.subst_from = "e";
    ife.subst_to = "i";
    t.push_back(ife);
    ErrorPattern stress;
    stress.taxon = "stress-only";
    stress.kind = ErrorPattern::Kind::StressOnly;
    t.push_back(stress);
    t.push_back(nonsense());
    return t;
}

std::vector<ErrorPattern> swahili_taxonomy() {
    std::vector<ErrorPattern> t;
    ErrorPattern person;
    person.taxon = "wrong-person-prefix";
    person.kind = ErrorPattern::Kind::PrefixSwap;
    person.affixes = kPersonPrefixes;
    t.push_back(person);
    ErrorPattern tense;
    tense.taxon = "wrong-tense-infix";
    tense.kind = ErrorPattern::Kind::InfixSwap;
    tense.affixes = kTenseMarkers;
    t.push_back(tense);
    ErrorPattern missing;
    missing.taxon = "missing-tense-infix";
    missing.kind = ErrorPattern::Kind::InfixMissing;
    missing.affixes = kTenseMarkers;
    t.push_back(missing);
    t.push_back(nonsense());
    return t;
}

TagRewriteSpec nfin_to_prs(TagRewriteSpec::Phase phase) {
    TagRewriteSpec r;
    r.phase = phase;
    r.table = TagRewriteTable({{"NFIN", "PRS"}}, {});
    return r;
}

std::vector<ProbeSpec> build_catalog() {
    std::vector<ProbeSpec> catalog;

    // en-NFIN: NFIN triples are never trainable; success requires
    // defaulting to the bare lemma.
    {
        ProbeSpec p;
        p.name = "en-NFIN";
        p.language = "en";
        p.relevance = {contains_all({"NFIN"})};
        p.partition = exclude_all();
        p.taxonomy = english_taxonomy();
        catalog.push_back(std::move(p));
    }
    // en-PRS: the en-NFIN split with NFIN relabeled PRS after construction,
    // so the same seed yields the same split modulo the tag name.
    {
        ProbeSpec p;
        p.name = "en-PRS";
        p.language = "en";
        p.rewrite = nfin_to_prs(TagRewriteSpec::Phase::PostSplit);
        p.relevance = {contains_all({"NFIN"})};
        p.partition = exclude_all();
        p.taxonomy = english_taxonomy();
        catalog.push_back(std::move(p));
    }
    // en-PRS3SG: relabel first, then withhold the PRS;3;SG cell entirely.
    {
        ProbeSpec p;
        p.name = "en-PRS3SG";
        p.language = "en";
        p.rewrite = nfin_to_prs(TagRewriteSpec::Phase::PreSplit);
        p.relevance = {exact_set({"V", "PRS", "3", "SG"})};
        p.partition = exclude_all();
        p.taxonomy = english_taxonomy();
        catalog.push_back(std::move(p));
    }
    // es-FUT: two future feature sets trainable, the rest test-only.
    {
        ProbeSpec p;
        p.name = "es-FUT";
        p.language = "es";
        p.relevance = {contains_all({"IND", "FUT"})};
        p.partition = k_feature_sets(2);
        p.taxonomy = spanish_taxonomy();
        catalog.push_back(std::move(p));
    }
    // es-AGGL: conditional, imperfect, and future partitioned independently,
    // two trainable sets each.
    {
        ProbeSpec p;
        p.name = "es-AGGL";
        p.language = "es";
        p.relevance = {contains_all({"COND"}), contains_all({"IND", "PST", "IPFV"}),
                       contains_all({"IND", "FUT"})};
        p.partition = grouped({{contains_all({"COND"}), 2},
                               {contains_all({"IND", "PST", "IPFV"}), 2},
                               {contains_all({"IND", "FUT"}), 2}});
        p.taxonomy = spanish_taxonomy();
        catalog.push_back(std::move(p));
    }
    // es-PSTPFV: fusional preterite cells withheld except two.
    {
        ProbeSpec p;
        p.name = "es-PSTPFV";
        p.language = "es";
        p.relevance = {contains_all({"IND", "PST", "PFV"})};
        p.partition = k_feature_sets(2);
        p.taxonomy = spanish_taxonomy();
        catalog.push_back(std::move(p));
    }
    // es-IR: conjugation-class generalization; only 50 -ir lemmas trainable.
    {
        ProbeSpec p;
        p.name = "es-IR";
        p.language = "es";
        p.relevance = {lemma_suffix_in({"ir"})};
        p.partition = k_lemmas(50);
        p.taxonomy = spanish_taxonomy();
        catalog.push_back(std::move(p));
    }
    // es-IRAR: all -ar and -ir verbs withheld from training.
    {
        ProbeSpec p;
        p.name = "es-IRAR";
        p.language = "es";
        p.relevance = {lemma_suffix_in({"ir", "ar"})};
        p.partition = exclude_all();
        p.taxonomy = spanish_taxonomy();
        catalog.push_back(std::move(p));
    }
    // sw-1PL: two 1;PL feature sets trainable.
    {
        ProbeSpec p;
        p.name = "sw-1PL";
        p.language = "sw";
        p.relevance = {contains_all({"1", "PL"})};
        p.partition = k_feature_sets(2);
        p.taxonomy = swahili_taxonomy();
        catalog.push_back(std::move(p));
    }
    // sw-NON3: one trainable feature set per non-3rd person/number cell.
    {
        ProbeSpec p;
        p.name = "sw-NON3";
        p.language = "sw";
        p.relevance = {contains_all({"1", "SG"}), contains_all({"1", "PL"}),
                       contains_all({"2", "SG"}), contains_all({"2", "PL"})};
        p.partition = grouped({{contains_all({"1", "SG"}), 1},
                               {contains_all({"1", "PL"}), 1},
                               {contains_all({"2", "SG"}), 1},
                               {contains_all({"2", "PL"}), 1}});
        p.taxonomy = swahili_taxonomy();
        catalog.push_back(std::move(p));
    }
    // sw-FUT: like sw-1PL but the marker is a string infix.
    {
        ProbeSpec p;
        p.name = "sw-FUT";
        p.language = "sw";
        p.relevance = {contains_all({"FUT"})};
        p.partition = k_feature_sets(2);
        p.taxonomy = swahili_taxonomy();
        catalog.push_back(std::move(p));
    }
    // sw-PST: simple past only; the fusional past perfective stays trainable
    // as a distractor, so PFV-bearing sets are not relevant.
    {
        ProbeSpec p;
        p.name = "sw-PST";
        p.language = "sw";
        p.relevance = {contains_all({"PST"}, {"PFV"})};
        p.partition = k_feature_sets(2);
        p.taxonomy = swahili_taxonomy();
        catalog.push_back(std::move(p));
    }
    // sw-PSTPFV: past perfective withheld, simple past as the distractor.
    {
        ProbeSpec p;
        p.name = "sw-PSTPFV";
        p.language = "sw";
        p.relevance = {contains_all({"PST", "PFV"})};
        p.partition = k_feature_sets(2);
        p.taxonomy = swahili_taxonomy();
        catalog.push_back(std::move(p));
    }
    return catalog;
}

}  // namespace

const std::vector<ProbeSpec>& builtin_probes() {
    static const std::vector<ProbeSpec> catalog = build_catalog();
    return catalog;
}

const ProbeSpec* find_probe(const std::string& name) {
    for (const auto& p : builtin_probes())
        if (p.name == name) return &p;
    return nullptr;
}

namespace {

std::vector<std::string> distinct_keys(const std::vector<Triple>& triples, bool by_lemma) {
    std::set<std::string> keys;
    for (const auto& t : triples) keys.insert(by_lemma ? t.lemma : t.features.serialize());
    return {keys.begin(), keys.end()};
}

std::pair<std::vector<std::string>, std::vector<std::string>> draw_k(
    std::vector<std::string> keys, int k, Rng& rng, const std::string& what) {
    if (static_cast<int>(keys.size()) < k)
        throw DataError("partition needs " + std::to_string(k) + " " + what + ", found only " +
                        std::to_string(keys.size()));
    shuffle(keys, rng);
    std::vector<std::string> allowed(keys.begin(), keys.begin() + k);
    std::vector<std::string> withheld(keys.begin() + k, keys.end());
    return {std::move(allowed), std::move(withheld)};
}

}  // namespace

PartitionOutcome apply_partition(const ProbeSpec& probe, const std::vector<Triple>& relevant,
                                 Rng& rng) {
    if (relevant.empty()) throw DataError("probe '" + probe.name + "': no relevant triples");
    const PartitionRule& rule = probe.partition;
    PartitionOutcome out;

    switch (rule.kind) {
        case PartitionRule::Kind::ExcludeAll:
            out.test_only = distinct_keys(relevant, false);
            break;
        case PartitionRule::Kind::KRandomFeatureSets: {
            auto [allowed, withheld] = draw_k(distinct_keys(relevant, false), rule.k, rng,
                                              "distinct relevant feature sets");
            out.train_allowed = std::move(allowed);
            out.test_only = std::move(withheld);
            break;
        }
        case PartitionRule::Kind::KRandomLemmas: {
            auto [allowed, withheld] =
                draw_k(distinct_keys(relevant, true), rule.k, rng, "distinct relevant lemmas");
            out.train_allowed = std::move(allowed);
            out.test_only = std::move(withheld);
            break;
        }
        case PartitionRule::Kind::GroupedKRandom: {
            // Keys must fall in at most one group; ungrouped relevant keys
            // stay withheld.
            std::map<std::string, const Triple*> representative;
            for (const auto& t : relevant)
                representative.emplace(t.features.serialize(), &t);
            std::map<std::string, int> group_of;
            for (const auto& [key, triple] : representative) {
                int hits = 0;
                int which = -1;
                for (std::size_t g = 0; g < rule.groups.size(); ++g) {
                    if (rule.groups[g].predicate.matches(*triple)) {
                        ++hits;
                        which = static_cast<int>(g);
                    }
                }
                if (hits > 1)
                    throw DataError("probe '" + probe.name + "': feature set '" + key +
                                    "' matches more than one partition group");
                if (hits == 1) group_of[key] = which;
            }
            for (std::size_t g = 0; g < rule.groups.size(); ++g) {
                std::vector<std::string> keys;
                for (const auto& [key, idx] : group_of)
                    if (idx == static_cast<int>(g)) keys.push_back(key);
                auto [allowed, withheld] = draw_k(std::move(keys), rule.groups[g].k, rng,
                                                  "feature sets in partition group " +
                                                      std::to_string(g + 1));
                out.train_allowed.insert(out.train_allowed.end(), allowed.begin(), allowed.end());
                out.test_only.insert(out.test_only.end(), withheld.begin(), withheld.end());
            }
            for (const auto& [key, triple] : representative)
                if (!group_of.count(key)) out.test_only.push_back(key);
            break;
        }
    }
    std::sort(out.train_allowed.begin(), out.train_allowed.end());
    std::sort(out.test_only.begin(), out.test_only.end());
    return out;
}

namespace {

std::string predicate_kind_name(RelevancePredicate::Kind kind) {
    switch (kind) {
        case RelevancePredicate::Kind::ContainsAll: return "feature-contains-all";
        case RelevancePredicate::Kind::ExactSet: return "feature-contains-exact-set";
        case RelevancePredicate::Kind::LemmaSuffixIn: return "lemma-suffix-in";
    }
    return "?";
}

RelevancePredicate::Kind predicate_kind_from(const std::string& name) {
    if (name == "feature-contains-all") return RelevancePredicate::Kind::ContainsAll;
    if (name == "feature-contains-exact-set") return RelevancePredicate::Kind::ExactSet;
    if (name == "lemma-suffix-in") return RelevancePredicate::Kind::LemmaSuffixIn;
    throw DataError("unknown relevance kind: '" + name + "'");
}

json predicate_to_json(const RelevancePredicate& p) {
    json j;
    j["kind"] = predicate_kind_name(p.kind);
    if (!p.tags.empty()) j["tags"] = p.tags;
    if (!p.suffixes.empty()) j["suffixes"] = p.suffixes;
    if (!p.exclude_tags.empty()) j["exclude_tags"] = p.exclude_tags;
    return j;
}

RelevancePredicate predicate_from_json(const json& j) {
    RelevancePredicate p;
    p.kind = predicate_kind_from(j.at("kind").get<std::string>());
    if (j.contains("tags")) p.tags = j["tags"].get<std::vector<std::string>>();
    if (j.contains("suffixes")) p.suffixes = j["suffixes"].get<std::vector<std::string>>();
    if (j.contains("exclude_tags"))
        p.exclude_tags = j["exclude_tags"].get<std::vector<std::string>>();
    return p;
}

std::string pattern_kind_name(ErrorPattern::Kind kind) {
    switch (kind) {
        case ErrorPattern::Kind::Template: return "template";
        case ErrorPattern::Kind::StressOnly: return "stress-only";
        case ErrorPattern::Kind::VowelSubstitution: return "vowel-substitution";
        case ErrorPattern::Kind::PrefixSwap: return "prefix-swap";
        case ErrorPattern::Kind::InfixSwap: return "infix-swap";
        case ErrorPattern::Kind::InfixMissing: return "infix-missing";
        case ErrorPattern::Kind::CatchAll: return "nonsense";
    }
    return "?";
}

ErrorPattern::Kind pattern_kind_from(const std::string& name) {
    if (name == "template") return ErrorPattern::Kind::Template;
    if (name == "stress-only") return ErrorPattern::Kind::StressOnly;
    if (name == "vowel-substitution") return ErrorPattern::Kind::VowelSubstitution;
    if (name == "prefix-swap") return ErrorPattern::Kind::PrefixSwap;
    if (name == "infix-swap") return ErrorPattern::Kind::InfixSwap;
    if (name == "infix-missing") return ErrorPattern::Kind::InfixMissing;
    if (name == "nonsense") return ErrorPattern::Kind::CatchAll;
    throw DataError("unknown error pattern kind: '" + name + "'");
}

json pattern_to_json(const ErrorPattern& p) {
    json j;
    j["taxon"] = p.taxon;
    j["kind"] = pattern_kind_name(p.kind);
    if (!p.templates.empty()) j["templates"] = p.templates;
    if (!p.subst_from.empty()) j["from"] = p.subst_from;
    if (!p.subst_to.empty()) j["to"] = p.subst_to;
    if (!p.affixes.empty()) j["affixes"] = p.affixes;
    return j;
}

ErrorPattern pattern_from_json(const json& j) {
    ErrorPattern p;
    p.taxon = j.at("taxon").get<std::string>();
    p.kind = pattern_kind_from(j.at("kind").get<std::string>());
    if (j.contains("templates")) p.templates = j["templates"].get<std::vector<std::string>>();
    if (j.contains("from")) p.subst_from = j["from"].get<std::string>();
    if (j.contains("to")) p.subst_to = j["to"].get<std::string>();
    if (j.contains("affixes")) p.affixes = j["affixes"].get<std::vector<std::string>>();
    return p;
}

std::string partition_kind_name(PartitionRule::Kind kind) {
    switch (kind) {
        case PartitionRule::Kind::ExcludeAll: return "exclude-all";
        case PartitionRule::Kind::KRandomFeatureSets: return "k-random-feature-sets";
        case PartitionRule::Kind::GroupedKRandom: return "grouped-k-random";
        case PartitionRule::Kind::KRandomLemmas: return "k-random-lemmas";
    }
    return "?";
}

PartitionRule::Kind partition_kind_from(const std::string& name) {
    if (name == "exclude-all") return PartitionRule::Kind::ExcludeAll;
    if (name == "k-random-feature-sets") return PartitionRule::Kind::KRandomFeatureSets;
    if (name == "grouped-k-random") return PartitionRule::Kind::GroupedKRandom;
    if (name == "k-random-lemmas") return PartitionRule::Kind::KRandomLemmas;
    throw DataError("unknown partition kind: '" + name + "'");
}

}  // namespace

std::string probe_to_json(const ProbeSpec& probe) {
    json j;
    j["name"] = probe.name;
    j["language"] = probe.language;
    if (probe.rewrite.phase != TagRewriteSpec::Phase::None) {
        json r;
        r["phase"] = probe.rewrite.phase == TagRewriteSpec::Phase::PreSplit ? "pre" : "post";
        json maps = json::array();
        for (const auto& [from, to] : probe.rewrite.table.mappings())
            maps.push_back(json::array({from, to}));
        r["map"] = maps;
        if (!probe.rewrite.table.drop_markers().empty())
            r["drop"] = std::vector<std::string>(probe.rewrite.table.drop_markers().begin(),
                                                 probe.rewrite.table.drop_markers().end());
        j["rewrite"] = r;
    }
    json rel = json::array();
    for (const auto& p : probe.relevance) rel.push_back(predicate_to_json(p));
    j["relevance"] = rel;

    json part;
    part["kind"] = partition_kind_name(probe.partition.kind);
    if (probe.partition.kind == PartitionRule::Kind::KRandomFeatureSets ||
        probe.partition.kind == PartitionRule::Kind::KRandomLemmas)
        part["k"] = probe.partition.k;
    if (probe.partition.kind == PartitionRule::Kind::GroupedKRandom) {
        json groups = json::array();
        for (const auto& g : probe.partition.groups) {
            json gj;
            gj["predicate"] = predicate_to_json(g.predicate);
            gj["k"] = g.k;
            groups.push_back(gj);
        }
        part["groups"] = groups;
    }
    j["partition"] = part;

    json tax = json::array();
    for (const auto& p : probe.taxonomy) tax.push_back(pattern_to_json(p));
    j["taxonomy"] = tax;
    return j.dump(2) + "\n";
}

ProbeSpec probe_from_json(std::string_view json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw DataError(std::string("probe file is not valid JSON: ") + e.what());
    }
    try {
        ProbeSpec probe;
        probe.name = j.at("name").get<std::string>();
        probe.language = j.at("language").get<std::string>();
        if (j.contains("rewrite")) {
            const json& r = j["rewrite"];
            std::string phase = r.at("phase").get<std::string>();
            if (phase == "pre")
                probe.rewrite.phase = TagRewriteSpec::Phase::PreSplit;
            else if (phase == "post")
                probe.rewrite.phase = TagRewriteSpec::Phase::PostSplit;
            else
                throw DataError("rewrite phase must be 'pre' or 'post'");
            std::vector<std::pair<std::string, std::string>> mappings;
            for (const auto& m : r.at("map"))
                mappings.emplace_back(m.at(0).get<std::string>(), m.at(1).get<std::string>());
            std::vector<std::string> drops;
            if (r.contains("drop")) drops = r["drop"].get<std::vector<std::string>>();
            probe.rewrite.table = TagRewriteTable(std::move(mappings), std::move(drops));
        }
        for (const auto& p : j.at("relevance")) probe.relevance.push_back(predicate_from_json(p));
        if (probe.relevance.empty()) throw DataError("probe has no relevance predicates");
        const json& part = j.at("partition");
        probe.partition.kind = partition_kind_from(part.at("kind").get<std::string>());
        if (part.contains("k")) probe.partition.k = part["k"].get<int>();
        if (part.contains("groups")) {
            for (const auto& g : part["groups"]) {
                PartitionRule::Group group;
                group.predicate = predicate_from_json(g.at("predicate"));
                group.k = g.at("k").get<int>();
                probe.partition.groups.push_back(std::move(group));
            }
        }
        if (j.contains("taxonomy"))
            for (const auto& p : j["taxonomy"]) probe.taxonomy.push_back(pattern_from_json(p));
        return probe;
    } catch (const json::exception& e) {
        throw DataError(std::string("probe file missing or mistyped field: ") + e.what());
    }
}

}  // namespace morphprobe
