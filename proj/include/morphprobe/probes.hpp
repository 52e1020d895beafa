#ifndef MORPHPROBE_PROBES_HPP
#define MORPHPROBE_PROBES_HPP

#include <string>
#include <vector>

#include "morphprobe/corpus.hpp"
#include "morphprobe/normalize.hpp"
#include "morphprobe/rng.hpp"

namespace morphprobe {

struct RelevancePredicate {
    enum class Kind { ContainsAll, ExactSet, LemmaSuffixIn };
    Kind kind = Kind::ContainsAll;
    std::vector<std::string> tags;      // ContainsAll / ExactSet payload
    std::vector<std::string> suffixes;  // LemmaSuffixIn payload
    std::vector<std::string> exclude_tags;  // none of these may be present

    bool matches(const Triple& triple) const;
};

struct PartitionRule {
    enum class Kind { ExcludeAll, KRandomFeatureSets, GroupedKRandom, KRandomLemmas };
    struct Group {
        RelevancePredicate predicate;
        int k = 1;
    };
    Kind kind = Kind::ExcludeAll;
    int k = 0;
    std::vector<Group> groups;

    // Partition keys are serialized feature sets, except KRandomLemmas
    // where they are lemmas.
    bool keyed_by_lemma() const { return kind == Kind::KRandomLemmas; }
};

// One classifier in an ordered error taxonomy; first match wins and the
// final catch-all is always "nonsense".
struct ErrorPattern {
    enum class Kind {
        Template,           // templates with {lemma}/{gold}/{stem-of-gold} and (e) optionals
        StressOnly,         // equal after accent stripping
        VowelSubstitution,  // gold chars in `from` replaced by `to`, length-preserving
        PrefixSwap,         // person prefix exchanged within `affixes`
        InfixSwap,          // tense marker exchanged within `affixes`
        InfixMissing,       // tense marker deleted
        CatchAll,
    };
    std::string taxon;
    Kind kind = Kind::CatchAll;
    std::vector<std::string> templates;
    std::string subst_from;  // set of gold-side chars (code points)
    std::string subst_to;    // single predicted-side char
    std::vector<std::string> affixes;

    bool matches(const std::string& lemma, const std::string& gold,
                 const std::string& predicted) const;
};

struct TagRewriteSpec {
    enum class Phase { None, PreSplit, PostSplit };
    Phase phase = Phase::None;
    TagRewriteTable table;
};

struct ProbeSpec {
    std::string name;
    std::string language;
    TagRewriteSpec rewrite;
    std::vector<RelevancePredicate> relevance;  // any-of
    PartitionRule partition;
    std::vector<ErrorPattern> taxonomy;

    bool is_relevant(const Triple& triple) const;
};

bool evaluate_relevance(const ProbeSpec& probe, const Triple& triple);

// The 13 shipped probes: en-NFIN en-PRS en-PRS3SG, es-FUT es-AGGL es-PSTPFV
// es-IR es-IRAR, sw-1PL sw-NON3 sw-FUT sw-PST sw-PSTPFV.
const std::vector<ProbeSpec>& builtin_probes();
const ProbeSpec* find_probe(const std::string& name);

struct PartitionOutcome {
    std::vector<std::string> train_allowed;  // keys whose triples may train
    std::vector<std::string> test_only;      // keys withheld for test
};

// Seeded key partition per the probe's rule. Keys are drawn from the
// relevant triples; both lists come back sorted for stable metadata.
PartitionOutcome apply_partition(const ProbeSpec& probe, const std::vector<Triple>& relevant,
                                 Rng& rng);

// Declarative probe files (JSON).
std::string probe_to_json(const ProbeSpec& probe);
ProbeSpec probe_from_json(std::string_view json_text);

}  // namespace morphprobe

#endif
