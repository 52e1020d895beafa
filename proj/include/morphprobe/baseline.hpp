#ifndef MORPHPROBE_BASELINE_HPP
#define MORPHPROBE_BASELINE_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "morphprobe/corpus.hpp"

namespace morphprobe {

// One whole-string edit: form = prepend + lemma-with-strip-chars-removed +
// append, conditioned on the lemma ending with lemma_suffix. All string
// counts are in code points.
struct EditRule {
    std::string lemma_suffix;
    std::string prepend;
    long strip = 0;
    std::string append;
    long support = 1;
};

// Alignment-based inflection learner. Feature-set lookup is exact; unseen
// feature sets fall back to copying the lemma, so the model deliberately
// cannot generalize across feature sets.
class RuleModel {
public:
    static RuleModel train(const std::vector<Triple>& triples);

    std::string predict(const std::string& lemma, const FeatureSet& features) const;

    // TSV dump: features, lemma_suffix, prepend, strip, append, support.
    std::string dump() const;
    static RuleModel load(std::string_view text);

    const std::map<std::string, std::vector<EditRule>>& rules() const { return rules_; }

private:
    std::map<std::string, std::vector<EditRule>> rules_;  // features serial -> ordered rules
};

// Longest common substring with leftmost-longest tie-break (lemma position
// first, then form position). Returns (length, lemma_start, form_start).
struct CommonCore {
    std::size_t length = 0;
    std::size_t lemma_start = 0;
    std::size_t form_start = 0;
};
CommonCore longest_common_substring(const std::u32string& lemma, const std::u32string& form);

// The (prepend, strip, append) decomposition of a training pair.
struct EditDecomposition {
    std::string prepend;
    long strip = 0;
    std::string append;
};
EditDecomposition decompose(const std::string& lemma, const std::string& form);

}  // namespace morphprobe

#endif
