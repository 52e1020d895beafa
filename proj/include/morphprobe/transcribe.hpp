#ifndef MORPHPROBE_TRANSCRIBE_HPP
#define MORPHPROBE_TRANSCRIBE_HPP

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "morphprobe/corpus.hpp"

namespace morphprobe {

// Unit-cost edit distance over code points.
long levenshtein(std::string_view a, std::string_view b);
long levenshtein(const std::u32string& a, const std::u32string& b);

// Pronunciation lexicon: word -> candidate transcriptions, looked up
// exactly after ASCII case folding. Candidate list order is meaningful
// (it breaks ties in pair selection).
class PronLexicon {
public:
    // File format: "word\ttranscription1|transcription2|...", '#' comments.
    static PronLexicon parse(std::string_view text);

    void add(const std::string& word, std::vector<std::string> candidates);
    const std::vector<std::string>* lookup(const std::string& word) const;
    std::size_t size() const { return entries_.size(); }

private:
    std::unordered_map<std::string, std::vector<std::string>> entries_;
};

struct TranscribedTriple {
    Triple base;
    std::string lemma_t;
    std::string form_t;
};

// Chooses the candidate pair minimizing edit distance between lemma and form
// transcriptions; ties go to earlier lexicon list order (lemma first, then
// form). Missing words yield nullopt and the triple is discarded upstream.
std::optional<TranscribedTriple> transcribe_pair(const Triple& triple, const PronLexicon& lexicon);

// Ordered rewrite rules: at each input position, the first rule (in file
// order) whose source is a prefix of the remaining input applies.
struct RewriteRule {
    std::string source;  // non-empty grapheme string
    std::string target;  // phoneme string, may be empty
};

class RewriteRuleSet {
public:
    // File format: "source\ttarget" per line, priority = line order;
    // '#' comments. A line "source\t" maps source to the empty string.
    static RewriteRuleSet parse(std::string_view text);

    void add(std::string source, std::string target);
    const std::vector<RewriteRule>& rules() const { return rules_; }

    // Throws DataError naming the offending character and code-point
    // position when no rule applies.
    std::string transcribe(const std::string& word) const;

private:
    std::vector<RewriteRule> rules_;
};

struct TranscribeResult {
    std::vector<TranscribedTriple> transcribed;  // canonical corpus order
    std::vector<Triple> discarded;               // lexicon misses
};

// Serial reference implementation and the OpenMP kernel. Both produce
// identical results in canonical order; the tests and the benchmark hold
// them against each other.
TranscribeResult transcribe_corpus_serial(const Corpus& corpus, const PronLexicon& lexicon);
TranscribeResult transcribe_corpus_serial(const Corpus& corpus, const RewriteRuleSet& rules);
TranscribeResult transcribe_corpus(const Corpus& corpus, const PronLexicon& lexicon);
TranscribeResult transcribe_corpus(const Corpus& corpus, const RewriteRuleSet& rules);

}  // namespace morphprobe

#endif
