#include "morphprobe/transcribe.hpp"

#include <algorithm>

#include "morphprobe/utf8.hpp"
#include "morphprobe/util.hpp"

namespace morphprobe {

long levenshtein(const std::u32string& a, const std::u32string& b) {
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    if (n == 0) return static_cast<long>(m);
    if (m == 0) return static_cast<long>(n);
    std::vector<long> prev(m + 1);
    std::vector<long> cur(m + 1);
    for (std::size_t j = 0; j <= m; ++j) prev[j] = static_cast<long>(j);
    for (std::size_t i = 1; i <= n; ++i) {
        cur[0] = static_cast<long>(i);
        for (std::size_t j = 1; j <= m; ++j) {
            long sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[m];
}

long levenshtein(std::string_view a, std::string_view b) {
    return levenshtein(utf8_decode(a), utf8_decode(b));
}

PronLexicon PronLexicon::parse(std::string_view text) {
    PronLexicon lex;
    long line_no = 0;
    for (auto& line : split_on(text, '\n')) {
        ++line_no;
        line = strip_cr(std::move(line));
        if (line.empty() || line[0] == '#') continue;
        auto cols = split_on(line, '\t');
        if (cols.size() != 2 || cols[0].empty() || cols[1].empty())
            throw DataError("lexicon line " + std::to_string(line_no) +
                            ": expected 'word\\ttranscription1|...'");
        auto candidates = split_on(cols[1], '|');
        for (const auto& c : candidates)
            if (c.empty())
                throw DataError("lexicon line " + std::to_string(line_no) +
                                ": empty transcription candidate");
        lex.add(cols[0], std::move(candidates));
    }
    return lex;
}

void PronLexicon::add(const std::string& word, std::vector<std::string> candidates) {
    entries_[ascii_lower(word)] = std::move(candidates);
}

const std::vector<std::string>* PronLexicon::lookup(const std::string& word) const {
    auto it = entries_.find(ascii_lower(word));
    return it == entries_.end() ? nullptr : &it->second;
}

std::optional<TranscribedTriple> transcribe_pair(const Triple& triple,
                                                 const PronLexicon& lexicon) {
    const auto* lemma_cands = lexicon.lookup(triple.lemma);
    const auto* form_cands = lexicon.lookup(triple.form);
    if (!lemma_cands || !form_cands) return std::nullopt;

    std::vector<std::u32string> lemma_cp;
    std::vector<std::u32string> form_cp;
    for (const auto& c : *lemma_cands) lemma_cp.push_back(utf8_decode(c));
    for (const auto& c : *form_cands) form_cp.push_back(utf8_decode(c));

    long best = -1;
    std::size_t best_l = 0;
    std::size_t best_f = 0;
    for (std::size_t li = 0; li < lemma_cp.size(); ++li) {
        for (std::size_t fi = 0; fi < form_cp.size(); ++fi) {
            long d = levenshtein(lemma_cp[li], form_cp[fi]);
            if (best < 0 || d < best) {  // strict: list order breaks ties
                best = d;
                best_l = li;
                best_f = fi;
            }
        }
    }
    return TranscribedTriple{triple, (*lemma_cands)[best_l], (*form_cands)[best_f]};
}

RewriteRuleSet RewriteRuleSet::parse(std::string_view text) {
    RewriteRuleSet set;
    long line_no = 0;
    for (auto& line : split_on(text, '\n')) {
        ++line_no;
        line = strip_cr(std::move(line));
        if (line.empty() || line[0] == '#') continue;
        auto cols = split_on(line, '\t');
        if (cols.size() != 2 || cols[0].empty())
            throw DataError("rule line " + std::to_string(line_no) +
                            ": expected 'source\\ttarget' (target may be empty)");
        set.add(cols[0], cols[1]);
    }
    return set;
}

void RewriteRuleSet::add(std::string source, std::string target) {
    if (source.empty()) throw DataError("rewrite rule with empty source");
    rules_.push_back({std::move(source), std::move(target)});
}

std::string RewriteRuleSet::transcribe(const std::string& word) const {
    std::string out;
    std::size_t byte = 0;
    std::size_t cp_pos = 0;
    while (byte < word.size()) {
        const RewriteRule* hit = nullptr;
        for (const auto& rule : rules_) {
            if (word.compare(byte, rule.source.size(), rule.source) == 0) {
                hit = &rule;
                break;
            }
        }
        if (!hit) {
            std::string_view rest(word.data() + byte, word.size() - byte);
            std::u32string one = utf8_decode(rest).substr(0, 1);
            throw DataError("no rewrite rule applies to '" + utf8_encode(one) + "' at position " +
                            std::to_string(cp_pos) + " in '" + word + "'");
        }
        out += hit->target;
        cp_pos += utf8_length(hit->source);
        byte += hit->source.size();
    }
    return out;
}

namespace {

// Per-triple outcome slot so parallel and serial fills compact identically.
struct Slot {
    bool present = false;
    std::string lemma_t;
    std::string form_t;
};

TranscribeResult compact(const Corpus& corpus, const std::vector<Slot>& slots) {
    TranscribeResult result;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        const Triple& t = corpus.triples()[i];
        if (slots[i].present)
            result.transcribed.push_back(TranscribedTriple{t, slots[i].lemma_t, slots[i].form_t});
        else
            result.discarded.push_back(t);
    }
    return result;
}

}  // namespace

TranscribeResult transcribe_corpus_serial(const Corpus& corpus, const PronLexicon& lexicon) {
    std::vector<Slot> slots(corpus.triples().size());
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (auto t = transcribe_pair(corpus.triples()[i], lexicon))
            slots[i] = {true, std::move(t->lemma_t), std::move(t->form_t)};
    }
    return compact(corpus, slots);
}

TranscribeResult transcribe_corpus(const Corpus& corpus, const PronLexicon& lexicon) {
    const auto& triples = corpus.triples();
    std::vector<Slot> slots(triples.size());
#pragma omp parallel for schedule(dynamic, 256)
    for (long i = 0; i < static_cast<long>(triples.size()); ++i) {
        auto idx = static_cast<std::size_t>(i);
        if (auto t = transcribe_pair(triples[idx], lexicon))
            slots[idx] = {true, std::move(t->lemma_t), std::move(t->form_t)};
    }
    return compact(corpus, slots);
}

TranscribeResult transcribe_corpus_serial(const Corpus& corpus, const RewriteRuleSet& rules) {
    std::vector<Slot> slots(corpus.triples().size());
    for (std::size_t i = 0; i < slots.size(); ++i) {
        const Triple& t = corpus.triples()[i];
        slots[i] = {true, rules.transcribe(t.lemma), rules.transcribe(t.form)};
    }
    return compact(corpus, slots);
}

TranscribeResult transcribe_corpus(const Corpus& corpus, const RewriteRuleSet& rules) {
    const auto& triples = corpus.triples();
    std::vector<Slot> slots(triples.size());
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 256)
    for (long i = 0; i < static_cast<long>(triples.size()); ++i) {
        auto idx = static_cast<std::size_t>(i);
        try {
            const Triple& t = triples[idx];
            slots[idx] = {true, rules.transcribe(t.lemma), rules.transcribe(t.form)};
        } catch (...) {
#pragma omp critical
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return compact(corpus, slots);
}

}  // namespace morphprobe
