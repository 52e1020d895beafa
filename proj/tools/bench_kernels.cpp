// Benchmark for the OpenMP kernels against their serial references:
// lexicon pair selection, rule transcription, and OOV categorization.
// Verifies that both paths agree before reporting timings.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "morphprobe/corpus.hpp"
#include "morphprobe/evaluate.hpp"
#include "morphprobe/rng.hpp"
#include "morphprobe/transcribe.hpp"

using namespace morphprobe;

namespace {

double seconds(std::chrono::steady_clock::time_point a,
               std::chrono::steady_clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

std::string make_word(Rng& rng, int syllables) {
    static const char* consonants = "bdfgklmnprstv";
    static const char* vowels = "aeiou";
    std::string w;
    for (int s = 0; s < syllables; ++s) {
        w += consonants[rng.bounded(13)];
        w += vowels[rng.bounded(5)];
    }
    return w;
}

Corpus synthetic_corpus(std::size_t n_lemmas, std::size_t n_feature_sets) {
    Rng rng(7);
    const TagOrdering& ordering = TagOrdering::default_order();
    std::vector<std::string> suffixes;
    for (std::size_t f = 0; f < n_feature_sets; ++f) suffixes.push_back(make_word(rng, 1));
    std::vector<Triple> triples;
    for (std::size_t l = 0; l < n_lemmas; ++l) {
        std::string lemma = make_word(rng, 3) + std::to_string(l);
        for (std::size_t f = 0; f < n_feature_sets; ++f) {
            FeatureSet fs({"V", "F" + std::to_string(f)}, ordering);
            triples.push_back(Triple{lemma, lemma + suffixes[f], fs});
        }
    }
    return Corpus("bench", std::move(triples), ordering);
}

PronLexicon lexicon_for(const Corpus& corpus, int candidates) {
    PronLexicon lex;
    Rng rng(11);
    auto transcode = [](const std::string& w) {
        std::string t;
        for (char c : w) {
            if (c == 'a') t += "ɑ";
            else if (c == 'e') t += "ɛ";
            else t += c;
        }
        return t;
    };
    auto add = [&](const std::string& w) {
        std::vector<std::string> cands;
        cands.push_back(transcode(w));
        for (int i = 1; i < candidates; ++i)
            cands.push_back(transcode(w) + std::string(1, char('a' + rng.bounded(26))));
        lex.add(w, std::move(cands));
    };
    for (const auto& t : corpus.triples()) {
        add(t.lemma);
        add(t.form);
    }
    return lex;
}

RewriteRuleSet rules_for() {
    RewriteRuleSet rules;
    rules.add("ch", "tʃ");
    for (char c = 'a'; c <= 'z'; ++c) {
        std::string s(1, c);
        rules.add(s, c == 'a' ? "ɑ" : s);
    }
    for (char c = '0'; c <= '9'; ++c) rules.add(std::string(1, c), std::string(1, c));
    return rules;
}

bool same(const TranscribeResult& a, const TranscribeResult& b) {
    if (a.transcribed.size() != b.transcribed.size()) return false;
    if (a.discarded.size() != b.discarded.size()) return false;
    for (std::size_t i = 0; i < a.transcribed.size(); ++i) {
        if (a.transcribed[i].lemma_t != b.transcribed[i].lemma_t) return false;
        if (a.transcribed[i].form_t != b.transcribed[i].form_t) return false;
    }
    return true;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif

    Corpus corpus = synthetic_corpus(8000, 24);
    std::printf("corpus: %zu triples\n\n", corpus.triples().size());
    std::printf("%-24s %10s %10s %8s\n", "kernel", "serial[s]", "openmp[s]", "speedup");

    using clock = std::chrono::steady_clock;

    {
        PronLexicon lex = lexicon_for(corpus, 6);
        auto t0 = clock::now();
        auto serial = transcribe_corpus_serial(corpus, lex);
        auto t1 = clock::now();
        auto parallel = transcribe_corpus(corpus, lex);
        auto t2 = clock::now();
        if (!same(serial, parallel)) {
            std::fprintf(stderr, "lexicon kernel mismatch\n");
            return 1;
        }
        double ts = seconds(t0, t1);
        double tp = seconds(t1, t2);
        std::printf("%-24s %10.3f %10.3f %7.2fx\n", "lexicon pair selection", ts, tp, ts / tp);
    }
    {
        RewriteRuleSet rules = rules_for();
        auto t0 = clock::now();
        auto serial = transcribe_corpus_serial(corpus, rules);
        auto t1 = clock::now();
        auto parallel = transcribe_corpus(corpus, rules);
        auto t2 = clock::now();
        if (!same(serial, parallel)) {
            std::fprintf(stderr, "rule kernel mismatch\n");
            return 1;
        }
        double ts = seconds(t0, t1);
        double tp = seconds(t1, t2);
        std::printf("%-24s %10.3f %10.3f %7.2fx\n", "rule transcription", ts, tp, ts / tp);
    }
    {
        const auto& all = corpus.triples();
        std::vector<Triple> train(all.begin(), all.begin() + all.size() / 2);
        std::vector<Triple> test(all.begin() + all.size() / 2, all.end());
        // Repeat the test block to give the kernel enough work to time.
        std::vector<Triple> big;
        for (int r = 0; r < 40; ++r) big.insert(big.end(), test.begin(), test.end());
        TrainIndex index(train, {});
        auto t0 = clock::now();
        auto serial = categorize_all_serial(big, index);
        auto t1 = clock::now();
        auto parallel = categorize_all(big, index);
        auto t2 = clock::now();
        if (serial != parallel) {
            std::fprintf(stderr, "categorize kernel mismatch\n");
            return 1;
        }
        double ts = seconds(t0, t1);
        double tp = seconds(t1, t2);
        std::printf("%-24s %10.3f %10.3f %7.2fx\n", "oov categorization", ts, tp, ts / tp);
    }
    return 0;
}
