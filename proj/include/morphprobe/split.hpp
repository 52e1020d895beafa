#ifndef MORPHPROBE_SPLIT_HPP
#define MORPHPROBE_SPLIT_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "morphprobe/corpus.hpp"
#include "morphprobe/probes.hpp"
#include "morphprobe/transcribe.hpp"

namespace morphprobe {

struct SplitSizes {
    int train = 1600;
    int finetune = 400;
    int test = 1000;
};

struct SplitMetadata {
    std::string probe;  // empty for BLIND
    std::uint64_t seed = 0;
    SplitSizes sizes;
    double fs_oov_fraction = 0.0;            // realized, BLIND only
    std::vector<std::string> held_out;       // BLIND: feature sets forced OOV
    std::vector<std::string> train_only;     // PROBE: keys sampleable for train
    std::vector<std::string> test_only;      // PROBE: keys withheld for test
    long n_relevant_train = 0;               // relevant triples in train+finetune
    long n_irrelevant_train = 0;
    long n_test = 0;
    long n_other_feature_sets_in_train = 0;  // distinct irrelevant sets sampled
};

struct DataSplit {
    std::vector<Triple> train;
    std::vector<Triple> finetune;
    std::vector<Triple> test;
    SplitMetadata meta;
};

// BLIND: hold out whole feature sets so that about half the test rows carry
// a feature set never seen in train+finetune.
DataSplit blind_split(const Corpus& corpus, const SplitSizes& sizes, std::uint64_t seed);

// PROBE: partition the relevant triples by the probe's rule, pad training
// with irrelevant triples to the BLIND training size, and keep only the
// relevant rows of the sampled test.
DataSplit probe_split(const Corpus& corpus, const ProbeSpec& probe, const SplitSizes& sizes,
                      std::uint64_t seed);

enum class Presentation { Orthography, Transcription };
std::string presentation_name(Presentation p);

// Transcription source: exactly one of lexicon/rules set when rendering the
// transcription presentation.
struct TranscriptionResource {
    const PronLexicon* lexicon = nullptr;
    const RewriteRuleSet* rules = nullptr;

    bool available() const { return lexicon != nullptr || rules != nullptr; }
    // Throws DataError when the triple cannot be transcribed; splits must be
    // built from pre-filtered corpora.
    TranscribedTriple transcribe(const Triple& t) const;
};

struct RenderedFile {
    std::string name;  // train.tsv / finetune.tsv / test_covered.tsv / test_gold.tsv
    std::string content;
};

std::vector<RenderedFile> render_split(const DataSplit& split, Presentation presentation,
                                       const TranscriptionResource& resource);
void write_rendered(const std::filesystem::path& dir, const std::vector<RenderedFile>& files);

// Split files as read back for verification or evaluation.
struct SplitFiles {
    std::vector<Triple> train;
    std::vector<Triple> finetune;
    std::vector<Triple> test_gold;
    std::vector<std::pair<std::string, std::string>> test_covered;  // (lemma, features)
};
SplitFiles read_split_dir(const std::filesystem::path& dir, const TagOrdering& ordering);

// Per-seed split manifest: metadata plus content checksums of every emitted
// file, keyed by path relative to the seed directory.
struct SplitManifest {
    SplitMetadata meta;
    std::map<std::string, std::string> file_checksums;

    std::string to_json() const;
    static SplitManifest from_json(std::string_view text);
};

struct VerifyCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool all_pass() const;
};

// Re-derives the split invariants from the split content alone: exact sizes,
// pairwise disjointness, covered/gold alignment, the BLIND OOV window, and
// the probe's relevance + key-exclusivity constraints.
VerifyReport verify_split(const DataSplit& split, const ProbeSpec* probe = nullptr);
VerifyReport verify_split_files(const SplitFiles& files, const SplitSizes& sizes,
                                const SplitMetadata& meta, const ProbeSpec* probe = nullptr);

}  // namespace morphprobe

#endif
