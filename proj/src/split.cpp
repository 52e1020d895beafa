#include "morphprobe/split.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "morphprobe/rng.hpp"
#include "morphprobe/util.hpp"

namespace morphprobe {

namespace {

void sort_canonical(std::vector<Triple>& triples) {
    std::sort(triples.begin(), triples.end());
}

std::unordered_set<std::string> identity_set(const std::vector<Triple>& triples) {
    std::unordered_set<std::string> out;
    out.reserve(triples.size());
    for (const auto& t : triples) out.insert(t.identity());
    return out;
}

std::unordered_set<std::string> feature_serials(const std::vector<Triple>& a,
                                                const std::vector<Triple>& b) {
    std::unordered_set<std::string> out;
    for (const auto& t : a) out.insert(t.features.serialize());
    for (const auto& t : b) out.insert(t.features.serialize());
    return out;
}

double fs_oov_fraction_of(const std::vector<Triple>& test, const std::vector<Triple>& train,
                          const std::vector<Triple>& finetune) {
    if (test.empty()) return 0.0;
    auto seen = feature_serials(train, finetune);
    long oov = 0;
    for (const auto& t : test)
        if (!seen.count(t.features.serialize())) ++oov;
    return static_cast<double>(oov) / static_cast<double>(test.size());
}

}  // namespace

DataSplit blind_split(const Corpus& corpus, const SplitSizes& sizes, std::uint64_t seed) {
    if (sizes.train <= 0 || sizes.finetune <= 0 || sizes.test <= 0)
        throw DataError("split sizes must be positive");
    const long total = static_cast<long>(corpus.triples().size());
    const long need = sizes.train + sizes.finetune + sizes.test;
    if (total < need)
        throw DataError("corpus has " + std::to_string(total) + " triples, need at least " +
                        std::to_string(need));

    std::vector<std::string> feature_sets = corpus.distinct_feature_serials();
    if (feature_sets.size() < 2)
        throw DataError("corpus has fewer than 2 distinct feature sets; cannot hold any out");

    std::unordered_map<std::string, long> fs_count;
    for (const auto& t : corpus.triples()) ++fs_count[t.features.serialize()];

    const long h_target = sizes.test / 2;
    const long outside_min = sizes.train + sizes.finetune + sizes.test / 2;

    Rng rng(seed);
    shuffle(feature_sets, rng);

    // Greedy holdout: move whole feature sets out of reach of training until
    // the pool can fill the OOV half of test, skipping any set whose removal
    // would starve the rest of the split.
    std::unordered_set<std::string> held;
    long held_triples = 0;
    long outside_triples = total;
    for (const auto& fs : feature_sets) {
        if (held_triples >= h_target) break;
        long c = fs_count[fs];
        if (outside_triples - c < outside_min) continue;
        held.insert(fs);
        held_triples += c;
        outside_triples -= c;
    }
    if (held_triples < h_target)
        throw DataError("cannot build held-out pool: got " + std::to_string(held_triples) +
                        " of " + std::to_string(h_target) +
                        " triples without starving train+finetune+test");

    std::vector<Triple> outside;
    std::vector<Triple> held_out;
    outside.reserve(static_cast<std::size_t>(outside_triples));
    for (const auto& t : corpus.triples()) {
        if (held.count(t.features.serialize()))
            held_out.push_back(t);
        else
            outside.push_back(t);
    }

    const long test_outside = sizes.test - h_target;
    if (static_cast<long>(outside.size()) < sizes.train + sizes.finetune + test_outside)
        throw DataError("pool outside the held-out feature sets is too small");

    shuffle(outside, rng);
    shuffle(held_out, rng);

    DataSplit split;
    auto begin = outside.begin();
    split.train.assign(begin, begin + sizes.train);
    split.finetune.assign(begin + sizes.train, begin + sizes.train + sizes.finetune);
    split.test.assign(begin + sizes.train + sizes.finetune,
                      begin + sizes.train + sizes.finetune + test_outside);
    split.test.insert(split.test.end(), held_out.begin(), held_out.begin() + h_target);

    sort_canonical(split.train);
    sort_canonical(split.finetune);
    sort_canonical(split.test);

    split.meta.seed = seed;
    split.meta.sizes = sizes;
    split.meta.held_out.assign(held.begin(), held.end());
    std::sort(split.meta.held_out.begin(), split.meta.held_out.end());
    split.meta.n_test = static_cast<long>(split.test.size());
    split.meta.fs_oov_fraction = fs_oov_fraction_of(split.test, split.train, split.finetune);
    if (split.meta.fs_oov_fraction < 0.45 || split.meta.fs_oov_fraction > 0.55)
        throw DataError("realized fsOOV fraction " + std::to_string(split.meta.fs_oov_fraction) +
                        " outside [0.45, 0.55]");
    return split;
}

namespace {

std::vector<Triple> rewrite_triples(const std::vector<Triple>& triples,
                                    const TagRewriteTable& table, const TagOrdering& ordering) {
    std::vector<Triple> out;
    out.reserve(triples.size());
    for (const auto& t : triples) {
        std::vector<std::string> tags;
        tags.reserve(t.features.tags().size());
        for (const auto& tag : t.features.tags()) tags.push_back(table.apply(tag));
        out.push_back(Triple{t.lemma, t.form, FeatureSet(std::move(tags), ordering)});
    }
    return out;
}

}  // namespace

DataSplit probe_split(const Corpus& corpus, const ProbeSpec& probe, const SplitSizes& sizes,
                      std::uint64_t seed) {
    if (sizes.train <= 0 || sizes.finetune <= 0 || sizes.test <= 0)
        throw DataError("split sizes must be positive");
    if (!probe.language.empty() && probe.language != corpus.language())
        throw DataError("probe '" + probe.name + "' is for language '" + probe.language +
                        "' but corpus is '" + corpus.language() + "'");

    // Pre-split tag rewrite (en-PRS3SG): applied corpus-wide before anything
    // else so relevance sees the rewritten tags.
    const Corpus* source = &corpus;
    Corpus rewritten;
    if (probe.rewrite.phase == TagRewriteSpec::Phase::PreSplit) {
        rewritten = Corpus(corpus.language(),
                           rewrite_triples(corpus.triples(), probe.rewrite.table, corpus.ordering()),
                           corpus.ordering());
        source = &rewritten;
    }

    std::vector<Triple> relevant;
    std::vector<Triple> irrelevant;
    for (const auto& t : source->triples()) {
        if (probe.is_relevant(t))
            relevant.push_back(t);
        else
            irrelevant.push_back(t);
    }
    if (relevant.empty())
        throw DataError("probe '" + probe.name + "': no relevant triples in corpus");

    Rng rng(seed);
    PartitionOutcome partition = apply_partition(probe, relevant, rng);

    std::unordered_set<std::string> allowed(partition.train_allowed.begin(),
                                            partition.train_allowed.end());
    const bool by_lemma = probe.partition.keyed_by_lemma();
    auto key_of = [&](const Triple& t) { return by_lemma ? t.lemma : t.features.serialize(); };

    std::vector<Triple> relevant_trainable;
    std::vector<Triple> relevant_testonly;
    for (const auto& t : relevant) {
        if (allowed.count(key_of(t)))
            relevant_trainable.push_back(t);
        else
            relevant_testonly.push_back(t);
    }
    if (relevant_testonly.empty())
        throw DataError("probe '" + probe.name + "': no relevant triples left for test");

    // Train+finetune pool: irrelevant triples pad training to the BLIND size.
    std::vector<Triple> pool;
    pool.reserve(irrelevant.size() + relevant_trainable.size());
    pool.insert(pool.end(), irrelevant.begin(), irrelevant.end());
    pool.insert(pool.end(), relevant_trainable.begin(), relevant_trainable.end());
    sort_canonical(pool);
    const long want_train = sizes.train + sizes.finetune;
    if (static_cast<long>(pool.size()) < want_train)
        throw DataError("probe '" + probe.name + "': train pool has " +
                        std::to_string(pool.size()) + " triples, need " +
                        std::to_string(want_train));
    shuffle(pool, rng);

    DataSplit split;
    split.train.assign(pool.begin(), pool.begin() + sizes.train);
    split.finetune.assign(pool.begin() + sizes.train, pool.begin() + want_train);

    auto sampled = identity_set(split.train);
    for (const auto& t : split.finetune) sampled.insert(t.identity());

    // Test pool: everything not sampled, minus relevant triples whose key is
    // trainable (those may only appear in train).
    std::vector<Triple> test_pool;
    for (const auto& t : irrelevant)
        if (!sampled.count(t.identity())) test_pool.push_back(t);
    test_pool.insert(test_pool.end(), relevant_testonly.begin(), relevant_testonly.end());
    sort_canonical(test_pool);
    if (static_cast<long>(test_pool.size()) < sizes.test)
        throw DataError("probe '" + probe.name + "': test pool has " +
                        std::to_string(test_pool.size()) + " triples, need " +
                        std::to_string(sizes.test));
    shuffle(test_pool, rng);

    // Sample the full test size, then discard the irrelevant rows.
    for (auto it = test_pool.begin(); it != test_pool.begin() + sizes.test; ++it)
        if (probe.is_relevant(*it)) split.test.push_back(*it);
    if (split.test.empty())
        throw DataError("probe '" + probe.name +
                        "': no relevant triples survived test sampling; try another seed or "
                        "larger test size");
    sort_canonical(split.train);
    sort_canonical(split.finetune);
    sort_canonical(split.test);

    split.meta.probe = probe.name;
    split.meta.seed = seed;
    split.meta.sizes = sizes;
    split.meta.train_only = partition.train_allowed;
    split.meta.test_only = partition.test_only;
    split.meta.n_test = static_cast<long>(split.test.size());
    std::unordered_set<std::string> other_fs;
    for (const auto* part : {&split.train, &split.finetune}) {
        for (const auto& t : *part) {
            if (allowed.count(key_of(t)))
                ++split.meta.n_relevant_train;
            else {
                ++split.meta.n_irrelevant_train;
                other_fs.insert(t.features.serialize());
            }
        }
    }
    split.meta.n_other_feature_sets_in_train = static_cast<long>(other_fs.size());

    // Post-split tag rewrite (en-PRS): pure rename on the already-ordered
    // lists, so the split stays row-aligned with its unrewritten sibling.
    // Metadata keys are renamed with it.
    if (probe.rewrite.phase == TagRewriteSpec::Phase::PostSplit) {
        split.train = rewrite_triples(split.train, probe.rewrite.table, corpus.ordering());
        split.finetune = rewrite_triples(split.finetune, probe.rewrite.table, corpus.ordering());
        split.test = rewrite_triples(split.test, probe.rewrite.table, corpus.ordering());
        if (!by_lemma) {
            auto rename_key = [&](std::string& key) {
                std::vector<std::string> tags = split_on(key, ';');
                for (auto& tag : tags) tag = probe.rewrite.table.apply(tag);
                key = FeatureSet(std::move(tags), corpus.ordering()).serialize();
            };
            for (auto& key : split.meta.train_only) rename_key(key);
            for (auto& key : split.meta.test_only) rename_key(key);
        }
    }
    return split;
}

std::string presentation_name(Presentation p) {
    return p == Presentation::Orthography ? "orthography" : "transcription";
}

TranscribedTriple TranscriptionResource::transcribe(const Triple& t) const {
    if (lexicon) {
        auto r = transcribe_pair(t, *lexicon);
        if (!r)
            throw DataError("untranscribable triple reached rendering (lemma '" + t.lemma +
                            "', form '" + t.form +
                            "'); discard untranscribable triples before splitting");
        return *r;
    }
    if (rules) return TranscribedTriple{t, rules->transcribe(t.lemma), rules->transcribe(t.form)};
    throw DataError("transcription requested but no lexicon or rule set was provided");
}

std::vector<RenderedFile> render_split(const DataSplit& split, Presentation presentation,
                                       const TranscriptionResource& resource) {
    auto render_rows = [&](const std::vector<Triple>& rows, bool covered) {
        std::ostringstream out;
        for (const auto& t : rows) {
            if (presentation == Presentation::Orthography) {
                if (covered)
                    out << t.lemma << "\t" << t.features.serialize() << "\n";
                else
                    out << tsv_line(t) << "\n";
            } else {
                TranscribedTriple tt = resource.transcribe(t);
                if (covered)
                    out << tt.lemma_t << "\t" << t.features.serialize() << "\n";
                else
                    out << tt.lemma_t << "\t" << tt.form_t << "\t" << t.features.serialize()
                        << "\n";
            }
        }
        return out.str();
    };

    std::vector<RenderedFile> files;
    files.push_back({"train.tsv", render_rows(split.train, false)});
    files.push_back({"finetune.tsv", render_rows(split.finetune, false)});
    files.push_back({"test_covered.tsv", render_rows(split.test, true)});
    files.push_back({"test_gold.tsv", render_rows(split.test, false)});
    return files;
}

void write_rendered(const std::filesystem::path& dir, const std::vector<RenderedFile>& files) {
    std::filesystem::create_directories(dir);
    for (const auto& f : files) write_file_atomic(dir / f.name, f.content);
}

namespace {

std::vector<Triple> parse_rows(const std::filesystem::path& path, const TagOrdering& ordering) {
    LanguageConfig config;
    config.ordering = ordering;
    ParseResult r = parse_unimorph(read_file(path), config);
    if (!r.rejected.empty())
        throw DataError(path.string() + ": line " + std::to_string(r.rejected.front().line) +
                        ": " + r.rejected.front().reason);
    // Split files are already canonically sorted and disjoint; the corpus
    // constructor just re-sorts.
    return r.corpus.triples();
}

}  // namespace

SplitFiles read_split_dir(const std::filesystem::path& dir, const TagOrdering& ordering) {
    SplitFiles files;
    files.train = parse_rows(dir / "train.tsv", ordering);
    files.finetune = parse_rows(dir / "finetune.tsv", ordering);
    files.test_gold = parse_rows(dir / "test_gold.tsv", ordering);
    for (auto& line : split_on(read_file(dir / "test_covered.tsv"), '\n')) {
        line = strip_cr(std::move(line));
        if (line.empty() || line[0] == '#') continue;
        auto cols = split_on(line, '\t');
        if (cols.size() != 2)
            throw DataError((dir / "test_covered.tsv").string() + ": expected 2 columns");
        files.test_covered.emplace_back(cols[0], cols[1]);
    }
    return files;
}

std::string SplitManifest::to_json() const {
    nlohmann::json j;
    j["probe"] = meta.probe;
    j["seed"] = meta.seed;
    j["sizes"] = {{"train", meta.sizes.train},
                  {"finetune", meta.sizes.finetune},
                  {"test", meta.sizes.test}};
    j["fs_oov_fraction"] = meta.fs_oov_fraction;
    j["held_out"] = meta.held_out;
    j["train_only"] = meta.train_only;
    j["test_only"] = meta.test_only;
    j["n_relevant_train"] = meta.n_relevant_train;
    j["n_irrelevant_train"] = meta.n_irrelevant_train;
    j["n_test"] = meta.n_test;
    j["n_other_feature_sets_in_train"] = meta.n_other_feature_sets_in_train;
    j["files"] = file_checksums;
    return j.dump(2) + "\n";
}

SplitManifest SplitManifest::from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("split manifest is not valid JSON: ") + e.what());
    }
    SplitManifest m;
    try {
        m.meta.probe = j.at("probe").get<std::string>();
        m.meta.seed = j.at("seed").get<std::uint64_t>();
        m.meta.sizes.train = j.at("sizes").at("train").get<int>();
        m.meta.sizes.finetune = j.at("sizes").at("finetune").get<int>();
        m.meta.sizes.test = j.at("sizes").at("test").get<int>();
        m.meta.fs_oov_fraction = j.at("fs_oov_fraction").get<double>();
        m.meta.held_out = j.at("held_out").get<std::vector<std::string>>();
        m.meta.train_only = j.at("train_only").get<std::vector<std::string>>();
        m.meta.test_only = j.at("test_only").get<std::vector<std::string>>();
        m.meta.n_relevant_train = j.at("n_relevant_train").get<long>();
        m.meta.n_irrelevant_train = j.at("n_irrelevant_train").get<long>();
        m.meta.n_test = j.at("n_test").get<long>();
        m.meta.n_other_feature_sets_in_train =
            j.at("n_other_feature_sets_in_train").get<long>();
        m.file_checksums = j.at("files").get<std::map<std::string, std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("split manifest missing field: ") + e.what());
    }
    return m;
}

bool VerifyReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

namespace {

void add_check(VerifyReport& report, std::string name, bool pass, std::string detail = "") {
    report.checks.push_back({std::move(name), pass, std::move(detail)});
}

// A post-split rewrite renames tags in the emitted files, so the relevance
// predicate has to be checked through the same renaming.
ProbeSpec transport_through_rewrite(const ProbeSpec& probe) {
    if (probe.rewrite.phase != TagRewriteSpec::Phase::PostSplit) return probe;
    ProbeSpec out = probe;
    for (auto& pred : out.relevance) {
        for (auto& tag : pred.tags) tag = probe.rewrite.table.apply(tag);
        for (auto& tag : pred.exclude_tags) tag = probe.rewrite.table.apply(tag);
    }
    return out;
}

}  // namespace

VerifyReport verify_split_files(const SplitFiles& files, const SplitSizes& sizes,
                                const SplitMetadata& meta, const ProbeSpec* probe) {
    VerifyReport report;

    add_check(report, "train size", static_cast<long>(files.train.size()) == sizes.train,
              std::to_string(files.train.size()) + " vs " + std::to_string(sizes.train));
    add_check(report, "finetune size", static_cast<long>(files.finetune.size()) == sizes.finetune,
              std::to_string(files.finetune.size()) + " vs " + std::to_string(sizes.finetune));
    if (!probe)
        add_check(report, "test size", static_cast<long>(files.test_gold.size()) == sizes.test,
                  std::to_string(files.test_gold.size()) + " vs " + std::to_string(sizes.test));
    else
        add_check(report, "test nonempty", !files.test_gold.empty(),
                  std::to_string(files.test_gold.size()) + " rows");

    auto train_ids = identity_set(files.train);
    auto finetune_ids = identity_set(files.finetune);
    auto test_ids = identity_set(files.test_gold);
    bool disjoint = true;
    for (const auto& id : finetune_ids)
        if (train_ids.count(id)) disjoint = false;
    add_check(report, "train/finetune disjoint", disjoint);
    bool test_disjoint = true;
    for (const auto& id : test_ids)
        if (train_ids.count(id) || finetune_ids.count(id)) test_disjoint = false;
    add_check(report, "test disjoint from train+finetune", test_disjoint);

    bool covered_aligned = files.test_covered.size() == files.test_gold.size();
    if (covered_aligned) {
        for (std::size_t i = 0; i < files.test_gold.size(); ++i) {
            if (files.test_covered[i].second != files.test_gold[i].features.serialize()) {
                covered_aligned = false;
                break;
            }
        }
    }
    add_check(report, "covered/gold row alignment", covered_aligned);

    if (!probe) {
        double frac =
            fs_oov_fraction_of(files.test_gold, files.train, files.finetune);
        add_check(report, "fsOOV fraction in [0.45, 0.55]", frac >= 0.45 && frac <= 0.55,
                  "realized " + std::to_string(frac));
    } else {
        ProbeSpec effective = transport_through_rewrite(*probe);
        bool relevant_ok = true;
        for (const auto& t : files.test_gold)
            if (!effective.is_relevant(t)) relevant_ok = false;
        add_check(report, "every test row matches the probe", relevant_ok);

        const bool by_lemma = probe->partition.keyed_by_lemma();
        auto key_of = [&](const Triple& t) {
            return by_lemma ? t.lemma : t.features.serialize();
        };
        std::unordered_set<std::string> train_only(meta.train_only.begin(),
                                                   meta.train_only.end());
        std::unordered_set<std::string> test_only(meta.test_only.begin(), meta.test_only.end());
        bool no_trainonly_in_test = true;
        for (const auto& t : files.test_gold)
            if (train_only.count(key_of(t))) no_trainonly_in_test = false;
        add_check(report, "no train-only key in test", no_trainonly_in_test);

        bool no_testonly_in_train = true;
        for (const auto* part : {&files.train, &files.finetune})
            for (const auto& t : *part)
                if (effective.is_relevant(t) && test_only.count(key_of(t)))
                    no_testonly_in_train = false;
        add_check(report, "no test-only key in train+finetune", no_testonly_in_train);
    }
    return report;
}

VerifyReport verify_split(const DataSplit& split, const ProbeSpec* probe) {
    SplitFiles files;
    files.train = split.train;
    files.finetune = split.finetune;
    files.test_gold = split.test;
    for (const auto& t : split.test)
        files.test_covered.emplace_back(t.lemma, t.features.serialize());
    return verify_split_files(files, split.meta.sizes, split.meta, probe);
}

}  // namespace morphprobe
