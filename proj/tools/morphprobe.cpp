// morphprobe: deterministic split generation and evaluation for
// morphological inflection corpora.
//
// Pipeline: ingest -> split -> (baseline | external system) -> evaluate ->
// aggregate -> anova. Every command records a manifest with input/output
// checksums; all randomness flows from --seeds.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "morphprobe/baseline.hpp"
#include "morphprobe/corpus.hpp"
#include "morphprobe/evaluate.hpp"
#include "morphprobe/manifest.hpp"
#include "morphprobe/normalize.hpp"
#include "morphprobe/probes.hpp"
#include "morphprobe/split.hpp"
#include "morphprobe/stats.hpp"
#include "morphprobe/transcribe.hpp"
#include "morphprobe/util.hpp"

namespace fs = std::filesystem;
using namespace morphprobe;

namespace {

std::string join_args(int argc, char** argv) {
    std::string out;
    for (int i = 0; i < argc; ++i) {
        if (i) out += ' ';
        out += argv[i];
    }
    return out;
}

RunManifest base_manifest(const std::string& command) {
    RunManifest m;
    m.tool_version = MORPHPROBE_VERSION;
    m.command = command;
    m.timestamp = current_timestamp_utc();
    return m;
}

Corpus load_corpus(const fs::path& path, std::string language_flag) {
    std::string text = read_file(path);
    LanguageConfig config;
    if (!language_flag.empty())
        config.language = std::move(language_flag);
    else if (auto lang = corpus_header_language(text))
        config.language = *lang;
    ParseResult parsed = parse_unimorph(text, config);
    if (!parsed.rejected.empty()) {
        const auto& first = parsed.rejected.front();
        throw DataError(path.string() + ": " + std::to_string(parsed.rejected.size()) +
                        " malformed rows (first at line " + std::to_string(first.line) + ": " +
                        first.reason + "); run ingest first");
    }
    return parsed.corpus;
}

struct ResourceHolder {
    std::optional<PronLexicon> lexicon;
    std::optional<RewriteRuleSet> rules;

    TranscriptionResource view() const {
        TranscriptionResource r;
        if (lexicon) r.lexicon = &*lexicon;
        if (rules) r.rules = &*rules;
        return r;
    }
};

ResourceHolder load_resource(const std::string& lexicon_path, const std::string& rules_path) {
    if (!lexicon_path.empty() && !rules_path.empty())
        throw UsageError("--lexicon and --rules are mutually exclusive");
    ResourceHolder holder;
    if (!lexicon_path.empty()) holder.lexicon = PronLexicon::parse(read_file(lexicon_path));
    if (!rules_path.empty()) holder.rules = RewriteRuleSet::parse(read_file(rules_path));
    return holder;
}

std::vector<Triple> load_rows(const fs::path& path, const TagOrdering& ordering) {
    LanguageConfig config;
    config.ordering = ordering;
    ParseResult parsed = parse_unimorph(read_file(path), config);
    if (!parsed.rejected.empty())
        throw DataError(path.string() + ": line " +
                        std::to_string(parsed.rejected.front().line) + ": " +
                        parsed.rejected.front().reason);
    return parsed.corpus.triples();
}

int run_ingest(const std::vector<std::string>& inputs, const std::string& language,
               const std::string& pos, const std::string& rewrite_path,
               const std::string& out_path, const std::string& diagnostics_path,
               bool keep_multiword, const std::string& command) {
    LanguageConfig config;
    config.language = language;

    std::vector<Corpus> parts;
    std::vector<std::string> diagnostics;
    long total_rejected = 0;
    for (const auto& input : inputs) {
        ParseResult parsed = parse_unimorph(read_file(input), config);
        for (const auto& r : parsed.rejected) {
            ++total_rejected;
            diagnostics.push_back(input + ":" + std::to_string(r.line) + "\t" + r.reason);
        }
        if (parsed.n_overabundant_cells > 0)
            diagnostics.push_back(input + "\toverabundant (lemma, features) cells: " +
                                  std::to_string(parsed.n_overabundant_cells));
        parts.push_back(std::move(parsed.corpus));
    }
    Corpus corpus = merge_corpora(parts);
    if (!pos.empty()) corpus = filter_pos(corpus, pos);
    if (!keep_multiword) corpus = exclude_multiword(corpus);
    if (!rewrite_path.empty()) {
        TagRewriteTable table = TagRewriteTable::parse(read_file(rewrite_path));
        NormalizeResult normalized = normalize_corpus(corpus, table);
        for (const auto& d : normalized.dropped)
            diagnostics.push_back("dropped\t" + tsv_line(d.triple) + "\t" + d.reason);
        corpus = std::move(normalized.corpus);
    }

    write_file_atomic(out_path, serialize_corpus(corpus));
    if (!diagnostics_path.empty()) {
        std::string joined;
        for (const auto& d : diagnostics) joined += d + "\n";
        write_file_atomic(diagnostics_path, joined);
    }

    RunManifest manifest = base_manifest(command);
    for (const auto& input : inputs) manifest.input_checksums[input] = checksum_file(input);
    manifest.output_checksums[out_path] = checksum_file(out_path);
    write_manifest(out_path + ".manifest.json", manifest);

    CorpusSummary s = corpus.summarize();
    std::cout << "language: " << corpus.language() << "\n"
              << "lemmas: " << s.n_lemmas << "\n"
              << "feature_sets: " << s.n_feature_sets << "\n"
              << "triples: " << s.n_triples << "\n"
              << "rejected_rows: " << total_rejected << "\n";
    if (!diagnostics.empty() && diagnostics_path.empty())
        std::cerr << diagnostics.size() << " diagnostics (use --diagnostics to save them)\n";
    return 0;
}

std::vector<std::uint64_t> parse_seeds(const std::string& spec) {
    std::vector<std::uint64_t> seeds;
    for (const auto& part : split_on(spec, ',')) {
        if (part.empty()) throw UsageError("bad --seeds value: '" + spec + "'");
        try {
            seeds.push_back(std::stoull(part));
        } catch (const std::exception&) {
            throw UsageError("bad seed: '" + part + "'");
        }
    }
    if (seeds.empty()) throw UsageError("no seeds given");
    std::set<std::uint64_t> unique(seeds.begin(), seeds.end());
    if (unique.size() != seeds.size()) throw UsageError("duplicate seeds given");
    return seeds;
}

int run_split(const std::string& corpus_path, const std::string& mode,
              const std::string& probe_file, const std::string& language,
              const std::string& seeds_spec, const SplitSizes& sizes,
              std::vector<std::string> presentations, const std::string& lexicon_path,
              const std::string& rules_path, const std::string& out_dir,
              const std::string& command) {
    Corpus corpus = load_corpus(corpus_path, language);
    ResourceHolder resource = load_resource(lexicon_path, rules_path);

    const ProbeSpec* probe = nullptr;
    ProbeSpec probe_storage;
    if (mode != "blind") {
        if (!probe_file.empty()) {
            probe_storage = probe_from_json(read_file(probe_file));
            if (probe_storage.name != mode)
                throw UsageError("--probe-file defines '" + probe_storage.name +
                                 "' but --mode asked for '" + mode + "'");
            probe = &probe_storage;
        } else {
            probe = find_probe(mode);
            if (!probe)
                throw UsageError("unknown mode '" + mode +
                                 "'; use 'blind', a builtin probe name, or --probe-file");
        }
    }

    if (presentations.empty()) {
        presentations.push_back("orthography");
        if (resource.view().available()) presentations.push_back("transcription");
    }
    std::vector<Presentation> wanted;
    for (const auto& p : presentations) {
        if (p == "orthography")
            wanted.push_back(Presentation::Orthography);
        else if (p == "transcription")
            wanted.push_back(Presentation::Transcription);
        else
            throw UsageError("unknown presentation '" + p + "'");
    }
    bool want_transcription =
        std::find(wanted.begin(), wanted.end(), Presentation::Transcription) != wanted.end();
    if (want_transcription && !resource.view().available())
        throw UsageError("transcription presentation needs --lexicon or --rules");

    // Untranscribable triples are discarded before splitting whenever a
    // transcription resource is in play, so both presentations of a split
    // contain the same triples.
    long discarded = 0;
    if (resource.view().available()) {
        TranscribeResult filtered =
            resource.lexicon ? transcribe_corpus(corpus, *resource.lexicon)
                             : transcribe_corpus(corpus, *resource.rules);
        discarded = static_cast<long>(filtered.discarded.size());
        if (discarded > 0) {
            std::vector<Triple> kept;
            kept.reserve(filtered.transcribed.size());
            for (auto& t : filtered.transcribed) kept.push_back(std::move(t.base));
            corpus = Corpus(corpus.language(), std::move(kept), corpus.ordering());
        }
    }

    std::vector<std::uint64_t> seeds = parse_seeds(seeds_spec);
    const fs::path root = fs::path(out_dir) / corpus.language() / mode;

    struct Job {
        std::uint64_t seed;
        std::string error;
        std::map<std::string, std::string> checksums;  // relative to out root
    };
    std::vector<Job> jobs;
    for (auto seed : seeds) jobs.push_back({seed, "", {}});

    // Jobs are independent: one split per seed, each owning its directory.
#pragma omp parallel for schedule(dynamic, 1)
    for (long ji = 0; ji < static_cast<long>(jobs.size()); ++ji) {
        Job& job = jobs[static_cast<std::size_t>(ji)];
        try {
            DataSplit split = probe ? probe_split(corpus, *probe, sizes, job.seed)
                                    : blind_split(corpus, sizes, job.seed);
            VerifyReport verdict = verify_split(split, probe);
            if (!verdict.all_pass()) {
                for (const auto& c : verdict.checks)
                    if (!c.pass) job.error += c.name + " (" + c.detail + "); ";
                continue;
            }
            fs::path seed_dir = root / std::to_string(job.seed);
            SplitManifest split_manifest;
            split_manifest.meta = split.meta;
            for (auto presentation : wanted) {
                auto files = render_split(split, presentation, resource.view());
                fs::path dir = seed_dir / presentation_name(presentation);
                write_rendered(dir, files);
                for (const auto& f : files) {
                    std::string rel = presentation_name(presentation) + "/" + f.name;
                    split_manifest.file_checksums[rel] = fnv1a64_hex(f.content);
                    job.checksums[fs::relative(dir / f.name, out_dir).string()] =
                        split_manifest.file_checksums[rel];
                }
            }
            write_file_atomic(seed_dir / "split_meta.json", split_manifest.to_json());
        } catch (const std::exception& e) {
            job.error = e.what();
        }
    }

    for (const auto& job : jobs)
        if (!job.error.empty())
            throw DataError("seed " + std::to_string(job.seed) + ": " + job.error);

    RunManifest manifest = base_manifest(command);
    manifest.input_checksums[corpus_path] = checksum_file(corpus_path);
    if (!lexicon_path.empty())
        manifest.input_checksums[lexicon_path] = checksum_file(lexicon_path);
    if (!rules_path.empty()) manifest.input_checksums[rules_path] = checksum_file(rules_path);
    manifest.seeds = seeds;
    if (probe) manifest.probes.push_back(probe->name);
    for (const auto& job : jobs)
        for (const auto& [rel, sum] : job.checksums) manifest.output_checksums[rel] = sum;
    write_manifest(fs::path(out_dir) / "manifest.json", manifest);

    std::cout << "wrote " << jobs.size() << " split(s) under " << root.string() << "\n";
    if (discarded > 0) std::cout << "discarded " << discarded << " untranscribable triple(s)\n";
    return 0;
}

int run_baseline(const std::string& train_path, const std::string& finetune_path,
                 const std::string& covered_path, const std::string& out_path,
                 const std::string& model_dump_path, const std::string& command) {
    const TagOrdering& ordering = TagOrdering::default_order();
    std::vector<Triple> train = load_rows(train_path, ordering);
    std::vector<Triple> finetune = load_rows(finetune_path, ordering);
    train.insert(train.end(), finetune.begin(), finetune.end());

    RuleModel model = RuleModel::train(train);
    if (!model_dump_path.empty()) write_file_atomic(model_dump_path, model.dump());

    std::vector<PredictionRecord> predictions;
    long line_no = 0;
    for (auto& line : split_on(read_file(covered_path), '\n')) {
        ++line_no;
        line = strip_cr(std::move(line));
        if (line.empty() || line[0] == '#') continue;
        auto cols = split_on(line, '\t');
        if (cols.size() != 2)
            throw DataError(covered_path + ": line " + std::to_string(line_no) +
                            ": covered file needs 2 columns (lemma, features)");
        FeatureSet features(split_on(cols[1], ';'), ordering);
        predictions.push_back(
            PredictionRecord{cols[0], model.predict(cols[0], features), features});
    }
    write_file_atomic(out_path, serialize_predictions(predictions));

    RunManifest manifest = base_manifest(command);
    for (const auto& p : {train_path, finetune_path, covered_path})
        manifest.input_checksums[p] = checksum_file(p);
    manifest.output_checksums[out_path] = checksum_file(out_path);
    if (!model_dump_path.empty())
        manifest.output_checksums[model_dump_path] = checksum_file(model_dump_path);
    write_manifest(out_path + ".manifest.json", manifest);

    std::cout << "predicted " << predictions.size() << " forms -> " << out_path << "\n";
    return 0;
}

int run_evaluate(const std::string& predictions_path, const std::string& gold_path,
                 const std::string& train_path, const std::string& finetune_path,
                 const std::string& probe_name, const std::string& probe_file,
                 const std::string& out_dir, const std::string& command) {
    const TagOrdering& ordering = TagOrdering::default_order();
    auto predictions = parse_predictions(read_file(predictions_path), ordering);
    std::vector<Triple> gold = load_rows(gold_path, ordering);
    TrainIndex index(load_rows(train_path, ordering), load_rows(finetune_path, ordering));

    EvalReport report = evaluate(predictions, gold, index);

    const ProbeSpec* probe = nullptr;
    ProbeSpec probe_storage;
    if (!probe_file.empty()) {
        probe_storage = probe_from_json(read_file(probe_file));
        probe = &probe_storage;
    } else if (!probe_name.empty()) {
        probe = find_probe(probe_name);
        if (!probe) throw UsageError("unknown probe '" + probe_name + "'");
    }
    if (probe) report.taxon_counts = classify_errors(*probe, predictions, gold);

    fs::create_directories(out_dir);
    write_file_atomic(fs::path(out_dir) / "report.json", report_to_json(report));
    write_file_atomic(fs::path(out_dir) / "report.txt", format_report_text(report));

    RunManifest manifest = base_manifest(command);
    for (const auto& p : {predictions_path, gold_path, train_path, finetune_path})
        manifest.input_checksums[p] = checksum_file(p);
    if (probe) manifest.probes.push_back(probe->name);
    manifest.output_checksums["report.json"] = checksum_file(fs::path(out_dir) / "report.json");
    manifest.output_checksums["report.txt"] = checksum_file(fs::path(out_dir) / "report.txt");
    write_manifest(fs::path(out_dir) / "manifest.json", manifest);

    std::cout << format_report_text(report);
    return 0;
}

int run_aggregate(const std::vector<std::string>& report_paths, const std::string& out_dir,
                  const std::string& command) {
    std::vector<EvalReport> reports;
    for (const auto& p : report_paths) reports.push_back(report_from_json(read_file(p)));
    SeedAggregate aggregate = aggregate_seeds(reports);

    fs::create_directories(out_dir);
    write_file_atomic(fs::path(out_dir) / "aggregate.txt",
                      format_aggregate_text(aggregate, reports.size()));

    RunManifest manifest = base_manifest(command);
    for (const auto& p : report_paths) manifest.input_checksums[p] = checksum_file(p);
    manifest.output_checksums["aggregate.txt"] =
        checksum_file(fs::path(out_dir) / "aggregate.txt");
    write_manifest(fs::path(out_dir) / "manifest.json", manifest);

    std::cout << format_aggregate_text(aggregate, reports.size());
    return 0;
}

int run_anova(const std::string& results_path, const std::string& terms_spec,
              const std::string& out_dir, const std::string& command) {
    auto observations = parse_results_tsv(read_file(results_path));
    std::vector<std::string> terms = split_on(terms_spec, ',');
    AnovaTable table = anova_sequential(observations, terms);

    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        write_file_atomic(fs::path(out_dir) / "anova.tsv", anova_to_tsv(table));
        write_file_atomic(fs::path(out_dir) / "anova.txt", format_anova_text(table));
        RunManifest manifest = base_manifest(command);
        manifest.input_checksums[results_path] = checksum_file(results_path);
        manifest.output_checksums["anova.tsv"] = checksum_file(fs::path(out_dir) / "anova.tsv");
        manifest.output_checksums["anova.txt"] = checksum_file(fs::path(out_dir) / "anova.txt");
        write_manifest(fs::path(out_dir) / "manifest.json", manifest);
    }
    std::cout << format_anova_text(table);
    return 0;
}

int run_verify(const std::string& seed_dir, const std::string& probe_name) {
    const TagOrdering& ordering = TagOrdering::default_order();
    fs::path dir(seed_dir);
    SplitManifest manifest = SplitManifest::from_json(read_file(dir / "split_meta.json"));

    const ProbeSpec* probe = nullptr;
    std::string name = !probe_name.empty() ? probe_name : manifest.meta.probe;
    if (!name.empty()) {
        probe = find_probe(name);
        if (!probe) throw UsageError("unknown probe '" + name + "'");
    }

    fs::path ortho = dir / "orthography";
    if (!fs::exists(ortho))
        throw DataError("verify needs the orthography render at " + ortho.string());
    SplitFiles files = read_split_dir(ortho, ordering);
    VerifyReport report = verify_split_files(files, manifest.meta.sizes, manifest.meta, probe);

    // Checksum every recorded file, then the cross-presentation parallelism.
    bool checksums_ok = true;
    for (const auto& [rel, expected] : manifest.file_checksums) {
        if (checksum_file(dir / rel) != expected) checksums_ok = false;
    }
    report.checks.push_back({"manifest checksums", checksums_ok, ""});

    fs::path transcr = dir / "transcription";
    if (fs::exists(transcr)) {
        bool parallel = true;
        for (const auto& name_ : {"train.tsv", "finetune.tsv", "test_gold.tsv"}) {
            auto a = load_rows(ortho / name_, ordering);
            auto b = load_rows(transcr / name_, ordering);
            if (a.size() != b.size()) parallel = false;
        }
        report.checks.push_back({"presentations parallel", parallel, ""});
    }

    bool ok = report.all_pass();
    for (const auto& c : report.checks)
        std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name
                  << (c.detail.empty() ? "" : "  [" + c.detail + "]") << "\n";
    return ok ? 0 : 2;
}

int run_probes(bool list, const std::string& dump_dir, const std::string& show) {
    if (list) {
        for (const auto& p : builtin_probes())
            std::cout << p.name << "\t" << p.language << "\n";
        return 0;
    }
    if (!show.empty()) {
        const ProbeSpec* p = find_probe(show);
        if (!p) throw UsageError("unknown probe '" + show + "'");
        std::cout << probe_to_json(*p);
        return 0;
    }
    if (!dump_dir.empty()) {
        fs::create_directories(dump_dir);
        for (const auto& p : builtin_probes())
            write_file_atomic(fs::path(dump_dir) / (p.name + ".json"), probe_to_json(p));
        std::cout << "wrote " << builtin_probes().size() << " probe files to " << dump_dir
                  << "\n";
        return 0;
    }
    throw UsageError("probes: use --list, --show NAME, or --dump DIR");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"morphprobe: splits, probes, and evaluation for morphological inflection"};
    app.require_subcommand(1);
    std::string command = join_args(argc, argv);

    // ingest
    auto* ingest = app.add_subcommand("ingest", "parse, filter, and canonicalize corpora");
    std::vector<std::string> in_inputs;
    std::string in_language = "und", in_pos, in_rewrite, in_out, in_diag;
    bool in_keep_multiword = false;
    ingest->add_option("--input", in_inputs, "UniMorph TSV file(s)")->required();
    ingest->add_option("--language", in_language, "language id recorded in the corpus");
    ingest->add_option("--pos", in_pos, "keep only this part of speech (e.g. V)");
    ingest->add_option("--rewrite-table", in_rewrite, "tag rewrite table (MAP/DROP TSV)");
    ingest->add_option("--out", in_out, "canonical corpus output path")->required();
    ingest->add_option("--diagnostics", in_diag, "write per-line diagnostics here");
    ingest->add_flag("--keep-multiword", in_keep_multiword, "keep multi-word expressions");

    // split
    auto* split_cmd = app.add_subcommand("split", "generate BLIND or PROBE splits");
    std::string sp_corpus, sp_mode = "blind", sp_probe_file, sp_language, sp_seeds = "0,1,2,3,4";
    std::string sp_lexicon, sp_rules, sp_out;
    std::vector<std::string> sp_presentations;
    SplitSizes sp_sizes;
    split_cmd->add_option("--corpus", sp_corpus, "canonical corpus file")->required();
    split_cmd->add_option("--mode", sp_mode, "'blind' or a probe name");
    split_cmd->add_option("--probe-file", sp_probe_file, "probe definition JSON");
    split_cmd->add_option("--language", sp_language, "override corpus language id");
    split_cmd->add_option("--seeds", sp_seeds, "comma-separated seeds (default 0..4)");
    split_cmd->add_option("--train-size", sp_sizes.train, "training rows (default 1600)");
    split_cmd->add_option("--finetune-size", sp_sizes.finetune, "fine-tune rows (default 400)");
    split_cmd->add_option("--test-size", sp_sizes.test, "test rows sampled (default 1000)");
    split_cmd->add_option("--presentation", sp_presentations,
                          "orthography and/or transcription (default: both when a "
                          "resource is given)");
    split_cmd->add_option("--lexicon", sp_lexicon, "pronunciation lexicon TSV");
    split_cmd->add_option("--rules", sp_rules, "ordered rewrite rule TSV");
    split_cmd->add_option("--out", sp_out, "output directory")->required();

    // baseline
    auto* baseline = app.add_subcommand("baseline", "train the rule baseline and predict");
    std::string bl_train, bl_finetune, bl_covered, bl_out, bl_model;
    baseline->add_option("--train", bl_train, "train.tsv")->required();
    baseline->add_option("--finetune", bl_finetune, "finetune.tsv")->required();
    baseline->add_option("--test-covered", bl_covered, "test_covered.tsv")->required();
    baseline->add_option("--out", bl_out, "predictions output path")->required();
    baseline->add_option("--dump-model", bl_model, "also dump the rule table here");

    // evaluate
    auto* evaluate_cmd = app.add_subcommand("evaluate", "score predictions against gold");
    std::string ev_pred, ev_gold, ev_train, ev_finetune, ev_probe, ev_probe_file, ev_out;
    evaluate_cmd->add_option("--predictions", ev_pred, "3-column predictions TSV")->required();
    evaluate_cmd->add_option("--gold", ev_gold, "test_gold.tsv")->required();
    evaluate_cmd->add_option("--train", ev_train, "train.tsv")->required();
    evaluate_cmd->add_option("--finetune", ev_finetune, "finetune.tsv")->required();
    evaluate_cmd->add_option("--probe", ev_probe, "probe name for error taxonomy");
    evaluate_cmd->add_option("--probe-file", ev_probe_file, "probe definition JSON");
    evaluate_cmd->add_option("--out", ev_out, "report output directory")->required();

    // aggregate
    auto* aggregate_cmd = app.add_subcommand("aggregate", "mean/range across seed reports");
    std::vector<std::string> ag_reports;
    std::string ag_out;
    aggregate_cmd->add_option("--reports", ag_reports, "report.json files")->required();
    aggregate_cmd->add_option("--out", ag_out, "output directory")->required();

    // anova
    auto* anova_cmd = app.add_subcommand("anova", "sequential fixed-effects ANOVA");
    std::string an_results, an_out;
    std::string an_terms = "system,seed,presentation,language,presentation*language";
    anova_cmd->add_option("--results", an_results, "results TSV (factors..., accuracy)")
        ->required();
    anova_cmd->add_option("--terms", an_terms, "comma-separated term list, '*' = interaction");
    anova_cmd->add_option("--out", an_out, "output directory (optional)");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "re-check a written split directory");
    std::string vf_dir, vf_probe;
    verify_cmd->add_option("--split-dir", vf_dir, "a {seed} directory with split_meta.json")
        ->required();
    verify_cmd->add_option("--probe", vf_probe, "probe name (default: from split_meta.json)");

    // probes
    auto* probes_cmd = app.add_subcommand("probes", "inspect or export the probe catalog");
    bool pr_list = false;
    std::string pr_dump, pr_show;
    probes_cmd->add_flag("--list", pr_list, "list builtin probes");
    probes_cmd->add_option("--dump", pr_dump, "write builtin probe JSON files to DIR");
    probes_cmd->add_option("--show", pr_show, "print one probe as JSON");

    try {
        app.parse(argc, argv);
        if (*ingest)
            return run_ingest(in_inputs, in_language, in_pos, in_rewrite, in_out, in_diag,
                              in_keep_multiword, command);
        if (*split_cmd)
            return run_split(sp_corpus, sp_mode, sp_probe_file, sp_language, sp_seeds, sp_sizes,
                             sp_presentations, sp_lexicon, sp_rules, sp_out, command);
        if (*baseline)
            return run_baseline(bl_train, bl_finetune, bl_covered, bl_out, bl_model, command);
        if (*evaluate_cmd)
            return run_evaluate(ev_pred, ev_gold, ev_train, ev_finetune, ev_probe, ev_probe_file,
                                ev_out, command);
        if (*aggregate_cmd) return run_aggregate(ag_reports, ag_out, command);
        if (*anova_cmd) return run_anova(an_results, an_terms, an_out, command);
        if (*verify_cmd) return run_verify(vf_dir, vf_probe);
        if (*probes_cmd) return run_probes(pr_list, pr_dump, pr_show);
        return 1;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
