#include "morphprobe/evaluate.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "morphprobe/util.hpp"

namespace morphprobe {

using nlohmann::json;

std::string oov_category_name(OOVCategory c) {
    switch (c) {
        case OOVCategory::NoOOV: return "noOOV";
        case OOVCategory::LmOOV: return "lmOOV";
        case OOVCategory::FsOOV: return "fsOOV";
        case OOVCategory::BothOOV: return "bothOOV";
    }
    return "?";
}

std::vector<PredictionRecord> parse_predictions(std::string_view text,
                                                const TagOrdering& ordering) {
    std::vector<PredictionRecord> out;
    long line_no = 0;
    for (auto& line : split_on(text, '\n')) {
        ++line_no;
        line = strip_cr(std::move(line));
        if (line.empty() || line[0] == '#') continue;
        auto cols = split_on(line, '\t');
        if (cols.size() != 3)
            throw DataError("prediction line " + std::to_string(line_no) +
                            ": expected 3 tab-separated columns");
        if (cols[0].empty())
            throw DataError("prediction line " + std::to_string(line_no) + ": empty lemma");
        auto tags = split_on(cols[2], ';');
        for (const auto& tag : tags)
            if (tag.empty())
                throw DataError("prediction line " + std::to_string(line_no) +
                                ": empty feature tag");
        out.push_back(PredictionRecord{cols[0], cols[1], FeatureSet(std::move(tags), ordering)});
    }
    return out;
}

std::string serialize_predictions(const std::vector<PredictionRecord>& predictions) {
    std::ostringstream out;
    for (const auto& p : predictions)
        out << p.lemma << "\t" << p.predicted << "\t" << p.features.serialize() << "\n";
    return out.str();
}

TrainIndex::TrainIndex(const std::vector<Triple>& train, const std::vector<Triple>& finetune) {
    for (const auto* part : {&train, &finetune}) {
        for (const auto& t : *part) {
            lemmas_.insert(t.lemma);
            serials_.insert(t.features.serialize());
        }
    }
}

OOVCategory categorize_oov(const Triple& test_row, const TrainIndex& index) {
    const bool lemma_seen = index.lemma_seen(test_row.lemma);
    const bool fs_seen = index.features_seen(test_row.features);
    if (lemma_seen && fs_seen) return OOVCategory::NoOOV;
    if (!lemma_seen && fs_seen) return OOVCategory::LmOOV;
    if (lemma_seen && !fs_seen) return OOVCategory::FsOOV;
    return OOVCategory::BothOOV;
}

std::vector<OOVCategory> categorize_all_serial(const std::vector<Triple>& test,
                                               const TrainIndex& index) {
    std::vector<OOVCategory> out(test.size());
    for (std::size_t i = 0; i < test.size(); ++i) out[i] = categorize_oov(test[i], index);
    return out;
}

std::vector<OOVCategory> categorize_all(const std::vector<Triple>& test,
                                        const TrainIndex& index) {
    std::vector<OOVCategory> out(test.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(test.size()); ++i) {
        auto idx = static_cast<std::size_t>(i);
        out[idx] = categorize_oov(test[idx], index);
    }
    return out;
}

EvalReport evaluate(const std::vector<PredictionRecord>& predictions,
                    const std::vector<Triple>& gold, const TrainIndex& index) {
    if (predictions.size() != gold.size())
        throw DataError("prediction/gold row count mismatch: " +
                        std::to_string(predictions.size()) + " vs " +
                        std::to_string(gold.size()));
    for (std::size_t i = 0; i < gold.size(); ++i) {
        if (predictions[i].lemma != gold[i].lemma ||
            predictions[i].features != gold[i].features)
            throw DataError("prediction/gold key mismatch at row " + std::to_string(i + 1) +
                            ": (" + predictions[i].lemma + ", " +
                            predictions[i].features.serialize() + ") vs (" + gold[i].lemma +
                            ", " + gold[i].features.serialize() + ")");
    }

    EvalReport report;
    report.n_total = static_cast<long>(gold.size());
    std::vector<OOVCategory> categories = categorize_all(gold, index);
    for (std::size_t i = 0; i < gold.size(); ++i) {
        auto& cell = report.by_category[static_cast<std::size_t>(categories[i])];
        ++cell.n;
        if (predictions[i].predicted == gold[i].form) {
            ++cell.correct;
            ++report.n_correct;
        }
    }
    return report;
}

std::map<std::string, long> classify_errors(const ProbeSpec& probe,
                                            const std::vector<PredictionRecord>& predictions,
                                            const std::vector<Triple>& gold) {
    if (predictions.size() != gold.size())
        throw DataError("prediction/gold row count mismatch: " +
                        std::to_string(predictions.size()) + " vs " +
                        std::to_string(gold.size()));
    if (probe.taxonomy.empty())
        throw DataError("probe '" + probe.name + "' has no error taxonomy");

    std::map<std::string, long> counts;
    counts["correct"] = 0;
    for (const auto& p : probe.taxonomy) counts[p.taxon] = 0;
    for (std::size_t i = 0; i < gold.size(); ++i) {
        if (predictions[i].predicted == gold[i].form) {
            ++counts["correct"];
            continue;
        }
        bool matched = false;
        for (const auto& pattern : probe.taxonomy) {
            if (pattern.matches(gold[i].lemma, gold[i].form, predictions[i].predicted)) {
                ++counts[pattern.taxon];
                matched = true;
                break;
            }
        }
        if (!matched) ++counts["nonsense"];  // taxonomies end in a catch-all
    }
    return counts;
}

namespace {

CellSummary summarize_cell(const std::vector<double>& values) {
    CellSummary cell;
    if (values.empty()) return cell;
    cell.populated = true;
    double lo = values[0];
    double hi = values[0];
    double sum = 0.0;
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        sum += v;
    }
    cell.mean = sum / static_cast<double>(values.size());
    cell.range = hi - lo;
    return cell;
}

}  // namespace

SeedAggregate aggregate_seeds(const std::vector<EvalReport>& reports) {
    if (reports.empty()) throw DataError("aggregate_seeds needs at least one report");
    SeedAggregate agg;
    std::vector<double> overall;
    for (const auto& r : reports) overall.push_back(r.overall_accuracy());
    agg.overall = summarize_cell(overall);
    for (std::size_t c = 0; c < 4; ++c) {
        std::vector<double> values;
        for (const auto& r : reports)
            if (r.by_category[c].n > 0) values.push_back(r.by_category[c].accuracy());
        agg.by_category[c] = summarize_cell(values);
    }
    return agg;
}

std::string format_cell(const CellSummary& cell) {
    if (!cell.populated) return "-";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f%% (%.2f)", cell.mean * 100.0, cell.range * 100.0);
    return buf;
}

std::string report_to_json(const EvalReport& report) {
    json j;
    j["n_total"] = report.n_total;
    j["n_correct"] = report.n_correct;
    j["overall_accuracy"] = report.overall_accuracy();
    json cats;
    for (std::size_t c = 0; c < 4; ++c) {
        json cj;
        cj["n"] = report.by_category[c].n;
        cj["correct"] = report.by_category[c].correct;
        cj["accuracy"] = report.by_category[c].accuracy();
        cats[oov_category_name(kOOVCategories[c])] = cj;
    }
    j["by_category"] = cats;
    if (!report.taxon_counts.empty()) j["taxa"] = report.taxon_counts;
    return j.dump(2) + "\n";
}

EvalReport report_from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw DataError(std::string("report is not valid JSON: ") + e.what());
    }
    EvalReport report;
    try {
        report.n_total = j.at("n_total").get<long>();
        report.n_correct = j.at("n_correct").get<long>();
        for (std::size_t c = 0; c < 4; ++c) {
            const json& cj = j.at("by_category").at(oov_category_name(kOOVCategories[c]));
            report.by_category[c].n = cj.at("n").get<long>();
            report.by_category[c].correct = cj.at("correct").get<long>();
        }
        if (j.contains("taxa"))
            report.taxon_counts = j["taxa"].get<std::map<std::string, long>>();
    } catch (const json::exception& e) {
        throw DataError(std::string("report missing field: ") + e.what());
    }
    return report;
}

std::string format_report_text(const EvalReport& report) {
    std::ostringstream out;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "overall\t%ld/%ld\t%.2f%%\n", report.n_correct,
                  report.n_total, report.overall_accuracy() * 100.0);
    out << buf;
    for (std::size_t c = 0; c < 4; ++c) {
        const auto& cell = report.by_category[c];
        std::snprintf(buf, sizeof(buf), "%s\t%ld/%ld\t%.2f%%\n",
                      oov_category_name(kOOVCategories[c]).c_str(), cell.correct, cell.n,
                      cell.n == 0 ? 0.0 : cell.accuracy() * 100.0);
        out << buf;
    }
    if (!report.taxon_counts.empty()) {
        out << "errors by taxon:\n";
        for (const auto& [taxon, count] : report.taxon_counts)
            out << "  " << taxon << "\t" << count << "\n";
    }
    return out.str();
}

std::string format_aggregate_text(const SeedAggregate& aggregate, std::size_t n_seeds) {
    std::ostringstream out;
    out << "cells: mean% (range) across " << n_seeds << " seed(s)\n";
    out << "overall\t" << format_cell(aggregate.overall) << "\n";
    for (std::size_t c = 0; c < 4; ++c)
        out << oov_category_name(kOOVCategories[c]) << "\t"
            << format_cell(aggregate.by_category[c]) << "\n";
    return out.str();
}

}  // namespace morphprobe
