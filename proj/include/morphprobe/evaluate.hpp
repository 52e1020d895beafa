#ifndef MORPHPROBE_EVALUATE_HPP
#define MORPHPROBE_EVALUATE_HPP

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "morphprobe/corpus.hpp"
#include "morphprobe/probes.hpp"

namespace morphprobe {

enum class OOVCategory { NoOOV = 0, LmOOV = 1, FsOOV = 2, BothOOV = 3 };
constexpr std::array<OOVCategory, 4> kOOVCategories = {OOVCategory::NoOOV, OOVCategory::LmOOV,
                                                       OOVCategory::FsOOV, OOVCategory::BothOOV};
std::string oov_category_name(OOVCategory c);

struct PredictionRecord {
    std::string lemma;
    std::string predicted;
    FeatureSet features;
};

// Prediction file: 3-column TSV (lemma, predicted form, features), row order
// preserved — this is the adapter boundary for external systems.
std::vector<PredictionRecord> parse_predictions(std::string_view text,
                                                const TagOrdering& ordering);
std::string serialize_predictions(const std::vector<PredictionRecord>& predictions);

// Lemma and feature-set vocabulary of train+finetune.
class TrainIndex {
public:
    TrainIndex(const std::vector<Triple>& train, const std::vector<Triple>& finetune);
    bool lemma_seen(const std::string& lemma) const { return lemmas_.count(lemma) > 0; }
    bool features_seen(const FeatureSet& fs) const { return serials_.count(fs.serialize()) > 0; }

private:
    std::unordered_set<std::string> lemmas_;
    std::unordered_set<std::string> serials_;
};

OOVCategory categorize_oov(const Triple& test_row, const TrainIndex& index);

// Batch categorization: serial reference plus the OpenMP kernel.
std::vector<OOVCategory> categorize_all_serial(const std::vector<Triple>& test,
                                               const TrainIndex& index);
std::vector<OOVCategory> categorize_all(const std::vector<Triple>& test, const TrainIndex& index);

struct CategoryStats {
    long n = 0;
    long correct = 0;
    double accuracy() const { return n == 0 ? 0.0 : static_cast<double>(correct) / n; }
};

struct EvalReport {
    long n_total = 0;
    long n_correct = 0;
    std::array<CategoryStats, 4> by_category;
    std::map<std::string, long> taxon_counts;  // incorrect rows only
    double overall_accuracy() const {
        return n_total == 0 ? 0.0 : static_cast<double>(n_correct) / n_total;
    }
};

// Exact string match against gold, broken down by OOV category. Predictions
// must align with gold row-for-row on (lemma, features).
EvalReport evaluate(const std::vector<PredictionRecord>& predictions,
                    const std::vector<Triple>& gold, const TrainIndex& index);

// Assigns each incorrect prediction to the first matching pattern of the
// probe's taxonomy. Returns taxon -> count; key "correct" counts the rest.
std::map<std::string, long> classify_errors(const ProbeSpec& probe,
                                            const std::vector<PredictionRecord>& predictions,
                                            const std::vector<Triple>& gold);

// Cross-seed aggregation: mean accuracy and range (max - min) per cell.
struct CellSummary {
    double mean = 0.0;
    double range = 0.0;
    bool populated = false;
};

struct SeedAggregate {
    CellSummary overall;
    std::array<CellSummary, 4> by_category;
};

SeedAggregate aggregate_seeds(const std::vector<EvalReport>& reports);

// "45.00% (10.00)" formatting used by the human-readable tables.
std::string format_cell(const CellSummary& cell);

std::string report_to_json(const EvalReport& report);
EvalReport report_from_json(std::string_view text);
std::string format_report_text(const EvalReport& report);
std::string format_aggregate_text(const SeedAggregate& aggregate, std::size_t n_seeds);

}  // namespace morphprobe

#endif
