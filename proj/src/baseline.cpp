#include "morphprobe/baseline.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "morphprobe/utf8.hpp"
#include "morphprobe/util.hpp"

namespace morphprobe {

CommonCore longest_common_substring(const std::u32string& lemma, const std::u32string& form) {
    CommonCore best;
    const std::size_t n = lemma.size();
    const std::size_t m = form.size();
    // dp[j] = length of common substring ending at lemma[i-1], form[j-1]
    std::vector<std::size_t> prev(m + 1, 0);
    std::vector<std::size_t> cur(m + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= m; ++j) {
            cur[j] = lemma[i - 1] == form[j - 1] ? prev[j - 1] + 1 : 0;
            if (cur[j] == 0) continue;
            std::size_t ls = i - cur[j];
            std::size_t fs = j - cur[j];
            if (cur[j] > best.length ||
                (cur[j] == best.length &&
                 std::tie(ls, fs) < std::tie(best.lemma_start, best.form_start))) {
                best = {cur[j], ls, fs};
            }
        }
        std::swap(prev, cur);
    }
    return best;
}

EditDecomposition decompose(const std::string& lemma, const std::string& form) {
    std::u32string l = utf8_decode(lemma);
    std::u32string f = utf8_decode(form);
    CommonCore core = longest_common_substring(l, f);
    EditDecomposition d;
    if (core.length == 0) {
        // Nothing shared: replace the whole lemma.
        d.strip = static_cast<long>(l.size());
        d.append = form;
        return d;
    }
    d.prepend = utf8_encode(f.substr(0, core.form_start));
    d.strip = static_cast<long>(l.size() - (core.lemma_start + core.length));
    d.append = utf8_encode(f.substr(core.form_start + core.length));
    return d;
}

namespace {

struct RuleKey {
    std::string features;
    std::string suffix;
    std::string prepend;
    long strip;
    std::string append;
    bool operator<(const RuleKey& o) const {
        return std::tie(features, suffix, prepend, strip, append) <
               std::tie(o.features, o.suffix, o.prepend, o.strip, o.append);
    }
};

constexpr std::size_t kMaxSuffixContext = 3;

void sort_rule_list(std::vector<EditRule>& rules) {
    std::sort(rules.begin(), rules.end(), [](const EditRule& a, const EditRule& b) {
        std::size_t la = utf8_length(a.lemma_suffix);
        std::size_t lb = utf8_length(b.lemma_suffix);
        if (la != lb) return la > lb;            // longer context first
        if (a.support != b.support) return a.support > b.support;  // then better attested
        return std::tie(a.lemma_suffix, a.prepend, a.strip, a.append) <
               std::tie(b.lemma_suffix, b.prepend, b.strip, b.append);
    });
}

}  // namespace

RuleModel RuleModel::train(const std::vector<Triple>& triples) {
    if (triples.empty()) throw DataError("baseline training needs at least one triple");
    std::map<RuleKey, long> counts;
    for (const auto& t : triples) {
        EditDecomposition d = decompose(t.lemma, t.form);
        std::u32string lemma_cp = utf8_decode(t.lemma);
        std::string features = t.features.serialize();
        for (std::size_t ctx = 0; ctx <= kMaxSuffixContext && ctx <= lemma_cp.size(); ++ctx) {
            std::string suffix = utf8_encode(lemma_cp.substr(lemma_cp.size() - ctx));
            ++counts[RuleKey{features, suffix, d.prepend, d.strip, d.append}];
        }
    }
    RuleModel model;
    for (const auto& [key, support] : counts)
        model.rules_[key.features].push_back(
            EditRule{key.suffix, key.prepend, key.strip, key.append, support});
    for (auto& [features, rules] : model.rules_) sort_rule_list(rules);
    return model;
}

std::string RuleModel::predict(const std::string& lemma, const FeatureSet& features) const {
    auto it = rules_.find(features.serialize());
    if (it == rules_.end()) return lemma;  // unseen feature set: copy
    std::u32string lemma_cp = utf8_decode(lemma);
    for (const auto& rule : it->second) {
        std::u32string suffix_cp = utf8_decode(rule.lemma_suffix);
        if (suffix_cp.size() > lemma_cp.size()) continue;
        if (lemma_cp.compare(lemma_cp.size() - suffix_cp.size(), suffix_cp.size(), suffix_cp) != 0)
            continue;
        if (rule.strip > static_cast<long>(lemma_cp.size())) continue;
        std::u32string kept = lemma_cp.substr(0, lemma_cp.size() - static_cast<std::size_t>(rule.strip));
        std::string result = rule.prepend + utf8_encode(kept) + rule.append;
        if (result.empty()) continue;  // a rule never produces an empty form
        return result;
    }
    return lemma;
}

std::string RuleModel::dump() const {
    std::ostringstream out;
    for (const auto& [features, rules] : rules_)
        for (const auto& r : rules)
            out << features << "\t" << r.lemma_suffix << "\t" << r.prepend << "\t" << r.strip
                << "\t" << r.append << "\t" << r.support << "\n";
    return out.str();
}

RuleModel RuleModel::load(std::string_view text) {
    RuleModel model;
    long line_no = 0;
    for (auto& line : split_on(text, '\n')) {
        ++line_no;
        line = strip_cr(std::move(line));
        if (line.empty() || line[0] == '#') continue;
        auto cols = split_on(line, '\t');
        if (cols.size() != 6)
            throw DataError("model line " + std::to_string(line_no) + ": expected 6 columns");
        EditRule rule;
        rule.lemma_suffix = cols[1];
        rule.prepend = cols[2];
        try {
            rule.strip = std::stol(cols[3]);
            rule.support = std::stol(cols[5]);
        } catch (const std::exception&) {
            throw DataError("model line " + std::to_string(line_no) + ": bad number");
        }
        rule.append = cols[4];
        model.rules_[cols[0]].push_back(std::move(rule));
    }
    for (auto& [features, rules] : model.rules_) sort_rule_list(rules);
    return model;
}

}  // namespace morphprobe
