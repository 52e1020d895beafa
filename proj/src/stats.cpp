#include "morphprobe/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "morphprobe/util.hpp"

namespace morphprobe {

namespace {

using Column = std::vector<double>;

double dot(const Column& a, const Column& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const Column& a) { return dot(a, a); }

// Treatment coding: sorted levels, first level is the reference, one
// indicator column per remaining level.
std::vector<Column> treatment_columns(const std::vector<Observation>& obs,
                                      const std::string& factor) {
    std::set<std::string> level_set;
    for (const auto& o : obs) {
        auto it = o.factors.find(factor);
        if (it == o.factors.end())
            throw DataError("observation missing factor '" + factor + "'");
        level_set.insert(it->second);
    }
    if (level_set.size() < 2)
        throw DataError("factor '" + factor + "' has fewer than 2 levels");
    std::vector<std::string> levels(level_set.begin(), level_set.end());
    std::vector<Column> cols;
    for (std::size_t l = 1; l < levels.size(); ++l) {
        Column c(obs.size(), 0.0);
        for (std::size_t i = 0; i < obs.size(); ++i)
            if (obs[i].factors.at(factor) == levels[l]) c[i] = 1.0;
        cols.push_back(std::move(c));
    }
    return cols;
}

std::vector<Column> term_columns(const std::vector<Observation>& obs, const std::string& term) {
    auto parts = split_on(term, '*');
    for (auto& p : parts) {
        // permit spaces around '*'
        while (!p.empty() && p.front() == ' ') p.erase(p.begin());
        while (!p.empty() && p.back() == ' ') p.pop_back();
        if (p.empty()) throw DataError("malformed term '" + term + "'");
    }
    std::vector<Column> cols = treatment_columns(obs, parts[0]);
    for (std::size_t k = 1; k < parts.size(); ++k) {
        std::vector<Column> next = treatment_columns(obs, parts[k]);
        std::vector<Column> product;
        for (const auto& a : cols) {
            for (const auto& b : next) {
                Column c(a.size());
                for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] * b[i];
                product.push_back(std::move(c));
            }
        }
        cols = std::move(product);
    }
    return cols;
}

}  // namespace

AnovaTable anova_sequential(const std::vector<Observation>& observations,
                            const std::vector<std::string>& terms) {
    const std::size_t n = observations.size();
    if (n < 3) throw DataError("ANOVA needs at least 3 observations");
    if (terms.empty()) throw DataError("ANOVA needs at least one term");

    Column y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = observations[i].accuracy;

    // Orthonormal basis built column by column; the intercept goes first so
    // term sums of squares are centered.
    std::vector<Column> basis;
    auto orthogonalize = [&](Column c) -> std::pair<Column, bool> {
        const double original = std::sqrt(norm2(c));
        for (int pass = 0; pass < 2; ++pass)  // re-orthogonalize for stability
            for (const auto& q : basis) {
                double proj = dot(q, c);
                for (std::size_t i = 0; i < n; ++i) c[i] -= proj * q[i];
            }
        double remaining = std::sqrt(norm2(c));
        if (original == 0.0 || remaining <= 1e-10 * std::max(1.0, original))
            return {Column{}, false};
        for (double& v : c) v /= remaining;
        return {c, true};
    };

    Column intercept(n, 1.0);
    basis.push_back(orthogonalize(std::move(intercept)).first);

    AnovaTable table;
    long model_df = 0;
    for (const auto& term : terms) {
        AnovaRow row;
        row.term = term;
        for (auto& col : term_columns(observations, term)) {
            auto [q, ok] = orthogonalize(std::move(col));
            if (!ok)
                throw DataError("term '" + term +
                                "' is aliased with earlier terms (singular design)");
            double coef = dot(q, y);
            row.ss += coef * coef;
            ++row.df;
            basis.push_back(std::move(q));
        }
        row.ms = row.ss / static_cast<double>(row.df);
        model_df += row.df;
        table.terms.push_back(std::move(row));
    }

    const long df_total = static_cast<long>(n) - 1;
    const long df_residual = df_total - model_df;
    if (df_residual < 1)
        throw DataError("no residual degrees of freedom (n = " + std::to_string(n) +
                        ", model df = " + std::to_string(model_df) + ")");

    Column fitted(n, 0.0);
    for (const auto& q : basis) {
        double coef = dot(q, y);
        for (std::size_t i = 0; i < n; ++i) fitted[i] += coef * q[i];
    }
    double ss_residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = y[i] - fitted[i];
        ss_residual += r * r;
    }
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(n);
    double ss_total = 0.0;
    for (double v : y) ss_total += (v - mean) * (v - mean);

    if (ss_residual <= 1e-12 * std::max(1.0, ss_total))
        throw DataError("zero residual variance; F statistics are undefined");

    table.residual = {"residual", df_residual, ss_residual,
                      ss_residual / static_cast<double>(df_residual), 0.0, 1.0};
    table.total = {"total", df_total, ss_total, 0.0, 0.0, 1.0};
    for (auto& row : table.terms) {
        row.f = row.ms / table.residual.ms;
        row.p = f_tail(row.f, row.df, df_residual);
    }
    return table;
}

double regularized_incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    // Use the continued fraction on the side where it converges fast and
    // the symmetry I_x(a,b) = 1 - I_{1-x}(b,a) on the other.
    if (x > (a + 1.0) / (a + b + 2.0)) return 1.0 - regularized_incomplete_beta(b, a, 1.0 - x);

    const double log_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
        b * std::log1p(-x);

    // Modified Lentz evaluation of the standard even/odd coefficient
    // expansion; absolute tolerance 1e-12 or better.
    const double tiny = 1e-300;
    double c = 1.0;
    double d = 1.0 - (a + b) * x / (a + 1.0);
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 500; ++m) {
        double md = static_cast<double>(m);
        double numerator = md * (b - md) * x / ((a + 2.0 * md - 1.0) * (a + 2.0 * md));
        d = 1.0 + numerator * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + numerator / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        numerator = -(a + md) * (a + b + md) * x / ((a + 2.0 * md) * (a + 2.0 * md + 1.0));
        d = 1.0 + numerator * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + numerator / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-14) break;
    }
    return std::exp(log_front) * h / a;
}

double f_tail(double f_statistic, long df1, long df2) {
    if (df1 < 1 || df2 < 1) throw DataError("F distribution needs df1 >= 1 and df2 >= 1");
    if (f_statistic < 0.0) throw DataError("F statistic must be non-negative");
    if (f_statistic == 0.0) return 1.0;
    const double d1 = static_cast<double>(df1);
    const double d2 = static_cast<double>(df2);
    const double x = d2 / (d2 + d1 * f_statistic);
    return regularized_incomplete_beta(d2 / 2.0, d1 / 2.0, x);
}

std::vector<Observation> parse_results_tsv(std::string_view text) {
    auto lines = split_on(text, '\n');
    std::vector<std::string> header;
    std::vector<Observation> out;
    long line_no = 0;
    for (auto& raw : lines) {
        ++line_no;
        std::string line = strip_cr(std::move(raw));
        if (line.empty() || line[0] == '#') continue;
        auto cols = split_on(line, '\t');
        if (header.empty()) {
            header = cols;
            if (header.size() < 2 || header.back() != "accuracy")
                throw DataError("results header must end with an 'accuracy' column");
            continue;
        }
        if (cols.size() != header.size())
            throw DataError("results line " + std::to_string(line_no) + ": expected " +
                            std::to_string(header.size()) + " columns");
        Observation o;
        for (std::size_t i = 0; i + 1 < header.size(); ++i) o.factors[header[i]] = cols[i];
        try {
            o.accuracy = std::stod(cols.back());
        } catch (const std::exception&) {
            throw DataError("results line " + std::to_string(line_no) + ": bad accuracy value '" +
                            cols.back() + "'");
        }
        if (o.accuracy < 0.0 || o.accuracy > 1.0)
            throw DataError("results line " + std::to_string(line_no) +
                            ": accuracy must be within [0, 1]");
        out.push_back(std::move(o));
    }
    if (header.empty()) throw DataError("results table is empty");
    return out;
}

namespace {

std::string format_p(double p) {
    if (p < 2e-16) return "<2e-16";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", p);
    return buf;
}

}  // namespace

std::string anova_to_tsv(const AnovaTable& table) {
    std::ostringstream out;
    out << "term\tdf\tss\tms\tF\tp\n";
    char buf[256];
    for (const auto& row : table.terms) {
        std::snprintf(buf, sizeof(buf), "%s\t%ld\t%.9g\t%.9g\t%.9g\t%.9g\n", row.term.c_str(),
                      row.df, row.ss, row.ms, row.f, row.p);
        out << buf;
    }
    std::snprintf(buf, sizeof(buf), "residual\t%ld\t%.9g\t%.9g\t\t\n", table.residual.df,
                  table.residual.ss, table.residual.ms);
    out << buf;
    std::snprintf(buf, sizeof(buf), "total\t%ld\t%.9g\t\t\t\n", table.total.df, table.total.ss);
    out << buf;
    return out.str();
}

std::string format_anova_text(const AnovaTable& table) {
    std::size_t width = std::string("Variable").size();
    for (const auto& row : table.terms) width = std::max(width, row.term.size());
    std::ostringstream out;
    out << "Variable";
    out << std::string(width - 8, ' ') << "  F-statistic  p-value\n";
    char buf[256];
    for (const auto& row : table.terms) {
        std::snprintf(buf, sizeof(buf), "%-*s  %11.3f  %s\n", static_cast<int>(width),
                      row.term.c_str(), row.f, format_p(row.p).c_str());
        out << buf;
    }
    return out.str();
}

}  // namespace morphprobe
