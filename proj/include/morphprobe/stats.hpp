#ifndef MORPHPROBE_STATS_HPP
#define MORPHPROBE_STATS_HPP

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace morphprobe {

struct Observation {
    double accuracy = 0.0;
    std::map<std::string, std::string> factors;  // factor name -> level
};

struct AnovaRow {
    std::string term;
    long df = 0;
    double ss = 0.0;
    double ms = 0.0;
    double f = 0.0;
    double p = 1.0;
};

struct AnovaTable {
    std::vector<AnovaRow> terms;
    AnovaRow residual;  // term = "residual"; f and p unused
    AnovaRow total;     // term = "total"
};

// Sequential (Type I) sums of squares in the given term order, computed by
// orthogonalizing treatment-coded design columns term by term. A term is
// either a factor name or an interaction "a*b" (product coding). F per term
// is MS_term / MS_residual.
AnovaTable anova_sequential(const std::vector<Observation>& observations,
                            const std::vector<std::string>& terms);

// Upper-tail probability of the F distribution: the regularized incomplete
// beta I_x(df2/2, df1/2) at x = df2 / (df2 + df1 * F).
double f_tail(double f_statistic, long df1, long df2);

// Exposed for the quadrature oracle in tests.
double regularized_incomplete_beta(double a, double b, double x);

// Results table: TSV whose header names the factor columns; the last column
// must be "accuracy".
std::vector<Observation> parse_results_tsv(std::string_view text);

std::string anova_to_tsv(const AnovaTable& table);
// Text table in the paper's layout: Variable, F-statistic, p-value.
std::string format_anova_text(const AnovaTable& table);

}  // namespace morphprobe

#endif
