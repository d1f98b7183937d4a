#pragma once

#include <string>
#include <vector>

namespace animacy {

/// One column of the animacy contingency table: a hyponym sense, its
/// observed count under the tested hypothesis, and its total occurrences
/// (the count expected if every occurrence agreed with the hypothesis).
struct ContingencyCell {
  long observed = 0;
  long expected = 0;
  std::string label;  // tie-breaking key; usually the synset id

  long other() const { return expected - observed; }
  bool operator==(const ContingencyCell&) const = default;
};

struct ChiSquareResult {
  double statistic = 0.0;
  int df = 0;
  bool valid = false;
  std::vector<ContingencyCell> cells;  // after merging
};

/// True when no more than 20% of the expected frequencies are below 5.
bool expected_frequencies_compliant(const std::vector<ContingencyCell>& cells);

/// Merges low-frequency cells while the 20% rule is violated. Two cells
/// may merge only when they are similar: both have zero observed, or both
/// have zero non-observed. At least one of the pair must be below 5. The
/// pair with the smallest combined expected count goes first, ties broken
/// by the sorted label pair.
std::vector<ContingencyCell> merge_low_frequency(std::vector<ContingencyCell> cells);

/// Pearson statistic over the merged table. The test is valid when the
/// merged table satisfies the 20% rule and has at least one degree of
/// freedom.
ChiSquareResult chi_square(std::vector<ContingencyCell> cells);

/// Regularized lower and upper incomplete gamma functions P(a, x), Q(a, x).
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

/// Upper-tail probability of the chi-square distribution.
double chi_square_sf(double statistic, int df);

/// Value x with chi_square_sf(x, df) == alpha.
double chi_square_critical(int df, double alpha = 0.05);

}  // namespace animacy
