#include "animacy/chi_square.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace animacy {

bool expected_frequencies_compliant(const std::vector<ContingencyCell>& cells) {
  std::size_t low = 0;
  for (const auto& c : cells)
    if (c.expected < 5) ++low;
  // low / n <= 0.2, kept in integers.
  return low * 5 <= cells.size();
}

namespace {

bool similar(const ContingencyCell& a, const ContingencyCell& b) {
  return (a.observed == 0 && b.observed == 0) || (a.other() == 0 && b.other() == 0);
}

}  // namespace

std::vector<ContingencyCell> merge_low_frequency(std::vector<ContingencyCell> cells) {
  while (!expected_frequencies_compliant(cells)) {
    bool found = false;
    std::tuple<long, std::string, std::string> best;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      for (std::size_t j = i + 1; j < cells.size(); ++j) {
        const auto& a = cells[i];
        const auto& b = cells[j];
        if (!similar(a, b) || (a.expected >= 5 && b.expected >= 5)) continue;
        auto key = std::make_tuple(a.expected + b.expected, std::min(a.label, b.label),
                                   std::max(a.label, b.label));
        if (!found || key < best) {
          found = true;
          best = key;
          bi = i;
          bj = j;
        }
      }
    }
    if (!found) break;
    ContingencyCell merged{cells[bi].observed + cells[bj].observed,
                           cells[bi].expected + cells[bj].expected,
                           std::get<1>(best) + "+" + std::get<2>(best)};
    cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(bj));
    cells[bi] = std::move(merged);
  }
  return cells;
}

ChiSquareResult chi_square(std::vector<ContingencyCell> cells) {
  for (const auto& c : cells)
    if (c.expected < 1 || c.observed < 0 || c.observed > c.expected)
      throw std::invalid_argument("contingency cell '" + c.label + "' violates 0 <= observed <= expected, expected >= 1");
  ChiSquareResult r;
  r.cells = merge_low_frequency(std::move(cells));
  for (const auto& c : r.cells) {
    const double d = static_cast<double>(c.observed - c.expected);
    r.statistic += d * d / static_cast<double>(c.expected);
  }
  r.df = static_cast<int>(r.cells.size()) - 1;
  r.valid = r.df >= 1 && expected_frequencies_compliant(r.cells);
  return r;
}

namespace {

constexpr int kMaxIterations = 1000;
constexpr double kEps = 1e-15;

// Series expansion, converges quickly for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a, sum = 1.0 / a, term = sum;
  for (int n = 0; n < kMaxIterations; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction (modified Lentz), for x >= a + 1.
double gamma_q_fraction(double a, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double regularized_gamma_p(double a, double x) {
  if (a <= 0 || x < 0) throw std::domain_error("regularized_gamma_p: need a > 0, x >= 0");
  if (x == 0) return 0.0;
  return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_fraction(a, x);
}

double regularized_gamma_q(double a, double x) {
  if (a <= 0 || x < 0) throw std::domain_error("regularized_gamma_q: need a > 0, x >= 0");
  if (x == 0) return 1.0;
  return x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_fraction(a, x);
}

double chi_square_sf(double statistic, int df) {
  if (df < 1) throw std::domain_error("chi-square needs df >= 1");
  if (statistic <= 0) return 1.0;
  return regularized_gamma_q(0.5 * df, 0.5 * statistic);
}

double chi_square_critical(int df, double alpha) {
  if (df < 1) throw std::domain_error("chi-square needs df >= 1");
  if (!(alpha > 0 && alpha < 1)) throw std::domain_error("alpha must lie in (0, 1)");
  static std::mutex mu;
  static std::map<std::pair<int, double>, double> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find({df, alpha}); it != cache.end()) return it->second;
  }
  // sf is decreasing in x; bracket then bisect.
  double lo = 0.0, hi = std::max(1.0, static_cast<double>(df));
  while (chi_square_sf(hi, df) > alpha) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-13 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (chi_square_sf(mid, df) > alpha ? lo : hi) = mid;
  }
  const double x = 0.5 * (lo + hi);
  std::lock_guard lock(mu);
  cache.emplace(std::make_pair(df, alpha), x);
  return x;
}

}  // namespace animacy
