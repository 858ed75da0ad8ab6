#ifndef HOMCHECK_STATS_HPP
#define HOMCHECK_STATS_HPP

#include <cstdint>
#include <string>

namespace homcheck {

struct ContingencyTable2x2 {
  std::uint64_t a = 0, b = 0;
  std::uint64_t c = 0, d = 0;

  std::uint64_t n() const { return a + b + c + d; }
};

struct ChiSquaredResult {
  double statistic = 0.0;
  // df=1 critical values: 3.841, 6.635, 7.879, 10.828.
  bool p05 = false;
  bool p01 = false;
  bool p005 = false;
  bool p001 = false;
};

/// Pearson chi-squared for a 2x2 table, df=1. With yates, |ad-bc| is reduced
/// by n/2 before squaring (floored at 0). Throws ValidationError when any
/// marginal is zero: the statistic is undefined there, not zero.
ChiSquaredResult chi_squared_2x2(const ContingencyTable2x2& t, bool yates = false);

/// (instances - actual) / instances * 100 as an exact rational, rendered to
/// one decimal place with round-half-up. Pure integer arithmetic so 99.95
/// never lands on 99.9 via binary-float truncation.
std::string format_support_pct(std::uint64_t instances, std::uint64_t actual_exceptions);

/// numer/denom * 100 rendered to `decimals` places, round-half-up.
std::string format_ratio_pct(std::uint64_t numer, std::uint64_t denom, int decimals);

/// Fixed-point rendering of a double to `decimals` places, round-half-up on
/// the decimal string. Used for chi-squared values in reports.
std::string format_fixed(double v, int decimals);

}  // namespace homcheck

#endif
