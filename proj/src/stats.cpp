#include "homcheck/stats.hpp"

#include <cmath>
#include <cstdio>

#include "homcheck/errors.hpp"

namespace homcheck {

ChiSquaredResult chi_squared_2x2(const ContingencyTable2x2& t, bool yates) {
  const double a = static_cast<double>(t.a), b = static_cast<double>(t.b);
  const double c = static_cast<double>(t.c), d = static_cast<double>(t.d);
  const double r1 = a + b, r2 = c + d, c1 = a + c, c2 = b + d;
  if (r1 == 0 || r2 == 0 || c1 == 0 || c2 == 0)
    throw ValidationError("chi-squared undefined: zero marginal in 2x2 table");
  const double n = r1 + r2;
  double diff = std::fabs(a * d - b * c);
  if (yates) diff = std::max(0.0, diff - n / 2.0);
  ChiSquaredResult res;
  res.statistic = n * diff * diff / (r1 * r2 * c1 * c2);
  res.p05 = res.statistic > 3.841;
  res.p01 = res.statistic > 6.635;
  res.p005 = res.statistic > 7.879;
  res.p001 = res.statistic > 10.828;
  return res;
}

namespace {

std::uint64_t pow10u(int e) {
  std::uint64_t p = 1;
  while (e-- > 0) p *= 10;
  return p;
}

// Renders numer/denom scaled by 10^decimals, rounded half-up, as a decimal
// string with the point reinserted.
std::string render_scaled(std::uint64_t numer, std::uint64_t denom, int decimals) {
  std::uint64_t scale = pow10u(decimals);
  std::uint64_t units = (2 * numer * scale + denom) / (2 * denom);
  std::uint64_t whole = units / scale;
  std::uint64_t frac = units % scale;
  std::string out = std::to_string(whole);
  if (decimals > 0) {
    std::string f = std::to_string(frac);
    out += '.';
    out += std::string(static_cast<std::size_t>(decimals) - f.size(), '0');
    out += f;
  }
  return out;
}

}  // namespace

std::string format_support_pct(std::uint64_t instances, std::uint64_t actual_exceptions) {
  return format_ratio_pct(instances - actual_exceptions, instances, 1);
}

std::string format_ratio_pct(std::uint64_t numer, std::uint64_t denom, int decimals) {
  if (denom == 0) return "n/a";
  return render_scaled(numer * 100, denom, decimals);
}

std::string format_fixed(double v, int decimals) {
  // printf's shortest-correct rounding is ties-to-even on some libcs; going
  // through an exact integer of the scaled value keeps half-up behavior.
  bool neg = v < 0;
  double av = neg ? -v : v;
  double scaled = av * static_cast<double>(pow10u(decimals));
  auto units = static_cast<unsigned long long>(std::floor(scaled + 0.5));
  std::uint64_t scale = pow10u(decimals);
  std::string out = std::to_string(units / scale);
  if (decimals > 0) {
    std::string f = std::to_string(units % scale);
    out += '.';
    out += std::string(static_cast<std::size_t>(decimals) - f.size(), '0');
    out += f;
  }
  return neg && units != 0 ? "-" + out : out;
}

}  // namespace homcheck
