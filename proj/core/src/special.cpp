#include "pwinterp/special.hpp"

#include <cmath>

namespace pwinterp {

Complex complex_sinc(Complex w) {
  // Taylor fallback keeps full relative accuracy through the removable zero.
  if (std::abs(w) < 1e-4) {
    const Complex w2 = w * w;
    return 1.0 - w2 / 6.0 + (w2 * w2) / 120.0;
  }
  return std::sin(w) / w;
}

double hurwitz_zeta_even(int s, double a) {
  if (s < 2 || s % 2 != 0) throw ParameterRange("hurwitz_zeta_even: s must be an even integer >= 2");
  if (!(a > 0.0)) throw ParameterRange("hurwitz_zeta_even: a must be positive");
  // Euler-Maclaurin from cutoff K: direct head, integral + boundary terms,
  // four Bernoulli corrections (B_2j/(2j)! for j = 1..4).
  constexpr int K = 16;
  static const double bern[4] = {1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0};
  double head = 0.0;
  for (int n = K - 1; n >= 0; --n) head += std::pow(n + a, -s);
  const double edge = K + a;
  double value = head + std::pow(edge, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(edge, -s);
  double rising = static_cast<double>(s);  // s (s+1) ... (s+2j-2)
  double power = std::pow(edge, -s - 1.0);
  for (int j = 1; j <= 4; ++j) {
    value += bern[j - 1] * rising * power;
    rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
    power /= edge * edge;
  }
  return value;
}

double hurwitz_zeta_even_scaled(int s, double a) {
  if (s < 2 || s % 2 != 0)
    throw ParameterRange("hurwitz_zeta_even_scaled: s must be an even integer >= 2");
  if (!(a > 0.0)) throw ParameterRange("hurwitz_zeta_even_scaled: a must be positive");
  // Same Euler-Maclaurin expansion as hurwitz_zeta_even with every power
  // expressed through the bounded ratio a/(n+a).
  constexpr int K = 16;
  static const double bern[4] = {1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0};
  double head = 0.0;
  for (int n = K - 1; n >= 0; --n) head += std::pow(a / (n + a), s);
  const double edge = K + a;
  const double r = std::pow(a / edge, s);
  double value = head + r * edge / (s - 1.0) + 0.5 * r;
  double rising = static_cast<double>(s);
  double power = r / edge;
  for (int j = 1; j <= 4; ++j) {
    value += bern[j - 1] * rising * power;
    rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
    power /= edge * edge;
  }
  return value;
}

double bump_profile(double u) {
  const double t = 1.0 - u * u;
  if (t <= 0.0) return 0.0;
  return std::exp(-1.0 / t);
}

}  // namespace pwinterp
