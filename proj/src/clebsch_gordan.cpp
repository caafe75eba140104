// Clebsch-Gordan coefficients via the Racah closed form, evaluated in exact
// rational arithmetic. The squared coefficient is formed exactly and only the
// final square root is taken in floating point.

#include <cmath>
#include <cstdlib>

#include <boost/multiprecision/cpp_int.hpp>

#include "spinsq/spin_algebra.hpp"

namespace spinsq {
namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

cpp_int factorial(int n) {
  cpp_int f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

bool valid_pair(int two_j, int two_m) {
  return two_j >= 0 && std::abs(two_m) <= two_j && ((two_j + two_m) % 2 == 0);
}

}  // namespace

double clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2, int two_j, int two_m) {
  if (!valid_pair(two_j1, two_m1) || !valid_pair(two_j2, two_m2) || !valid_pair(two_j, two_m)) return 0.0;
  if (two_m1 + two_m2 != two_m) return 0.0;
  if (two_j > two_j1 + two_j2 || two_j < std::abs(two_j1 - two_j2)) return 0.0;
  if ((two_j1 + two_j2 + two_j) % 2 != 0) return 0.0;

  // Integer arguments of the factorials.
  const int a = (two_j1 + two_j2 - two_j) / 2;
  const int b = (two_j1 - two_j2 + two_j) / 2;
  const int c = (-two_j1 + two_j2 + two_j) / 2;
  const int s = (two_j1 + two_j2 + two_j) / 2 + 1;
  const int jm1 = (two_j1 - two_m1) / 2, jp1 = (two_j1 + two_m1) / 2;
  const int jm2 = (two_j2 - two_m2) / 2, jp2 = (two_j2 + two_m2) / 2;
  const int jm = (two_j - two_m) / 2, jp = (two_j + two_m) / 2;

  cpp_rational radicand(cpp_int(two_j + 1) * factorial(a) * factorial(b) * factorial(c), factorial(s));
  radicand *= cpp_rational(factorial(jp) * factorial(jm) * factorial(jm1) * factorial(jp1) * factorial(jm2) *
                           factorial(jp2));

  // Summation index bounds keep every factorial argument non-negative.
  const int d1 = (two_j - two_j2 + two_m1) / 2;  // J - j2 + m1
  const int d2 = (two_j - two_j1 - two_m2) / 2;  // J - j1 - m2
  const int k_min = std::max({0, -d1, -d2});
  const int k_max = std::min({a, jm1, jp2});
  cpp_rational sum = 0;
  for (int k = k_min; k <= k_max; ++k) {
    const cpp_int den = factorial(k) * factorial(a - k) * factorial(jm1 - k) * factorial(jp2 - k) *
                        factorial(d1 + k) * factorial(d2 + k);
    sum += cpp_rational((k % 2 == 0) ? 1 : -1, den);
  }
  if (sum == 0) return 0.0;

  const cpp_rational squared = sum * sum * radicand;
  const double magnitude = std::sqrt(squared.convert_to<double>());
  return sum > 0 ? magnitude : -magnitude;
}

}  // namespace spinsq
