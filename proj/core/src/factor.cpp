#include <algorithm>
#include <map>

#include "irk/bigint.hpp"
#include "irk/error.hpp"
#include "irk/group.hpp"

namespace irk {

BigInt factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

namespace {

BigInt mulmod(const BigInt& a, const BigInt& b, const BigInt& m) {
  return (a * b) % m;
}

BigInt powmod(BigInt base, BigInt exp, const BigInt& m) {
  BigInt r = 1;
  base %= m;
  while (exp > 0) {
    if ((exp & 1) != 0) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

bool miller_rabin(const BigInt& n) {
  if (n < 2) return false;
  for (unsigned p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  BigInt d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (unsigned a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    BigInt x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 0; i + 1 < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

BigInt pollard_rho(const BigInt& n) {
  if ((n & 1) == 0) return 2;
  for (BigInt c = 1;; ++c) {
    BigInt x = 2, y = 2, d = 1;
    while (d == 1) {
      x = (mulmod(x, x, n) + c) % n;
      y = (mulmod(y, y, n) + c) % n;
      y = (mulmod(y, y, n) + c) % n;
      BigInt diff = x > y ? x - y : y - x;
      if (diff == 0) break;
      d = gcd(diff, n);
    }
    if (d != 1 && d != n) return d;
  }
}

void factor_into(BigInt n, std::map<BigInt, unsigned>& out) {
  if (n == 1) return;
  if (miller_rabin(n)) {
    ++out[n];
    return;
  }
  BigInt d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<std::pair<BigInt, unsigned>> factorize(const BigInt& n) {
  if (n <= 0) fail(ErrorCode::usage, "factorize: argument must be positive");
  std::map<BigInt, unsigned> acc;
  BigInt m = n;
  // Group orders are smooth; trial division nearly always finishes the job.
  for (std::uint64_t p = 2; p <= 1000000 && BigInt(p) * p <= m; p == 2 ? p = 3 : p += 2) {
    while (m % p == 0) {
      ++acc[p];
      m /= p;
    }
  }
  if (m > 1) {
    if (m <= BigInt(1000000) * 1000000 || miller_rabin(m))
      ++acc[m];  // remainder below the trial bound squared is prime
    else
      factor_into(m, acc);
  }
  return {acc.begin(), acc.end()};
}

}  // namespace irk
