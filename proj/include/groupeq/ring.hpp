#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "groupeq/error.hpp"

namespace groupeq {

using Int = mpz_class;
using Rat = mpq_class;

/// Builds num/den in lowest terms with a positive denominator.
Rat make_rat(const Int& num, const Int& den = 1);

/// A non-negative integer or +infinity. Used for valuations, orders and
/// heights, where "infinite" is a legitimate answer.
class ExtInt {
 public:
  static ExtInt infinite() { return ExtInt(); }
  static ExtInt finite(Int v) { return ExtInt(std::move(v)); }

  bool is_infinite() const { return !value_.has_value(); }
  const Int& value() const;

  friend bool operator==(const ExtInt& a, const ExtInt& b) { return a.value_ == b.value_; }
  std::string str() const;

 private:
  ExtInt() = default;
  explicit ExtInt(Int v) : value_(std::move(v)) {}
  std::optional<Int> value_;
};

struct PrimePower {
  Int p;
  unsigned long e = 1;

  PrimePower(Int prime, unsigned long exponent);
  Int value() const;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

bool is_prime(const Int& n);
void require_prime(const Int& p);

/// Representative of n modulo m in [0, m).
Int mod(const Int& n, const Int& m);
Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
Int pow(const Int& base, unsigned long exponent);

/// Extended gcd: returns g = gcd(a, b) >= 0 with s*a + t*b = g.
Int xgcd(const Int& a, const Int& b, Int& s, Int& t);

ExtInt val_p(const Int& n, const Int& p);
Int inv_mod(const Int& a, const Int& m);

struct Residue {
  Int value;
  Int modulus;
};

Residue crt_pair(const Residue& r1, const Residue& r2);

/// Factorization for 1 <= n <= 2^64: trial division to 2^16, then Pollard rho.
std::vector<PrimePower> factor_small(const Int& n);

/// Prime divisors of n (same bound as factor_small).
std::vector<Int> prime_divisors(const Int& n);

Int parse_int(const std::string& text);
Rat parse_rat(const std::string& text);
std::string to_string(const Int& v);
std::string to_string(const Rat& v);

}  // namespace groupeq
