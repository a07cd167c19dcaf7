#include "groupeq/ring.hpp"

#include <algorithm>

namespace groupeq {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotAPrime: return "NotAPrime";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::NonCoprimeModuli: return "NonCoprimeModuli";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::DescriptorMismatch: return "DescriptorMismatch";
    case ErrorCode::NotAPGroup: return "NotAPGroup";
    case ErrorCode::NotPeriodic: return "NotPeriodic";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::NotPiNonsingular: return "NotPiNonsingular";
    case ErrorCode::PSingular: return "PSingular";
    case ErrorCode::MissingPrimeNonsingularity: return "MissingPrimeNonsingularity";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::UnsupportedGroup: return "UnsupportedGroup";
    case ErrorCode::DependentRow: return "DependentRow";
    case ErrorCode::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorCode::MissingVariable: return "MissingVariable";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
    case ErrorCode::NotCentral: return "NotCentral";
    case ErrorCode::CentralityAssertionFailed: return "CentralityAssertionFailed";
    case ErrorCode::DuplicatePrime: return "DuplicatePrime";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

const Int& ExtInt::value() const {
  if (!value_) throw Error(ErrorCode::InvalidArgument, "value() of infinite quantity");
  return *value_;
}

std::string ExtInt::str() const { return value_ ? value_->get_str() : "inf"; }

PrimePower::PrimePower(Int prime, unsigned long exponent) : p(std::move(prime)), e(exponent) {
  require_prime(p);
  if (e == 0) throw Error(ErrorCode::InvalidArgument, "prime power exponent must be >= 1");
}

Int PrimePower::value() const { return pow(p, e); }

bool is_prime(const Int& n) {
  if (n < 2) return false;
  // Baillie-PSW plus Miller-Rabin rounds; exact below 2^64
  return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

void require_prime(const Int& p) {
  if (!is_prime(p)) throw Error(ErrorCode::NotAPrime, p.get_str() + " is not prime");
}

Int mod(const Int& n, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
  if (r < 0) r += abs(m);
  return r;
}

Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

Int pow(const Int& base, unsigned long exponent) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

Int xgcd(const Int& a, const Int& b, Int& s, Int& t) {
  Int g;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

ExtInt val_p(const Int& n, const Int& p) {
  require_prime(p);
  if (n == 0) return ExtInt::infinite();
  Int rest = abs(n);
  unsigned long k = 0;
  while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t()) != 0) {
    rest /= p;
    ++k;
  }
  return ExtInt::finite(Int(k));
}

Int inv_mod(const Int& a, const Int& m) {
  if (m < 2) throw Error(ErrorCode::InvalidArgument, "modulus must be >= 2");
  Int s, t;
  const Int g = xgcd(mod(a, m), m, s, t);
  if (g != 1) {
    throw Error(ErrorCode::NotAUnit, a.get_str() + " is not invertible modulo " + m.get_str());
  }
  return mod(s, m);
}

Residue crt_pair(const Residue& r1, const Residue& r2) {
  if (r1.modulus < 1 || r2.modulus < 1) throw Error(ErrorCode::InvalidArgument, "moduli must be positive");
  if (gcd(r1.modulus, r2.modulus) != 1) {
    throw Error(ErrorCode::NonCoprimeModuli,
                r1.modulus.get_str() + " and " + r2.modulus.get_str() + " share a factor");
  }
  const Int m = r1.modulus * r2.modulus;
  if (r2.modulus == 1) return {mod(r1.value, m), m};
  // x = r1 + m1 * t with t = (r2 - r1) * m1^{-1} mod m2
  const Int t = mod((r2.value - r1.value) * inv_mod(r1.modulus, r2.modulus), r2.modulus);
  return {mod(r1.value + r1.modulus * t, m), m};
}

namespace {

// Brent's variant of Pollard rho; n is odd and composite
Int rho_divisor(const Int& n) {
  for (unsigned long c = 1;; ++c) {
    Int y = 2, x, ys, q = 1, g = 1;
    const unsigned long block = 64;
    unsigned long r = 1;
    auto step = [&](const Int& v) { return Int((v * v + c) % n); };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = step(y);
      for (unsigned long k = 0; k < r && g == 1; k += block) {
        ys = y;
        for (unsigned long i = 0; i < std::min(block, r - k); ++i) {
          y = step(y);
          q = Int(q * abs(Int(x - y))) % n;
        }
        g = gcd(q, n);
      }
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = step(ys);
        g = gcd(abs(Int(x - ys)), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_into(const Int& n, std::vector<Int>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  const Int d = rho_divisor(n);
  split_into(d, primes);
  split_into(n / d, primes);
}

}  // namespace

std::vector<PrimePower> factor_small(const Int& n) {
  static const Int bound = pow(Int(2), 64);
  if (n < 1 || n > bound) {
    throw Error(ErrorCode::OutOfRange, "factor_small expects 1 <= n <= 2^64, got " + n.get_str());
  }
  std::vector<PrimePower> out;
  Int rest = n;
  for (unsigned long d = 2; d < (1ul << 16) && Int(d) * d <= rest; d += d == 2 ? 1 : 2) {
    unsigned long e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), d) != 0) {
      rest /= d;
      ++e;
    }
    if (e > 0) out.emplace_back(Int(d), e);
  }
  // what is left has no factor below 2^16
  std::vector<Int> big;
  split_into(rest, big);
  std::sort(big.begin(), big.end());
  for (std::size_t i = 0; i < big.size();) {
    std::size_t j = i;
    while (j < big.size() && big[j] == big[i]) ++j;
    out.emplace_back(big[i], static_cast<unsigned long>(j - i));
    i = j;
  }
  return out;
}

std::vector<Int> prime_divisors(const Int& n) {
  std::vector<Int> out;
  for (const auto& pp : factor_small(n)) out.push_back(pp.p);
  return out;
}

Int parse_int(const std::string& text) {
  Int v;
  std::string t = text;
  if (!t.empty() && t.front() == '+') t.erase(0, 1);
  if (t.empty() || v.set_str(t, 10) != 0) {
    throw Error(ErrorCode::ParseError, "not an integer: '" + text + "'");
  }
  return v;
}

Rat parse_rat(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rat(parse_int(text));
  const Int num = parse_int(text.substr(0, slash));
  const Int den = parse_int(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + text + "'");
  return make_rat(num, den);
}

std::string to_string(const Int& v) { return v.get_str(); }

std::string to_string(const Rat& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

}  // namespace groupeq
