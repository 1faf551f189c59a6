/**
 * Exact rational scalars and prime-field helpers.
 *
 * Every coefficient in this library is an arbitrary-precision rational; the
 * GMP backend keeps each value in lowest terms with a positive denominator.
 */
#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace mnc {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Raised for malformed user input (files, arguments, precondition misuse).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a caller asks for something the mathematics refuses, e.g. a
/// statement whose hypotheses do not hold.
class PreconditionError : public InputError {
 public:
  using InputError::InputError;
};

inline bool is_zero(const Rational& q) { return q.is_zero(); }

inline bool is_integer(const Rational& q) {
  return boost::multiprecision::denominator(q) == 1;
}

/// Parses "p/q", "-p/q" or a bare integer. Whitespace is not accepted.
inline Rational parse_rational(std::string_view text) {
  auto digits_ok = [](std::string_view s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"}
                                                         : text.substr(slash + 1);
  if (!digits_ok(num, true) || !digits_ok(den, false)) {
    throw InputError("malformed rational literal '" + std::string(text) + "'");
  }
  std::string n(num);
  if (n[0] == '+') n.erase(0, 1);
  Integer d(std::string{den});
  if (d == 0) {
    throw InputError("zero denominator in '" + std::string(text) + "'");
  }
  return Rational(Integer(n), d);
}

/// "p/q" form, or "p" for integers.
inline std::string to_string(const Rational& q) {
  if (is_integer(q)) return boost::multiprecision::numerator(q).str();
  return q.str();
}

inline Rational pow(const Rational& base, long long exponent) {
  Rational result = 1;
  Rational b = exponent < 0 ? Rational(1) / base : base;
  unsigned long long e = exponent < 0 ? static_cast<unsigned long long>(-exponent)
                                      : static_cast<unsigned long long>(exponent);
  while (e != 0) {
    if (e & 1U) result *= b;
    b *= b;
    e >>= 1U;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Prime fields

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (e != 0) {
    if (e & 1U) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    e >>= 1U;
  }
  return result;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % d == 0) return n == d;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // Deterministic witness set for 64-bit inputs.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// Draws `count` distinct primes of exactly `bits` bits from `rng`.
inline std::vector<std::uint64_t> random_primes(std::mt19937_64& rng, std::size_t count, int bits = 30) {
  std::uniform_int_distribution<std::uint64_t> dist(1ULL << (bits - 1), (1ULL << bits) - 1);
  std::vector<std::uint64_t> primes;
  while (primes.size() < count) {
    std::uint64_t candidate = dist(rng) | 1ULL;
    if (!is_prime(candidate)) continue;
    bool fresh = true;
    for (auto p : primes) fresh = fresh && p != candidate;
    if (fresh) primes.push_back(candidate);
  }
  return primes;
}

/// Raised when a prime divides a denominator of the matrix being reduced.
class BadPrimeError : public InputError {
 public:
  using InputError::InputError;
};

/// Image of q in Z/p. Throws BadPrimeError when p divides the denominator.
inline std::uint64_t reduce_mod(const Rational& q, std::uint64_t p) {
  const auto& num = boost::multiprecision::numerator(q);
  const auto& den = boost::multiprecision::denominator(q);
  const std::uint64_t d = mpz_fdiv_ui(den.backend().data(), p);
  if (d == 0) {
    throw BadPrimeError("prime " + std::to_string(p) + " divides a denominator");
  }
  const std::uint64_t n = mpz_fdiv_ui(num.backend().data(), p);
  return mul_mod(n, pow_mod(d, p - 2, p), p);
}

}  // namespace mnc
