#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace topogrey {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exact rational in [0,1] under truncated arithmetic; the value lattice of
/// all grey sets.  Always normalized: 0 <= num <= den, gcd(num, den) = 1.
class Rational01 {
public:
  constexpr Rational01() : num_(0), den_(1) {}
  Rational01(std::int64_t num, std::int64_t den);

  static Rational01 zero() { return Rational01(); }
  static Rational01 one() { return Rational01(1, 1); }
  /// 2^-n, exact.
  static Rational01 pow2(unsigned n);
  /// Parses "p/q" (or a bare integer "0"/"1").
  static Rational01 parse(std::string_view s);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == den_; }
  /// Value lies in {0, 1}, i.e. the rational is (part of) an ordinary set.
  bool is_crisp() const { return is_zero() || is_one(); }

  friend bool operator==(const Rational01& a, const Rational01& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const Rational01& a, const Rational01& b);
  friend bool operator<=(const Rational01& a, const Rational01& b) { return !(b < a); }
  friend bool operator>(const Rational01& a, const Rational01& b) { return b < a; }
  friend bool operator>=(const Rational01& a, const Rational01& b) { return !(a < b); }

  /// 1 /\ (r+s), exact.
  Rational01 trunc_add(const Rational01& o) const;
  /// 0 \/ (r-s), exact.
  Rational01 trunc_sub(const Rational01& o) const;
  /// |r - s|, exact.
  Rational01 dist(const Rational01& o) const;
  /// r * p/q, exact; requires 0 <= p <= q.
  Rational01 scale(std::int64_t p, std::int64_t q) const;
  Rational01 half() const { return scale(1, 2); }

  std::string str() const;

private:
  std::int64_t num_, den_;
};

inline Rational01 trunc_add(const Rational01& a, const Rational01& b) { return a.trunc_add(b); }
inline Rational01 trunc_sub(const Rational01& a, const Rational01& b) { return a.trunc_sub(b); }
inline Rational01 rat_min(const Rational01& a, const Rational01& b) { return a < b ? a : b; }
inline Rational01 rat_max(const Rational01& a, const Rational01& b) { return a < b ? b : a; }

}  // namespace topogrey
