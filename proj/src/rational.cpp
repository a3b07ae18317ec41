#include "topogrey/rational.hpp"

#include <charconv>

namespace topogrey {

namespace {

using i128 = __int128;

i128 gcd128(i128 a, i128 b) {
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a == 0 ? 1 : a;
}

// Reduces p/q (checked: 0 <= p <= q, q > 0) and checks for int64 fit.
std::pair<std::int64_t, std::int64_t> reduce(i128 p, i128 q) {
  if (q <= 0) throw Error("rational: nonpositive denominator");
  if (p < 0) throw Error("rational: negative value");
  if (p > q) throw Error("rational: value above 1");
  i128 g = gcd128(p, q);
  p /= g;
  q /= g;
  if (p > INT64_MAX || q > INT64_MAX) throw Error("rational: denominator overflow");
  return {static_cast<std::int64_t>(p), static_cast<std::int64_t>(q)};
}

Rational01 make(i128 p, i128 q) {
  auto [n, d] = reduce(p, q);
  return Rational01(n, d);
}

}  // namespace

Rational01::Rational01(std::int64_t num, std::int64_t den) {
  auto [n, d] = reduce(num, den);
  num_ = n;
  den_ = d;
}

Rational01 Rational01::pow2(unsigned n) {
  if (n >= 63) throw Error("rational: 2^-n exponent too large");
  return Rational01(1, std::int64_t{1} << n);
}

Rational01 Rational01::parse(std::string_view s) {
  auto bad = [&] { return Error("rational: cannot parse '" + std::string(s) + "'"); };
  std::int64_t p = 0, q = 1;
  auto slash = s.find('/');
  std::string_view ns = s.substr(0, slash);
  auto r1 = std::from_chars(ns.data(), ns.data() + ns.size(), p);
  if (r1.ec != std::errc{} || r1.ptr != ns.data() + ns.size()) throw bad();
  if (slash != std::string_view::npos) {
    std::string_view ds = s.substr(slash + 1);
    auto r2 = std::from_chars(ds.data(), ds.data() + ds.size(), q);
    if (r2.ec != std::errc{} || r2.ptr != ds.data() + ds.size()) throw bad();
  }
  return Rational01(p, q);
}

bool operator<(const Rational01& a, const Rational01& b) {
  return static_cast<i128>(a.num_) * b.den_ < static_cast<i128>(b.num_) * a.den_;
}

Rational01 Rational01::trunc_add(const Rational01& o) const {
  i128 p = static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_;
  i128 q = static_cast<i128>(den_) * o.den_;
  if (p >= q) return one();
  return make(p, q);
}

Rational01 Rational01::trunc_sub(const Rational01& o) const {
  i128 p = static_cast<i128>(num_) * o.den_ - static_cast<i128>(o.num_) * den_;
  if (p <= 0) return zero();
  return make(p, static_cast<i128>(den_) * o.den_);
}

Rational01 Rational01::dist(const Rational01& o) const {
  return *this < o ? o.trunc_sub(*this) : trunc_sub(o);
}

Rational01 Rational01::scale(std::int64_t p, std::int64_t q) const {
  if (p < 0 || q <= 0 || p > q) throw Error("rational: scale factor outside [0,1]");
  return make(static_cast<i128>(num_) * p, static_cast<i128>(den_) * q);
}

std::string Rational01::str() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace topogrey
