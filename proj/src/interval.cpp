#include "linnik/interval.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace linnik {

namespace {
std::atomic<unsigned> g_precision_bits{128};

void check_finite(mpfr_srcptr x, const char* where) {
  if (!mpfr_number_p(x)) {
    throw std::runtime_error(std::string("interval endpoint not finite in ") + where);
  }
}
}  // namespace

unsigned precision_bits() { return g_precision_bits.load(std::memory_order_relaxed); }

void set_precision_bits(unsigned bits) {
  if (bits < 64) throw std::invalid_argument("precision_bits must be >= 64");
  g_precision_bits.store(bits, std::memory_order_relaxed);
}

void Interval::init_pair() {
  const unsigned p = precision_bits();
  mpfr_init2(lo_, p);
  mpfr_init2(hi_, p);
}

Interval::Interval() {
  init_pair();
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& o) {
  mpfr_init2(lo_, mpfr_get_prec(o.lo_));
  mpfr_init2(hi_, mpfr_get_prec(o.hi_));
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept {
  mpfr_init2(lo_, 2);
  mpfr_init2(hi_, 2);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

Interval& Interval::operator=(const Interval& o) {
  if (this != &o) {
    mpfr_set_prec(lo_, mpfr_get_prec(o.lo_));
    mpfr_set_prec(hi_, mpfr_get_prec(o.hi_));
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval& Interval::operator=(Interval&& o) noexcept {
  if (this != &o) {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
  }
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::exact(long long v) {
  Interval r;
  mpfr_set_si(r.lo_, (long)v, MPFR_RNDD);
  mpfr_set_si(r.hi_, (long)v, MPFR_RNDU);
  return r;
}

Interval Interval::exact_u64(uint64_t v) {
  Interval r;
  mpfr_set_ui(r.lo_, (unsigned long)v, MPFR_RNDD);
  mpfr_set_ui(r.hi_, (unsigned long)v, MPFR_RNDU);
  return r;
}

Interval Interval::exact_i128(__int128 v) {
  const bool neg = v < 0;
  unsigned __int128 a = neg ? -(unsigned __int128)v : (unsigned __int128)v;
  const uint64_t hi64 = (uint64_t)(a >> 64);
  const uint64_t lo64 = (uint64_t)a;
  Interval r = Interval::exact_u64(hi64);
  // r = hi64 * 2^64 + lo64, formed exactly then outward-rounded once.
  Interval shift = Interval::exact(1);
  mpfr_mul_2ui(shift.lo_, shift.lo_, 64, MPFR_RNDD);
  mpfr_mul_2ui(shift.hi_, shift.hi_, 64, MPFR_RNDU);
  r = r * shift + Interval::exact_u64(lo64);
  return neg ? -r : r;
}

Interval Interval::exact_double(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("exact_double: value not finite");
  Interval r;
  mpfr_set_d(r.lo_, v, MPFR_RNDD);
  mpfr_set_d(r.hi_, v, MPFR_RNDU);
  return r;
}

Interval Interval::ratio(long long num, long long den) {
  if (den == 0) throw std::invalid_argument("ratio: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Interval r;
  mpfr_set_si(r.lo_, (long)num, MPFR_RNDD);
  mpfr_set_si(r.hi_, (long)num, MPFR_RNDU);
  mpfr_div_ui(r.lo_, r.lo_, (unsigned long)den, MPFR_RNDD);
  mpfr_div_ui(r.hi_, r.hi_, (unsigned long)den, MPFR_RNDU);
  return r;
}

Interval Interval::decimal(const std::string& s) {
  Interval r;
  char* end_lo = nullptr;
  char* end_hi = nullptr;
  mpfr_strtofr(r.lo_, s.c_str(), &end_lo, 10, MPFR_RNDD);
  mpfr_strtofr(r.hi_, s.c_str(), &end_hi, 10, MPFR_RNDU);
  if (end_lo == s.c_str() || *end_lo != '\0') {
    throw std::invalid_argument("decimal: cannot parse '" + s + "'");
  }
  return r;
}

Interval Interval::span(const Interval& a, const Interval& b) {
  if (mpfr_cmp(a.lo_, b.hi_) > 0) throw std::invalid_argument("span: inverted endpoints");
  Interval r;
  mpfr_set(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_set(r.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::pi() {
  Interval r;
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::euler_gamma() {
  Interval r;
  mpfr_const_euler(r.lo_, MPFR_RNDD);
  mpfr_const_euler(r.hi_, MPFR_RNDU);
  return r;
}

double Interval::lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }

std::string Interval::lo_str(int digits) const {
  std::vector<char> buf(64 + digits);
  mpfr_snprintf(buf.data(), buf.size(), "%.*R*e", digits, MPFR_RNDD, lo_);
  return std::string(buf.data());
}

std::string Interval::hi_str(int digits) const {
  std::vector<char> buf(64 + digits);
  mpfr_snprintf(buf.data(), buf.size(), "%.*R*e", digits, MPFR_RNDU, hi_);
  return std::string(buf.data());
}

double Interval::width_d() const {
  mpfr_t w;
  mpfr_init2(w, mpfr_get_prec(hi_));
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  double d = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return d;
}

bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

bool Interval::contains(const Interval& o) const {
  return mpfr_cmp(lo_, o.lo_) <= 0 && mpfr_cmp(hi_, o.hi_) >= 0;
}

bool Interval::contains_ll(long long v) const {
  return mpfr_cmp_si(lo_, (long)v) <= 0 && mpfr_cmp_si(hi_, (long)v) >= 0;
}

bool Interval::contains_i128(__int128 v) const {
  Interval x = Interval::exact_i128(v);
  // exact_i128 may round at the working precision; require containment of
  // the whole (tiny) enclosure so the answer stays conservative.
  return contains(x);
}

bool Interval::strictly_positive() const { return mpfr_sgn(lo_) > 0; }
bool Interval::strictly_negative() const { return mpfr_sgn(hi_) < 0; }
bool Interval::nonnegative() const { return mpfr_sgn(lo_) >= 0; }

bool Interval::definitely_ge(const Interval& o) const { return mpfr_cmp(lo_, o.hi_) >= 0; }
bool Interval::definitely_le(const Interval& o) const { return mpfr_cmp(hi_, o.lo_) <= 0; }
bool Interval::definitely_gt(const Interval& o) const { return mpfr_cmp(lo_, o.hi_) > 0; }
bool Interval::definitely_lt(const Interval& o) const { return mpfr_cmp(hi_, o.lo_) < 0; }
bool Interval::overlaps(const Interval& o) const {
  return mpfr_cmp(lo_, o.hi_) <= 0 && mpfr_cmp(o.lo_, hi_) <= 0;
}

std::optional<long long> Interval::unique_integer() const {
  mpfr_t c, f;
  mpfr_init2(c, mpfr_get_prec(lo_));
  mpfr_init2(f, mpfr_get_prec(hi_));
  mpfr_ceil(c, lo_);
  mpfr_floor(f, hi_);
  std::optional<long long> out;
  if (mpfr_cmp(c, f) == 0 && mpfr_fits_slong_p(c, MPFR_RNDN)) {
    out = (long long)mpfr_get_si(c, MPFR_RNDN);
  }
  mpfr_clear(c);
  mpfr_clear(f);
  return out;
}

std::optional<long long> Interval::unique_floor() const {
  mpfr_t a, b;
  mpfr_init2(a, mpfr_get_prec(lo_));
  mpfr_init2(b, mpfr_get_prec(hi_));
  mpfr_floor(a, lo_);
  mpfr_floor(b, hi_);
  std::optional<long long> out;
  if (mpfr_cmp(a, b) == 0 && mpfr_fits_slong_p(a, MPFR_RNDN)) {
    out = (long long)mpfr_get_si(a, MPFR_RNDN);
  }
  mpfr_clear(a);
  mpfr_clear(b);
  return out;
}

Interval Interval::lower_point() const {
  Interval r;
  mpfr_set(r.lo_, lo_, MPFR_RNDD);
  mpfr_set(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval Interval::upper_point() const {
  Interval r;
  mpfr_set(r.lo_, hi_, MPFR_RNDD);
  mpfr_set(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::operator-() const {
  Interval r;
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval Interval::operator+(const Interval& o) const {
  Interval r;
  mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::operator-(const Interval& o) const {
  Interval r;
  mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
  return r;
}

Interval Interval::operator*(const Interval& o) const {
  if (mpfr_sgn(lo_) >= 0 && mpfr_sgn(o.lo_) >= 0) {
    // nonnegative factors: endpoints multiply monotonically
    Interval r;
    mpfr_mul(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_mul(r.hi_, hi_, o.hi_, MPFR_RNDU);
    check_finite(r.hi_, "mul");
    return r;
  }
  // Generic product: min/max over the four endpoint products, each taken
  // with both rounding directions.
  Interval r;
  mpfr_t t;
  mpfr_init2(t, precision_bits());
  mpfr_mul(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_mul(t, lo_, o.hi_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
  mpfr_mul(t, hi_, o.lo_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
  mpfr_mul(t, hi_, o.hi_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);

  mpfr_mul(r.hi_, lo_, o.lo_, MPFR_RNDU);
  mpfr_mul(t, lo_, o.hi_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_mul(t, hi_, o.lo_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_mul(t, hi_, o.hi_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_clear(t);
  check_finite(r.lo_, "mul");
  check_finite(r.hi_, "mul");
  return r;
}

Interval Interval::operator/(const Interval& o) const {
  if (o.contains_zero()) throw std::domain_error("interval division by enclosure of zero");
  if (mpfr_sgn(lo_) >= 0 && mpfr_sgn(o.lo_) > 0) {
    Interval r;
    mpfr_div(r.lo_, lo_, o.hi_, MPFR_RNDD);
    mpfr_div(r.hi_, hi_, o.lo_, MPFR_RNDU);
    return r;
  }
  Interval r;
  mpfr_t t;
  mpfr_init2(t, precision_bits());
  mpfr_div(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_div(t, lo_, o.hi_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
  mpfr_div(t, hi_, o.lo_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
  mpfr_div(t, hi_, o.hi_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);

  mpfr_div(r.hi_, lo_, o.lo_, MPFR_RNDU);
  mpfr_div(t, lo_, o.hi_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_div(t, hi_, o.lo_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_div(t, hi_, o.hi_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_clear(t);
  check_finite(r.lo_, "div");
  check_finite(r.hi_, "div");
  return r;
}

Interval& Interval::operator+=(const Interval& o) {
  mpfr_add(lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(hi_, hi_, o.hi_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator-=(const Interval& o) {
  *this = *this - o;
  return *this;
}

Interval& Interval::operator*=(const Interval& o) {
  *this = *this * o;
  return *this;
}

Interval Interval::add_ll(long long v) const {
  Interval r;
  mpfr_add_si(r.lo_, lo_, (long)v, MPFR_RNDD);
  mpfr_add_si(r.hi_, hi_, (long)v, MPFR_RNDU);
  return r;
}

Interval Interval::sub_ll(long long v) const { return add_ll(-v); }

Interval Interval::mul_ui(uint64_t v) const {
  Interval r;
  mpfr_mul_ui(r.lo_, lo_, (unsigned long)v, MPFR_RNDD);
  mpfr_mul_ui(r.hi_, hi_, (unsigned long)v, MPFR_RNDU);
  return r;
}

Interval Interval::div_ui(uint64_t v) const {
  if (v == 0) throw std::domain_error("div_ui by zero");
  Interval r;
  mpfr_div_ui(r.lo_, lo_, (unsigned long)v, MPFR_RNDD);
  mpfr_div_ui(r.hi_, hi_, (unsigned long)v, MPFR_RNDU);
  return r;
}

Interval Interval::square() const {
  Interval r;
  if (mpfr_sgn(lo_) >= 0) {
    mpfr_sqr(r.lo_, lo_, MPFR_RNDD);
    mpfr_sqr(r.hi_, hi_, MPFR_RNDU);
  } else if (mpfr_sgn(hi_) <= 0) {
    mpfr_sqr(r.lo_, hi_, MPFR_RNDD);
    mpfr_sqr(r.hi_, lo_, MPFR_RNDU);
  } else {
    mpfr_set_zero(r.lo_, 1);
    mpfr_t a, b;
    mpfr_init2(a, precision_bits());
    mpfr_init2(b, precision_bits());
    mpfr_sqr(a, lo_, MPFR_RNDU);
    mpfr_sqr(b, hi_, MPFR_RNDU);
    mpfr_max(r.hi_, a, b, MPFR_RNDU);
    mpfr_clear(a);
    mpfr_clear(b);
  }
  return r;
}

Interval Interval::sqrt() const {
  if (mpfr_sgn(lo_) < 0) throw std::domain_error("sqrt of interval with negative lower bound");
  Interval r;
  mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::pow_si(long n) const {
  if (n == 0) return Interval::exact(1);
  if (n < 0) return pow_si(-n).recip();
  if (n == 1) return *this;
  Interval r;
  if ((n % 2) == 1 || mpfr_sgn(lo_) >= 0) {
    // odd powers are monotone; even powers of nonnegative intervals too
    mpfr_pow_si(r.lo_, lo_, n, MPFR_RNDD);
    mpfr_pow_si(r.hi_, hi_, n, MPFR_RNDU);
  } else if (mpfr_sgn(hi_) <= 0) {
    mpfr_pow_si(r.lo_, hi_, n, MPFR_RNDD);
    mpfr_pow_si(r.hi_, lo_, n, MPFR_RNDU);
  } else {
    mpfr_set_zero(r.lo_, 1);
    mpfr_t a, b;
    mpfr_init2(a, precision_bits());
    mpfr_init2(b, precision_bits());
    mpfr_pow_si(a, lo_, n, MPFR_RNDU);
    mpfr_abs(a, a, MPFR_RNDU);
    mpfr_pow_si(b, hi_, n, MPFR_RNDU);
    mpfr_max(r.hi_, a, b, MPFR_RNDU);
    mpfr_clear(a);
    mpfr_clear(b);
  }
  return r;
}

Interval Interval::pow(const Interval& y) const {
  if (mpfr_sgn(lo_) <= 0) throw std::domain_error("pow: base must be strictly positive");
  return (log() * y).exp();
}

Interval Interval::exp() const {
  Interval r;
  mpfr_exp(r.lo_, lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, hi_, MPFR_RNDU);
  check_finite(r.hi_, "exp");
  return r;
}

Interval Interval::log() const {
  if (mpfr_sgn(lo_) <= 0) throw std::domain_error("log of interval reaching zero");
  Interval r;
  mpfr_log(r.lo_, lo_, MPFR_RNDD);
  mpfr_log(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::abs() const {
  if (mpfr_sgn(lo_) >= 0) return *this;
  if (mpfr_sgn(hi_) <= 0) return -*this;
  Interval r;
  mpfr_set_zero(r.lo_, 1);
  mpfr_t a;
  mpfr_init2(a, precision_bits());
  mpfr_neg(a, lo_, MPFR_RNDU);
  mpfr_max(r.hi_, a, hi_, MPFR_RNDU);
  mpfr_clear(a);
  return r;
}

Interval Interval::recip() const { return Interval::exact(1) / *this; }

Interval Interval::min_with(const Interval& o) const {
  Interval r;
  mpfr_min(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_min(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::max_with(const Interval& o) const {
  Interval r;
  mpfr_max(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::clamp_min_ll(long long v) const {
  Interval r = *this;
  if (mpfr_cmp_si(r.lo_, (long)v) < 0) mpfr_set_si(r.lo_, (long)v, MPFR_RNDD);
  if (mpfr_cmp_si(r.hi_, (long)v) < 0) mpfr_set_si(r.hi_, (long)v, MPFR_RNDU);
  return r;
}

Interval Interval::cos_decreasing_enclosure() const {
  Interval r;
  mpfr_cos(r.lo_, hi_, MPFR_RNDD);
  mpfr_cos(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval Interval::sin_increasing_enclosure() const {
  Interval r;
  mpfr_sin(r.lo_, lo_, MPFR_RNDD);
  mpfr_sin(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::rounded_to_current_precision() const {
  Interval r;
  mpfr_set(r.lo_, lo_, MPFR_RNDD);
  mpfr_set(r.hi_, hi_, MPFR_RNDU);
  return r;
}

CInterval CInterval::one() { return CInterval{Interval::exact(1), Interval()}; }
CInterval CInterval::zero() { return CInterval{Interval(), Interval()}; }

CInterval CInterval::operator+(const CInterval& o) const { return {re + o.re, im + o.im}; }
CInterval CInterval::operator-(const CInterval& o) const { return {re - o.re, im - o.im}; }

CInterval CInterval::operator*(const CInterval& o) const {
  return {re * o.re - im * o.im, re * o.im + im * o.re};
}

CInterval& CInterval::operator+=(const CInterval& o) {
  re += o.re;
  im += o.im;
  return *this;
}

CInterval CInterval::conj() const { return {re, -im}; }

CInterval CInterval::mul_ui(uint64_t v) const { return {re.mul_ui(v), im.mul_ui(v)}; }

CInterval CInterval::scale(const Interval& s) const { return {re * s, im * s}; }

CInterval CInterval::pow_ui(uint64_t n) const {
  CInterval acc = CInterval::one();
  CInterval base = *this;
  while (n > 0) {
    if (n & 1) acc = acc * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return acc;
}

Interval CInterval::abs2() const { return re.square() + im.square(); }

Interval CInterval::abs() const { return abs2().sqrt(); }

bool CInterval::contains(const CInterval& o) const {
  return re.contains(o.re) && im.contains(o.im);
}

}  // namespace linnik
