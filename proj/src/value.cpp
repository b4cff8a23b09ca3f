#include "arbor/value.hpp"

#include <algorithm>
#include <atomic>
#include <ostream>

namespace arbor {

namespace {

std::atomic<bool> g_bigint_enabled{false};

u64 low64(u128 v) { return static_cast<u64>(v); }
u64 high64(u128 v) { return static_cast<u64>(v >> 64); }

}  // namespace

bool bigint_enabled() { return g_bigint_enabled.load(std::memory_order_relaxed); }
void set_bigint_enabled(bool enabled) {
  g_bigint_enabled.store(enabled, std::memory_order_relaxed);
}

Value::Value(int v) : small_(0) {
  if (v < 0) throw DomainError("Value cannot be negative");
  small_ = static_cast<u128>(v);
}

Value::Value(const BigInt& v) : small_(0) {
  if (v < 0) throw DomainError("Value cannot be negative");
  big_ = std::make_unique<BigInt>(v);
  normalize();
}

Value::Value(std::string_view decimal) : small_(0) {
  if (decimal.empty()) throw DomainError("empty integer literal");
  Value acc;
  for (char c : decimal) {
    if (c < '0' || c > '9')
      throw DomainError("malformed integer: '" + std::string(decimal) + "'");
    acc *= Value(u64{10});
    acc += Value(static_cast<u64>(c - '0'));
  }
  *this = std::move(acc);
}

Value::Value(const Value& other) : small_(other.small_) {
  if (other.big_) big_ = std::make_unique<BigInt>(*other.big_);
}

Value& Value::operator=(const Value& other) {
  if (this != &other) {
    small_ = other.small_;
    big_ = other.big_ ? std::make_unique<BigInt>(*other.big_) : nullptr;
  }
  return *this;
}

bool Value::fits_u64() const { return !big_ && high64(small_) == 0; }

u64 Value::as_u64() const {
  if (!fits_u64()) throw OverflowError("value does not fit in 64 bits");
  return low64(small_);
}

u128 Value::as_u128() const {
  if (big_) throw OverflowError("value does not fit in 128 bits");
  return small_;
}

BigInt Value::as_bigint() const {
  if (big_) return *big_;
  BigInt r = high64(small_);
  r <<= 64;
  r += low64(small_);
  return r;
}

bool Value::is_zero() const { return big_ ? big_->is_zero() : small_ == 0; }

bool Value::is_even() const {
  if (big_) return ((*big_) & 1) == 0;
  return (small_ & 1) == 0;
}

unsigned Value::mod3() const { return static_cast<unsigned>(mod_u64(3)); }
unsigned Value::mod6() const { return static_cast<unsigned>(mod_u64(6)); }

u64 Value::mod_u64(u64 m) const {
  if (m == 0) throw DomainError("modulo by zero");
  if (big_) return static_cast<u64>(*big_ % m);
  // 2^64 = (2^64 - m*floor) ... plain 128-bit remainder is fine here.
  return static_cast<u64>(small_ % m);
}

unsigned Value::trailing_zero_bits() const {
  if (is_zero()) throw DomainError("trailing_zero_bits of zero");
  if (big_) {
    unsigned n = 0;
    BigInt v = *big_;
    while ((v & 1) == 0) {
      v >>= 1;
      ++n;
    }
    return n;
  }
  u64 lo = low64(small_);
  if (lo) return static_cast<unsigned>(__builtin_ctzll(lo));
  return 64u + static_cast<unsigned>(__builtin_ctzll(high64(small_)));
}

std::string Value::str() const {
  if (big_) return big_->str();
  return u128_str(small_);
}

void Value::promote_or_throw(const char* op) const {
  if (!bigint_enabled())
    throw OverflowError(std::string(op) + " exceeds the 128-bit range");
}

void Value::become_big() {
  if (!big_) {
    big_ = std::make_unique<BigInt>(as_bigint());
    small_ = 0;
  }
}

void Value::normalize() {
  if (big_ && *big_ <= BigInt(kU128Max)) {
    small_ = static_cast<u128>(*big_);
    big_.reset();
  }
}

Value& Value::operator+=(const Value& rhs) {
  if (!big_ && !rhs.big_) {
    u128 result;
    if (!__builtin_add_overflow(small_, rhs.small_, &result)) {
      small_ = result;
      return *this;
    }
    promote_or_throw("addition");
  }
  become_big();
  *big_ += rhs.as_bigint();
  normalize();
  return *this;
}

Value& Value::operator-=(const Value& rhs) {
  if (*this < rhs) throw DomainError("subtraction below zero");
  if (!big_ && !rhs.big_) {
    small_ -= rhs.small_;
    return *this;
  }
  become_big();
  *big_ -= rhs.as_bigint();
  normalize();
  return *this;
}

Value& Value::operator*=(const Value& rhs) {
  if (!big_ && !rhs.big_) {
    u128 result;
    if (!__builtin_mul_overflow(small_, rhs.small_, &result)) {
      small_ = result;
      return *this;
    }
    promote_or_throw("multiplication");
  }
  become_big();
  *big_ *= rhs.as_bigint();
  normalize();
  return *this;
}

Value& Value::operator<<=(unsigned bits) {
  if (!big_) {
    if (small_ == 0) return *this;
    unsigned used = 128u - [this] {
      u64 hi = high64(small_);
      if (hi) return static_cast<unsigned>(__builtin_clzll(hi));
      return 64u + static_cast<unsigned>(__builtin_clzll(low64(small_)));
    }();
    if (used + bits <= 128u) {
      small_ <<= bits;
      return *this;
    }
    promote_or_throw("left shift");
  }
  become_big();
  *big_ <<= bits;
  normalize();
  return *this;
}

Value& Value::operator>>=(unsigned bits) {
  if (!big_) {
    small_ = bits >= 128 ? 0 : (small_ >> bits);
    return *this;
  }
  *big_ >>= bits;
  normalize();
  return *this;
}

DivSmall Value::divmod_u64(u64 divisor) const {
  if (divisor == 0) throw DomainError("division by zero");
  if (!big_) {
    return {Value(small_ / divisor), static_cast<u64>(small_ % divisor)};
  }
  BigInt q = *big_ / divisor;
  u64 r = static_cast<u64>(*big_ % divisor);
  return {Value(q), r};
}

Value Value::exact_div(const Value& divisor) const {
  if (divisor.is_zero()) throw DomainError("division by zero");
  if (!big_ && !divisor.big_) {
    if (small_ % divisor.small_ != 0)
      throw DomainError("inexact division: " + str() + " / " + divisor.str());
    return Value(small_ / divisor.small_);
  }
  BigInt a = as_bigint(), b = divisor.as_bigint();
  if (a % b != 0)
    throw DomainError("inexact division: " + str() + " / " + divisor.str());
  return Value(BigInt(a / b));
}

bool Value::divisible_by(const Value& divisor) const {
  if (divisor.is_zero()) return false;
  if (!big_ && !divisor.big_) return small_ % divisor.small_ == 0;
  return as_bigint() % divisor.as_bigint() == 0;
}

int Value::cmp(const Value& a, const Value& b) {
  if (!a.big_ && !b.big_) {
    if (a.small_ < b.small_) return -1;
    return a.small_ > b.small_ ? 1 : 0;
  }
  BigInt x = a.as_bigint(), y = b.as_bigint();
  return x < y ? -1 : (x > y ? 1 : 0);
}

Value pow2(unsigned exp) {
  Value v{u64{1}};
  v <<= exp;
  return v;
}

Value pow3(unsigned exp) {
  Value v{u64{1}};
  for (unsigned i = 0; i < exp; ++i) v *= Value(u64{3});
  return v;
}

std::ostream& operator<<(std::ostream& os, const Value& v) { return os << v.str(); }

std::string u128_str(u128 v) {
  if (v == 0) return "0";
  char buf[40];
  char* p = buf + sizeof(buf);
  while (v != 0) {
    *--p = static_cast<char>('0' + static_cast<unsigned>(v % 10));
    v /= 10;
  }
  return std::string(p, buf + sizeof(buf));
}

}  // namespace arbor
