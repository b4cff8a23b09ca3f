#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace arbor {

using u16 = std::uint16_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;
using BigInt = boost::multiprecision::cpp_int;

inline constexpr u128 kU128Max = ~static_cast<u128>(0);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arithmetic left the 128-bit range while arbitrary precision was disabled.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// A caller violated an operation contract (wrong parity, invalid field, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Process-wide arithmetic mode: when enabled, Value promotes to arbitrary
/// precision instead of throwing OverflowError. Set once at startup (the CLI
/// maps --bigint / ARBOR_BIGINT=1 here); not meant to be toggled while
/// worker threads are running.
bool bigint_enabled();
void set_bigint_enabled(bool enabled);

/// RAII toggle for tests.
struct BigintModeGuard {
  explicit BigintModeGuard(bool enabled) : previous(bigint_enabled()) {
    set_bigint_enabled(enabled);
  }
  ~BigintModeGuard() { set_bigint_enabled(previous); }
  BigintModeGuard(const BigintModeGuard&) = delete;
  BigintModeGuard& operator=(const BigintModeGuard&) = delete;
  bool previous;
};

struct DivSmall;

/// Exact unsigned integer. Stored inline as 128 bits; values that do not fit
/// live on the heap as a cpp_int, which only happens when bigint mode is on.
/// All arithmetic is checked: it never wraps silently.
class Value {
 public:
  Value() : small_(0) {}
  Value(u64 v) : small_(v) {}        // NOLINT: implicit by design
  Value(int v);                      // NOLINT: convenience for literals
  Value(u128 v) : small_(v) {}       // NOLINT
  explicit Value(const BigInt& v);
  explicit Value(std::string_view decimal);

  Value(const Value& other);
  Value(Value&& other) noexcept = default;
  Value& operator=(const Value& other);
  Value& operator=(Value&& other) noexcept = default;

  static Value parse(std::string_view decimal) { return Value(decimal); }

  bool is_big() const { return big_ != nullptr; }
  bool fits_u64() const;
  bool fits_u128() const { return big_ == nullptr; }
  u64 as_u64() const;    // throws OverflowError if it does not fit
  u128 as_u128() const;  // throws OverflowError if it does not fit
  BigInt as_bigint() const;

  bool is_zero() const;
  bool is_even() const;
  bool is_odd() const { return !is_even(); }
  unsigned mod3() const;
  unsigned mod6() const;
  u64 mod_u64(u64 m) const;

  /// Number of trailing zero bits (the 2-adic valuation). Undefined for 0.
  unsigned trailing_zero_bits() const;

  std::string str() const;

  Value& operator+=(const Value& rhs);
  Value& operator-=(const Value& rhs);  // throws DomainError on underflow
  Value& operator*=(const Value& rhs);
  Value& operator<<=(unsigned bits);
  Value& operator>>=(unsigned bits);

  friend Value operator+(Value lhs, const Value& rhs) { return lhs += rhs; }
  friend Value operator-(Value lhs, const Value& rhs) { return lhs -= rhs; }
  friend Value operator*(Value lhs, const Value& rhs) { return lhs *= rhs; }
  friend Value operator<<(Value lhs, unsigned bits) { return lhs <<= bits; }
  friend Value operator>>(Value lhs, unsigned bits) { return lhs >>= bits; }

  /// Quotient and remainder by a small divisor.
  DivSmall divmod_u64(u64 divisor) const;

  /// Exact division: throws DomainError if the divisor does not divide.
  Value exact_div(const Value& divisor) const;
  bool divisible_by(const Value& divisor) const;

  friend bool operator==(const Value& a, const Value& b) { return cmp(a, b) == 0; }
  friend std::strong_ordering operator<=>(const Value& a, const Value& b) {
    int c = cmp(a, b);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  static int cmp(const Value& a, const Value& b);
  void promote_or_throw(const char* op) const;  // throws unless bigint mode is on
  void become_big();
  void normalize();  // demote heap values that fit back into 128 bits

  u128 small_;
  std::unique_ptr<BigInt> big_;
};

struct DivSmall {
  Value quotient;
  u64 remainder;
};

/// 2^exp as a Value (checked).
Value pow2(unsigned exp);
/// 3^exp as a Value (checked).
Value pow3(unsigned exp);

std::ostream& operator<<(std::ostream& os, const Value& v);

/// Decimal rendering for raw 128-bit values (used by kernels and the CLI).
std::string u128_str(u128 v);

}  // namespace arbor
