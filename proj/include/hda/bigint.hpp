#ifndef HDA_BIGINT_HPP
#define HDA_BIGINT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace hda {

// Sign-magnitude arbitrary-precision integer, base 10^9. Just enough for
// exact Smith normal form on small boundary matrices.
class BigInt {
 public:
  BigInt() = default;
  BigInt(long long v);  // NOLINT(google-explicit-constructor)

  bool is_zero() const { return mag_.empty(); }
  int sign() const { return mag_.empty() ? 0 : (negative_ ? -1 : 1); }
  BigInt abs() const;
  BigInt operator-() const;

  BigInt operator+(const BigInt& o) const;
  BigInt operator-(const BigInt& o) const;
  BigInt operator*(const BigInt& o) const;
  BigInt operator/(const BigInt& o) const;  // truncated toward zero
  BigInt operator%(const BigInt& o) const;

  BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
  BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
  BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

  bool operator==(const BigInt& o) const { return negative_ == o.negative_ && mag_ == o.mag_; }
  bool operator!=(const BigInt& o) const { return !(*this == o); }
  bool operator<(const BigInt& o) const;
  bool operator<=(const BigInt& o) const { return *this < o || *this == o; }
  bool operator>(const BigInt& o) const { return o < *this; }

  std::string to_string() const;

 private:
  static int compare_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  void trim();

  static constexpr std::uint32_t kBase = 1000000000u;
  bool negative_ = false;
  std::vector<std::uint32_t> mag_;  // little-endian limbs
};

}  // namespace hda

#endif
