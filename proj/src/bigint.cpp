#include "hda/bigint.hpp"

#include <algorithm>
#include <stdexcept>

namespace hda {

BigInt::BigInt(long long v) {
  negative_ = v < 0;
  unsigned long long u = negative_ ? 0ull - static_cast<unsigned long long>(v)
                                   : static_cast<unsigned long long>(v);
  while (u) {
    mag_.push_back(static_cast<std::uint32_t>(u % kBase));
    u /= kBase;
  }
}

void BigInt::trim() {
  while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
  if (mag_.empty()) negative_ = false;
}

int BigInt::compare_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

std::vector<std::uint32_t> BigInt::add_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out;
  out.reserve(std::max(a.size(), b.size()) + 1);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()) || carry; ++i) {
    std::uint64_t s = carry;
    if (i < a.size()) s += a[i];
    if (i < b.size()) s += b[i];
    out.push_back(static_cast<std::uint32_t>(s % kBase));
    carry = s / kBase;
  }
  return out;
}

std::vector<std::uint32_t> BigInt::sub_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
  // Requires |a| >= |b|.
  std::vector<std::uint32_t> out;
  out.reserve(a.size());
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t s = static_cast<std::int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
    if (s < 0) {
      s += kBase;
      borrow = 1;
    } else {
      borrow = 0;
    }
    out.push_back(static_cast<std::uint32_t>(s));
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

BigInt BigInt::abs() const {
  BigInt r = *this;
  r.negative_ = false;
  return r;
}

BigInt BigInt::operator-() const {
  BigInt r = *this;
  if (!r.mag_.empty()) r.negative_ = !r.negative_;
  return r;
}

BigInt BigInt::operator+(const BigInt& o) const {
  BigInt r;
  if (negative_ == o.negative_) {
    r.mag_ = add_mag(mag_, o.mag_);
    r.negative_ = negative_;
  } else if (compare_mag(mag_, o.mag_) >= 0) {
    r.mag_ = sub_mag(mag_, o.mag_);
    r.negative_ = negative_;
  } else {
    r.mag_ = sub_mag(o.mag_, mag_);
    r.negative_ = o.negative_;
  }
  r.trim();
  return r;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt& o) const {
  BigInt r;
  if (is_zero() || o.is_zero()) return r;
  std::vector<std::uint64_t> acc(mag_.size() + o.mag_.size(), 0);
  for (std::size_t i = 0; i < mag_.size(); ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < o.mag_.size() || carry; ++j) {
      std::uint64_t cur = acc[i + j] + carry;
      if (j < o.mag_.size())
        cur += static_cast<std::uint64_t>(mag_[i]) * o.mag_[j];
      acc[i + j] = cur % kBase;
      carry = cur / kBase;
    }
  }
  r.mag_.assign(acc.begin(), acc.end());
  r.negative_ = negative_ != o.negative_;
  r.trim();
  return r;
}

BigInt BigInt::operator/(const BigInt& o) const {
  if (o.is_zero()) throw std::domain_error("BigInt division by zero");
  if (compare_mag(mag_, o.mag_) < 0) return BigInt();
  // Long division, limb by limb with binary search on each digit.
  BigInt quotient, remainder;
  quotient.mag_.assign(mag_.size(), 0);
  for (std::size_t i = mag_.size(); i-- > 0;) {
    // remainder = remainder * base + mag_[i]
    remainder.mag_.insert(remainder.mag_.begin(), mag_[i]);
    remainder.trim();
    std::uint32_t lo = 0, hi = kBase - 1, digit = 0;
    while (lo <= hi) {
      const std::uint32_t mid = lo + (hi - lo) / 2;
      BigInt t = o.abs() * BigInt(static_cast<long long>(mid));
      if (compare_mag(t.mag_, remainder.mag_) <= 0) {
        digit = mid;
        lo = mid + 1;
      } else {
        if (mid == 0) break;
        hi = mid - 1;
      }
    }
    quotient.mag_[i] = digit;
    BigInt t = o.abs() * BigInt(static_cast<long long>(digit));
    remainder.mag_ = sub_mag(remainder.mag_, t.mag_);
  }
  quotient.negative_ = negative_ != o.negative_;
  quotient.trim();
  return quotient;
}

BigInt BigInt::operator%(const BigInt& o) const { return *this - (*this / o) * o; }

bool BigInt::operator<(const BigInt& o) const {
  if (negative_ != o.negative_) return negative_;
  const int c = compare_mag(mag_, o.mag_);
  return negative_ ? c > 0 : c < 0;
}

std::string BigInt::to_string() const {
  if (mag_.empty()) return "0";
  std::string s = negative_ ? "-" : "";
  s += std::to_string(mag_.back());
  for (std::size_t i = mag_.size() - 1; i-- > 0;) {
    std::string limb = std::to_string(mag_[i]);
    s += std::string(9 - limb.size(), '0') + limb;
  }
  return s;
}

}  // namespace hda
