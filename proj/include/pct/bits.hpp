#pragma once

#include <cassert>
#include <cstdint>
#include <string>
#include <vector>

namespace pct {

// Fixed-width bit vector. Bit 0 is the first variable of the domain it
// belongs to. The first 64 bits live inline so that desk-scale formulas
// (<= 64 variables) never allocate; wider vectors spill into a vector.
class Bits {
public:
  Bits() = default;
  explicit Bits(uint32_t width) : width_(width) {
    if (width > 64) rest_.resize((width - 1) / 64, 0);
  }

  static Bits zeros(uint32_t width) { return Bits(width); }

  uint32_t width() const { return width_; }

  bool get(uint32_t i) const {
    assert(i < width_);
    return (word(i / 64) >> (i % 64)) & 1u;
  }

  void set(uint32_t i, bool v) {
    assert(i < width_);
    uint64_t& w = word(i / 64);
    uint64_t mask = uint64_t{1} << (i % 64);
    w = v ? (w | mask) : (w & ~mask);
  }

  void flip(uint32_t i) {
    assert(i < width_);
    word(i / 64) ^= uint64_t{1} << (i % 64);
  }

  Bits flipped(uint32_t i) const {
    Bits b = *this;
    b.flip(i);
    return b;
  }

  uint32_t hamming(const Bits& o) const {
    assert(width_ == o.width_);
    uint32_t d = __builtin_popcountll(w0_ ^ o.w0_);
    for (size_t k = 0; k < rest_.size(); ++k)
      d += __builtin_popcountll(rest_[k] ^ o.rest_[k]);
    return d;
  }

  bool operator==(const Bits& o) const {
    return width_ == o.width_ && w0_ == o.w0_ && rest_ == o.rest_;
  }
  bool operator!=(const Bits& o) const { return !(*this == o); }

  // Lexicographic by bit index; used only for deterministic ordering.
  bool operator<(const Bits& o) const {
    assert(width_ == o.width_);
    for (uint32_t i = 0; i < width_; ++i) {
      bool a = get(i), b = o.get(i);
      if (a != b) return b;
    }
    return false;
  }

  size_t hash() const {
    uint64_t h = 0x9e3779b97f4a7c15ull ^ width_;
    h = mix(h ^ w0_);
    for (uint64_t w : rest_) h = mix(h ^ w);
    return static_cast<size_t>(h);
  }

  // "0101..." with bit 0 first.
  std::string to_string() const {
    std::string s(width_, '0');
    for (uint32_t i = 0; i < width_; ++i)
      if (get(i)) s[i] = '1';
    return s;
  }

  // Inverse of to_string; returns false on any non-[01] character.
  static bool from_string(const std::string& s, Bits& out) {
    Bits b(static_cast<uint32_t>(s.size()));
    for (uint32_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1')
        b.set(i, true);
      else if (s[i] != '0')
        return false;
    }
    out = b;
    return true;
  }

private:
  static uint64_t mix(uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebull;
    x ^= x >> 31;
    return x;
  }

  uint64_t& word(uint32_t k) { return k == 0 ? w0_ : rest_[k - 1]; }
  const uint64_t& word(uint32_t k) const { return k == 0 ? w0_ : rest_[k - 1]; }

  uint32_t width_ = 0;
  uint64_t w0_ = 0;
  std::vector<uint64_t> rest_;
};

struct BitsHash {
  size_t operator()(const Bits& b) const { return b.hash(); }
};

}  // namespace pct
