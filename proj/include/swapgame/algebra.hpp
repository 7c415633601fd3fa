#pragma once

// GF(2) vectors and matrices. Game states, move rows and the per-move swap
// choices are all elements of GF(2)^n; a move adds a row to the state.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "swapgame/errors.hpp"

namespace swapgame {

class BitVec {
public:
  BitVec() = default;
  explicit BitVec(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  BitVec(std::initializer_list<int> bits) : BitVec(bits.size()) {
    std::size_t i = 0;
    for (int b : bits)
      set(i++, b != 0);
  }

  // Character i of the text is bit i; only '0' and '1' are accepted.
  static BitVec from_string(std::string_view text) {
    BitVec v(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '1')
        v.set(i, true);
      else if (text[i] != '0')
        throw ParseError("bitstring contains '" + std::string(1, text[i]) + "' at position " +
                         std::to_string(i + 1));
    }
    return v;
  }

  // Bit i of the result is bit i of `value`.
  static BitVec from_bits(std::uint64_t value, std::size_t size) {
    BitVec v(size);
    if (size > 0)
      v.words_[0] = size >= 64 ? value : value & ((std::uint64_t{1} << size) - 1);
    return v;
  }

  static BitVec ones(std::size_t size) {
    BitVec v(size);
    for (std::size_t i = 0; i < size; ++i)
      v.set(i, true);
    return v;
  }

  static BitVec unit(std::size_t size, std::size_t index) {
    BitVec v(size);
    v.set(index, true);
    return v;
  }

  std::size_t size() const noexcept { return size_; }

  bool operator[](std::size_t i) const noexcept { return (words_[i / 64] >> (i % 64)) & 1U; }
  bool test(std::size_t i) const {
    check_index(i);
    return (*this)[i];
  }

  void set(std::size_t i, bool value = true) {
    check_index(i);
    const std::uint64_t mask = std::uint64_t{1} << (i % 64);
    if (value)
      words_[i / 64] |= mask;
    else
      words_[i / 64] &= ~mask;
  }

  void flip(std::size_t i) {
    check_index(i);
    words_[i / 64] ^= std::uint64_t{1} << (i % 64);
  }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_)
      c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool any() const noexcept {
    return std::any_of(words_.begin(), words_.end(), [](auto w) { return w != 0; });
  }
  bool none() const noexcept { return !any(); }

  // Packed value of the low 64 bits; bit i of the vector is bit i of the word.
  std::uint64_t to_bits() const {
    if (size_ > 64)
      throw CapacityError("bit vector of length " + std::to_string(size_) +
                          " does not fit in 64 bits");
    return words_.empty() ? 0 : words_[0];
  }

  std::string to_string() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i)
      if ((*this)[i])
        s[i] = '1';
    return s;
  }

  BitVec& operator^=(const BitVec& other) {
    require_same_size(other);
    for (std::size_t w = 0; w < words_.size(); ++w)
      words_[w] ^= other.words_[w];
    return *this;
  }
  BitVec& operator+=(const BitVec& other) { return *this ^= other; }

  BitVec& operator&=(const BitVec& other) {
    require_same_size(other);
    for (std::size_t w = 0; w < words_.size(); ++w)
      words_[w] &= other.words_[w];
    return *this;
  }

  friend BitVec operator+(BitVec a, const BitVec& b) { return a += b; }
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
  friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }

  friend bool operator==(const BitVec& a, const BitVec& b) = default;

  // Lexicographic on the text form, so sorted containers list states the
  // way they print.
  friend bool operator<(const BitVec& a, const BitVec& b) {
    if (a.size_ != b.size_)
      return a.size_ < b.size_;
    for (std::size_t i = 0; i < a.size_; ++i)
      if (a[i] != b[i])
        return !a[i];
    return false;
  }

  std::size_t hash() const noexcept {
    std::size_t h = std::hash<std::size_t>{}(size_);
    for (auto w : words_)
      h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

private:
  void check_index(std::size_t i) const {
    if (i >= size_)
      throw DimensionError("bit index " + std::to_string(i) + " out of range for length " +
                           std::to_string(size_));
  }
  void require_same_size(const BitVec& other) const {
    if (other.size_ != size_)
      throw DimensionError("length mismatch: " + std::to_string(size_) + " vs " +
                           std::to_string(other.size_));
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitVecHash {
  std::size_t operator()(const BitVec& v) const noexcept { return v.hash(); }
};

class BitMatrix {
public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVec(cols)) {}

  explicit BitMatrix(std::vector<BitVec> rows) : rows_(std::move(rows)) {
    if (!rows_.empty())
      cols_ = rows_.front().size();
    for (const auto& r : rows_)
      if (r.size() != cols_)
        throw DimensionError("matrix rows have unequal lengths");
  }

  BitMatrix(std::initializer_list<std::initializer_list<int>> rows) {
    std::vector<BitVec> built;
    for (auto r : rows)
      built.emplace_back(r);
    *this = BitMatrix(std::move(built));
  }

  // A matrix with zero rows still knows its column count.
  static BitMatrix empty(std::size_t cols) {
    BitMatrix m;
    m.cols_ = cols;
    return m;
  }

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }

  const BitVec& row(std::size_t i) const { return rows_.at(i); }
  BitVec& row(std::size_t i) { return rows_.at(i); }
  const std::vector<BitVec>& row_vectors() const noexcept { return rows_; }

  void append_row(BitVec r) {
    if (rows_.empty() && cols_ == 0)
      cols_ = r.size();
    if (r.size() != cols_)
      throw DimensionError("row length " + std::to_string(r.size()) + " does not match " +
                           std::to_string(cols_) + " columns");
    rows_.push_back(std::move(r));
  }

  friend bool operator==(const BitMatrix& a, const BitMatrix& b) = default;

private:
  std::size_t cols_ = 0;
  std::vector<BitVec> rows_;
};

inline BitVec add(const BitVec& a, const BitVec& b) { return a + b; }

inline BitVec scale(bool e, const BitVec& v) { return e ? v : BitVec(v.size()); }

// e·m: the XOR of the rows of m selected by e.
inline BitVec mul_vec_matrix(const BitVec& e, const BitMatrix& m) {
  if (e.size() != m.rows())
    throw DimensionError("coefficient vector of length " + std::to_string(e.size()) +
                         " against a matrix with " + std::to_string(m.rows()) + " rows");
  BitVec out(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (e[i])
      out += m.row(i);
  return out;
}

// Reduced row echelon form. Pivot columns are taken left to right and the
// pivot row for each is the topmost remaining row with that bit, so the result
// is canonical for the row space. Zero rows are dropped.
inline BitMatrix reduced_row_echelon(const BitMatrix& m) {
  std::vector<BitVec> rows = m.row_vectors();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && !rows[pivot][col])
      ++pivot;
    if (pivot == rows.size())
      continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != rank && rows[r][col])
        rows[r] += rows[rank];
    ++rank;
  }
  rows.resize(rank);
  BitMatrix out = BitMatrix::empty(m.cols());
  for (auto& r : rows)
    out.append_row(std::move(r));
  return out;
}

inline std::size_t row_space_rank(const BitMatrix& m) { return reduced_row_echelon(m).rows(); }

// Reduces v against a reduced echelon basis; zero iff v is in the row space.
inline BitVec reduce_against(BitVec v, const BitMatrix& echelon) {
  for (const auto& r : echelon.row_vectors()) {
    std::size_t lead = 0;
    while (!r[lead])
      ++lead;
    if (v[lead])
      v += r;
  }
  return v;
}

inline bool in_row_space(const BitVec& v, const BitMatrix& m) {
  if (v.size() != m.cols())
    throw DimensionError("vector of length " + std::to_string(v.size()) + " against " +
                         std::to_string(m.cols()) + " columns");
  return reduce_against(v, reduced_row_echelon(m)).none();
}

// target is reachable from base by adding rows of m.
inline bool in_affine_span(const BitVec& target, const BitVec& base, const BitMatrix& m) {
  if (target.size() != base.size())
    throw DimensionError("target and base lengths differ");
  return in_row_space(target + base, m);
}

} // namespace swapgame

template <>
struct std::hash<swapgame::BitVec> {
  std::size_t operator()(const swapgame::BitVec& v) const noexcept { return v.hash(); }
};
