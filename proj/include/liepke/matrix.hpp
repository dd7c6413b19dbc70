#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "liepke/field.hpp"

namespace liepke {

class NilpotentMatrix;

// n x n matrix over Z_p, row-major, every entry reduced into [0, p).
// Immutable once constructed.
class FieldMatrix {
 public:
  /// Throws ParameterError unless entries.size() == n*n and every entry is in [0, p).
  FieldMatrix(std::size_t n, ModulusPtr mod, std::vector<Integer> entries);

  /// Reduces arbitrary integers (negatives included) into [0, p).
  static FieldMatrix reduced(std::size_t n, ModulusPtr mod, std::vector<Integer> entries);
  static FieldMatrix zero(std::size_t n, ModulusPtr mod);
  static FieldMatrix identity(std::size_t n, ModulusPtr mod);

  std::size_t dim() const { return n_; }
  const ModulusPtr& modulus_ptr() const { return mod_; }
  const Modulus& modulus() const { return *mod_; }
  const Integer& at(std::size_t row, std::size_t col) const { return entries_[row * n_ + col]; }
  std::span<const Integer> entries() const { return entries_; }

  bool is_zero() const;
  bool is_identity() const;

  FieldMatrix negated() const;
  FieldMatrix scaled(const Integer& t) const;
  FieldMatrix plus(const FieldMatrix& other) const;
  FieldMatrix minus(const FieldMatrix& other) const;
  /// Copy with entry (row, col) replaced by value mod p.
  FieldMatrix with_entry(std::size_t row, std::size_t col, const Integer& value) const;

  friend bool operator==(const FieldMatrix& a, const FieldMatrix& b);

 private:
  struct Unchecked {};
  FieldMatrix(Unchecked, std::size_t n, ModulusPtr mod, std::vector<Integer> entries);

  friend FieldMatrix mat_mul(const FieldMatrix& a, const FieldMatrix& b);

  std::size_t n_;
  ModulusPtr mod_;
  std::vector<Integer> entries_;
};

/// Throws ParameterError unless a and b share dimension and modulus.
void require_compatible(const FieldMatrix& a, const FieldMatrix& b);

FieldMatrix mat_mul(const FieldMatrix& a, const FieldMatrix& b);
inline FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b) { return mat_mul(a, b); }

Integer determinant(const FieldMatrix& a);

/// Smallest l <= n with a^l = 0, or nullopt when a^n != 0.
std::optional<std::size_t> nilpotency_index(const FieldMatrix& a);

bool commutes(const FieldMatrix& a, const FieldMatrix& b);

// An element of GL_n(p).
class GroupElement {
 public:
  /// Throws NotInvertibleError if det(mat) = 0 mod p.
  explicit GroupElement(FieldMatrix mat);

  static GroupElement identity(std::size_t n, ModulusPtr mod);

  const FieldMatrix& matrix() const { return mat_; }
  std::size_t dim() const { return mat_.dim(); }

  friend GroupElement operator*(const GroupElement& a, const GroupElement& b);
  friend bool operator==(const GroupElement& a, const GroupElement& b) = default;

 private:
  struct Trusted {};
  GroupElement(Trusted, FieldMatrix mat) : mat_(std::move(mat)) {}

  friend GroupElement mat_inv(const FieldMatrix& a);
  friend GroupElement mat_exp(const NilpotentMatrix& x);

  FieldMatrix mat_;
};

/// Gauss-Jordan elimination over Z_p. Throws NotInvertibleError when singular.
GroupElement mat_inv(const FieldMatrix& a);
inline GroupElement mat_inv(const GroupElement& a) { return mat_inv(a.matrix()); }

// A matrix with known nilpotency index l (base^l = 0, base^(l-1) != 0).
class NilpotentMatrix {
 public:
  /// Throws ParameterError if base is not nilpotent.
  explicit NilpotentMatrix(FieldMatrix base);

  const FieldMatrix& matrix() const { return base_; }
  std::size_t index() const { return index_; }
  std::size_t dim() const { return base_.dim(); }

  NilpotentMatrix negated() const;
  /// t*X is nilpotent for every t; the index drops to 1 only when t = 0 mod p.
  NilpotentMatrix scaled(const Integer& t) const;

  friend bool operator==(const NilpotentMatrix& a, const NilpotentMatrix& b) {
    return a.base_ == b.base_;
  }

 private:
  NilpotentMatrix(FieldMatrix base, std::size_t index) : base_(std::move(base)), index_(index) {}

  FieldMatrix base_;
  std::size_t index_;
};

/// Truncated series sum_{m < l} X^m / m!. Throws ParameterError when p <= n,
/// where the factorial inverses are not guaranteed to exist.
GroupElement mat_exp(const NilpotentMatrix& x);

/// exp((t mod p) * X); t must be non-negative.
GroupElement exp_scaled(const Integer& t, const NilpotentMatrix& x);

/// Canonical byte encoding: 4-byte big-endian n, 4-byte big-endian length of
/// p, minimal big-endian p, then n*n entries row-major, each big-endian in
/// ceil(bits(p) / 8) bytes.
std::vector<std::uint8_t> canonical_encoding(const FieldMatrix& a);

}  // namespace liepke
