#include "liepke/matrix.hpp"

#include <string>

#include "liepke/error.hpp"

namespace liepke {

FieldMatrix::FieldMatrix(std::size_t n, ModulusPtr mod, std::vector<Integer> entries)
    : n_(n), mod_(std::move(mod)), entries_(std::move(entries)) {
  if (!mod_) throw ParameterError("matrix needs a modulus");
  if (n_ == 0) throw ParameterError("matrix dimension must be positive");
  if (entries_.size() != n_ * n_) throw ParameterError("entry count does not match n*n");
  for (const Integer& e : entries_) {
    if (e < 0 || e >= mod_->value()) throw ParameterError("matrix entry outside [0, p)");
  }
}

FieldMatrix::FieldMatrix(Unchecked, std::size_t n, ModulusPtr mod, std::vector<Integer> entries)
    : n_(n), mod_(std::move(mod)), entries_(std::move(entries)) {}

FieldMatrix FieldMatrix::reduced(std::size_t n, ModulusPtr mod, std::vector<Integer> entries) {
  if (!mod) throw ParameterError("matrix needs a modulus");
  for (Integer& e : entries) mod->reduce_in_place(e);
  return FieldMatrix(n, std::move(mod), std::move(entries));
}

FieldMatrix FieldMatrix::zero(std::size_t n, ModulusPtr mod) {
  return FieldMatrix(n, std::move(mod), std::vector<Integer>(n * n, Integer(0)));
}

FieldMatrix FieldMatrix::identity(std::size_t n, ModulusPtr mod) {
  std::vector<Integer> e(n * n, Integer(0));
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1;
  return FieldMatrix(n, std::move(mod), std::move(e));
}

bool FieldMatrix::is_zero() const {
  for (const Integer& e : entries_) {
    if (e != 0) return false;
  }
  return true;
}

bool FieldMatrix::is_identity() const {
  for (std::size_t r = 0; r < n_; ++r) {
    for (std::size_t c = 0; c < n_; ++c) {
      if (at(r, c) != (r == c ? 1 : 0)) return false;
    }
  }
  return true;
}

FieldMatrix FieldMatrix::negated() const {
  std::vector<Integer> e(entries_.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i] = entries_[i] == 0 ? Integer(0) : Integer(mod_->value() - entries_[i]);
  }
  return FieldMatrix(Unchecked{}, n_, mod_, std::move(e));
}

FieldMatrix FieldMatrix::scaled(const Integer& t) const {
  Integer k = mod_->reduce(t);
  std::vector<Integer> e(entries_.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i] = entries_[i] * k;
    mod_->reduce_in_place(e[i]);
  }
  return FieldMatrix(Unchecked{}, n_, mod_, std::move(e));
}

FieldMatrix FieldMatrix::plus(const FieldMatrix& other) const {
  require_compatible(*this, other);
  std::vector<Integer> e(entries_.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i] = entries_[i] + other.entries_[i];
    if (e[i] >= mod_->value()) e[i] -= mod_->value();
  }
  return FieldMatrix(Unchecked{}, n_, mod_, std::move(e));
}

FieldMatrix FieldMatrix::minus(const FieldMatrix& other) const { return plus(other.negated()); }

FieldMatrix FieldMatrix::with_entry(std::size_t row, std::size_t col, const Integer& value) const {
  if (row >= n_ || col >= n_) throw ParameterError("entry index out of range");
  std::vector<Integer> e = entries_;
  e[row * n_ + col] = mod_->reduce(value);
  return FieldMatrix(Unchecked{}, n_, mod_, std::move(e));
}

bool operator==(const FieldMatrix& a, const FieldMatrix& b) {
  return a.n_ == b.n_ && same_modulus(a.mod_, b.mod_) && a.entries_ == b.entries_;
}

void require_compatible(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.dim() != b.dim()) {
    throw ParameterError("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()));
  }
  if (!same_modulus(a.modulus_ptr(), b.modulus_ptr())) throw ParameterError("modulus mismatch");
}

FieldMatrix mat_mul(const FieldMatrix& a, const FieldMatrix& b) {
  require_compatible(a, b);
  const std::size_t n = a.dim();
  const Modulus& mod = a.modulus();
  std::vector<Integer> out(n * n);
  Integer acc;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      acc = 0;
      for (std::size_t k = 0; k < n; ++k) {
        mpz_addmul(acc.get_mpz_t(), a.at(r, k).get_mpz_t(), b.at(k, c).get_mpz_t());
      }
      mod.reduce_in_place(acc);
      out[r * n + c] = acc;
    }
  }
  return FieldMatrix(FieldMatrix::Unchecked{}, n, a.modulus_ptr(), std::move(out));
}

namespace {

// Row-reduces `work` in place (optionally mirroring row operations on `aug`)
// and returns the determinant.
Integer eliminate(std::vector<Integer>& work, std::vector<Integer>* aug, std::size_t n,
                  const Modulus& mod) {
  Integer det = 1;
  Integer factor;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && work[pivot * n + col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(work[pivot * n + k], work[col * n + k]);
        if (aug) std::swap((*aug)[pivot * n + k], (*aug)[col * n + k]);
      }
      det = mod.reduce(-det);
    }
    const Integer pivot_value = work[col * n + col];
    det = mod.reduce(det * pivot_value);
    const Integer inv = mod.inverse(pivot_value);
    for (std::size_t k = 0; k < n; ++k) {
      work[col * n + k] = mod.reduce(work[col * n + k] * inv);
      if (aug) (*aug)[col * n + k] = mod.reduce((*aug)[col * n + k] * inv);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || work[r * n + col] == 0) continue;
      // Only rows below the pivot matter for the determinant; Gauss-Jordan
      // clears above as well when building the inverse.
      if (!aug && r < col) continue;
      factor = work[r * n + col];
      for (std::size_t k = 0; k < n; ++k) {
        work[r * n + k] = mod.reduce(work[r * n + k] - factor * work[col * n + k]);
        if (aug) (*aug)[r * n + k] = mod.reduce((*aug)[r * n + k] - factor * (*aug)[col * n + k]);
      }
    }
  }
  return det;
}

}  // namespace

Integer determinant(const FieldMatrix& a) {
  std::vector<Integer> work(a.entries().begin(), a.entries().end());
  return eliminate(work, nullptr, a.dim(), a.modulus());
}

std::optional<std::size_t> nilpotency_index(const FieldMatrix& a) {
  FieldMatrix power = a;
  for (std::size_t l = 1; l <= a.dim(); ++l) {
    if (power.is_zero()) return l;
    if (l < a.dim()) power = mat_mul(power, a);
  }
  return std::nullopt;
}

bool commutes(const FieldMatrix& a, const FieldMatrix& b) { return mat_mul(a, b) == mat_mul(b, a); }

GroupElement::GroupElement(FieldMatrix mat) : mat_(std::move(mat)) {
  if (determinant(mat_) == 0) throw NotInvertibleError("matrix is singular modulo p");
}

GroupElement GroupElement::identity(std::size_t n, ModulusPtr mod) {
  return GroupElement(Trusted{}, FieldMatrix::identity(n, std::move(mod)));
}

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  return GroupElement(GroupElement::Trusted{}, mat_mul(a.mat_, b.mat_));
}

GroupElement mat_inv(const FieldMatrix& a) {
  const std::size_t n = a.dim();
  std::vector<Integer> work(a.entries().begin(), a.entries().end());
  std::vector<Integer> aug(n * n, Integer(0));
  for (std::size_t i = 0; i < n; ++i) aug[i * n + i] = 1;
  if (eliminate(work, &aug, n, a.modulus()) == 0) {
    throw NotInvertibleError("matrix is singular modulo p");
  }
  return GroupElement(GroupElement::Trusted{}, FieldMatrix(n, a.modulus_ptr(), std::move(aug)));
}

NilpotentMatrix::NilpotentMatrix(FieldMatrix base) : base_(std::move(base)), index_(0) {
  auto idx = nilpotency_index(base_);
  if (!idx) throw ParameterError("matrix is not nilpotent");
  index_ = *idx;
}

NilpotentMatrix NilpotentMatrix::negated() const { return NilpotentMatrix(base_.negated(), index_); }

NilpotentMatrix NilpotentMatrix::scaled(const Integer& t) const {
  Integer k = base_.modulus().reduce(t);
  if (k == 0) return NilpotentMatrix(FieldMatrix::zero(dim(), base_.modulus_ptr()), 1);
  return NilpotentMatrix(base_.scaled(k), index_);
}

GroupElement mat_exp(const NilpotentMatrix& x) {
  const FieldMatrix& base = x.matrix();
  const Modulus& mod = base.modulus();
  if (mod.value() <= base.dim()) {
    throw ParameterError("mat_exp needs p > n so that m!^-1 exists for every m < n");
  }
  FieldMatrix sum = FieldMatrix::identity(base.dim(), base.modulus_ptr());
  FieldMatrix power = sum;
  Integer factorial = 1;
  for (std::size_t m = 1; m < x.index(); ++m) {
    power = mat_mul(power, base);
    factorial = mod.reduce(factorial * m);
    sum = sum.plus(power.scaled(mod.inverse(factorial)));
  }
  return GroupElement(GroupElement::Trusted{}, std::move(sum));
}

GroupElement exp_scaled(const Integer& t, const NilpotentMatrix& x) {
  if (t < 0) throw ParameterError("exp_scaled takes a non-negative scalar");
  return mat_exp(x.scaled(t));
}

std::vector<std::uint8_t> canonical_encoding(const FieldMatrix& a) {
  const Modulus& mod = a.modulus();
  std::vector<std::uint8_t> p_bytes = to_bytes_be(mod.value());
  const std::size_t width = mod.byte_width();
  std::vector<std::uint8_t> out;
  out.reserve(8 + p_bytes.size() + a.entries().size() * width);
  auto put_u32 = [&out](std::uint32_t v) {
    for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
  };
  put_u32(static_cast<std::uint32_t>(a.dim()));
  put_u32(static_cast<std::uint32_t>(p_bytes.size()));
  out.insert(out.end(), p_bytes.begin(), p_bytes.end());
  for (const Integer& e : a.entries()) {
    std::vector<std::uint8_t> cell = to_bytes_be(e, width);
    out.insert(out.end(), cell.begin(), cell.end());
  }
  return out;
}

}  // namespace liepke
