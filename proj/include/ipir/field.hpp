// Copyright 2026 The IPIR Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IPIR_FIELD_HPP_
#define IPIR_FIELD_HPP_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace ipir {

// A symbol of F_q stored as its canonical representative in [0, q).
using Symbol = std::uint64_t;

bool is_prime(std::uint64_t n) noexcept;

// The prime field F_q. Orders are limited to q < 2^32 so that a product of two
// reduced symbols always fits in 64 bits.
class PrimeField {
 public:
  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 32;

  // Throws ValidationError unless `order` is a prime below kMaxOrder.
  explicit PrimeField(std::uint64_t order);

  std::uint64_t order() const noexcept { return order_; }

  Symbol reduce(std::uint64_t v) const noexcept { return v % order_; }
  Symbol add(Symbol a, Symbol b) const noexcept {
    const Symbol s = a + b;
    return s >= order_ ? s - order_ : s;
  }
  Symbol sub(Symbol a, Symbol b) const noexcept {
    return a >= b ? a - b : a + order_ - b;
  }
  Symbol neg(Symbol a) const noexcept { return a == 0 ? 0 : order_ - a; }
  Symbol mul(Symbol a, Symbol b) const noexcept { return (a * b) % order_; }
  // Throws ValidationError on a == 0.
  Symbol inv(Symbol a) const;
  Symbol pow(Symbol base, std::uint64_t exp) const noexcept;

  bool contains(std::uint64_t v) const noexcept { return v < order_; }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint64_t order_;
};

class FieldElement {
 public:
  // Throws ValidationError if value >= field.order().
  FieldElement(const PrimeField& field, std::uint64_t value);
  // Convenience form; checks primality of `modulus`.
  FieldElement(std::uint64_t value, std::uint64_t modulus);

  Symbol value() const noexcept { return value_; }
  std::uint64_t modulus() const noexcept { return field_.order(); }
  const PrimeField& field() const noexcept { return field_; }
  bool is_zero() const noexcept { return value_ == 0; }

  friend bool operator==(const FieldElement&, const FieldElement&) = default;

 private:
  PrimeField field_;
  Symbol value_;
};

// Mixed-modulus arithmetic throws ValidationError.
FieldElement operator+(const FieldElement& a, const FieldElement& b);
FieldElement operator-(const FieldElement& a, const FieldElement& b);
FieldElement operator-(const FieldElement& a);
FieldElement operator*(const FieldElement& a, const FieldElement& b);
FieldElement operator/(const FieldElement& a, const FieldElement& b);
// Multiplicative inverse; throws ValidationError for zero.
FieldElement inverse(const FieldElement& a);

// Dense matrix over F_q. Entries live in an Eigen row-major array of reduced
// symbols that all share the matrix's field.
class FieldMatrix {
 public:
  using Storage =
      Eigen::Matrix<Symbol, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  // rows x cols zero matrix.
  FieldMatrix(const PrimeField& field, std::size_t rows, std::size_t cols);
  // Takes ownership of `entries`; throws ValidationError on any entry >= q.
  FieldMatrix(const PrimeField& field, Storage entries);

  static FieldMatrix identity(const PrimeField& field, std::size_t n);
  static FieldMatrix from_rows(
      const PrimeField& field,
      std::initializer_list<std::initializer_list<std::uint64_t>> rows);

  std::size_t rows() const noexcept {
    return static_cast<std::size_t>(entries_.rows());
  }
  std::size_t cols() const noexcept {
    return static_cast<std::size_t>(entries_.cols());
  }
  const PrimeField& field() const noexcept { return field_; }
  const Storage& entries() const noexcept { return entries_; }

  Symbol operator()(std::size_t r, std::size_t c) const {
    return entries_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }
  FieldElement element(std::size_t r, std::size_t c) const {
    return FieldElement(field_, (*this)(r, c));
  }
  void set(std::size_t r, std::size_t c, std::uint64_t value);

  // Rows at the given 0-based positions, in that order.
  FieldMatrix select_rows(std::span<const std::size_t> rows) const;
  // Columns at the given 0-based positions, in that order.
  FieldMatrix select_cols(std::span<const std::size_t> cols) const;
  // this stacked on top of `below`; column counts and fields must agree.
  FieldMatrix stacked(const FieldMatrix& below) const;

  friend bool operator==(const FieldMatrix& a, const FieldMatrix& b) {
    return a.field_ == b.field_ && a.entries_.rows() == b.entries_.rows() &&
           a.entries_.cols() == b.entries_.cols() && a.entries_ == b.entries_;
  }

 private:
  PrimeField field_;
  Storage entries_;
};

FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b);

// Reduces `m` in place to reduced row-echelon form (first nonzero pivot in
// each column, scanning rows top-down) and returns its rank.
std::size_t row_reduce(FieldMatrix::Storage& m, const PrimeField& field);

std::size_t rank(const FieldMatrix& m);

// Solves a * x = b for square nonsingular `a`; b may carry several columns.
// Throws SingularMatrixError when rank(a) < a.rows().
FieldMatrix solve_square(const FieldMatrix& a, const FieldMatrix& b);
std::vector<FieldElement> solve_square(const FieldMatrix& a,
                                       std::span<const FieldElement> b);

// True iff the unit vector e_target lies in the span of the rows of `coeffs`
// together with {e_s : s in unit_indices}. Indices are 1-based message
// indices in [1, coeffs.cols()]; anything else throws ValidationError.
bool in_rowspace_with_units(const FieldMatrix& coeffs,
                            std::span<const std::size_t> unit_indices,
                            std::size_t target);

}  // namespace ipir

#endif  // IPIR_FIELD_HPP_
