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

#include "ipir/field.hpp"

#include <string>
#include <utility>

#include "ipir/errors.hpp"

namespace ipir {

namespace {

void require_same_field(const FieldElement& a, const FieldElement& b) {
  if (a.modulus() != b.modulus()) {
    throw ValidationError("field element modulus mismatch: " +
                          std::to_string(a.modulus()) + " vs " +
                          std::to_string(b.modulus()));
  }
}

Eigen::Index as_index(std::size_t v) { return static_cast<Eigen::Index>(v); }

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t f = 3; f <= n / f; f += 2) {
    if (n % f == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t order) : order_(order) {
  if (order >= kMaxOrder) {
    throw ValidationError("field order " + std::to_string(order) +
                          " exceeds 2^32");
  }
  if (!is_prime(order)) {
    throw ValidationError("field order " + std::to_string(order) +
                          " is not prime");
  }
}

Symbol PrimeField::pow(Symbol base, std::uint64_t exp) const noexcept {
  Symbol result = 1 % order_;
  base %= order_;
  while (exp > 0) {
    if (exp & 1) result = mul(result, base);
    base = mul(base, base);
    exp >>= 1;
  }
  return result;
}

Symbol PrimeField::inv(Symbol a) const {
  if (a % order_ == 0) throw ValidationError("inverse of zero");
  // Fermat: a^(q-2) = a^-1 for prime q.
  return pow(a, order_ - 2);
}

FieldElement::FieldElement(const PrimeField& field, std::uint64_t value)
    : field_(field), value_(value) {
  if (!field_.contains(value)) {
    throw ValidationError("symbol " + std::to_string(value) +
                          " out of range for q=" +
                          std::to_string(field_.order()));
  }
}

FieldElement::FieldElement(std::uint64_t value, std::uint64_t modulus)
    : FieldElement(PrimeField(modulus), value) {}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  return FieldElement(a.field(), a.field().add(a.value(), b.value()));
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  return FieldElement(a.field(), a.field().sub(a.value(), b.value()));
}

FieldElement operator-(const FieldElement& a) {
  return FieldElement(a.field(), a.field().neg(a.value()));
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  return FieldElement(a.field(), a.field().mul(a.value(), b.value()));
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  return a * inverse(b);
}

FieldElement inverse(const FieldElement& a) {
  return FieldElement(a.field(), a.field().inv(a.value()));
}

FieldMatrix::FieldMatrix(const PrimeField& field, std::size_t rows,
                         std::size_t cols)
    : field_(field), entries_(Storage::Zero(as_index(rows), as_index(cols))) {}

FieldMatrix::FieldMatrix(const PrimeField& field, Storage entries)
    : field_(field), entries_(std::move(entries)) {
  for (Eigen::Index r = 0; r < entries_.rows(); ++r) {
    for (Eigen::Index c = 0; c < entries_.cols(); ++c) {
      if (!field_.contains(entries_(r, c))) {
        throw ValidationError("matrix entry " +
                              std::to_string(entries_(r, c)) +
                              " out of range for q=" +
                              std::to_string(field_.order()));
      }
    }
  }
}

FieldMatrix FieldMatrix::identity(const PrimeField& field, std::size_t n) {
  return FieldMatrix(field, Storage::Identity(as_index(n), as_index(n)));
}

FieldMatrix FieldMatrix::from_rows(
    const PrimeField& field,
    std::initializer_list<std::initializer_list<std::uint64_t>> rows) {
  const std::size_t cols = rows.size() == 0 ? 0 : rows.begin()->size();
  Storage m(as_index(rows.size()), as_index(cols));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    if (row.size() != cols) throw ValidationError("ragged row list");
    Eigen::Index c = 0;
    for (std::uint64_t v : row) m(r, c++) = v;
    ++r;
  }
  return FieldMatrix(field, std::move(m));
}

void FieldMatrix::set(std::size_t r, std::size_t c, std::uint64_t value) {
  if (!field_.contains(value)) {
    throw ValidationError("symbol " + std::to_string(value) +
                          " out of range for q=" +
                          std::to_string(field_.order()));
  }
  entries_(as_index(r), as_index(c)) = value;
}

FieldMatrix FieldMatrix::select_rows(std::span<const std::size_t> rows) const {
  Storage out(as_index(rows.size()), entries_.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.row(as_index(i)) = entries_.row(as_index(rows[i]));
  }
  return FieldMatrix(field_, std::move(out));
}

FieldMatrix FieldMatrix::select_cols(std::span<const std::size_t> cols) const {
  Storage out(entries_.rows(), as_index(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    out.col(as_index(j)) = entries_.col(as_index(cols[j]));
  }
  return FieldMatrix(field_, std::move(out));
}

FieldMatrix FieldMatrix::stacked(const FieldMatrix& below) const {
  if (below.field_ != field_) throw ValidationError("field mismatch");
  if (below.cols() != cols() && below.rows() > 0 && rows() > 0) {
    throw ValidationError("column count mismatch when stacking");
  }
  const Eigen::Index cols =
      rows() > 0 ? entries_.cols() : below.entries_.cols();
  Storage out(entries_.rows() + below.entries_.rows(), cols);
  if (rows() > 0) out.topRows(entries_.rows()) = entries_;
  if (below.rows() > 0) out.bottomRows(below.entries_.rows()) = below.entries_;
  return FieldMatrix(field_, std::move(out));
}

FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.field() != b.field()) throw ValidationError("field mismatch");
  if (a.cols() != b.rows()) throw ValidationError("dimension mismatch");
  const PrimeField& f = a.field();
  FieldMatrix::Storage out =
      FieldMatrix::Storage::Zero(a.entries().rows(), b.entries().cols());
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    for (Eigen::Index k = 0; k < a.entries().cols(); ++k) {
      const Symbol aik = a.entries()(i, k);
      if (aik == 0) continue;
      for (Eigen::Index j = 0; j < out.cols(); ++j) {
        out(i, j) = f.add(out(i, j), f.mul(aik, b.entries()(k, j)));
      }
    }
  }
  return FieldMatrix(f, std::move(out));
}

std::size_t row_reduce(FieldMatrix::Storage& m, const PrimeField& field) {
  Eigen::Index pivot_row = 0;
  for (Eigen::Index col = 0; col < m.cols() && pivot_row < m.rows(); ++col) {
    Eigen::Index found = -1;
    for (Eigen::Index r = pivot_row; r < m.rows(); ++r) {
      if (m(r, col) != 0) {
        found = r;
        break;
      }
    }
    if (found < 0) continue;
    if (found != pivot_row) m.row(found).swap(m.row(pivot_row));

    const Symbol scale = field.inv(m(pivot_row, col));
    for (Eigen::Index c = col; c < m.cols(); ++c) {
      m(pivot_row, c) = field.mul(m(pivot_row, c), scale);
    }
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == pivot_row || m(r, col) == 0) continue;
      const Symbol factor = m(r, col);
      for (Eigen::Index c = col; c < m.cols(); ++c) {
        m(r, c) = field.sub(m(r, c), field.mul(factor, m(pivot_row, c)));
      }
    }
    ++pivot_row;
  }
  return static_cast<std::size_t>(pivot_row);
}

std::size_t rank(const FieldMatrix& m) {
  FieldMatrix::Storage work = m.entries();
  return row_reduce(work, m.field());
}

FieldMatrix solve_square(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.rows() != a.cols()) throw ValidationError("matrix is not square");
  if (b.rows() != a.rows()) throw ValidationError("right-hand side length");
  if (a.field() != b.field()) throw ValidationError("field mismatch");

  const Eigen::Index n = a.entries().rows();
  FieldMatrix::Storage aug(n, n + b.entries().cols());
  aug.leftCols(n) = a.entries();
  aug.rightCols(b.entries().cols()) = b.entries();
  row_reduce(aug, a.field());
  // After reduction the left block is the identity iff a is nonsingular.
  for (Eigen::Index i = 0; i < n; ++i) {
    if (aug(i, i) != 1) {
      throw SingularMatrixError("singular " + std::to_string(n) + "x" +
                                std::to_string(n) + " system");
    }
  }
  return FieldMatrix(a.field(), aug.rightCols(b.entries().cols()));
}

std::vector<FieldElement> solve_square(const FieldMatrix& a,
                                       std::span<const FieldElement> b) {
  FieldMatrix rhs(a.field(), b.size(), 1);
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i].field() != a.field()) throw ValidationError("field mismatch");
    rhs.set(i, 0, b[i].value());
  }
  const FieldMatrix x = solve_square(a, rhs);
  std::vector<FieldElement> out;
  out.reserve(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) out.push_back(x.element(i, 0));
  return out;
}

bool in_rowspace_with_units(const FieldMatrix& coeffs,
                            std::span<const std::size_t> unit_indices,
                            std::size_t target) {
  const std::size_t k = coeffs.cols();
  auto check = [k](std::size_t idx) {
    if (idx < 1 || idx > k) {
      throw ValidationError("index " + std::to_string(idx) +
                            " outside [1, " + std::to_string(k) + "]");
    }
  };
  check(target);
  for (std::size_t s : unit_indices) check(s);

  const Eigen::Index rows = coeffs.entries().rows();
  const Eigen::Index units = static_cast<Eigen::Index>(unit_indices.size());
  FieldMatrix::Storage span_set =
      FieldMatrix::Storage::Zero(rows + units + 1, as_index(k));
  if (rows > 0) span_set.topRows(rows) = coeffs.entries();
  for (Eigen::Index u = 0; u < units; ++u) {
    span_set(rows + u, as_index(unit_indices[static_cast<std::size_t>(u)] - 1)) =
        1;
  }

  FieldMatrix::Storage without_target = span_set.topRows(rows + units);
  const std::size_t base = row_reduce(without_target, coeffs.field());
  span_set(rows + units, as_index(target - 1)) = 1;
  return row_reduce(span_set, coeffs.field()) == base;
}

}  // namespace ipir
