// Copyright 2026 The condbisim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CONDBISIM_MATRIX_HPP_
#define CONDBISIM_MATRIX_HPP_

#include <concepts>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "condbisim/errors.hpp"

namespace condbisim {

/// Dense row-major matrix. Entries are lattice elements, so there is no
/// default value: every matrix is created with an explicit fill.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<T>& data() const { return data_; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// The requirements the fixpoint engine places on a lattice backend.
template <class A>
concept LatticeAlgebra = requires(const A& alg, const typename A::Element& x) {
  { alg.top() } -> std::convertible_to<typename A::Element>;
  { alg.bottom() } -> std::convertible_to<typename A::Element>;
  { alg.join(x, x) } -> std::convertible_to<typename A::Element>;
  { alg.meet(x, x) } -> std::convertible_to<typename A::Element>;
  { alg.residuum(x, x) } -> std::convertible_to<typename A::Element>;
  { alg.leq(x, x) } -> std::convertible_to<bool>;
  { alg.condition_count() } -> std::convertible_to<double>;
  { x == x } -> std::convertible_to<bool>;
};

template <LatticeAlgebra A>
Matrix<typename A::Element> transpose(const A& alg, const Matrix<typename A::Element>& m) {
  Matrix<typename A::Element> out(m.cols(), m.rows(), alg.bottom());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  }
  return out;
}

/// (U·V)(x,z) = ⊔_y U(x,y) ⊓ V(y,z); an empty inner index yields 0.
template <LatticeAlgebra A>
Matrix<typename A::Element> std_mul(const A& alg, const Matrix<typename A::Element>& u,
                                    const Matrix<typename A::Element>& v) {
  if (u.cols() != v.rows()) throw DimensionMismatch("std_mul: inner dimensions differ");
  const typename A::Element zero = alg.bottom();
  Matrix<typename A::Element> out(u.rows(), v.cols(), zero);
  for (std::size_t x = 0; x < u.rows(); ++x) {
    for (std::size_t z = 0; z < v.cols(); ++z) {
      auto acc = zero;
      for (std::size_t y = 0; y < u.cols(); ++y) {
        if (u(x, y) == zero || v(y, z) == zero) continue;
        acc = alg.join(acc, alg.meet(u(x, y), v(y, z)));
      }
      out(x, z) = std::move(acc);
    }
  }
  return out;
}

/// (U⊗V)(x,z) = ⊓_y (U(x,y) → V(y,z)); an empty inner index yields 1.
template <LatticeAlgebra A>
Matrix<typename A::Element> otimes_mul(const A& alg, const Matrix<typename A::Element>& u,
                                       const Matrix<typename A::Element>& v) {
  if (u.cols() != v.rows()) throw DimensionMismatch("otimes_mul: inner dimensions differ");
  const typename A::Element zero = alg.bottom();
  Matrix<typename A::Element> out(u.rows(), v.cols(), alg.top());
  for (std::size_t x = 0; x < u.rows(); ++x) {
    for (std::size_t z = 0; z < v.cols(); ++z) {
      auto acc = alg.top();
      for (std::size_t y = 0; y < u.cols(); ++y) {
        if (u(x, y) == zero) continue;  // 0 → v = 1
        acc = alg.meet(acc, alg.residuum(u(x, y), v(y, z)));
      }
      out(x, z) = std::move(acc);
    }
  }
  return out;
}

template <LatticeAlgebra A>
Matrix<typename A::Element> meet_entrywise(const A& alg, const Matrix<typename A::Element>& u,
                                           const Matrix<typename A::Element>& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw DimensionMismatch("entrywise meet: shapes differ");
  }
  Matrix<typename A::Element> out = u;
  for (std::size_t i = 0; i < u.rows(); ++i) {
    for (std::size_t j = 0; j < u.cols(); ++j) out(i, j) = alg.meet(u(i, j), v(i, j));
  }
  return out;
}

template <LatticeAlgebra A>
Matrix<typename A::Element> join_entrywise(const A& alg, const Matrix<typename A::Element>& u,
                                           const Matrix<typename A::Element>& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw DimensionMismatch("entrywise join: shapes differ");
  }
  Matrix<typename A::Element> out = u;
  for (std::size_t i = 0; i < u.rows(); ++i) {
    for (std::size_t j = 0; j < u.cols(); ++j) out(i, j) = alg.join(u(i, j), v(i, j));
  }
  return out;
}

/// Entrywise Boolean negation; the algebra must be Boolean.
template <LatticeAlgebra A>
Matrix<typename A::Element> negate_entrywise(const A& alg, const Matrix<typename A::Element>& u) {
  Matrix<typename A::Element> out = u;
  for (std::size_t i = 0; i < u.rows(); ++i) {
    for (std::size_t j = 0; j < u.cols(); ++j) out(i, j) = alg.negate(u(i, j));
  }
  return out;
}

/// U ⊑ V entrywise.
template <LatticeAlgebra A>
bool leq_entrywise(const A& alg, const Matrix<typename A::Element>& u,
                   const Matrix<typename A::Element>& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw DimensionMismatch("entrywise order: shapes differ");
  }
  for (std::size_t i = 0; i < u.rows(); ++i) {
    for (std::size_t j = 0; j < u.cols(); ++j) {
      if (!alg.leq(u(i, j), v(i, j))) return false;
    }
  }
  return true;
}

}  // namespace condbisim

#endif  // CONDBISIM_MATRIX_HPP_
