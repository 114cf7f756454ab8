#pragma once

#include <random>

#include "tameram/algebra.hpp"

namespace testing_support {

using tameram::Field;
using tameram::Matrix;

inline tameram::Scalar random_scalar(const Field& f, std::mt19937_64& rng, int spread = 4) {
  if (f.kind() == Field::Kind::rationals) {
    std::uniform_int_distribution<int> num(-spread, spread), den(1, spread);
    return f.from_rational(tameram::Rational(num(rng), den(rng)));
  }
  std::uniform_int_distribution<std::int64_t> pick(0, *f.order() - 1);
  std::vector<std::int64_t> coeffs;
  auto code = pick(rng);
  for (int k = 0; k < f.degree(); ++k) {
    coeffs.push_back(code % f.characteristic());
    code /= f.characteristic();
  }
  return f.from_coeffs(coeffs);
}

/// Random matrix whose rank is at most `max_rank` (a product of two random factors).
inline Matrix random_matrix(const Field& f, std::size_t rows, std::size_t cols, std::mt19937_64& rng,
                            std::size_t max_rank = SIZE_MAX) {
  auto fill = [&](std::size_t r, std::size_t c) {
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m.at(i, j) = random_scalar(f, rng);
    return m;
  };
  if (max_rank >= std::min(rows, cols)) return fill(rows, cols);
  if (max_rank == 0) return Matrix(f, rows, cols);
  return fill(rows, max_rank) * fill(max_rank, cols);
}

inline Matrix random_invertible(const Field& f, std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    Matrix m = random_matrix(f, n, n, rng);
    if (tameram::is_bijective(m)) return m;
  }
}

}  // namespace testing_support
