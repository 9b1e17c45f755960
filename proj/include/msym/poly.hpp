#ifndef MSYM_POLY_HPP
#define MSYM_POLY_HPP

// Exact sparse multivariate polynomials over rationals in d variables,
// including the ray-integral operator used by the Poincare primitive.

#include <map>
#include <string>
#include <vector>

#include "msym/rational.hpp"

namespace msym {

struct Poly {
  int dim = 0;
  // exponent vector (length dim) -> nonzero rational; std::map keeps a
  // canonical term order for serialization and determinism
  std::map<std::vector<int>, Rat> terms;

  Poly() = default;
  explicit Poly(int d) : dim(d) {}

  static Poly constant(int dim, const Rat& c);
  static Poly variable(int dim, int i); // x_i, 1-based

  bool is_zero() const { return terms.empty(); }
  bool is_constant() const;
  Rat constant_term() const;

  void add_term(const std::vector<int>& exps, const Rat& c);

  bool operator==(const Poly&) const = default;
};

Poly operator+(const Poly& p, const Poly& q);
Poly operator-(const Poly& p, const Poly& q);
Poly operator-(const Poly& p);
Poly operator*(const Poly& p, const Poly& q);
Poly operator*(const Rat& c, const Poly& p);

Poly poly_mul(const Poly& p, const Poly& q);
Poly poly_partial(const Poly& p, int i); // d/dx_i, 1-based

// q(x) = int_0^1 t^k p(t x) dt : a total-degree-a monomial picks up 1/(k+a+1).
Poly poly_ray_integral(const Poly& p, int k);

// grammar: `3/2*x1^2*x3 - x2`
Poly parse_poly(const std::string& text, int dim);
std::string poly_str(const Poly& p);

} // namespace msym

#endif
