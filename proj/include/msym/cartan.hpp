#ifndef MSYM_CARTAN_HPP
#define MSYM_CARTAN_HPP

// Polynomial multivector fields and differential forms on R^d:
// wedge products, the Schouten-type symmetric degree(-1) bracket nu,
// its higher brackets nu_n, exterior derivative, reversed-order
// contraction, Lie derivative and the Cartan identity defects.

#include <map>
#include <string>
#include <vector>

#include "msym/poly.hpp"
#include "msym/rng.hpp"
#include "msym/signs.hpp"

namespace msym {

// shared shape of multivectors (coeff * d_{s1}^...^d_{sk}) and forms
// (coeff * dx_{s1}^...^dx_{sk}); index sets strictly increasing, 1-based.
struct Section {
  int dim = 0;
  int deg = 0;
  std::map<std::vector<int>, Poly> comps;

  Section() = default;
  Section(int d, int k) : dim(d), deg(k) {}

  bool is_zero() const;
  void add_comp(const std::vector<int>& idx, const Poly& c); // idx strictly increasing
  // adds c * e_{idx} for arbitrary distinct idx, sorting with the sign of the permutation
  void add_signed(const std::vector<int>& idx, const Poly& c);
  Poly comp(const std::vector<int>& idx) const;

  // zero sections are equal regardless of their degree tag
  bool operator==(const Section& o) const
  {
    if (dim != o.dim) return false;
    if (is_zero() && o.is_zero()) return true;
    return deg == o.deg && comps == o.comps;
  }
};

struct MV : Section {
  using Section::Section;
};
struct Form : Section {
  using Section::Section;
};

using MVWord = std::vector<MV>;

MV mv_add(const MV& x, const MV& y);
MV mv_scale(const Rat& c, const MV& x);
MV mv_neg(const MV& x);
Form form_add(const Form& a, const Form& b);
Form form_scale(const Rat& c, const Form& a);
Form form_neg(const Form& a);

MV wedge_mv(const MV& x, const MV& y);
Form wedge_form(const Form& a, const Form& b);

// convenience builders
MV mv_monomial(int dim, const Poly& c, const std::vector<int>& idx);
Form form_monomial(int dim, const Poly& c, const std::vector<int>& idx);

// nu = dec of the graded Lie bracket on multivectors: symmetric, degree -1;
// Leibniz-recursive primary implementation.
MV schouten(const MV& x, const MV& y);

// independent cross-check backend: explicit double-sum formula on decomposable
// words of vector fields, nu(x,y) = (-1)^{|x|+1} sum (-1)^{i+j}[x_i,y_j]^...
MV schouten_explicit(const std::vector<MV>& xs, const std::vector<MV>& ys);

// nu_n of a word of multivectors of positive degree; nu_1 = 0, nu_2 = schouten,
// nu_n = sum over Sh(2, n-2) of eps(sigma) nu(x_s1, x_s2)^x_s3^...^x_sn.
MV nu_n(const MVWord& word);

// J(n) = sum_{i+j=n+1} (nu_j |> nu_i)(word); exactly zero by the L-infinity property.
MV jacobi_defect(const MVWord& word, int n);

Form exterior_d(const Form& a);

// reversed-convention contraction: i_{x1...xn} alpha = alpha(x_n, ..., x_1, -);
// i_{d_i} dx_T deletes with sign (-1)^{pos-1}; degree-0 multivectors multiply.
Form contract(const MV& x, const Form& a);
// conventional contraction (first-slot order) for the total-Koszul comparison test
Form contract_conventional(const MV& x, const Form& a);

// L_x = [d, i_x] = d i_x - (-1)^{deg x} i_x d
Form lie_derivative(const MV& x, const Form& a);

// the five Cartan defects evaluated on a probe form; all should be zero
std::vector<Form> cartan_defects(const MV& x, const MV& y, const Form& probe);

// defect of the L_x decomposition over Sh(n-1,1); zero
Form fr_defect(const MVWord& word, const Form& probe);

// sparse random sections with small integer coefficients and coefficient
// polynomials of total degree <= coeff_deg; never identically zero
Poly random_poly(SplitMix64& rng, int dim, int coeff_deg);
MV random_mv(SplitMix64& rng, int dim, int deg, int coeff_deg);
Form random_form(SplitMix64& rng, int dim, int deg, int coeff_deg);

// text grammar: multivectors `x1*d(2,3) + 1/2*d(1,3)`, forms `x1*dx(1,2) - dx(1,3)`
// (terms of one section must share a single degree)
MV parse_mv(const std::string& text, int dim);
Form parse_form(const std::string& text, int dim);
std::string mv_str(const MV& x);
std::string form_str(const Form& a);

} // namespace msym

#endif
