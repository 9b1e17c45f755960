#ifndef MSYM_MULTILINEAR_HPP
#define MSYM_MULTILINEAR_HPP

// Finite-dimensional graded multilinear maps as structure constants:
// partial composition, symmetric/antisymmetric insertion, the
// Richardson-Nijenhuis bracket and decalage of maps.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "msym/rational.hpp"
#include "msym/signs.hpp"

namespace msym {

struct GradedSpace {
  std::vector<std::string> labels;
  std::vector<int> degrees;

  int dim() const { return static_cast<int>(labels.size()); }
  int degree(int idx) const { return degrees[idx]; }
  int index_of(const std::string& label) const; // -1 if absent
};

using SpacePtr = std::shared_ptr<const GradedSpace>;

SpacePtr make_space(std::vector<std::pair<std::string, int>> basis);
// V[s]: an element of degree d in V has degree d - s in V[s] (so V[-1] raises by 1).
SpacePtr shift_space(const SpacePtr& v, int s, const std::string& label_suffix = "");

using Tuple = std::vector<int>; // basis indices, 0-based

// formal sum of output tuples
using Tensor = std::map<Tuple, Rat>;

void tensor_add(Tensor& t, const Tuple& key, const Rat& c);

struct MultiMap {
  SpacePtr in, out;
  int arity_in = 1, arity_out = 1;
  int degree = 0;
  std::map<Tuple, Tensor> coeffs;

  MultiMap() = default;
  MultiMap(SpacePtr in_, SpacePtr out_, int n, int m, int deg)
      : in(std::move(in_)), out(std::move(out_)), arity_in(n), arity_out(m), degree(deg) {}

  void add_entry(const Tuple& ins, const Tuple& outs, const Rat& c); // degree-checked
  Tensor eval(const Tuple& ins) const;
  bool is_zero() const;
  int in_degree(const Tuple& t) const;

  bool operator==(const MultiMap& o) const;
};

MultiMap zero_map(const SpacePtr& in, const SpacePtr& out, int n, int m, int deg);
MultiMap identity_power(const SpacePtr& v, int k); // id^{(x)k}: V^{(x)k} -> V^{(x)k}
MultiMap map_add(const MultiMap& f, const MultiMap& g);
MultiMap map_scale(const Rat& c, const MultiMap& f);

// f o_i g with the Hom-convention Koszul sign (-1)^{|g| (|v_1|+...+|v_{i-1}|)}.
MultiMap compose_at(const MultiMap& f, const MultiMap& g, int i); // i is 1-based

enum class InsertVariant { Sym, Antisym };

// f |> g = sum over Sh(p, n-q) of (f o_1 g)(sigma . v); g's inputs form the first block.
MultiMap insert(const MultiMap& f, const MultiMap& g, InsertVariant variant);

// [f,g] = f|>g - (-1)^{|f||g|} g|>f
MultiMap rn_bracket(const MultiMap& f, const MultiMap& g, InsertVariant variant);

bool is_symmetric(const MultiMap& f);
bool is_antisymmetric(const MultiMap& f);

// dec(f): S^n(V[-1]) -> W[j] of degree i-j-n, values
// (-1)^{n i} (-1)^{sum (n-k)|v_k|} f(v_1 ^ ... ^ v_n); f must be antisymmetric
// with arity_out 1.  The shifted spaces are created internally and shared by
// reference equality of labels.
MultiMap decalage_of_map(const MultiMap& f, int target_shift);

// Inverse direction used by tests: antisymmetric preimage of a symmetric map on V[-1].
MultiMap decalage_preimage(const MultiMap& f_shifted, const SpacePtr& v, const SpacePtr& w,
                           int target_shift);

} // namespace msym

#endif
