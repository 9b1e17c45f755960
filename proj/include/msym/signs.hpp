#ifndef MSYM_SIGNS_HPP
#define MSYM_SIGNS_HPP

// Permutation and sign machinery: Koszul signs under the parity rule,
// total Koszul sign (full reversal), decalage signs, unshuffle enumeration
// and two-level unshuffle factorization.

#include <array>
#include <vector>

namespace msym {

// A permutation of {1..n}, stored as 1-based images: images[i-1] = sigma(i).
struct Perm {
  std::vector<int> images;

  Perm() = default;
  explicit Perm(std::vector<int> img) : images(std::move(img)) {}

  int size() const { return static_cast<int>(images.size()); }
  int operator()(int i) const { return images[i - 1]; } // 1-based
  bool operator==(const Perm&) const = default;
  bool operator<(const Perm& o) const { return images < o.images; }

  static Perm identity(int n);
  bool is_valid() const;
  Perm inverse() const;
};

// Composition convention tied to the tensor action (sigma . v)_i = v_{sigma(i)}:
// acting first with s2 and then with s1 is the action of compose(s1, s2),
// i.e. compose(s1,s2)(i) = s2(s1(i)).  With this convention
//   koszul_sign(compose(s1,s2), degs) == koszul_sign(s1, permute(s2,degs)) * koszul_sign(s2, degs).
Perm compose(const Perm& s1, const Perm& s2);

// (sigma . degs)[i] = degs[sigma(i)]  (degrees of the permuted word).
std::vector<int> permute(const Perm& sigma, const std::vector<int>& degs);

// (-1)^sigma
int perm_sign(const Perm& sigma);

// epsilon(sigma; v) with sigma.(v1 x ... x vn) = epsilon (v_{s(1)} x ... x v_{s(n)}),
// parity sign rule.
int koszul_sign(const Perm& sigma, const std::vector<int>& degs);

// epsilon_{-tau}(sigma) = (-1)^sigma epsilon(sigma)
int antisym_koszul_sign(const Perm& sigma, const std::vector<int>& degs);

// (-1)^{sum_i sum_{j<i} |a_i||a_j|}; equals the Koszul sign of full reversal.
int total_koszul_sign(const std::vector<int>& degs);

// (-1)^{sum_i (n-i)|v_i|}
int decalage_sign(const std::vector<int>& degs);

// All (p1,...,pq)-unshuffles of S_n (increasing inside each block of positions),
// in lexicographic order of image words.  |result| = n!/(p1!...pq!).
std::vector<Perm> unshuffles(const std::vector<int>& parts);

bool is_unshuffle(const Perm& sigma, const std::vector<int>& parts);

struct UnshuffleSplit {
  Perm sigma; // in Sh(p1+p2, p3+p4)
  Perm tau1;  // in Sh(p1, p2), acting inside the first p1+p2 positions
  Perm tau2;  // in Sh(p3, p4), acting inside the last p3+p4 positions
};

// Unique factorization alpha = (tau1,tau2) o sigma of a (p1,p2,p3,p4)-unshuffle.
UnshuffleSplit unshuffle_factorize(const Perm& alpha, const std::array<int, 4>& split);

// Recomposition: alpha(i) = sigma(block(tau1,tau2)(i)).
Perm recompose_unshuffle(const UnshuffleSplit& s, const std::array<int, 4>& split);

} // namespace msym

#endif
