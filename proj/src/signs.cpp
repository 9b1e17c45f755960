#include "msym/signs.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace msym {

Perm Perm::identity(int n)
{
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 1);
  return Perm(std::move(img));
}

bool Perm::is_valid() const
{
  std::vector<char> seen(images.size(), 0);
  for (int v : images) {
    if (v < 1 || v > size() || seen[v - 1]) return false;
    seen[v - 1] = 1;
  }
  return true;
}

Perm Perm::inverse() const
{
  std::vector<int> img(images.size());
  for (int i = 1; i <= size(); ++i) img[(*this)(i) - 1] = i;
  return Perm(std::move(img));
}

Perm compose(const Perm& s1, const Perm& s2)
{
  if (s1.size() != s2.size()) throw std::invalid_argument("compose: size mismatch");
  std::vector<int> img(s1.size());
  for (int i = 1; i <= s1.size(); ++i) img[i - 1] = s2(s1(i));
  return Perm(std::move(img));
}

std::vector<int> permute(const Perm& sigma, const std::vector<int>& degs)
{
  if (sigma.size() != static_cast<int>(degs.size()))
    throw std::invalid_argument("permute: size mismatch");
  std::vector<int> out(degs.size());
  for (int i = 1; i <= sigma.size(); ++i) out[i - 1] = degs[sigma(i) - 1];
  return out;
}

int perm_sign(const Perm& sigma)
{
  int inv = 0;
  int n = sigma.size();
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (sigma(i) > sigma(j)) ++inv;
  return (inv % 2 == 0) ? 1 : -1;
}

int koszul_sign(const Perm& sigma, const std::vector<int>& degs)
{
  if (sigma.size() != static_cast<int>(degs.size()))
    throw std::invalid_argument("koszul_sign: length mismatch");
  // each inversion (i<j, sigma(i)>sigma(j)) contributes |v_{sigma(i)}| |v_{sigma(j)}|
  long long e = 0;
  int n = sigma.size();
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (sigma(i) > sigma(j))
        e += static_cast<long long>(degs[sigma(i) - 1]) * degs[sigma(j) - 1];
  return (e % 2 == 0) ? 1 : -1;
}

int antisym_koszul_sign(const Perm& sigma, const std::vector<int>& degs)
{
  return perm_sign(sigma) * koszul_sign(sigma, degs);
}

int total_koszul_sign(const std::vector<int>& degs)
{
  long long e = 0;
  for (size_t i = 0; i < degs.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      e += static_cast<long long>(degs[i]) * degs[j];
  return (e % 2 == 0) ? 1 : -1;
}

int decalage_sign(const std::vector<int>& degs)
{
  long long e = 0;
  long long n = static_cast<long long>(degs.size());
  for (size_t i = 0; i < degs.size(); ++i)
    e += (n - 1 - static_cast<long long>(i)) * degs[i];
  return (e % 2 == 0) ? 1 : -1;
}

namespace {

// Recursively pick the sorted value-set of each block; lexicographic combination
// order of successive blocks yields lexicographic order of image words.
void unshuffles_rec(const std::vector<int>& parts, size_t bi, std::vector<int>& pool,
                    std::vector<int>& acc, std::vector<Perm>& out)
{
  if (bi == parts.size()) {
    out.emplace_back(acc);
    return;
  }
  int p = parts[bi];
  int n = static_cast<int>(pool.size());
  std::vector<int> idx(p);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    std::vector<int> rest;
    size_t k = 0;
    for (int i = 0; i < n; ++i) {
      if (k < idx.size() && idx[k] == i) {
        acc.push_back(pool[i]);
        ++k;
      } else {
        rest.push_back(pool[i]);
      }
    }
    std::vector<int> saved = pool;
    pool = rest;
    unshuffles_rec(parts, bi + 1, pool, acc, out);
    pool = saved;
    acc.resize(acc.size() - p);
    // next combination
    int j = p - 1;
    while (j >= 0 && idx[j] == n - p + j) --j;
    if (j < 0) break;
    ++idx[j];
    for (int t = j + 1; t < p; ++t) idx[t] = idx[t - 1] + 1;
  }
}

} // namespace

std::vector<Perm> unshuffles(const std::vector<int>& parts)
{
  if (parts.empty()) throw std::invalid_argument("unshuffles: empty parts");
  int n = 0;
  for (int p : parts) {
    if (p < 1) throw std::invalid_argument("unshuffles: parts must be >= 1");
    n += p;
  }
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 1);
  std::vector<int> acc;
  acc.reserve(n);
  std::vector<Perm> out;
  unshuffles_rec(parts, 0, pool, acc, out);
  return out;
}

bool is_unshuffle(const Perm& sigma, const std::vector<int>& parts)
{
  int n = 0;
  for (int p : parts) n += p;
  if (n != sigma.size() || !sigma.is_valid()) return false;
  int pos = 0;
  for (int p : parts) {
    for (int i = 1; i < p; ++i)
      if (sigma(pos + i) > sigma(pos + i + 1)) return false;
    pos += p;
  }
  return true;
}

UnshuffleSplit unshuffle_factorize(const Perm& alpha, const std::array<int, 4>& split)
{
  const auto [p1, p2, p3, p4] = split;
  if (!is_unshuffle(alpha, {p1, p2, p3, p4}))
    throw std::invalid_argument("unshuffle_factorize: alpha is not an unshuffle of the split");
  int a = p1 + p2, b = p3 + p4;
  std::vector<int> first(alpha.images.begin(), alpha.images.begin() + a);
  std::vector<int> second(alpha.images.begin() + a, alpha.images.end());
  std::vector<int> fs = first, ss = second;
  std::sort(fs.begin(), fs.end());
  std::sort(ss.begin(), ss.end());

  std::vector<int> simg = fs;
  simg.insert(simg.end(), ss.begin(), ss.end());
  Perm sigma(simg);

  auto positions_in = [](const std::vector<int>& sorted, const std::vector<int>& vals) {
    std::vector<int> img;
    img.reserve(vals.size());
    for (int v : vals) {
      auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
      img.push_back(static_cast<int>(it - sorted.begin()) + 1);
    }
    return img;
  };
  Perm tau1(positions_in(fs, first));
  Perm tau2(positions_in(ss, second));
  return {sigma, tau1, tau2};
}

Perm recompose_unshuffle(const UnshuffleSplit& s, const std::array<int, 4>& split)
{
  int a = split[0] + split[1];
  int n = s.sigma.size();
  std::vector<int> img(n);
  for (int i = 1; i <= n; ++i) {
    int t = (i <= a) ? s.tau1(i) : a + s.tau2(i - a);
    img[i - 1] = s.sigma(t);
  }
  return Perm(std::move(img));
}

} // namespace msym
