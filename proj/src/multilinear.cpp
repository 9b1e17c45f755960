#include "msym/multilinear.hpp"

#include <functional>
#include <stdexcept>

namespace msym {

int GradedSpace::index_of(const std::string& label) const
{
  for (int i = 0; i < dim(); ++i)
    if (labels[i] == label) return i;
  return -1;
}

SpacePtr make_space(std::vector<std::pair<std::string, int>> basis)
{
  auto sp = std::make_shared<GradedSpace>();
  for (auto& [l, d] : basis) {
    if (sp->index_of(l) >= 0) throw std::invalid_argument("make_space: duplicate label " + l);
    sp->labels.push_back(l);
    sp->degrees.push_back(d);
  }
  return sp;
}

SpacePtr shift_space(const SpacePtr& v, int s, const std::string& suffix)
{
  auto sp = std::make_shared<GradedSpace>();
  sp->labels = v->labels;
  for (auto& l : sp->labels) l += suffix;
  sp->degrees = v->degrees;
  for (auto& d : sp->degrees) d -= s;
  return sp;
}

void tensor_add(Tensor& t, const Tuple& key, const Rat& c)
{
  if (c == 0) return;
  auto it = t.find(key);
  if (it == t.end()) {
    t.emplace(key, c);
  } else {
    it->second += c;
    if (it->second == 0) t.erase(it);
  }
}

static bool same_space(const SpacePtr& a, const SpacePtr& b)
{
  return a == b || (a && b && a->labels == b->labels && a->degrees == b->degrees);
}

int MultiMap::in_degree(const Tuple& t) const
{
  int d = 0;
  for (int idx : t) d += in->degree(idx);
  return d;
}

void MultiMap::add_entry(const Tuple& ins, const Tuple& outs, const Rat& c)
{
  if (static_cast<int>(ins.size()) != arity_in || static_cast<int>(outs.size()) != arity_out)
    throw std::invalid_argument("MultiMap::add_entry: arity mismatch");
  if (c == 0) return;
  int din = 0, dout = 0;
  for (int i : ins) din += in->degree(i);
  for (int o : outs) dout += out->degree(o);
  if (dout - din != degree)
    throw std::invalid_argument("MultiMap::add_entry: entry violates map degree");
  Tensor& t = coeffs[ins];
  tensor_add(t, outs, c);
  if (t.empty()) coeffs.erase(ins);
}

Tensor MultiMap::eval(const Tuple& ins) const
{
  auto it = coeffs.find(ins);
  return it == coeffs.end() ? Tensor{} : it->second;
}

bool MultiMap::is_zero() const
{
  for (const auto& [k, t] : coeffs)
    if (!t.empty()) return false;
  return true;
}

bool MultiMap::operator==(const MultiMap& o) const
{
  if (arity_in != o.arity_in || arity_out != o.arity_out || degree != o.degree) return false;
  if (!same_space(in, o.in) || !same_space(out, o.out)) return false;
  auto norm = [](const MultiMap& m) {
    std::map<Tuple, Tensor> r;
    for (const auto& [k, t] : m.coeffs)
      if (!t.empty()) r[k] = t;
    return r;
  };
  return norm(*this) == norm(o);
}

MultiMap zero_map(const SpacePtr& in, const SpacePtr& out, int n, int m, int deg)
{
  return MultiMap(in, out, n, m, deg);
}

MultiMap identity_power(const SpacePtr& v, int k)
{
  MultiMap f(v, v, k, k, 0);
  Tuple t(k, 0);
  // enumerate all dim^k tuples
  while (true) {
    f.add_entry(t, t, 1);
    int i = k - 1;
    while (i >= 0 && t[i] == v->dim() - 1) t[i--] = 0;
    if (i < 0) break;
    ++t[i];
  }
  return f;
}

MultiMap map_add(const MultiMap& f, const MultiMap& g)
{
  if (f.arity_in != g.arity_in || f.arity_out != g.arity_out || f.degree != g.degree ||
      !same_space(f.in, g.in) || !same_space(f.out, g.out))
    throw std::invalid_argument("map_add: shape mismatch");
  MultiMap r = f;
  for (const auto& [k, t] : g.coeffs)
    for (const auto& [o, c] : t) r.add_entry(k, o, c);
  return r;
}

MultiMap map_scale(const Rat& c, const MultiMap& f)
{
  MultiMap r(f.in, f.out, f.arity_in, f.arity_out, f.degree);
  if (c == 0) return r;
  r = f;
  for (auto& [k, t] : r.coeffs)
    for (auto& [o, v] : t) v *= c;
  return r;
}

// enumerate all tuples of given length over the space dimension
static void for_all_tuples(int dim, int len, const std::function<void(const Tuple&)>& fn)
{
  if (dim == 0 && len > 0) return;
  Tuple t(len, 0);
  if (len == 0) {
    fn(t);
    return;
  }
  while (true) {
    fn(t);
    int i = len - 1;
    while (i >= 0 && t[i] == dim - 1) t[i--] = 0;
    if (i < 0) break;
    ++t[i];
  }
}

MultiMap compose_at(const MultiMap& f, const MultiMap& g, int i)
{
  if (!same_space(g.out, f.in))
    throw std::invalid_argument("compose_at: g's target is not f's source");
  const int n = f.arity_in, p = g.arity_in, q = g.arity_out;
  if (q > n || i < 1 || i > n - q + 1)
    throw std::invalid_argument("compose_at: position out of range");
  MultiMap r(g.in, f.out, n + p - q, f.arity_out, f.degree + g.degree);
  if (!same_space(g.in, f.in) && n != q)
    throw std::invalid_argument("compose_at: remaining slots live in a different space");

  for_all_tuples(r.in->dim(), r.arity_in, [&](const Tuple& v) {
    // sign from moving g past the first i-1 inputs
    int pre_deg = 0;
    for (int k = 0; k < i - 1; ++k) pre_deg += r.in->degree(v[k]);
    int hom_sign = (g.degree % 2 != 0 && pre_deg % 2 != 0) ? -1 : 1;

    Tuple gin(v.begin() + (i - 1), v.begin() + (i - 1) + p);
    Tensor mid = g.eval(gin);
    if (mid.empty()) return;
    for (const auto& [gout, cg] : mid) {
      Tuple fin;
      fin.reserve(n);
      fin.insert(fin.end(), v.begin(), v.begin() + (i - 1));
      fin.insert(fin.end(), gout.begin(), gout.end());
      fin.insert(fin.end(), v.begin() + (i - 1) + p, v.end());
      Tensor top = f.eval(fin);
      for (const auto& [fout, cf] : top) r.add_entry(v, fout, Rat(hom_sign) * cg * cf);
    }
  });
  return r;
}

MultiMap insert(const MultiMap& f, const MultiMap& g, InsertVariant variant)
{
  const int n = f.arity_in, p = g.arity_in, q = g.arity_out;
  if (q > n) throw std::invalid_argument("insert: arity_out(g) exceeds arity_in(f)");
  MultiMap fg = compose_at(f, g, 1);
  const int N = fg.arity_in;
  std::vector<int> parts;
  if (p > 0) parts.push_back(p);
  if (N - p > 0) parts.push_back(N - p);
  if (parts.empty()) parts.push_back(0); // degenerate, not expected
  std::vector<Perm> shs = unshuffles(parts);

  MultiMap r(fg.in, fg.out, N, fg.arity_out, fg.degree);
  for_all_tuples(r.in->dim(), N, [&](const Tuple& v) {
    std::vector<int> degs(N);
    for (int k = 0; k < N; ++k) degs[k] = r.in->degree(v[k]);
    for (const Perm& s : shs) {
      int sign = (variant == InsertVariant::Sym) ? koszul_sign(s, degs)
                                                 : antisym_koszul_sign(s, degs);
      Tuple w(N);
      for (int k = 1; k <= N; ++k) w[k - 1] = v[s(k) - 1];
      Tensor val = fg.eval(w);
      for (const auto& [o, c] : val) r.add_entry(v, o, Rat(sign) * c);
    }
  });
  return r;
}

MultiMap rn_bracket(const MultiMap& f, const MultiMap& g, InsertVariant variant)
{
  MultiMap a = insert(f, g, variant);
  MultiMap b = insert(g, f, variant);
  int s = (f.degree % 2 != 0 && g.degree % 2 != 0) ? -1 : 1;
  return map_add(a, map_scale(Rat(-s), b));
}

static bool check_swap_symmetry(const MultiMap& f, int anti)
{
  const int n = f.arity_in;
  bool ok = true;
  for_all_tuples(f.in->dim(), n, [&](const Tuple& v) {
    if (!ok) return;
    for (int k = 0; k + 1 < n; ++k) {
      Tuple w = v;
      std::swap(w[k], w[k + 1]);
      int eps = (f.in->degree(v[k]) % 2 != 0 && f.in->degree(v[k + 1]) % 2 != 0) ? -1 : 1;
      eps *= anti; // antisym: extra (-1)^sigma
      Tensor lhs = f.eval(w);
      Tensor rhs = f.eval(v);
      for (auto& [o, c] : rhs) c *= eps;
      // normalize: remove zeros already done; compare
      if (lhs != rhs) {
        ok = false;
        return;
      }
    }
  });
  return ok;
}

bool is_symmetric(const MultiMap& f) { return check_swap_symmetry(f, 1); }
bool is_antisymmetric(const MultiMap& f) { return check_swap_symmetry(f, -1); }

MultiMap decalage_of_map(const MultiMap& f, int j)
{
  if (f.arity_out != 1) throw std::invalid_argument("decalage_of_map: arity_out must be 1");
  if (!is_antisymmetric(f)) throw std::invalid_argument("decalage_of_map: f is not antisymmetric");
  const int n = f.arity_in, i = f.degree;
  SpacePtr in = shift_space(f.in, -1);
  SpacePtr out = shift_space(f.out, j);
  MultiMap r(in, out, n, 1, i - j - n);
  for (const auto& [v, t] : f.coeffs) {
    std::vector<int> degs(n);
    for (int k = 0; k < n; ++k) degs[k] = f.in->degree(v[k]); // unshifted degrees
    long long e = static_cast<long long>(n) * i;
    for (int k = 0; k < n; ++k) e += static_cast<long long>(n - 1 - k) * degs[k];
    int sign = (e % 2 == 0) ? 1 : -1;
    for (const auto& [o, c] : t) r.add_entry(v, o, Rat(sign) * c);
  }
  return r;
}

MultiMap decalage_preimage(const MultiMap& fs, const SpacePtr& v, const SpacePtr& w, int j)
{
  if (fs.arity_out != 1) throw std::invalid_argument("decalage_preimage: arity_out must be 1");
  const int n = fs.arity_in;
  const int i = fs.degree + j + n;
  MultiMap r(v, w, n, 1, i);
  for (const auto& [tup, t] : fs.coeffs) {
    std::vector<int> degs(n);
    for (int k = 0; k < n; ++k) degs[k] = v->degree(tup[k]);
    long long e = static_cast<long long>(n) * i;
    for (int k = 0; k < n; ++k) e += static_cast<long long>(n - 1 - k) * degs[k];
    int sign = (e % 2 == 0) ? 1 : -1;
    for (const auto& [o, c] : t) r.add_entry(tup, o, Rat(sign) * c);
  }
  return r;
}

} // namespace msym
