#include "msym/cartan.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace msym {

bool Section::is_zero() const
{
  for (const auto& [k, p] : comps)
    if (!p.is_zero()) return false;
  return true;
}

Poly Section::comp(const std::vector<int>& idx) const
{
  auto it = comps.find(idx);
  return it == comps.end() ? Poly(dim) : it->second;
}

void Section::add_comp(const std::vector<int>& idx, const Poly& c)
{
  if (static_cast<int>(idx.size()) != deg)
    throw std::invalid_argument("Section::add_comp: index set size != degree");
  if (!std::is_sorted(idx.begin(), idx.end()) ||
      std::adjacent_find(idx.begin(), idx.end()) != idx.end())
    throw std::invalid_argument("Section::add_comp: index set not strictly increasing");
  for (int i : idx)
    if (i < 1 || i > dim) throw std::out_of_range("Section::add_comp: index out of range");
  if (c.is_zero()) return;
  auto it = comps.find(idx);
  if (it == comps.end()) {
    comps.emplace(idx, c);
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) comps.erase(it);
  }
}

void Section::add_signed(const std::vector<int>& idx, const Poly& c)
{
  // sort, tracking the permutation parity; repeated index kills the term
  std::vector<int> s = idx;
  int sign = 1;
  for (size_t i = 1; i < s.size(); ++i)
    for (size_t j = i; j > 0 && s[j - 1] > s[j]; --j) {
      std::swap(s[j - 1], s[j]);
      sign = -sign;
    }
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) return;
  add_comp(s, Rat(sign) * c);
}

template <class S>
static S sec_add(const S& x, const S& y)
{
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  if (x.dim != y.dim || x.deg != y.deg)
    throw std::invalid_argument("section add: shape mismatch");
  S r = x;
  for (const auto& [k, p] : y.comps) r.add_comp(k, p);
  return r;
}

template <class S>
static S sec_scale(const Rat& c, const S& x)
{
  S r(x.dim, x.deg);
  if (c == 0) return r;
  for (const auto& [k, p] : x.comps) r.add_comp(k, c * p);
  return r;
}

MV mv_add(const MV& x, const MV& y) { return sec_add(x, y); }
MV mv_scale(const Rat& c, const MV& x) { return sec_scale(c, x); }
MV mv_neg(const MV& x) { return sec_scale(Rat(-1), x); }
Form form_add(const Form& a, const Form& b) { return sec_add(a, b); }
Form form_scale(const Rat& c, const Form& a) { return sec_scale(c, a); }
Form form_neg(const Form& a) { return sec_scale(Rat(-1), a); }

template <class S>
static S sec_wedge(const S& x, const S& y)
{
  if (x.dim != y.dim) throw std::invalid_argument("wedge: dim mismatch");
  S r(x.dim, x.deg + y.deg);
  if (x.deg + y.deg > x.dim) {
    r.deg = 0; // identically zero beyond top degree
    return r;
  }
  for (const auto& [sx, px] : x.comps)
    for (const auto& [sy, py] : y.comps) {
      std::vector<int> idx = sx;
      idx.insert(idx.end(), sy.begin(), sy.end());
      r.add_signed(idx, px * py);
    }
  return r;
}

MV wedge_mv(const MV& x, const MV& y) { return sec_wedge(x, y); }
Form wedge_form(const Form& a, const Form& b) { return sec_wedge(a, b); }

MV mv_monomial(int dim, const Poly& c, const std::vector<int>& idx)
{
  MV r(dim, static_cast<int>(idx.size()));
  r.add_signed(idx, c);
  return r;
}

Form form_monomial(int dim, const Poly& c, const std::vector<int>& idx)
{
  Form r(dim, static_cast<int>(idx.size()));
  r.add_signed(idx, c);
  return r;
}

// ---------------------------------------------------------------------------
// Schouten bracket, Leibniz-recursive.
//
// Anchors: nu(d_i, f) = d_i f, nu(d_i, d_j) = 0, nu is symmetric with the
// parity rule in multivector degree, and nu(a, -) is a degree (|a|-1)
// derivation of the wedge product.  First-argument splitting uses
//   nu(a^b, c) = (-1)^{|b||c|} nu(a,c)^b + (-1)^{|a|} a^nu(b,c).

namespace {

MV nu_rec(const MV& x, const MV& y);

// nu(d_i, y): derivative of all coefficients
MV nu_partial_left(int dim, int i, const MV& y)
{
  MV r(dim, y.deg);
  for (const auto& [t, f] : y.comps) r.add_comp(t, poly_partial(f, i));
  return r;
}

// nu(g, e_T) for a function g and a constant generator word T
MV nu_func_gens(int dim, const Poly& g, const std::vector<int>& T)
{
  if (T.empty()) return MV(dim, 0);
  if (T.size() == 1) {
    MV r(dim, 0);
    r.add_signed({}, poly_partial(g, T[0]));
    return r;
  }
  std::vector<int> Tp(T.begin() + 1, T.end());
  MV first = mv_monomial(dim, poly_partial(g, T[0]), Tp);
  MV rest = wedge_mv(mv_monomial(dim, Poly::constant(dim, 1), {T[0]}), nu_func_gens(dim, g, Tp));
  return mv_add(first, mv_neg(rest));
}

// nu(g, y) for a function g
MV nu_func_left(int dim, const Poly& g, const MV& y)
{
  MV r(dim, y.deg > 0 ? y.deg - 1 : 0);
  for (const auto& [t, f] : y.comps) {
    MV part = nu_func_gens(dim, g, t);
    r = mv_add(r, [&] {
      MV s(dim, part.deg);
      for (const auto& [k, p] : part.comps) s.add_comp(k, f * p);
      return s;
    }());
  }
  return r;
}

// nu(e_S, y) for a constant generator word S, |S| >= 1
MV nu_gens_left(int dim, const std::vector<int>& S, const MV& y)
{
  if (S.size() == 1) return nu_partial_left(dim, S[0], y);
  std::vector<int> Sp(S.begin() + 1, S.end());
  int sgn1 = ((static_cast<int>(Sp.size()) * y.deg) % 2 == 0) ? 1 : -1;
  MV t1 = wedge_mv(nu_gens_left(dim, {S[0]}, y), mv_monomial(dim, Poly::constant(dim, 1), Sp));
  MV t2 = wedge_mv(mv_monomial(dim, Poly::constant(dim, 1), {S[0]}), nu_gens_left(dim, Sp, y));
  return mv_add(mv_scale(Rat(sgn1), t1), mv_neg(t2));
}

MV nu_rec(const MV& x, const MV& y)
{
  int dim = x.dim;
  MV r(dim, std::max(x.deg + y.deg - 1, 0));
  for (const auto& [S, g] : x.comps) {
    if (S.empty()) {
      r = mv_add(r, nu_func_left(dim, g, y));
      continue;
    }
    // nu(g e_S, y) = (-1)^{|S||y|} nu(g,y)^e_S + g nu(e_S,y)
    int sgn = ((static_cast<int>(S.size()) * y.deg) % 2 == 0) ? 1 : -1;
    if (!g.is_constant()) {
      MV t1 = wedge_mv(nu_func_left(dim, g, y), mv_monomial(dim, Poly::constant(dim, 1), S));
      r = mv_add(r, mv_scale(Rat(sgn), t1));
    }
    MV t2 = nu_gens_left(dim, S, y);
    MV scaled(dim, t2.deg);
    for (const auto& [k, p] : t2.comps) scaled.add_comp(k, g * p);
    r = mv_add(r, scaled);
  }
  return r;
}

} // namespace

MV schouten(const MV& x, const MV& y)
{
  if (x.dim != y.dim) throw std::invalid_argument("schouten: dim mismatch");
  return nu_rec(x, y);
}

// Lie bracket of vector fields, independent of the recursion above
static MV lie_vf(const MV& x, const MV& y)
{
  if (x.deg != 1 || y.deg != 1) throw std::invalid_argument("lie_vf: vector fields expected");
  int dim = x.dim;
  MV r(dim, 1);
  for (int k = 1; k <= dim; ++k) {
    Poly c(dim);
    for (int i = 1; i <= dim; ++i) {
      Poly xi = x.comp({i}), yi = y.comp({i});
      Poly xk = x.comp({k}), yk = y.comp({k});
      c = c + xi * poly_partial(yk, i) - yi * poly_partial(xk, i);
    }
    if (!c.is_zero()) r.add_comp({k}, c);
  }
  return r;
}

MV schouten_explicit(const std::vector<MV>& xs, const std::vector<MV>& ys)
{
  if (xs.empty() || ys.empty())
    throw std::invalid_argument("schouten_explicit: decomposable words must be nonempty");
  int dim = xs[0].dim;
  int n = static_cast<int>(xs.size()), m = static_cast<int>(ys.size());
  MV lam(dim, std::max(n + m - 1, 0));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= m; ++j) {
      MV term = lie_vf(xs[i - 1], ys[j - 1]);
      for (int a = 1; a <= n; ++a)
        if (a != i) term = wedge_mv(term, xs[a - 1]);
      for (int b = 1; b <= m; ++b)
        if (b != j) term = wedge_mv(term, ys[b - 1]);
      int sgn = ((i + j) % 2 == 0) ? 1 : -1;
      lam = mv_add(lam, mv_scale(Rat(sgn), term));
    }
  int conv = ((n + 1) % 2 == 0) ? 1 : -1; // nu = (-1)^{|x|+1} lambda on these words
  return mv_scale(Rat(conv), lam);
}

MV nu_n(const MVWord& word)
{
  if (word.empty()) throw std::invalid_argument("nu_n: empty word");
  int n = static_cast<int>(word.size());
  int dim = word[0].dim;
  for (const MV& x : word) {
    if (x.dim != dim) throw std::invalid_argument("nu_n: dim mismatch");
    if (x.deg < 1) throw std::invalid_argument("nu_n: factors must have positive degree");
  }
  if (n == 1) return MV(dim, 0);
  if (n == 2) return schouten(word[0], word[1]);

  std::vector<int> degs(n);
  for (int i = 0; i < n; ++i) degs[i] = word[i].deg;
  int total = std::accumulate(degs.begin(), degs.end(), 0);
  MV r(dim, total - 1);
  for (const Perm& s : unshuffles({2, n - 2})) {
    int eps = koszul_sign(s, degs);
    MV term = schouten(word[s(1) - 1], word[s(2) - 1]);
    for (int k = 3; k <= n; ++k) term = wedge_mv(term, word[s(k) - 1]);
    r = mv_add(r, mv_scale(Rat(eps), term));
  }
  return r;
}

MV jacobi_defect(const MVWord& word, int n)
{
  if (static_cast<int>(word.size()) != n)
    throw std::invalid_argument("jacobi_defect: word length mismatch");
  int dim = word[0].dim;
  std::vector<int> degs(n);
  for (int k = 0; k < n; ++k) degs[k] = word[k].deg;
  int total = std::accumulate(degs.begin(), degs.end(), 0);
  MV r(dim, std::max(total - 2, 0));
  for (int i = 2; i <= n - 1; ++i) {
    int j = n + 1 - i;
    if (j < 2) continue;
    for (const Perm& s : unshuffles({i, n - i})) {
      int eps = koszul_sign(s, degs);
      MVWord inner;
      for (int k = 1; k <= i; ++k) inner.push_back(word[s(k) - 1]);
      MV mid = nu_n(inner);
      if (mid.is_zero()) continue;
      MVWord outer;
      outer.push_back(mid);
      for (int k = i + 1; k <= n; ++k) outer.push_back(word[s(k) - 1]);
      r = mv_add(r, mv_scale(Rat(eps), nu_n(outer)));
    }
  }
  return r;
}

Form exterior_d(const Form& a)
{
  Form r(a.dim, a.deg + 1);
  if (a.deg + 1 > a.dim) {
    r.deg = 0;
    return r;
  }
  for (const auto& [t, f] : a.comps)
    for (int i = 1; i <= a.dim; ++i) {
      Poly df = poly_partial(f, i);
      if (df.is_zero()) continue;
      std::vector<int> idx;
      idx.push_back(i);
      idx.insert(idx.end(), t.begin(), t.end());
      r.add_signed(idx, df);
    }
  return r;
}

// single contraction i_{d_i}
static Form contract_gen(int i, const Form& a)
{
  Form r(a.dim, a.deg > 0 ? a.deg - 1 : 0);
  for (const auto& [t, f] : a.comps) {
    auto it = std::find(t.begin(), t.end(), i);
    if (it == t.end()) continue;
    int pos = static_cast<int>(it - t.begin()) + 1;
    std::vector<int> rest;
    for (int v : t)
      if (v != i) rest.push_back(v);
    r.add_comp(rest, Rat((pos % 2 == 1) ? 1 : -1) * f);
  }
  return r;
}

template <bool Reversed>
static Form contract_impl(const MV& x, const Form& a)
{
  if (x.dim != a.dim) throw std::invalid_argument("contract: dim mismatch");
  Form r(a.dim, std::max(a.deg - x.deg, 0));
  if (a.deg < x.deg) return r;
  for (const auto& [S, g] : x.comps) {
    Form cur = a;
    if constexpr (Reversed) {
      // i_{e_S} = i_{d_{s1}} o ... o i_{d_{sk}} : innermost (applied first) is s_k
      for (auto it = S.rbegin(); it != S.rend(); ++it) cur = contract_gen(*it, cur);
    } else {
      for (int s : S) cur = contract_gen(s, cur);
    }
    Form scaled(a.dim, cur.deg);
    for (const auto& [t, f] : cur.comps) scaled.add_comp(t, g * f);
    r = form_add(r, scaled);
  }
  return r;
}

Form contract(const MV& x, const Form& a) { return contract_impl<true>(x, a); }
Form contract_conventional(const MV& x, const Form& a) { return contract_impl<false>(x, a); }

Form lie_derivative(const MV& x, const Form& a)
{
  Form t1 = exterior_d(contract(x, a));
  Form t2 = contract(x, exterior_d(a));
  int sgn = (x.deg % 2 == 0) ? 1 : -1; // -(-1)^{-|x|}
  return form_add(t1, form_scale(Rat(-sgn), t2));
}

std::vector<Form> cartan_defects(const MV& x, const MV& y, const Form& probe)
{
  auto par = [](int e) { return (e % 2 == 0) ? 1 : -1; };
  std::vector<Form> out;

  // (1) [i_x, i_y] = 0
  Form d1 = form_add(contract(x, contract(y, probe)),
                     form_scale(Rat(-par(x.deg * y.deg)), contract(y, contract(x, probe))));
  out.push_back(d1);

  // (2) [d, L_x] = 0 ; |L_x| = 1 - |x|
  Form d2 = form_add(exterior_d(lie_derivative(x, probe)),
                     form_scale(Rat(-par(1 - x.deg)), lie_derivative(x, exterior_d(probe))));
  out.push_back(d2);

  // (3) [L_x, i_y] = i_{nu(x,y)}
  MV nxy = schouten(x, y);
  Form d3 = form_add(lie_derivative(x, contract(y, probe)),
                     form_scale(Rat(-par((1 - x.deg) * y.deg)), contract(y, lie_derivative(x, probe))));
  d3 = form_add(d3, form_neg(contract(nxy, probe)));
  out.push_back(d3);

  // (4) [L_x, L_y] = (-1)^{|x|+1} L_{nu(x,y)}
  Form d4 = form_add(lie_derivative(x, lie_derivative(y, probe)),
                     form_scale(Rat(-par((1 - x.deg) * (1 - y.deg))),
                                lie_derivative(y, lie_derivative(x, probe))));
  d4 = form_add(d4, form_scale(Rat(-par(x.deg + 1)), lie_derivative(nxy, probe)));
  out.push_back(d4);

  // (5) L_{x^y} = L_x i_y + (-1)^{|x|} i_x L_y
  Form d5 = lie_derivative(wedge_mv(x, y), probe);
  d5 = form_add(d5, form_neg(lie_derivative(x, contract(y, probe))));
  d5 = form_add(d5, form_scale(Rat(-par(x.deg)), contract(x, lie_derivative(y, probe))));
  out.push_back(d5);

  return out;
}

Form fr_defect(const MVWord& word, const Form& probe)
{
  if (word.empty()) throw std::invalid_argument("fr_defect: empty word");
  int dim = word[0].dim;
  int n = static_cast<int>(word.size());
  std::vector<int> degs(n);
  MV x = word[0];
  degs[0] = word[0].deg;
  for (int k = 1; k < n; ++k) {
    x = wedge_mv(x, word[k]);
    degs[k] = word[k].deg;
  }
  int total = std::accumulate(degs.begin(), degs.end(), 0);

  Form r = lie_derivative(x, probe);
  if (n >= 2) r = form_add(r, form_neg(contract(nu_n(word), probe)));

  std::vector<int> parts;
  if (n - 1 > 0) parts.push_back(n - 1);
  parts.push_back(1);
  for (const Perm& s : unshuffles(parts)) {
    int eps = koszul_sign(s, degs);
    int last = s(n);
    int sgn = eps * (((total + degs[last - 1]) % 2 == 0) ? 1 : -1); // (-1)^{|x|} (-1)^{|x_{s(n)}|}
    MV prefix = mv_monomial(dim, Poly::constant(dim, 1), {});
    for (int k = 1; k <= n - 1; ++k) prefix = wedge_mv(prefix, word[s(k) - 1]);
    Form term = contract(prefix, lie_derivative(word[last - 1], probe));
    r = form_add(r, form_scale(Rat(-sgn), term));
  }
  return r;
}

Poly random_poly(SplitMix64& rng, int dim, int coeff_deg)
{
  Poly p(dim);
  int nterms = rng.range(1, 2);
  for (int t = 0; t < nterms; ++t) {
    std::vector<int> exps(static_cast<size_t>(dim), 0);
    int budget = rng.range(0, coeff_deg);
    for (int b = 0; b < budget; ++b) ++exps[static_cast<size_t>(rng.range(0, dim - 1))];
    int c = rng.range(1, 2) * (rng.range(0, 1) ? 1 : -1);
    p.add_term(exps, Rat(c));
  }
  if (p.is_zero()) p = Poly::constant(dim, 1); // terms may cancel
  return p;
}

template <class S>
static S random_section(SplitMix64& rng, int dim, int deg, int coeff_deg)
{
  S r(dim, deg);
  if (deg > dim) throw std::invalid_argument("random_section: degree exceeds dimension");
  // enumerate strictly increasing index sets of size deg, keep a sparse subset
  std::vector<int> idx(static_cast<size_t>(deg));
  std::iota(idx.begin(), idx.end(), 1);
  std::vector<std::vector<int>> all;
  while (true) {
    all.push_back(idx);
    int k = deg - 1;
    while (k >= 0 && idx[static_cast<size_t>(k)] == dim - (deg - 1 - k)) --k;
    if (k < 0) break;
    ++idx[static_cast<size_t>(k)];
    for (int j = k + 1; j < deg; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
  }
  for (const auto& s : all)
    if (rng.range(0, 1)) r.add_comp(s, random_poly(rng, dim, coeff_deg));
  if (r.is_zero()) r.add_comp(all[rng.below(all.size())], random_poly(rng, dim, coeff_deg));
  return r;
}

MV random_mv(SplitMix64& rng, int dim, int deg, int coeff_deg)
{
  return random_section<MV>(rng, dim, deg, coeff_deg);
}

Form random_form(SplitMix64& rng, int dim, int deg, int coeff_deg)
{
  return random_section<Form>(rng, dim, deg, coeff_deg);
}

// ---------------------------------------------------------------------------
// text format: `x1*d(2,3) + 1/2*d(1)` / `x1*dx(1,2) - dx(3)`

namespace {

struct SecLexer {
  const std::string& s;
  size_t i = 0;
  explicit SecLexer(const std::string& str) : s(str) {}
  void skip()
  {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eof()
  {
    skip();
    return i >= s.size();
  }
  char peek()
  {
    skip();
    return i < s.size() ? s[i] : '\0';
  }
};

template <class S>
S parse_section(const std::string& text, int dim, const std::string& gen)
{
  SecLexer lx(text);
  std::vector<std::pair<Poly, std::vector<int>>> terms;
  std::vector<std::string> pieces;
  // split on top-level + and - (keeping sign with the term)
  int sign = 1;
  if (lx.peek() == '+' || lx.peek() == '-') sign = (text[lx.i++] == '-') ? -1 : 1;
  std::string term;
  std::vector<int> signs{sign};
  for (; lx.i < text.size(); ++lx.i) {
    char c = text[lx.i];
    if (c == '+' || c == '-') {
      pieces.push_back(term);
      signs.push_back(c == '-' ? -1 : 1);
      term.clear();
    } else {
      term += c;
    }
  }
  pieces.push_back(term);

  int degree = -1;
  S out(dim, 0);
  for (size_t t = 0; t < pieces.size(); ++t) {
    std::string& piece = pieces[t];
    // extract the generator factor gen(...) if present
    std::vector<int> idx;
    size_t pos = piece.find(gen + "(");
    std::string polypart;
    if (pos != std::string::npos) {
      size_t close = piece.find(')', pos);
      if (close == std::string::npos) throw std::invalid_argument("section parse: missing ')'");
      std::string inside = piece.substr(pos + gen.size() + 1, close - pos - gen.size() - 1);
      size_t start = 0;
      while (start < inside.size()) {
        size_t comma = inside.find(',', start);
        std::string numtxt = inside.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (numtxt.find_first_not_of(" \t") != std::string::npos) idx.push_back(std::stoi(numtxt));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      polypart = piece.substr(0, pos) + piece.substr(close + 1);
      // drop a dangling '*'
      while (!polypart.empty() && (polypart.back() == '*' || std::isspace(static_cast<unsigned char>(polypart.back()))))
        polypart.pop_back();
      size_t b = 0;
      while (b < polypart.size() && (polypart[b] == '*' || std::isspace(static_cast<unsigned char>(polypart[b])))) ++b;
      polypart = polypart.substr(b);
    } else {
      polypart = piece;
    }
    Poly coeff = polypart.find_first_not_of(" \t") == std::string::npos
                     ? Poly::constant(dim, 1)
                     : parse_poly(polypart, dim);
    if (degree == -1) degree = static_cast<int>(idx.size());
    if (degree != static_cast<int>(idx.size()))
      throw std::invalid_argument("section parse: mixed degrees in one section");
    terms.emplace_back(Rat(signs[t]) * coeff, idx);
  }
  out = S(dim, degree < 0 ? 0 : degree);
  for (auto& [c, idx] : terms) out.add_signed(idx, c);
  return out;
}

template <class S>
std::string section_str(const S& x, const std::string& gen)
{
  if (x.comps.empty()) return "0";
  std::string out;
  // one printed term per (polynomial term, generator word): no parentheses needed
  for (const auto& [idx, p] : x.comps) {
    std::string mono = gen + "(";
    for (size_t i = 0; i < idx.size(); ++i) {
      if (i) mono += ",";
      mono += std::to_string(idx[i]);
    }
    mono += ")";
    for (const auto& [exps, c] : p.terms) {
      bool neg = c < 0;
      Poly single(x.dim);
      single.add_term(exps, neg ? Rat(-c) : c);
      std::string cs = poly_str(single);
      std::string piece;
      if (idx.empty())
        piece = cs;
      else if (cs == "1")
        piece = mono;
      else
        piece = cs + "*" + mono;
      if (out.empty())
        out += neg ? "-" + piece : piece;
      else
        out += (neg ? " - " : " + ") + piece;
    }
  }
  return out;
}

} // namespace

MV parse_mv(const std::string& text, int dim) { return parse_section<MV>(text, dim, "d"); }
Form parse_form(const std::string& text, int dim) { return parse_section<Form>(text, dim, "dx"); }
std::string mv_str(const MV& x) { return section_str(x, "d"); }
std::string form_str(const Form& a) { return section_str(a, "dx"); }

} // namespace msym
