#include "msym/poly.hpp"

#include <cctype>
#include <numeric>
#include <stdexcept>

namespace msym {

Poly Poly::constant(int dim, const Rat& c)
{
  Poly p(dim);
  if (c != 0) p.terms[std::vector<int>(dim, 0)] = c;
  return p;
}

Poly Poly::variable(int dim, int i)
{
  if (i < 1 || i > dim) throw std::out_of_range("Poly::variable: index");
  Poly p(dim);
  std::vector<int> e(dim, 0);
  e[i - 1] = 1;
  p.terms[e] = 1;
  return p;
}

bool Poly::is_constant() const
{
  if (terms.empty()) return true;
  return terms.size() == 1 && terms.begin()->first == std::vector<int>(dim, 0);
}

Rat Poly::constant_term() const
{
  auto it = terms.find(std::vector<int>(dim, 0));
  return it == terms.end() ? Rat(0) : it->second;
}

void Poly::add_term(const std::vector<int>& exps, const Rat& c)
{
  if (static_cast<int>(exps.size()) != dim) throw std::invalid_argument("Poly::add_term: exps size");
  if (c == 0) return;
  auto it = terms.find(exps);
  if (it == terms.end()) {
    terms.emplace(exps, c);
  } else {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

Poly operator+(const Poly& p, const Poly& q)
{
  if (p.dim != q.dim) throw std::invalid_argument("poly add: dim mismatch");
  Poly r = p;
  for (const auto& [e, c] : q.terms) r.add_term(e, c);
  return r;
}

Poly operator-(const Poly& p)
{
  Poly r = p;
  for (auto& [e, c] : r.terms) c = -c;
  return r;
}

Poly operator-(const Poly& p, const Poly& q) { return p + (-q); }

Poly operator*(const Rat& c, const Poly& p)
{
  Poly r(p.dim);
  if (c == 0) return r;
  r = p;
  for (auto& [e, v] : r.terms) v *= c;
  return r;
}

Poly poly_mul(const Poly& p, const Poly& q)
{
  if (p.dim != q.dim) throw std::invalid_argument("poly_mul: dim mismatch");
  Poly r(p.dim);
  std::vector<int> e(p.dim);
  for (const auto& [ep, cp] : p.terms)
    for (const auto& [eq, cq] : q.terms) {
      for (int i = 0; i < p.dim; ++i) e[i] = ep[i] + eq[i];
      r.add_term(e, cp * cq);
    }
  return r;
}

Poly operator*(const Poly& p, const Poly& q) { return poly_mul(p, q); }

Poly poly_partial(const Poly& p, int i)
{
  if (i < 1 || i > p.dim) throw std::out_of_range("poly_partial: index");
  Poly r(p.dim);
  for (const auto& [e, c] : p.terms) {
    if (e[i - 1] == 0) continue;
    std::vector<int> f = e;
    --f[i - 1];
    r.add_term(f, c * e[i - 1]);
  }
  return r;
}

Poly poly_ray_integral(const Poly& p, int k)
{
  if (k < 0) throw std::invalid_argument("poly_ray_integral: k < 0");
  Poly r(p.dim);
  for (const auto& [e, c] : p.terms) {
    int a = std::accumulate(e.begin(), e.end(), 0);
    r.add_term(e, c / Rat(k + a + 1));
  }
  return r;
}

// ---------------------------------------------------------------------------
// text format

namespace {

struct Lexer {
  const std::string& s;
  size_t i = 0;
  explicit Lexer(const std::string& str) : s(str) {}
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
  char get()
  {
    skip();
    return s[i++];
  }
  Int integer()
  {
    skip();
    std::string num;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) num += s[i++];
    if (num.empty()) throw std::invalid_argument("poly parse: expected integer near '" + s.substr(i) + "'");
    return Int(num);
  }
};

} // namespace

// factor := rational | xN[^k] ; term := factor (*factor)* ; poly := term ((+|-) term)*
Poly parse_poly(const std::string& text, int dim)
{
  Lexer lx(text);
  Poly out(dim);
  if (lx.eof()) return out;
  int sign = 1;
  if (lx.peek() == '+' || lx.peek() == '-') sign = (lx.get() == '-') ? -1 : 1;
  while (true) {
    Rat coeff(sign);
    std::vector<int> exps(dim, 0);
    while (true) {
      char c = lx.peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        Int num = lx.integer();
        if (lx.peek() == '/') {
          lx.get();
          Int den = lx.integer();
          if (den == 0) throw std::invalid_argument("poly parse: zero denominator");
          coeff *= Rat(num, den);
        } else {
          coeff *= Rat(num);
        }
      } else if (c == 'x') {
        lx.get();
        int v = static_cast<int>(lx.integer());
        if (v < 1 || v > dim) throw std::invalid_argument("poly parse: variable index out of range");
        int k = 1;
        if (lx.peek() == '^') {
          lx.get();
          k = static_cast<int>(lx.integer());
          if (k < 0) throw std::invalid_argument("poly parse: negative exponent");
        }
        exps[v - 1] += k;
      } else {
        throw std::invalid_argument(std::string("poly parse: unexpected character '") + c + "'");
      }
      if (lx.peek() == '*') {
        lx.get();
        continue;
      }
      break;
    }
    out.add_term(exps, coeff);
    if (lx.eof()) break;
    char c = lx.get();
    if (c == '+')
      sign = 1;
    else if (c == '-')
      sign = -1;
    else
      throw std::invalid_argument("poly parse: expected '+' or '-'");
  }
  return out;
}

std::string poly_str(const Poly& p)
{
  if (p.terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms) {
    Rat a = c;
    if (first) {
      if (a < 0) {
        out += "-";
        a = -a;
      }
    } else {
      out += (a < 0) ? " - " : " + ";
      if (a < 0) a = -a;
    }
    first = false;
    std::string mono;
    for (int i = 0; i < p.dim; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out += rat_str(a);
    } else if (a == 1) {
      out += mono;
    } else {
      out += rat_str(a) + "*" + mono;
    }
  }
  return out;
}

} // namespace msym
