#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "msym/multilinear.hpp"
#include "msym/rng.hpp"

using namespace msym;

static SpacePtr two_odd()
{
  return make_space({{"a", 1}, {"b", 1}});
}

TEST_CASE("compose_at identity laws and hom sign")
{
  SpacePtr v = two_odd();
  MultiMap id = identity_power(v, 1);

  MultiMap g(v, v, 1, 1, 0);
  g.add_entry({0}, {1}, Rat(2));
  CHECK(compose_at(id, g, 1) == g);
  MultiMap h(v, v, 2, 1, -1);
  // h eats two degree-1 inputs, emits one: out deg 1, in deg 2
  h.add_entry({0, 1}, {0}, Rat(1));
  CHECK(compose_at(h, id, 1) == h);
  CHECK(compose_at(h, id, 2) == h);

  // odd-degree g moving past one odd input flips the sign
  SpacePtr w = make_space({{"u", 1}, {"s", 2}});
  MultiMap gg(w, w, 1, 1, 1); // gg(u) = s
  gg.add_entry({0}, {1}, Rat(1));
  MultiMap ff(w, w, 2, 1, -2); // ff(s, s) = s? deg 4 -> need out deg 2: ff(s,s)=s has -2
  ff.add_entry({1, 1}, {1}, Rat(1));
  MultiMap c = compose_at(ff, gg, 2); // inputs (s, u): sign (-1)^{|gg|*|s|} = +1
  CHECK(c.eval({1, 0}) == Tensor{{{1}, Rat(1)}});
  // now an odd input in front: h2(u, s)=s (deg -1), insert gg at slot 2 on (u, u)
  MultiMap h2(w, w, 2, 1, -1);
  h2.add_entry({0, 1}, {1}, Rat(1));
  MultiMap c2 = compose_at(h2, gg, 2); // v = (u,u): sign (-1)^{1*1} = -1
  CHECK(c2.eval({0, 0}) == Tensor{{{1}, Rat(-1)}});
}

TEST_CASE("insert: unary cases and unshuffle sum")
{
  SpacePtr v = two_odd();
  // unary f, g -> f o g (single unshuffle)
  MultiMap f(v, v, 1, 1, 0), g(v, v, 1, 1, 0);
  f.add_entry({0}, {1}, Rat(3));
  g.add_entry({1}, {0}, Rat(5));
  MultiMap fg = insert(f, g, InsertVariant::Sym);
  CHECK(fg.eval({1}) == Tensor{{{1}, Rat(15)}});

  // g = identity, f symmetric binary -> n * f
  MultiMap s(v, v, 2, 1, -1);
  s.add_entry({0, 1}, {0}, Rat(1));
  s.add_entry({1, 0}, {0}, Rat(-1)); // |a||b| odd: symmetric means f(b,a) = -f(a,b)
  REQUIRE(is_symmetric(s));
  MultiMap id = identity_power(v, 1);
  CHECK(insert(s, id, InsertVariant::Sym) == map_scale(Rat(2), s));
}

TEST_CASE("rn bracket: unary commutator, odd square")
{
  SpacePtr w = make_space({{"u", 1}, {"s", 2}});
  MultiMap f(w, w, 1, 1, 1), g(w, w, 1, 1, -1);
  f.add_entry({0}, {1}, Rat(1)); // f(u) = s
  g.add_entry({1}, {0}, Rat(1)); // g(s) = u
  MultiMap br = rn_bracket(f, g, InsertVariant::Sym);
  // [f,g] = f o g - (-1)^{|f||g|} g o f = f o g + g o f
  CHECK(br.eval({1}) == Tensor{{{1}, Rat(1)}});
  CHECK(br.eval({0}) == Tensor{{{0}, Rat(1)}});

  // odd f: [f,f] = 2 f|>f
  MultiMap sq = rn_bracket(f, f, InsertVariant::Sym);
  CHECK(sq == map_scale(Rat(2), insert(f, f, InsertVariant::Sym)));

  // graded antisymmetry
  MultiMap a = rn_bracket(f, g, InsertVariant::Sym);
  MultiMap b = rn_bracket(g, f, InsertVariant::Sym);
  int sgn = -((f.degree % 2) && (g.degree % 2) ? -1 : 1);
  CHECK(a == map_scale(Rat(sgn), b));
}

TEST_CASE("symmetry detectors")
{
  SpacePtr v = two_odd();
  MultiMap anti(v, v, 2, 1, -1);
  anti.add_entry({0, 1}, {0}, Rat(1));
  anti.add_entry({1, 0}, {0}, Rat(1)); // f(b,a) = +f(a,b) = -(-1)^{|a||b|} f(a,b): antisym
  CHECK(is_antisymmetric(anti));
  CHECK_FALSE(is_symmetric(anti));
}

TEST_CASE("decalage roundtrip and symmetry of the image")
{
  SpacePtr v = make_space({{"a", 1}, {"b", 2}});
  MultiMap f(v, v, 2, 1, -1);
  // antisymmetric: f(a,b) = b, f(b,a) = -(-1)^{2} f(a,b) = -b, f(a,a) = 2a
  f.add_entry({0, 1}, {1}, Rat(1));
  f.add_entry({1, 0}, {1}, Rat(-1));
  f.add_entry({0, 0}, {0}, Rat(2)); // |a||a| odd: f(a,a) = -(-1)f(a,a), consistent
  REQUIRE(is_antisymmetric(f));
  MultiMap d = decalage_of_map(f, -1);
  CHECK(d.degree == f.degree + 1 - 2); // i - j - n with j = -1, n = 2
  CHECK(is_symmetric(d));
  CHECK(decalage_preimage(d, v, v, -1) == f);

  // n=1, j=0: dec(f) = (-1)^i f
  MultiMap u(v, v, 1, 1, 1);
  u.add_entry({0}, {1}, Rat(1));
  MultiMap du = decalage_of_map(u, 0);
  CHECK(du.eval({0}) == Tensor{{{1}, Rat(-1)}});
}

TEST_CASE("decalage naturality on a sampled square")
{
  // dec o sigma == (-1)^sigma sigma[-1] o dec, checked pointwise through the signs
  SpacePtr v = make_space({{"a", 1}, {"b", 2}, {"c", 3}});
  SplitMix64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    int n = rng.range(2, 3);
    // random antisymmetric f via antisymmetrization of a random map
    MultiMap raw(v, v, n, 1, rng.range(0, 1));
    for (int k = 0; k < 6; ++k) {
      Tuple ins(static_cast<size_t>(n));
      for (auto& x : ins) x = rng.range(0, v->dim() - 1);
      int din = 0;
      for (int x : ins) din += v->degree(x);
      for (int o = 0; o < v->dim(); ++o)
        if (v->degree(o) - din == raw.degree) raw.add_entry(ins, {o}, Rat(rng.range(-2, 2)));
    }
    // antisymmetrize raw over all permutations (Sh(1,...,1) = S_n)
    MultiMap f = zero_map(v, v, n, 1, raw.degree);
    std::vector<Perm> perms = unshuffles(std::vector<int>(static_cast<size_t>(n), 1));
    for (const auto& [ins, t] : raw.coeffs) {
      std::vector<int> degs(static_cast<size_t>(n));
      for (int k = 0; k < n; ++k) degs[static_cast<size_t>(k)] = v->degree(ins[static_cast<size_t>(k)]);
      for (const Perm& s : perms) {
        Tuple w(static_cast<size_t>(n));
        for (int k = 1; k <= n; ++k) w[static_cast<size_t>(k - 1)] = ins[static_cast<size_t>(s(k) - 1)];
        int eps = antisym_koszul_sign(s, degs);
        for (const auto& [o, c] : t) f.add_entry(w, o, Rat(eps) * c);
      }
    }
    if (f.is_zero()) continue;
    REQUIRE(is_antisymmetric(f));
    MultiMap d = decalage_of_map(f, -1);
    CHECK(is_symmetric(d));
    CHECK(decalage_preimage(d, v, v, -1) == f);
  }
}
