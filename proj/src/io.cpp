#include "msym/io.hpp"

#include "msym/moment.hpp"
#include "msym/transfer.hpp"

#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace msym {

namespace {

// failure bookkeeping: every expectation counts, the first failure wins
struct Ctx {
    CheckReport rep;

    explicit Ctx(std::string name) { rep.name = std::move(name); }

    bool expect(bool cond, const std::string& what)
    {
        ++rep.checks;
        if (!cond && rep.ok) {
            rep.ok = false;
            rep.detail = what;
        }
        return cond;
    }
};

Perm random_perm(SplitMix64& rng, int n)
{
    std::vector<int> img(static_cast<size_t>(n));
    std::iota(img.begin(), img.end(), 1);
    for (int i = n - 1; i > 0; --i)
        std::swap(img[static_cast<size_t>(i)], img[rng.below(static_cast<std::uint64_t>(i + 1))]);
    return Perm(img);
}

// antisymmetrization of a sparse random map; may come out zero
MultiMap random_antisym(SplitMix64& rng, const SpacePtr& v, int n, int deg)
{
    MultiMap raw(v, v, n, 1, deg);
    for (int k = 0; k < 8; ++k) {
        Tuple ins(static_cast<size_t>(n));
        for (auto& x : ins) x = rng.range(0, v->dim() - 1);
        int din = 0;
        for (int x : ins) din += v->degree(x);
        for (int o = 0; o < v->dim(); ++o)
            if (v->degree(o) - din == deg) raw.add_entry(ins, {o}, Rat(rng.range(-2, 2)));
    }
    MultiMap f = zero_map(v, v, n, 1, deg);
    for (const auto& [ins, t] : raw.coeffs) {
        std::vector<int> degs(static_cast<size_t>(n));
        for (int k = 0; k < n; ++k) degs[static_cast<size_t>(k)] = v->degree(ins[static_cast<size_t>(k)]);
        for (const Perm& s : unshuffles(std::vector<int>(static_cast<size_t>(n), 1))) {
            Tuple w(static_cast<size_t>(n));
            for (int k = 1; k <= n; ++k) w[static_cast<size_t>(k - 1)] = ins[static_cast<size_t>(s(k) - 1)];
            int eps = antisym_koszul_sign(s, degs);
            for (const auto& [o, c] : t) f.add_entry(w, o, Rat(eps) * c);
        }
    }
    return f;
}

PreMS vol3()
{
    Form w(3, 3);
    w.add_comp({1, 2, 3}, Poly::constant(3, 1));
    return make_prems(3, 2, w);
}

PreMS vol4()
{
    Form w(4, 4);
    w.add_comp({1, 2, 3, 4}, Poly::constant(4, 1));
    return make_prems(4, 3, w);
}

// nonconstant closed degenerate structure form on R^4
PreMS curved4()
{
    Form w(4, 3);
    w.add_comp({1, 2, 3}, Poly::constant(4, 1) + Poly::variable(4, 1));
    return make_prems(4, 2, w);
}

XiElem xi_pair(const PreMS& P, SplitMix64& rng, int vdeg, int coeff_deg)
{
    auto [x, prim] = random_ham_pair(P, rng, 1 + vdeg, coeff_deg);
    XiElem e;
    e.hdeg = 1;
    e.vdeg = vdeg;
    e.form = prim;
    e.field = x;
    return e;
}

XiElem xi_form(const PreMS& P, SplitMix64& rng, int hdeg, int vdeg, int coeff_deg)
{
    XiElem e;
    e.hdeg = hdeg;
    e.vdeg = vdeg;
    e.form = random_form(rng, P.dim, P.m - hdeg - vdeg, coeff_deg);
    e.field = MV(P.dim, 0);
    return e;
}

XiElem random_xi(const PreMS& P, SplitMix64& rng, int coeff_deg)
{
    if (rng.below(3) != 0 || P.m < 2) {
        int vdeg = static_cast<int>(rng.below(static_cast<std::uint64_t>(P.m)));
        return xi_pair(P, rng, vdeg, coeff_deg);
    }
    int hdeg = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(P.m - 1)));
    int vdeg = static_cast<int>(rng.below(static_cast<std::uint64_t>(P.m - hdeg + 1)));
    return xi_form(P, rng, hdeg, vdeg, coeff_deg);
}

Mat identity_mat(int n)
{
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

} // namespace

CheckReport check_signs(std::uint64_t seed, int trials)
{
    Ctx c("sign-calculus");
    if (trials <= 0) trials = 300;
    SplitMix64 rng(seed);

    for (int trial = 0; trial < trials; ++trial) {
        int n = rng.range(2, 7);
        Perm s1 = random_perm(rng, n), s2 = random_perm(rng, n);
        std::vector<int> degs(static_cast<size_t>(n));
        for (auto& d : degs) d = rng.range(-1, 4);
        bool ok = koszul_sign(compose(s1, s2), degs) ==
                  koszul_sign(s1, permute(s2, degs)) * koszul_sign(s2, degs);
        c.expect(ok, "sign multiplicativity fails at n=" + std::to_string(n));
    }

    for (int n = 1; n <= 7; ++n) {
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<int> degs(static_cast<size_t>(n));
            for (auto& d : degs) d = rng.range(-1, 4);
            std::vector<int> img(static_cast<size_t>(n));
            for (int i = 1; i <= n; ++i) img[static_cast<size_t>(i - 1)] = n + 1 - i;
            bool ok = total_koszul_sign(degs) == koszul_sign(Perm(img), degs);
            c.expect(ok, "reversal sign mismatch at n=" + std::to_string(n));
        }
    }

    // unshuffle counts, exhaustive over all ordered partitions of n <= 7
    std::vector<long> fact{1, 1, 2, 6, 24, 120, 720, 5040};
    std::function<void(int, std::vector<int>&)> visit = [&](int rest, std::vector<int>& parts) {
        if (rest == 0) {
            long expected = fact[static_cast<size_t>(std::accumulate(parts.begin(), parts.end(), 0))];
            for (int p : parts) expected /= fact[static_cast<size_t>(p)];
            long got = static_cast<long>(unshuffles(parts).size());
            std::ostringstream what;
            what << "unshuffle count " << got << " != " << expected << " for parts";
            for (int p : parts) what << ' ' << p;
            c.expect(got == expected, what.str());
            return;
        }
        for (int p = 1; p <= rest; ++p) {
            parts.push_back(p);
            visit(rest - p, parts);
            parts.pop_back();
        }
    };
    for (int n = 1; n <= 7; ++n) {
        std::vector<int> parts;
        visit(n, parts);
    }
    return c.rep;
}

CheckReport check_decalage_naturality(std::uint64_t seed, int trials)
{
    Ctx c("decalage-naturality");
    if (trials <= 0) trials = 120;
    SplitMix64 rng(seed);

    // commuting square at the level of signs: shifting, then permuting with
    // the plain sign, equals permuting the shifted word
    for (int trial = 0; trial < trials; ++trial) {
        int n = rng.range(1, 4);
        Perm s = random_perm(rng, n);
        std::vector<int> degs(static_cast<size_t>(n));
        for (auto& d : degs) d = rng.range(-2, 4);
        std::vector<int> shifted = degs;
        for (auto& d : shifted) d -= 1;
        int lhs = koszul_sign(s, shifted) * decalage_sign(permute(s, degs));
        int rhs = perm_sign(s) * decalage_sign(degs) * koszul_sign(s, degs);
        c.expect(lhs == rhs, "shift square fails at n=" + std::to_string(n));
    }

    // map level: the shift of an antisymmetric map is symmetric and the
    // shift is invertible
    SpacePtr v = make_space({{"a", 1}, {"b", 2}, {"c", 3}});
    for (int trial = 0; trial < 20; ++trial) {
        int n = rng.range(2, 3);
        MultiMap f = random_antisym(rng, v, n, rng.range(-1, 1));
        if (f.is_zero()) continue;
        MultiMap d = decalage_of_map(f, -1);
        c.expect(is_symmetric(d), "shifted map is not symmetric");
        c.expect(decalage_preimage(d, v, v, -1) == f, "shift roundtrip broken");
    }
    return c.rep;
}

CheckReport check_insertion_compat(std::uint64_t seed, int trials)
{
    Ctx c("insertion-compatibility");
    if (trials <= 0) trials = 50;
    SplitMix64 rng(seed);
    SpacePtr v = make_space({{"a", 1}, {"b", 1}, {"c", 2}, {"d", 3}});

    int done = 0, attempts = 0;
    while (done < trials && attempts < trials * 20) {
        ++attempts;
        int j = rng.range(1, 3), i = rng.range(1, 3);
        MultiMap f = random_antisym(rng, v, j, rng.range(-1, 1));
        MultiMap g = random_antisym(rng, v, i, rng.range(-1, 1));
        if (f.is_zero() || g.is_zero()) continue;
        ++done;
        // (-1)^{|f|(i-1)} dec(f |>_{-tau} g) == dec(f) |> dec(g)
        int sgn = ((f.degree * (i - 1)) % 2 == 0) ? 1 : -1;
        MultiMap lhs = map_scale(Rat(sgn),
                                 decalage_of_map(insert(f, g, InsertVariant::Antisym), -1));
        MultiMap rhs = insert(decalage_of_map(f, -1), decalage_of_map(g, -1), InsertVariant::Sym);
        c.expect(lhs == rhs,
                 "insertion square fails at arities " + std::to_string(j) + "," + std::to_string(i));
    }
    c.expect(done >= trials, "could not sample enough nonzero map pairs");
    return c.rep;
}

CheckReport check_gerstenhaber(std::uint64_t seed, int trials)
{
    Ctx c("bracket-jacobi");
    if (trials <= 0) trials = 50;
    SplitMix64 rng(seed);
    for (int n = 1; n <= 5; ++n) {
        for (int dim = 2; dim <= 4; ++dim) {
            for (int trial = 0; trial < trials; ++trial) {
                MVWord w;
                for (int k = 0; k < n; ++k)
                    w.push_back(random_mv(rng, dim, rng.range(1, 2), 2));
                MV d = jacobi_defect(w, n);
                c.expect(d.is_zero(), "jacobi defect nonzero at n=" + std::to_string(n) +
                                          " dim=" + std::to_string(dim) + ": " + mv_str(d));
            }
        }
    }
    return c.rep;
}

CheckReport check_cartan_calculus(std::uint64_t seed, int trials)
{
    Ctx c("cartan-identities");
    if (trials <= 0) trials = 50;
    SplitMix64 rng(seed);
    for (int dim = 2; dim <= 4; ++dim) {
        for (int trial = 0; trial < trials; ++trial) {
            MV x = random_mv(rng, dim, rng.range(1, dim), 1);
            MV y = random_mv(rng, dim, rng.range(1, dim), 1);
            Form probe = random_form(rng, dim, rng.range(0, dim), 1);
            std::vector<Form> ds = cartan_defects(x, y, probe);
            for (size_t i = 0; i < ds.size(); ++i)
                c.expect(ds[i].is_zero(), "commutator identity " + std::to_string(i + 1) +
                                              " fails at dim=" + std::to_string(dim) + ": " +
                                              form_str(ds[i]));

            // contraction order relation: i = (-1)^{k(k-1)/2} i-hat
            int k = x.deg;
            int sgn = ((k * (k - 1) / 2) % 2 == 0) ? 1 : -1;
            Form a = random_form(rng, dim, rng.range(k, dim), 1);
            c.expect(contract(x, a) == form_scale(Rat(sgn), contract_conventional(x, a)),
                     "contraction order relation fails at dim=" + std::to_string(dim));

            // derivative decomposition over single-extraction unshuffles
            int n = rng.range(1, 4);
            MVWord w;
            for (int j = 0; j < n; ++j) w.push_back(random_mv(rng, dim, rng.range(1, 2), 1));
            Form fd = fr_defect(w, probe);
            c.expect(fd.is_zero(), "derivative decomposition fails at dim=" +
                                       std::to_string(dim) + ": " + form_str(fd));
        }
    }
    return c.rep;
}

CheckReport check_coalgebra_factor(std::uint64_t seed, int trials)
{
    Ctx c("coalgebra-factor");
    if (trials <= 0) trials = 12;
    SplitMix64 rng(seed);
    for (int n = 3; n <= 4; ++n) {
        for (int dim = 2; dim <= 3; ++dim) {
            for (int trial = 0; trial < trials; ++trial) {
                MVWord w;
                std::vector<int> degs;
                for (int k = 0; k < n; ++k) {
                    w.push_back(random_mv(rng, dim, rng.range(1, 2), 1));
                    degs.push_back(w.back().deg);
                }
                // sum over partial brackets wedged with the leftover factors
                MV lhs(dim, 0);
                for (int i = 2; i <= n; ++i) {
                    std::vector<Perm> shs = (i == n) ? std::vector<Perm>{Perm::identity(n)}
                                                     : unshuffles({i, n - i});
                    for (const Perm& s : shs) {
                        int eps = koszul_sign(s, degs);
                        MVWord head;
                        for (int k = 1; k <= i; ++k) head.push_back(w[static_cast<size_t>(s(k) - 1)]);
                        MV term = nu_n(head);
                        for (int k = i + 1; k <= n; ++k)
                            term = wedge_mv(term, w[static_cast<size_t>(s(k) - 1)]);
                        lhs = mv_add(lhs, mv_scale(Rat(eps), term));
                    }
                }
                MV rhs = mv_scale(Rat(1 << (n - 2)), nu_n(w));
                c.expect(lhs == rhs, "comparison factor fails at n=" + std::to_string(n) +
                                         " dim=" + std::to_string(dim));
            }
        }
    }
    return c.rep;
}

CheckReport check_main_forms(std::uint64_t seed, int trials)
{
    Ctx c("hamiltonian-words");
    if (trials <= 0) trials = 12;
    SplitMix64 rng(seed);

    // volume form: d i_x omega == i_{nu_n(x)} omega on hamiltonian words,
    // and the bracket of hamiltonian fields is hamiltonian again
    PreMS P = vol3();
    for (int n = 1; n <= 4; ++n) {
        for (int trial = 0; trial < trials; ++trial) {
            MVWord word;
            for (int k = 0; k < n; ++k)
                word.push_back(random_ham_pair(P, rng, 1 + static_cast<int>(rng.below(2)), 2).first);
            Form d = maincl_defect(P, word);
            c.expect(d.is_zero(), "cochain identity fails at n=" + std::to_string(n) + ": " +
                                      form_str(d));
            MV nu = nu_n(word);
            if (!nu.is_zero())
                c.expect(classify_field(P, nu).cls == FieldClass::Hamiltonian,
                         "bracket left the hamiltonian class at n=" + std::to_string(n));
        }
    }

    // nonconstant closed degenerate structure form
    PreMS C = curved4();
    Poly one = Poly::constant(4, 1);
    std::vector<MV> pool{
        mv_monomial(4, one, {2}),
        mv_monomial(4, one, {3}),
        mv_monomial(4, one, {4}),
        mv_monomial(4, Poly::variable(4, 3), {2}),
        mv_monomial(4, Poly::variable(4, 2), {3}),
        mv_monomial(4, one, {2, 3}),
        mv_monomial(4, one, {3, 4}),
    };
    for (const MV& x : pool)
        c.expect(classify_field(C, x).cls != FieldClass::General, "pool field not admissible");
    for (int n = 1; n <= 4; ++n) {
        for (int trial = 0; trial < trials; ++trial) {
            MVWord word;
            for (int k = 0; k < n; ++k) word.push_back(pool[rng.below(pool.size())]);
            c.expect(maincl_defect(C, word).is_zero(),
                     "cochain identity fails on the curved form at n=" + std::to_string(n));
        }
    }
    // a non-admissible direction breaks the identity
    MVWord bad{mv_monomial(4, one, {1}), mv_monomial(4, one, {2})};
    c.expect(!maincl_defect(C, bad).is_zero(), "negative control unexpectedly passed");
    return c.rep;
}

CheckReport check_bigraded_brackets(std::uint64_t seed, int trials)
{
    Ctx c("bigraded-brackets");
    if (trials <= 0) trials = 6;
    SplitMix64 rng(seed);
    PreMS P3 = vol3();

    // bounded search for a pair witnessing the arity-2 Jacobi failure of the
    // naive brackets on hamiltonian forms
    std::vector<MV> cand;
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b) {
            if (a == b) continue;
            cand.push_back(mv_monomial(3, Poly::variable(3, a), {b}));
            std::vector<int> rest;
            for (int k = 1; k <= 3; ++k)
                if (k != b) rest.push_back(k);
            cand.push_back(mv_monomial(3, Poly::variable(3, a), rest));
        }
    bool found = false;
    for (size_t i = 0; i < cand.size() && !found; ++i)
        for (size_t j = i; j < cand.size() && !found; ++j) {
            FieldReport ri = classify_field(P3, cand[i]);
            FieldReport rj = classify_field(P3, cand[j]);
            if (ri.cls != FieldClass::Hamiltonian || rj.cls != FieldClass::Hamiltonian) continue;
            Form j2 = naive_jacobi2(P3, {cand[i], ri.primitive}, {cand[j], rj.primitive});
            if (j2.is_zero()) continue;
            found = true;
            // the defect is exactly minus the contraction of the bracket
            c.expect(j2 == form_neg(contract(schouten(cand[i], cand[j]), P3.omega)),
                     "naive defect is not the bracket contraction");
        }
    c.expect(found, "no naive-bracket failure witness found");

    // bigraded Jacobi on two instances, both flavors
    for (const PreMS& P : {vol3(), vol4()}) {
        for (int n = 1; n <= 4; ++n) {
            for (int trial = 0; trial < trials; ++trial) {
                std::vector<XiElem> elems;
                for (int k = 0; k < n; ++k) elems.push_back(random_xi(P, rng, 1));
                XiSum defect = xi_jacobi_defect(P, elems);
                c.expect(xi_sum_is_zero(defect, false),
                         "form jacobi fails at n=" + std::to_string(n) + " m=" + std::to_string(P.m));
                c.expect(xi_sum_is_zero(defect, true),
                         "pair jacobi fails at n=" + std::to_string(n) + " m=" + std::to_string(P.m));
            }
        }
    }

    // the bottom row is closed under the brackets
    for (int n = 2; n <= 3; ++n) {
        std::vector<XiElem> elems;
        for (int k = 0; k < n; ++k) elems.push_back(xi_pair(P3, rng, 0, 1));
        c.expect(xi_l(P3, elems).vdeg == 0, "bottom row not closed under the bracket");
    }
    c.expect(xi_l(P3, {xi_form(P3, rng, 2, 0, 1)}).vdeg == 0,
             "bottom row not closed under the differential");

    // field projection is a strict morphism onto the binary truncation
    for (int n = 1; n <= 4; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<XiElem> elems;
            for (int k = 0; k < n; ++k) elems.push_back(random_xi(P3, rng, 1));
            MV d = pi1_defect(P3, elems, false);
            c.expect(d.is_zero(), "field projection fails at n=" + std::to_string(n) + ": " +
                                      mv_str(d));
        }
    }
    // ...but not onto the full bracket family
    std::vector<XiElem> triple;
    for (int i = 1; i <= 3; ++i) {
        MV x = mv_monomial(3, Poly::variable(3, 1 + (i % 3)), {i});
        FieldReport r = classify_field(P3, x);
        triple.push_back(XiElem{1, 0, r.primitive, x});
    }
    c.expect(!pi1_defect(P3, triple, true).is_zero(), "ternary projection control passed");

    // form projection: the bracket only sees the forms, never the witnesses
    PreMS C = curved4();
    MV a = mv_monomial(4, Poly::variable(4, 3), {2});
    MV b = mv_monomial(4, Poly::variable(4, 2), {3});
    FieldReport ra = classify_field(C, a);
    FieldReport rb = classify_field(C, b);
    c.expect(ra.cls == FieldClass::Hamiltonian && rb.cls == FieldClass::Hamiltonian,
             "witness-independence fixture broke");
    XiElem ea{1, 0, ra.primitive, a};
    XiElem eb{1, 0, rb.primitive, b};
    MV a2 = mv_add(a, mv_monomial(4, Poly::variable(4, 1), {4})); // kernel shift
    MV b2 = mv_add(b, mv_monomial(4, Poly::constant(4, 5), {4}));
    c.expect(is_ham_pair(C, a2, ra.primitive), "kernel shift lost the pair condition");
    c.expect(xi_l(C, {ea, eb}).form == xi_l_form_with_witnesses(C, {ea, eb}, {a2, b2}),
             "bracket depends on the witness fields");
    return c.rep;
}

// ---- transfer fixtures ---------------------------------------------------

namespace {

struct ToyInstance {
    TransferInput in;
    HamSub sub;
    PChoice pc;
    LInfty L;
    CEComplex CL;
    Mat a;
};

// two letters with a unary bracket on the source; the target complex is
// c0 -> c1, c2 with the letters mapping to c1, c2
ToyInstance toy_instance()
{
    ToyInstance t;
    LInfty g;
    g.space = make_space({{"g1", 1}, {"g2", 2}});

    CochainComplexFD D;
    D.m = 2;
    D.labels = {{"c0"}, {"c1"}, {"c2"}};
    D.d.resize(2);
    D.d[0] = Mat(1, 1);
    D.d[0].at(0, 0) = 1;
    D.d[1] = Mat(1, 1);

    std::vector<Mat> f(3);
    f[0] = Mat(1, 1);
    f[1] = Mat(1, 1);
    f[1].at(0, 0) = 1;
    f[2] = Mat(1, 1);
    f[2].at(0, 0) = 1;

    t.in = make_transfer_input(g, 2, D, f);
    t.sub = hamiltonian_subcomplex(t.in);
    t.pc = construct_p(t.in, t.sub);

    t.L.space = make_space({{"u", 1}, {"w", 2}});
    MultiMap l1;
    l1.in = t.L.space;
    l1.out = t.L.space;
    l1.arity_in = 1;
    l1.arity_out = 1;
    l1.degree = -1;
    l1.add_entry({1}, {0}, 1); // the unary bracket sends w to u
    t.L.set_bracket(l1);
    t.CL = ce_codifferential(t.L, 2);

    t.a = Mat(2, 2); // a(u) = 0, a(w) = g2
    t.a.at(1, 1) = 1;
    return t;
}

struct IdInstance {
    TransferInput in;
    HamSub sub;
    PChoice pc;
};

// the identity cochain map on the word complex of a five-letter instance
IdInstance identity_instance()
{
    IdInstance t;
    LInfty g;
    g.space = make_space({{"e1", 1}, {"e2", 1}, {"e3", 1}, {"P", 2}, {"Q", 3}});
    MultiMap l2;
    l2.in = g.space;
    l2.out = g.space;
    l2.arity_in = 2;
    l2.arity_out = 1;
    l2.degree = -1;
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3, k = (i + 2) % 3;
        l2.add_entry({i, j}, {k}, 1);
        l2.add_entry({j, i}, {k}, -1);
    }
    g.set_bracket(l2);

    CEComplex cg = ce_codifferential(g, 3);
    std::vector<Mat> f(4);
    for (int n = 0; n <= 3; ++n) f[static_cast<size_t>(n)] = identity_mat(cg.complex.dim(n));

    t.in = make_transfer_input(g, 3, cg.complex, f);
    t.sub = hamiltonian_subcomplex(t.in);
    t.pc = construct_p(t.in, t.sub);
    return t;
}

QElem random_qelem(const QAlgebra& Q, SplitMix64& rng, bool* ok)
{
    const TransferInput& in = *Q.in;
    for (int attempt = 0; attempt < 64; ++attempt) {
        bool col1 = rng.below(3) != 0;
        int hdeg = col1 ? 1 : 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(in.m)));
        int vdeg = static_cast<int>(rng.below(static_cast<std::uint64_t>(in.m)));
        int fdeg = hdeg == 1 ? in.m - 1 - vdeg : in.m - hdeg - vdeg;
        if (fdeg < 0) continue;
        QElem e = q_zero(Q, hdeg, vdeg);
        if (hdeg == 1) {
            const auto& basis = Q.sub->basis[static_cast<size_t>(fdeg)];
            if (basis.empty()) continue;
            for (const Vec& b : basis) {
                Rat c = Rat(static_cast<long>(rng.below(5)) - 2);
                e.dvec = vec_add(e.dvec, vec_scale(c, b));
            }
            if (Q.tilde) e.gvec = apply_p(in, *Q.sub, *Q.p, fdeg, e.dvec);
        } else {
            for (size_t i = 0; i < e.dvec.size(); ++i)
                e.dvec[i] = Rat(static_cast<long>(rng.below(5)) - 2);
        }
        if (e.is_zero()) continue;
        return e;
    }
    *ok = false;
    return QElem{};
}

// volume form on R^3 with a closed span of fields; the cochain map is the
// contraction pairing, so the abstract brackets must reproduce the
// geometric ones element by element
void check_transfer_geometric(Ctx& c, SplitMix64& rng)
{
    PreMS P = make_prems(3, 2, form_monomial(3, Poly::constant(3, 1), {1, 2, 3}));

    std::vector<MV> gb;
    std::vector<int> gdeg;
    for (int i = 1; i <= 3; ++i) {
        gb.push_back(mv_monomial(3, Poly::constant(3, 1), {i}));
        gdeg.push_back(1);
    }
    gb.push_back(mv_monomial(3, Poly::variable(3, 1), {2}));
    gdeg.push_back(1);
    for (auto idx : std::vector<std::vector<int>>{{1, 2}, {1, 3}, {2, 3}}) {
        gb.push_back(mv_monomial(3, Poly::constant(3, 1), idx));
        gdeg.push_back(2);
    }

    bool decomposed = true;
    auto field_coords = [&](const MV& x) -> Vec {
        Vec co(gb.size());
        MV rest = x;
        for (size_t a = 0; a < gb.size(); ++a) {
            const auto& [idx, mono] = *gb[a].comps.begin();
            auto it = rest.comps.find(idx);
            if (it == rest.comps.end()) continue;
            auto tm = it->second.terms.find(mono.terms.begin()->first);
            if (tm == it->second.terms.end()) continue;
            co[a] = tm->second;
            rest = mv_add(rest, mv_scale(-co[a], gb[a]));
        }
        if (!rest.is_zero()) decomposed = false;
        return co;
    };
    auto field_of = [&](const Vec& co) {
        MV x;
        x.dim = 3;
        for (size_t a = 0; a < gb.size(); ++a) x = mv_add(x, mv_scale(co[a], gb[a]));
        return x;
    };

    LInfty g;
    {
        std::vector<std::pair<std::string, int>> labels;
        for (size_t a = 0; a < gb.size(); ++a)
            labels.push_back({"v" + std::to_string(a), gdeg[a]});
        g.space = make_space(labels);
        MultiMap l2;
        l2.in = g.space;
        l2.out = g.space;
        l2.arity_in = 2;
        l2.arity_out = 1;
        l2.degree = -1;
        for (size_t a = 0; a < gb.size(); ++a)
            for (size_t b = 0; b < gb.size(); ++b) {
                if (gdeg[a] + gdeg[b] - 1 > 2) continue; // lands past the truncation
                Vec co = field_coords(schouten(gb[a], gb[b]));
                for (size_t k = 0; k < co.size(); ++k)
                    if (co[k] != 0)
                        l2.add_entry({static_cast<int>(a), static_cast<int>(b)},
                                     {static_cast<int>(k)}, co[k]);
            }
        g.set_bracket(l2);
    }
    if (!c.expect(decomposed, "span is not closed under the bracket")) return;
    c.expect(linfty_jacobi_defect(g, 3).is_zero(), "sampled source fails jacobi");

    // target: forms with polynomial coefficients of total degree <= 2
    std::vector<std::vector<int>> monos;
    for (int i = 0; i <= 2; ++i)
        for (int j = 0; j <= 2 - i; ++j)
            for (int k = 0; k <= 2 - i - j; ++k) monos.push_back({i, j, k});
    std::vector<std::vector<std::vector<int>>> fidx = {
        {{}}, {{1}, {2}, {3}}, {{1, 2}, {1, 3}, {2, 3}}};
    struct DBasis {
        std::vector<int> idx;
        std::vector<int> exps;
    };
    std::vector<std::vector<DBasis>> dbasis(3);
    for (int n = 0; n <= 2; ++n)
        for (const auto& idx : fidx[static_cast<size_t>(n)])
            for (const auto& e : monos) dbasis[static_cast<size_t>(n)].push_back({idx, e});

    bool representable = true;
    auto form_to_vec = [&](int n, const Form& a) -> Vec {
        Vec v(dbasis[static_cast<size_t>(n)].size());
        Form rest = a;
        for (size_t col = 0; col < v.size(); ++col) {
            const DBasis& b = dbasis[static_cast<size_t>(n)][col];
            auto it = rest.comps.find(b.idx);
            if (it == rest.comps.end()) continue;
            auto tm = it->second.terms.find(b.exps);
            if (tm == it->second.terms.end()) continue;
            v[col] = tm->second;
            Poly mono(3);
            mono.add_term(b.exps, -v[col]);
            rest = form_add(rest, form_monomial(3, mono, b.idx));
        }
        if (!rest.is_zero()) representable = false;
        return v;
    };
    auto vec_to_form = [&](int n, const Vec& v) {
        Form a;
        a.dim = 3;
        a.deg = n;
        for (size_t col = 0; col < v.size(); ++col) {
            if (v[col] == 0) continue;
            Poly mono(3);
            mono.add_term(dbasis[static_cast<size_t>(n)][col].exps, v[col]);
            a = form_add(a, form_monomial(3, mono, dbasis[static_cast<size_t>(n)][col].idx));
        }
        return a;
    };

    CochainComplexFD D;
    D.m = 2;
    D.labels.resize(3);
    for (int n = 0; n <= 2; ++n)
        for (size_t col = 0; col < dbasis[static_cast<size_t>(n)].size(); ++col)
            D.labels[static_cast<size_t>(n)].push_back("b" + std::to_string(n) + "_" +
                                                       std::to_string(col));
    D.d.resize(2);
    for (int n = 0; n <= 1; ++n) {
        D.d[static_cast<size_t>(n)] =
            Mat(static_cast<int>(dbasis[static_cast<size_t>(n) + 1].size()),
                static_cast<int>(dbasis[static_cast<size_t>(n)].size()));
        for (size_t col = 0; col < dbasis[static_cast<size_t>(n)].size(); ++col) {
            Vec v(dbasis[static_cast<size_t>(n)].size());
            v[col] = 1;
            Vec dv = form_to_vec(n + 1, exterior_d(vec_to_form(n, v)));
            for (size_t r = 0; r < dv.size(); ++r)
                D.d[static_cast<size_t>(n)].at(static_cast<int>(r), static_cast<int>(col)) = dv[r];
        }
    }

    CEComplex cg = ce_codifferential(g, 2);
    std::vector<Mat> f(3);
    for (int n = 0; n <= 2; ++n) {
        f[static_cast<size_t>(n)] = Mat(static_cast<int>(dbasis[static_cast<size_t>(n)].size()),
                                        cg.complex.dim(n));
        for (int col = 0; col < cg.complex.dim(n); ++col) {
            MVWord word;
            for (int idx : cg.words[static_cast<size_t>(n)][static_cast<size_t>(col)])
                word.push_back(gb[static_cast<size_t>(idx)]);
            Vec v = form_to_vec(n, omega_tilde(P, word));
            for (size_t r = 0; r < v.size(); ++r)
                f[static_cast<size_t>(n)].at(static_cast<int>(r), col) = v[r];
        }
    }
    if (!c.expect(representable, "contraction left the coefficient bound")) return;

    TransferInput in = make_transfer_input(g, 2, D, f);
    HamSub sub = hamiltonian_subcomplex(in);
    PChoice pc = construct_p(in, sub);
    c.expect(pc.nu_compatible, "no compatible witness choice on the geometric instance");

    // the primitive of every letter's contraction sits in the subcomplex,
    // and the witness recovers a field with the same contraction
    for (size_t a = 0; a < gb.size(); ++a) {
        Form beta = omega_tilde(P, {gb[a]});
        Form prim = poincare_primitive(beta);
        int fdeg = 2 - gdeg[a];
        c.expect(ham_coords(sub, fdeg, form_to_vec(fdeg, prim)).has_value(),
                 "letter primitive escapes the subcomplex");
        Vec px = apply_p(in, sub, pc, fdeg, form_to_vec(fdeg, prim));
        c.expect(omega_tilde(P, {field_of(px)}) == beta, "witness has the wrong contraction");
    }

    auto random_pair_elem = [&](QAlgebra& Q, XiElem& xe) {
        int vdeg = static_cast<int>(rng.below(2));
        Vec co(gb.size());
        for (size_t a = 0; a < gb.size(); ++a)
            if (gdeg[a] == 1 + vdeg) co[a] = Rat(static_cast<long>(rng.below(5)) - 2);
        MV x = field_of(co);
        Form alpha = poincare_primitive(omega_tilde(P, {x}));
        xe = XiElem{};
        xe.hdeg = 1;
        xe.vdeg = vdeg;
        xe.form = alpha;
        xe.form.dim = 3;
        xe.form.deg = 1 - vdeg;
        xe.field = x;
        xe.field.dim = 3;
        xe.field.deg = 1 + vdeg;
        QElem qe = q_zero(Q, 1, vdeg);
        qe.dvec = form_to_vec(1 - vdeg, alpha);
        qe.gvec = co;
        return qe;
    };
    auto random_form_elem = [&](QAlgebra& Q, XiElem& xe) {
        Form a = vec_to_form(0, Vec{Rat(static_cast<long>(rng.below(7)) - 3)});
        xe = XiElem{};
        xe.hdeg = 2;
        xe.vdeg = 0;
        xe.form = a;
        xe.form.dim = 3;
        xe.form.deg = 0;
        QElem qe = q_zero(Q, 2, 0);
        qe.dvec = form_to_vec(0, a);
        return qe;
    };

    for (int tilde = 0; tilde <= 1; ++tilde) {
        QAlgebra Q{&in, &sub, &pc, tilde == 1};
        for (int n = 1; n <= 3; ++n) {
            for (int trial = 0; trial < 5; ++trial) {
                std::vector<QElem> qelems;
                std::vector<XiElem> xelems;
                for (int k = 0; k < n; ++k) {
                    XiElem xe;
                    QElem qe = (n >= 2 || rng.below(2) == 0) ? random_pair_elem(Q, xe)
                                                             : random_form_elem(Q, xe);
                    qelems.push_back(qe);
                    xelems.push_back(xe);
                }
                QElem qr = q_bracket(Q, qelems);
                XiElem xr = xi_l(P, xelems);
                c.expect(qr.hdeg == xr.hdeg && qr.vdeg == xr.vdeg,
                         "bigrade mismatch at n=" + std::to_string(n));
                int fdeg = q_form_degree(Q, qr.hdeg, qr.vdeg);
                if (fdeg >= 0) {
                    c.expect(vec_to_form(fdeg, qr.dvec) == xr.form,
                             "bracket value mismatch at n=" + std::to_string(n));
                    if (Q.tilde && qr.hdeg == 1 && !qr.gvec.empty())
                        c.expect(field_of(qr.gvec) == xr.field,
                                 "witness mismatch at n=" + std::to_string(n));
                } else {
                    c.expect(qr.is_zero() && xr.is_zero(), "truncation mismatch");
                }
            }
        }
        for (int trial = 0; trial < 3; ++trial) {
            std::vector<QElem> elems;
            for (int k = 0; k < 3; ++k) {
                XiElem xe;
                elems.push_back(random_pair_elem(Q, xe));
            }
            c.expect(q_sum_is_zero(q_jacobi_defect(Q, elems), Q.tilde),
                     "geometric instance fails jacobi");
        }
    }
}

} // namespace

CheckReport check_transfer(std::uint64_t seed)
{
    Ctx c("transfer");
    SplitMix64 rng(seed);

    // shape validation rejects a broken cochain map
    {
        LInfty g;
        g.space = make_space({{"g1", 1}, {"g2", 2}});
        CochainComplexFD D;
        D.m = 2;
        D.labels = {{"c0"}, {"c1"}, {"c2"}};
        D.d.resize(2);
        D.d[0] = Mat(1, 1);
        D.d[0].at(0, 0) = 1;
        D.d[1] = Mat(1, 1);
        std::vector<Mat> f(3);
        f[0] = Mat(1, 1);
        f[0].at(0, 0) = 1;
        f[1] = Mat(1, 1);
        f[2] = Mat(1, 1);
        bool threw = false;
        try {
            make_transfer_input(g, 2, D, f);
        } catch (const std::exception&) {
            threw = true;
        }
        c.expect(threw, "broken cochain map accepted");
    }

    // finite instance: Jacobi for both flavors and the strict projection
    {
        IdInstance t = identity_instance();
        c.expect(t.pc.nu_compatible, "no bracket-compatible witness choice found");
        bool sampled = true;
        for (int tilde = 0; tilde <= 1; ++tilde) {
            QAlgebra Q{&t.in, &t.sub, &t.pc, tilde == 1};
            for (int n = 1; n <= 4; ++n) {
                for (int trial = 0; trial < 6; ++trial) {
                    std::vector<QElem> elems;
                    for (int k = 0; k < n; ++k) elems.push_back(random_qelem(Q, rng, &sampled));
                    c.expect(q_sum_is_zero(q_jacobi_defect(Q, elems), Q.tilde),
                             "jacobi fails on the finite instance at n=" + std::to_string(n));
                }
            }
        }
        QAlgebra Q{&t.in, &t.sub, &t.pc, false};
        for (int n = 1; n <= 3; ++n) {
            for (int trial = 0; trial < 8; ++trial) {
                std::vector<QElem> elems;
                for (int k = 0; k < n; ++k) elems.push_back(random_qelem(Q, rng, &sampled));
                c.expect(vec_is_zero(p_morphism_defect(Q, elems)),
                         "strict projection fails at n=" + std::to_string(n));
            }
        }
        c.expect(sampled, "failed to sample nonzero elements");
    }

    // two letters with the same image: distinct valid witness choices give
    // the same bracket
    {
        LInfty g;
        g.space = make_space({{"x", 2}, {"y", 2}});
        CochainComplexFD D;
        D.m = 3;
        D.labels = {{"delta"}, {"alpha"}, {"gamma", "rho"}, {"tau"}};
        D.d.resize(3);
        D.d[0] = Mat(1, 1);
        D.d[1] = Mat(2, 1);
        D.d[1].at(0, 0) = 1;
        D.d[2] = Mat(1, 2);
        D.d[2].at(0, 1) = 1;

        CEComplex cg = ce_codifferential(g, 3);
        std::vector<Mat> f(4);
        f[0] = Mat(1, cg.complex.dim(0));
        for (int col = 0; col < f[0].cols; ++col) f[0].at(0, col) = 1;
        f[1] = Mat(1, 0);
        f[2] = Mat(2, 2);
        f[2].at(0, 0) = 1;
        f[2].at(0, 1) = 1;
        f[3] = Mat(1, 0);

        TransferInput in = make_transfer_input(g, 3, D, f);
        HamSub sub = hamiltonian_subcomplex(in);
        PChoice p1 = construct_p(in, sub);
        c.expect(p1.nu_compatible, "default witness choice incompatible");

        Vec alpha(1);
        alpha[0] = 1;
        Vec target(2);
        target[1] = 1;
        std::vector<std::tuple<int, Vec, Vec>> pins{{1, alpha, target}};
        PChoice p2 = construct_p(in, sub, &pins);
        c.expect(p2.nu_compatible, "pinned witness choice incompatible");
        c.expect(apply_p(in, sub, p1, 1, alpha) != apply_p(in, sub, p2, 1, alpha),
                 "witness choices coincide");

        QAlgebra Q1{&in, &sub, &p1, false};
        QAlgebra Q2{&in, &sub, &p2, false};
        QElem e = q_zero(Q1, 1, 1);
        e.dvec = alpha;
        QElem r1 = q_bracket(Q1, {e, e});
        QElem r2 = q_bracket(Q2, {e, e});
        c.expect(r1.dvec == r2.dvec, "bracket depends on the witness choice");
        c.expect(!vec_is_zero(r1.dvec), "independence check is vacuous");
    }

    // sampled geometric instance: brackets agree element-wise with the
    // bigraded brackets on forms and pairs
    check_transfer_geometric(c, rng);
    return c.rep;
}

CheckReport check_roundtrip(std::uint64_t seed)
{
    Ctx c("roundtrip");
    (void)seed;

    // gallery instances: the stored homotopy converts to a lift and back
    // without loss, and the two checkers agree on accept and reject
    for (const GalleryInstance& g : moment_gallery()) {
        int maxar = g.P.m + 1;
        if (g.h.has_value()) {
            bool hm = is_hmm(g.P, g.act, g.CL, *g.h);
            bool lm = is_linfty_mm(g.P, g.act, g.CL, *g.h, maxar);
            c.expect(hm == g.expected_accept, g.name + ": homotopy checker disagrees");
            c.expect(lm == g.expected_accept, g.name + ": lift checker disagrees");

            // homotopy -> per-word lift components -> homotopy, exactly
            Homotopy back;
            back.h.resize(g.h->h.size());
            for (size_t n = 1; n < g.h->h.size(); ++n) {
                const auto& words = g.CL.words[n];
                back.h[n].resize(words.size());
                for (size_t w = 0; w < words.size(); ++w) {
                    int j = static_cast<int>(words[w].size());
                    int k = 0;
                    for (int idx : words[w]) k += g.act.L.space->degree(idx);
                    XiElem comp{j, k - j, g.h->h[n][w], MV(g.P.dim, 0)};
                    if (j == 1) comp.field = g.act.fields[static_cast<size_t>(words[w][0])];
                    if (j == 1)
                        c.expect(is_ham_pair(g.P, comp.field, comp.form) == g.expected_accept,
                                 g.name + ": letter component pair condition");
                    back.h[n][w] = comp.form; // the inverse conversion
                }
            }
            bool same = back.h.size() == g.h->h.size();
            for (size_t n = 1; same && n < back.h.size(); ++n) {
                if (back.h[n].size() != g.h->h[n].size()) same = false;
                for (size_t w = 0; same && w < back.h[n].size(); ++w)
                    if (!(back.h[n][w] == g.h->h[n][w])) same = false;
            }
            c.expect(same, g.name + ": conversion roundtrip not exact");
        } else {
            // no homotopy exists; the candidate built from the classical
            // data must be rejected by both sides
            Homotopy h = homotopy_from_comoment(g.P, g.act, g.CL, g.mu);
            c.expect(!is_hmm(g.P, g.act, g.CL, h), g.name + ": obstructed candidate accepted");
            c.expect(!is_linfty_mm(g.P, g.act, g.CL, h, maxar),
                     g.name + ": obstructed lift accepted");
            c.expect(!build_homotopy(g.P, g.act, g.CL).has_value(),
                     g.name + ": builder ignored the obstruction");
        }
    }

    // a source with a unary bracket: a null-homotopy that does not kill the
    // letters is still a null-homotopy but not a lift
    ToyInstance t = toy_instance();
    std::vector<Mat> fhat = fhat_from_action(t.in, t.L, t.CL, t.a);

    LiftData good;
    good.a = t.a;
    good.h.resize(3);
    good.h[1] = Mat(1, 1);
    good.h[1].at(0, 0) = 1;
    good.h[2] = Mat(1, 1);

    LiftData skew; // shifted by a homotopy witness
    skew.a = t.a;
    skew.h.resize(3);
    skew.h[1] = Mat(1, 1);
    skew.h[1].at(0, 0) = 2;
    skew.h[2] = Mat(1, 1);
    skew.h[2].at(0, 0) = -1;

    for (const LiftData* lift : {&good, &skew}) {
        bool zero = true;
        for (const Mat& d : homotopy_defect(t.in, t.CL, lift->h, fhat))
            for (const Rat& v : d.a)
                if (v != 0) zero = false;
        c.expect(zero, "toy null-homotopy has a defect");
    }
    c.expect(he_vanishes_on_letters(t.L, t.CL, good.h), "good homotopy kills no letters");
    c.expect(!he_vanishes_on_letters(t.L, t.CL, skew.h),
             "skewed homotopy unexpectedly kills the letters");

    QAlgebra Q{&t.in, &t.sub, &t.pc, true};
    std::string why;
    c.expect(lift_is_morphism(Q, t.L, t.CL, good, 3, &why), "good lift rejected: " + why);
    c.expect(!lift_is_morphism(Q, t.L, t.CL, skew, 3, &why), "skewed lift accepted");
    c.expect(why.find("generating") != std::string::npos, "unexpected failure reason: " + why);

    // breaking the homotopy itself breaks the lift the same way
    LiftData broken = good;
    broken.h[1].at(0, 0) = 0;
    bool still = true;
    for (const Mat& d : homotopy_defect(t.in, t.CL, broken.h, fhat))
        for (const Rat& v : d.a)
            if (v != 0) still = false;
    c.expect(!still, "broken homotopy still passes");
    c.expect(!lift_is_morphism(Q, t.L, t.CL, broken, 3, &why), "broken lift accepted");
    return c.rep;
}

CheckReport check_moment(std::uint64_t seed)
{
    Ctx c("moment-notions");
    (void)seed;
    std::vector<GalleryInstance> gallery = moment_gallery();
    auto by_name = [&](const std::string& name) -> const GalleryInstance* {
        for (const auto& g : gallery)
            if (g.name == name) return &g;
        return nullptr;
    };

    // one translation on the plane: all five classical notions accept, and
    // reject a perturbed candidate together
    if (const GalleryInstance* g = by_name("translations-x"); c.expect(g != nullptr, "missing instance")) {
        c.expect(is_action(g->P, g->act, true, 3), "translations-x: not an action");
        c.expect(action_prehamiltonian(g->P, g->act), "translations-x: image classification");
        c.expect(g->h.has_value(), "translations-x: no homotopy stored");
        c.expect(is_comoment(g->P, g->act, g->mu), "translations-x: classical data rejected");
        c.expect(is_hmm(g->P, g->act, g->CL, *g->h), "translations-x: homotopy rejected");
        c.expect(is_hhmm(g->P, g->act, g->CL, *g->h), "translations-x: letters condition");
        c.expect(is_linfty_mm(g->P, g->act, g->CL, *g->h, 3), "translations-x: lift rejected");
        c.expect(is_strong_mm(g->P, g->act, g->CL, *g->h, 3), "translations-x: strong lift rejected");

        std::vector<Poly> bad = g->mu;
        bad[0] = bad[0] + Poly::variable(2, 1);
        Homotopy hb = homotopy_from_comoment(g->P, g->act, g->CL, bad);
        c.expect(!is_comoment(g->P, g->act, bad), "perturbed classical data accepted");
        c.expect(!is_hmm(g->P, g->act, g->CL, hb), "perturbed homotopy accepted");
        c.expect(!is_hhmm(g->P, g->act, g->CL, hb), "perturbed homotopy accepted (letters)");
        c.expect(!is_linfty_mm(g->P, g->act, g->CL, hb, 3), "perturbed lift accepted");
        c.expect(!is_strong_mm(g->P, g->act, g->CL, hb, 3), "perturbed strong lift accepted");
    }

    // both translations: the pairing obstruction rejects every notion
    if (const GalleryInstance* g = by_name("translations-r2"); c.expect(g != nullptr, "missing instance")) {
        c.expect(is_action(g->P, g->act, true, 3), "translations-r2: not an action");
        c.expect(!g->h.has_value() && !build_homotopy(g->P, g->act, g->CL).has_value(),
                 "translations-r2: obstruction missed");
        Homotopy h = homotopy_from_comoment(g->P, g->act, g->CL, g->mu);
        auto defect = moment_defect(g->P, g->act, g->CL, h);
        c.expect(defect[1][0].is_zero() && defect[1][1].is_zero(),
                 "translations-r2: letter equations should hold");
        c.expect(!defect[0][0].is_zero(), "translations-r2: word equation should fail");
        c.expect(!is_comoment(g->P, g->act, g->mu), "translations-r2: classical data accepted");
        c.expect(!is_hmm(g->P, g->act, g->CL, h), "translations-r2: homotopy accepted");
        c.expect(!is_linfty_mm(g->P, g->act, g->CL, h, 3), "translations-r2: lift accepted");
        c.expect(!is_strong_mm(g->P, g->act, g->CL, h, 3), "translations-r2: strong lift accepted");
    }

    // rotations: the equivalence chain holds for the built candidate and
    // every corruption is rejected by all notions at once
    if (const GalleryInstance* g = by_name("rotations-r3"); c.expect(g != nullptr, "missing instance")) {
        c.expect(linfty_jacobi_defect(g->act.L, 3).is_zero(), "rotations-r3: source jacobi");
        c.expect(is_action(g->P, g->act, true, 4), "rotations-r3: not a strong action");
        c.expect(action_prehamiltonian(g->P, g->act), "rotations-r3: image classification");
        c.expect(g->h.has_value(), "rotations-r3: no homotopy built");
        bool h1 = is_hmm(g->P, g->act, g->CL, *g->h);
        bool h2 = is_hhmm(g->P, g->act, g->CL, *g->h);
        bool h3 = is_linfty_mm(g->P, g->act, g->CL, *g->h, 3);
        bool h4 = is_strong_mm(g->P, g->act, g->CL, *g->h, 3);
        c.expect(h1 && h2 && h3 && h4, "rotations-r3: notions disagree on the candidate");

        Homotopy hb = *g->h;
        hb.h[1][0] = form_add(hb.h[1][0], form_monomial(3, Poly::variable(3, 1), {}));
        c.expect(!is_hmm(g->P, g->act, g->CL, hb) && !is_linfty_mm(g->P, g->act, g->CL, hb, 3),
                 "rotations-r3: corruption accepted");
        Homotopy hc = *g->h;
        hc.h[2][1] = form_scale(2, hc.h[2][1]);
        c.expect(!is_hmm(g->P, g->act, g->CL, hc) && !is_linfty_mm(g->P, g->act, g->CL, hc, 3),
                 "rotations-r3: second corruption accepted");
    }

    // graded source: all notions accept the built candidate
    if (const GalleryInstance* g = by_name("graded-m3"); c.expect(g != nullptr, "missing instance")) {
        c.expect(is_action(g->P, g->act, true, 4), "graded-m3: not a strong action");
        c.expect(g->h.has_value(), "graded-m3: no homotopy built");
        c.expect(is_hmm(g->P, g->act, g->CL, *g->h) && is_hhmm(g->P, g->act, g->CL, *g->h) &&
                     is_linfty_mm(g->P, g->act, g->CL, *g->h, 4) &&
                     is_strong_mm(g->P, g->act, g->CL, *g->h, 4),
                 "graded-m3: notions disagree");
    }
    return c.rep;
}

std::vector<std::string> suite_names()
{
    return {"signs",     "decalage", "insertion", "gerstenhaber", "cartan",
            "mainforms", "transfer", "roundtrip", "moment"};
}

std::vector<CheckReport> run_suite(const std::string& suite, std::uint64_t seed, int trials)
{
    std::vector<CheckReport> out;
    auto matches = [&](const char* s) { return suite == s || suite == "all"; };
    if (matches("signs")) out.push_back(check_signs(seed, trials));
    if (matches("decalage")) out.push_back(check_decalage_naturality(seed, trials));
    if (matches("insertion")) {
        out.push_back(check_insertion_compat(seed, trials));
        out.push_back(check_coalgebra_factor(seed, trials));
    }
    if (matches("gerstenhaber")) out.push_back(check_gerstenhaber(seed, trials));
    if (matches("cartan")) out.push_back(check_cartan_calculus(seed, trials));
    if (matches("mainforms")) {
        out.push_back(check_main_forms(seed, trials));
        out.push_back(check_bigraded_brackets(seed, trials));
    }
    if (matches("transfer")) out.push_back(check_transfer(seed));
    if (matches("roundtrip")) out.push_back(check_roundtrip(seed));
    if (matches("moment")) out.push_back(check_moment(seed));
    if (out.empty()) throw std::invalid_argument("unknown suite: " + suite);
    return out;
}

std::string report_text(const std::vector<CheckReport>& reports)
{
    std::ostringstream os;
    int failures = 0;
    for (const CheckReport& r : reports) {
        if (r.ok) {
            os << "ok   " << r.name << "  checks=" << r.checks << "\n";
        } else {
            ++failures;
            os << "FAIL " << r.name << "  checks=" << r.checks << "  " << r.detail << "\n";
        }
    }
    if (failures == 0)
        os << "all " << reports.size() << " batteries passed\n";
    else
        os << failures << " of " << reports.size() << " batteries failed\n";
    return os.str();
}

std::string report_json(const std::string& suite, std::uint64_t seed,
                        const std::vector<CheckReport>& reports)
{
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["seed"] = seed;
    bool ok = true;
    j["batteries"] = nlohmann::ordered_json::array();
    for (const CheckReport& r : reports) {
        ok = ok && r.ok;
        j["batteries"].push_back({{"name", r.name},
                                  {"ok", r.ok},
                                  {"checks", r.checks},
                                  {"detail", r.detail}});
    }
    j["ok"] = ok;
    return j.dump(2) + "\n";
}

} // namespace msym
