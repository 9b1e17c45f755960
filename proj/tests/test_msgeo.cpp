#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "msym/msgeo.hpp"

using namespace msym;

namespace {

PreMS vol3() {
    Form w(3, 3);
    w.add_comp({1, 2, 3}, Poly::constant(3, 1));
    return make_prems(3, 2, w);
}

PreMS vol4() {
    Form w(4, 4);
    w.add_comp({1, 2, 3, 4}, Poly::constant(4, 1));
    return make_prems(4, 3, w);
}

// nonconstant closed degenerate structure form on R^4
PreMS curved4() {
    Form w(4, 3);
    Poly c = Poly::constant(4, 1) + Poly::variable(4, 1);
    w.add_comp({1, 2, 3}, c);
    return make_prems(4, 2, w);
}

XiElem xi_pair(const PreMS& P, SplitMix64& rng, int vdeg, int coeff_deg) {
    auto [x, prim] = random_ham_pair(P, rng, 1 + vdeg, coeff_deg);
    XiElem e;
    e.hdeg = 1;
    e.vdeg = vdeg;
    e.form = prim;
    e.field = x;
    validate_xi(P, e);
    return e;
}

XiElem xi_form(const PreMS& P, SplitMix64& rng, int hdeg, int vdeg, int coeff_deg) {
    XiElem e;
    e.hdeg = hdeg;
    e.vdeg = vdeg;
    e.form = random_form(rng, P.dim, P.m - hdeg - vdeg, coeff_deg);
    e.field = MV(P.dim, 0);
    validate_xi(P, e);
    return e;
}

// random element of the bigraded space, biased towards column 1
XiElem random_xi(const PreMS& P, SplitMix64& rng, int coeff_deg) {
    if (rng.below(3) != 0 || P.m < 2) {
        int vdeg = static_cast<int>(rng.below(static_cast<unsigned long long>(P.m)));
        return xi_pair(P, rng, vdeg, coeff_deg);
    }
    int hdeg = 2 + static_cast<int>(rng.below(static_cast<unsigned long long>(P.m - 1)));
    int vdeg = static_cast<int>(rng.below(static_cast<unsigned long long>(P.m - hdeg + 1)));
    return xi_form(P, rng, hdeg, vdeg, coeff_deg);
}

} // namespace

TEST_CASE("structure form validation") {
    CHECK_NOTHROW(vol3());
    Form bad(4, 3);
    bad.add_comp({1, 3, 4}, Poly::variable(4, 2)); // d != 0
    CHECK_THROWS(make_prems(4, 2, bad));
    Form wrongdeg(3, 2);
    wrongdeg.add_comp({1, 2}, Poly::constant(3, 1));
    CHECK_THROWS(make_prems(3, 2, wrongdeg));
}

TEST_CASE("ray primitive inverts the exterior derivative on exact forms") {
    Form a(3, 2);
    a.add_comp({2, 3}, Poly::variable(3, 2)); // x2 dx2^dx3
    Form prim = poincare_primitive(a);
    CHECK(exterior_d(prim) == a);

    SplitMix64 rng(7u);
    for (int dim = 2; dim <= 4; ++dim) {
        for (int trial = 0; trial < 20; ++trial) {
            int deg = static_cast<int>(rng.below(static_cast<unsigned long long>(dim)));
            Form b = exterior_d(random_form(rng, dim, deg, 2));
            if (b.is_zero()) continue;
            CHECK(exterior_d(poincare_primitive(b)) == b);
        }
    }

    Form notclosed(2, 1);
    notclosed.add_comp({2}, Poly::variable(2, 1));
    CHECK_THROWS(poincare_primitive(notclosed));
}

TEST_CASE("field classification against the volume form") {
    PreMS P = vol3();

    MV flat = mv_monomial(3, Poly::constant(3, 1), {1}); // d1
    FieldReport r1 = classify_field(P, flat);
    CHECK(r1.cls == FieldClass::Hamiltonian);
    CHECK(is_ham_pair(P, flat, r1.primitive));

    MV radial = mv_monomial(3, Poly::variable(3, 1), {1}); // x1 d1, nonzero divergence
    CHECK(classify_field(P, radial).cls == FieldClass::General);

    MV top = mv_monomial(3, Poly::constant(3, 1), {1, 2, 3});
    CHECK(classify_field(P, top).cls == FieldClass::Multisymplectic);

    MV planar = mv_monomial(3, Poly::variable(3, 3), {1, 2}); // x3 d1^d2
    FieldReport r2 = classify_field(P, planar);
    CHECK(r2.cls == FieldClass::Hamiltonian);
    CHECK(is_ham_pair(P, planar, r2.primitive));
}

TEST_CASE("volume preimage and random hamiltonian pairs") {
    SplitMix64 rng(11u);
    for (const PreMS& P : {vol3(), vol4()}) {
        for (int deg = 1; deg <= P.m; ++deg) {
            for (int trial = 0; trial < 10; ++trial) {
                auto [x, prim] = random_ham_pair(P, rng, deg, 2);
                CHECK(x.deg == deg);
                CHECK(is_ham_pair(P, x, prim));
                CHECK(contract(x, P.omega) == exterior_d(prim));
            }
        }
    }
}

TEST_CASE("contraction against the structure form is a cochain map") {
    SplitMix64 rng(13u);
    PreMS P = vol3();
    for (int n = 1; n <= 4; ++n) {
        for (int trial = 0; trial < 12; ++trial) {
            MVWord word;
            for (int k = 0; k < n; ++k)
                word.push_back(random_ham_pair(P, rng, 1 + static_cast<int>(rng.below(2)), 2).first);
            CHECK(maincl_defect(P, word).is_zero());
            // the bracket of hamiltonian fields is hamiltonian again
            MV nu = nu_n(word);
            if (!nu.is_zero())
                CHECK(classify_field(P, nu).cls == FieldClass::Hamiltonian);
        }
    }
}

TEST_CASE("cochain map identity for a nonconstant degenerate structure form") {
    PreMS P = curved4();
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
        CHECK(classify_field(P, x).cls != FieldClass::General);
    SplitMix64 rng(17u);
    for (int n = 1; n <= 4; ++n) {
        for (int trial = 0; trial < 12; ++trial) {
            MVWord word;
            for (int k = 0; k < n; ++k) word.push_back(pool[rng.below(pool.size())]);
            CHECK(maincl_defect(P, word).is_zero());
        }
    }
    // a non-multisymplectic direction breaks the identity
    MVWord bad{mv_monomial(4, one, {1}), mv_monomial(4, one, {2})};
    CHECK(classify_field(P, bad[0]).cls == FieldClass::General);
    CHECK_FALSE(maincl_defect(P, bad).is_zero());
}

TEST_CASE("naive bracket family fails the arity-2 Jacobi identity") {
    PreMS P = vol3();
    MV X = mv_monomial(3, Poly::variable(3, 2), {1});    // x2 d1
    MV Y = mv_monomial(3, Poly::variable(3, 1), {2, 3}); // x1 d2^d3
    FieldReport rx = classify_field(P, X);
    FieldReport ry = classify_field(P, Y);
    REQUIRE(rx.cls == FieldClass::Hamiltonian);
    REQUIRE(ry.cls == FieldClass::Hamiltonian);
    Form j2 = naive_jacobi2(P, {X, rx.primitive}, {Y, ry.primitive});
    CHECK_FALSE(j2.is_zero());
    // and the defect is exactly the contraction of the Schouten bracket
    CHECK(j2 == form_neg(contract(schouten(X, Y), P.omega)));

    // the repaired bracket cuts inputs with higher-degree witnesses
    CHECK(truncated_ln(P, {{X, rx.primitive}, {Y, ry.primitive}}).is_zero());
    MV Z = mv_monomial(3, Poly::variable(3, 3), {2}); // x3 d2
    FieldReport rz = classify_field(P, Z);
    REQUIRE(rz.cls == FieldClass::Hamiltonian);
    CHECK_FALSE(truncated_ln(P, {{X, rx.primitive}, {Z, rz.primitive}}).is_zero());
}

TEST_CASE("bigraded brackets satisfy the Jacobi identities") {
    SplitMix64 rng(23u);
    for (const PreMS& P : {vol3(), vol4()}) {
        for (int n = 1; n <= 4; ++n) {
            for (int trial = 0; trial < 8; ++trial) {
                std::vector<XiElem> elems;
                for (int k = 0; k < n; ++k) elems.push_back(random_xi(P, rng, 1));
                XiSum defect = xi_jacobi_defect(P, elems);
                CHECK(xi_sum_is_zero(defect, true));
            }
        }
    }
}

TEST_CASE("bottom row is closed under the brackets") {
    SplitMix64 rng(29u);
    PreMS P = vol3();
    for (int n = 2; n <= 3; ++n) {
        std::vector<XiElem> elems;
        for (int k = 0; k < n; ++k) elems.push_back(xi_pair(P, rng, 0, 1));
        XiElem r = xi_l(P, elems);
        CHECK(r.vdeg == 0);
        XiElem d1 = xi_l(P, {xi_form(P, rng, 2, 0, 1)});
        CHECK(d1.vdeg == 0);
    }
}

TEST_CASE("field projection is a strict morphism onto the binary truncation only") {
    SplitMix64 rng(31u);
    PreMS P = vol3();
    for (int n = 1; n <= 4; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<XiElem> elems;
            for (int k = 0; k < n; ++k) elems.push_back(random_xi(P, rng, 1));
            CHECK(pi1_defect(P, elems, false).is_zero());
        }
    }
    // the full bracket family does not project: at arity 3 the defect is
    // minus the ternary bracket of the fields
    std::vector<XiElem> triple;
    for (int i = 1; i <= 3; ++i) {
        MV x = mv_monomial(3, Poly::variable(3, 1 + (i % 3)), {i});
        FieldReport r = classify_field(P, x);
        REQUIRE(r.cls == FieldClass::Hamiltonian);
        triple.push_back(XiElem{1, 0, r.primitive, x});
    }
    CHECK(pi1_defect(P, triple, false).is_zero());
    CHECK_FALSE(pi1_defect(P, triple, true).is_zero());
}

TEST_CASE("bracket is independent of the witness fields") {
    PreMS P = curved4();
    // (x3 d2, prim) has the same contraction as x3 d2 + f d4 for any f
    MV a = mv_monomial(4, Poly::variable(4, 3), {2});
    MV b = mv_monomial(4, Poly::variable(4, 2), {3});
    FieldReport ra = classify_field(P, a);
    FieldReport rb = classify_field(P, b);
    REQUIRE(ra.cls == FieldClass::Hamiltonian);
    REQUIRE(rb.cls == FieldClass::Hamiltonian);
    XiElem ea{1, 0, ra.primitive, a};
    XiElem eb{1, 0, rb.primitive, b};
    validate_xi(P, ea);
    validate_xi(P, eb);
    MV a2 = mv_add(a, mv_monomial(4, Poly::variable(4, 1), {4})); // kernel shift
    MV b2 = mv_add(b, mv_monomial(4, Poly::constant(4, 5), {4}));
    CHECK(is_ham_pair(P, a2, ra.primitive));
    CHECK(xi_l(P, {ea, eb}).form == xi_l_form_with_witnesses(P, {ea, eb}, {a2, b2}));
}

TEST_CASE("element validation") {
    PreMS P = vol3();
    XiElem bad{1, 0, Form(3, 1), mv_monomial(3, Poly::constant(3, 1), {1})};
    bad.form.add_comp({2}, Poly::variable(3, 1)); // d(x1 dx2) != i_{d1} omega
    CHECK_THROWS(validate_xi(P, bad));
    XiElem past{2, 1, Form(3, 0), MV(3, 0)};
    CHECK_NOTHROW(validate_xi(P, past)); // zero element past the truncation
    past.form.add_comp({}, Poly::constant(3, 1));
    CHECK_THROWS(validate_xi(P, past));
}
