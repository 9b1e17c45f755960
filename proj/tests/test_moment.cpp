#include "msym/moment.hpp"

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

using namespace msym;

namespace {

GalleryInstance by_name(const std::string& name) {
    for (auto& g : moment_gallery())
        if (g.name == name) return g;
    FAIL("unknown instance ", name);
    return {};
}

} // namespace

TEST_CASE("one translation on the plane: every notion accepts") {
    GalleryInstance g = by_name("translations-x");
    CHECK(is_action(g.P, g.act, true, 3));
    CHECK(action_prehamiltonian(g.P, g.act));

    REQUIRE(g.h.has_value());
    CHECK(is_comoment(g.P, g.act, g.mu));
    CHECK(is_hmm(g.P, g.act, g.CL, *g.h));
    CHECK(is_hhmm(g.P, g.act, g.CL, *g.h));
    CHECK(is_linfty_mm(g.P, g.act, g.CL, *g.h, 3));
    CHECK(is_strong_mm(g.P, g.act, g.CL, *g.h, 3));

    // shifting mu by a constant stays a co-moment and a homotopy
    std::vector<Poly> mu2 = g.mu;
    mu2[0] = mu2[0] + Poly::constant(2, 7);
    CHECK(is_comoment(g.P, g.act, mu2));
    Homotopy h2 = homotopy_from_comoment(g.P, g.act, g.CL, mu2);
    CHECK(is_hmm(g.P, g.act, g.CL, h2));
    CHECK(is_linfty_mm(g.P, g.act, g.CL, h2, 3));

    // a perturbed candidate fails every notion coherently
    std::vector<Poly> bad = g.mu;
    bad[0] = bad[0] + Poly::variable(2, 1);
    CHECK_FALSE(is_comoment(g.P, g.act, bad));
    Homotopy hb = homotopy_from_comoment(g.P, g.act, g.CL, bad);
    CHECK_FALSE(is_hmm(g.P, g.act, g.CL, hb));
    CHECK_FALSE(is_hhmm(g.P, g.act, g.CL, hb));
    std::string why;
    CHECK_FALSE(is_linfty_mm(g.P, g.act, g.CL, hb, 3, &why));
    CHECK(why.find("pair condition") != std::string::npos);
    CHECK_FALSE(is_strong_mm(g.P, g.act, g.CL, hb, 3));
}

TEST_CASE("both translations on the plane: the obstruction rejects everything") {
    GalleryInstance g = by_name("translations-r2");
    CHECK(is_action(g.P, g.act, true, 3));
    CHECK(action_prehamiltonian(g.P, g.act));
    CHECK_FALSE(g.h.has_value());
    CHECK_FALSE(build_homotopy(g.P, g.act, g.CL).has_value());

    // the natural candidate satisfies the pair conditions but not the pairing
    // equation on the two-letter word
    CHECK_FALSE(is_comoment(g.P, g.act, g.mu));
    Homotopy h = homotopy_from_comoment(g.P, g.act, g.CL, g.mu);
    auto defect = moment_defect(g.P, g.act, g.CL, h);
    CHECK(defect[1][0].is_zero());
    CHECK(defect[1][1].is_zero());
    CHECK_FALSE(defect[0][0].is_zero()); // the volume pairing of d1, d2
    CHECK_FALSE(is_hmm(g.P, g.act, g.CL, h));
    std::string why;
    CHECK_FALSE(is_linfty_mm(g.P, g.act, g.CL, h, 3, &why));
    CHECK(why.find("arity 2") != std::string::npos);
    CHECK_FALSE(is_strong_mm(g.P, g.act, g.CL, h, 3));
}

TEST_CASE("rotations on volume R^3") {
    GalleryInstance g = by_name("rotations-r3");
    CHECK(linfty_jacobi_defect(g.act.L, 3).is_zero());
    CHECK(is_action(g.P, g.act, true, 4));
    CHECK(action_prehamiltonian(g.P, g.act));

    REQUIRE(g.h.has_value());
    CHECK(is_hmm(g.P, g.act, g.CL, *g.h));
    // l1 = 0, so the letters condition is automatic and the two homotopy
    // notions agree
    CHECK(is_hhmm(g.P, g.act, g.CL, *g.h));
    std::string why;
    CHECK(is_linfty_mm(g.P, g.act, g.CL, *g.h, 3, &why));
    CHECK(is_strong_mm(g.P, g.act, g.CL, *g.h, 3, &why));

    // breaking the homotopy breaks the lift the same way
    Homotopy hb = *g.h;
    hb.h[1][0] = form_add(hb.h[1][0], form_monomial(3, Poly::variable(3, 1), {}));
    CHECK_FALSE(is_hmm(g.P, g.act, g.CL, hb));
    CHECK_FALSE(is_linfty_mm(g.P, g.act, g.CL, hb, 3));

    Homotopy hc = *g.h;
    hc.h[2][1] = form_scale(2, hc.h[2][1]);
    CHECK_FALSE(is_hmm(g.P, g.act, g.CL, hc));
    CHECK_FALSE(is_linfty_mm(g.P, g.act, g.CL, hc, 3));
}

TEST_CASE("a graded action with a degree-two generator on volume R^4") {
    GalleryInstance g = by_name("graded-m3");
    CHECK(is_action(g.P, g.act, true, 4));
    CHECK(action_prehamiltonian(g.P, g.act));

    REQUIRE(g.h.has_value());
    CHECK(is_hmm(g.P, g.act, g.CL, *g.h));
    CHECK(is_hhmm(g.P, g.act, g.CL, *g.h));
    CHECK(is_linfty_mm(g.P, g.act, g.CL, *g.h, 4));
    CHECK(is_strong_mm(g.P, g.act, g.CL, *g.h, 4));

    // the degree-two generator really reaches a nonzero slot: its word sits
    // at cochain degree 2 with a nonzero primitive
    int col = -1;
    for (size_t w = 0; w < g.CL.words[2].size(); ++w)
        if (g.CL.words[2][w] == std::vector<int>{2}) col = static_cast<int>(w);
    REQUIRE(col >= 0);
    CHECK_FALSE(g.h->h[2][static_cast<size_t>(col)].is_zero());
}

TEST_CASE("a non-closing set of fields is rejected as an action") {
    PreMS P = make_prems(2, 1, form_monomial(2, Poly::constant(2, 1), {1, 2}));
    GAction act;
    act.L.space = make_space({{"e1", 1}, {"e2", 1}});
    // abelian structure, but the fields do not commute
    act.fields = {mv_monomial(2, Poly::variable(2, 1), {1}),
                  mv_monomial(2, Poly::constant(2, 1), {1})};
    CHECK_FALSE(is_action(P, act, false, 2));
}

TEST_CASE("multisymplectic versus hamiltonian image classification") {
    PreMS P = make_prems(3, 2, form_monomial(3, Poly::constant(3, 1), {1, 2, 3}));
    GAction act;
    act.L.space = make_space({{"e", 1}});
    // x1 d1 is not multisymplectic for the volume form
    act.fields = {mv_monomial(3, Poly::variable(3, 1), {1})};
    CEComplex CL = ce_codifferential(act.L, 2);
    CHECK_FALSE(action_multisymplectic(P, act));
    CHECK_FALSE(action_prehamiltonian(P, act));

    act.fields = {mv_monomial(3, Poly::variable(3, 2), {1})};
    CHECK(action_prehamiltonian(P, act));
}
