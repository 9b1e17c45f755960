#pragma once

// Moment-map notions for strict actions by multivector fields: null-homotopies
// of the contraction map on the word complex, their column-graded lifts, and
// the classical co-moment conditions in the two-form case.  A builder
// constructs the homotopy by ray primitives plus a constant adjustment, and
// reports the obstruction honestly when none exists.

#include "msym/linfty.hpp"
#include "msym/msgeo.hpp"

#include <optional>
#include <string>
#include <vector>

namespace msym {

// a strict action: each generator of L acts by a multivector field of the
// same degree
struct GAction {
    LInfty L;
    std::vector<MV> fields;
};

// the strict morphism equations a(l_n(x)) = nu_n(a x1, ..., a xn) up to
// max_arity, with nu_1 = 0 and arities >= 3 dropped unless `strong`
bool is_action(const PreMS& P, const GAction& act, bool strong, int max_arity);

// classification of the image of a strict action, i.e. of the acting fields
bool action_multisymplectic(const PreMS& P, const GAction& act);
bool action_prehamiltonian(const PreMS& P, const GAction& act);

// h[n] holds one form of degree n-1 per word of C(L)^n, for n in 1..m
struct Homotopy {
    std::vector<std::vector<Form>> h;
};

// the contraction of the extended action, word by word at word degree n
std::vector<Form> fhat_forms(const PreMS& P, const GAction& act, const CEComplex& CL, int n);

// per-degree defects of fhat = d h + h e
std::vector<std::vector<Form>> moment_defect(const PreMS& P, const GAction& act,
                                             const CEComplex& CL, const Homotopy& h);

bool is_hmm(const PreMS& P, const GAction& act, const CEComplex& CL, const Homotopy& h);

// h e on the single-letter words (equivalently h of the unary bracket)
bool he_zero_on_letters(const GAction& act, const CEComplex& CL, const Homotopy& h);

bool is_hhmm(const PreMS& P, const GAction& act, const CEComplex& CL, const Homotopy& h);

// builds h degree by degree with ray primitives; the bottom equation has no
// h-term left, so it is matched by shifting the degree-zero forms of h[1] by
// constants.  Empty when a right-hand side fails to be closed or the
// constant adjustment has no solution.
std::optional<Homotopy> build_homotopy(const PreMS& P, const GAction& act,
                                       const CEComplex& CL);

// the column-graded lift assembled from (a, h): length-j words go to column
// j with the stored form, letters carry their acting field.  Checks the
// hamiltonian pair condition on letters and the morphism equations into the
// pair algebra up to max_arity.
bool is_linfty_mm(const PreMS& P, const GAction& act, const CEComplex& CL,
                  const Homotopy& h, int max_arity, std::string* why = nullptr);

// additionally requires the field projection of every bracket of lift
// components to match nu_n of the acting fields
bool is_strong_mm(const PreMS& P, const GAction& act, const CEComplex& CL,
                  const Homotopy& h, int max_arity, std::string* why = nullptr);

// classical case m = 1, every generator in degree 1: mu assigns a function
// to each generator with d mu_x = i_{a x} omega and mu([x,y]) = i_{ax ^ ay} omega
bool is_comoment(const PreMS& P, const GAction& act, const std::vector<Poly>& mu);

// h[1](x) := mu_x as a degree-zero form
Homotopy homotopy_from_comoment(const PreMS& P, const GAction& act, const CEComplex& CL,
                                const std::vector<Poly>& mu);

// ---- worked instances ---------------------------------------------------

struct GalleryInstance {
    std::string name;
    PreMS P;
    GAction act;
    CEComplex CL;
    std::optional<Homotopy> h; // empty when the obstruction is nonzero
    std::vector<Poly> mu;      // classical candidate, m = 1 instances only
    bool expected_accept = true;
};

// translations-x: one translation on the plane, everything accepts;
// translations-r2: both translations, obstructed, everything rejects;
// rotations-r3: so(3) on volume R^3;
// graded-m3: a three-generator graded action on volume R^4
std::vector<GalleryInstance> moment_gallery();

} // namespace msym
