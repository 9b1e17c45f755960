#pragma once

// Abstract transfer construction: a shifted graded Lie algebra g, a finite
// cochain complex D and a cochain map f from the word complex of g to D give
// bigraded L-infinity algebras on the subcomplex of elements whose
// differential lies in the single-letter image of f.  The same data relates
// synchronized lifts of an action to null-homotopies.

#include "msym/linfty.hpp"

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace msym {

using Vec = std::vector<Rat>;

Vec mat_apply(const Mat& m, const Vec& v);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_scale(const Rat& c, const Vec& v);
bool vec_is_zero(const Vec& v);

struct TransferInput {
    LInfty g;  // brackets of degree -1 (at most binary); generators in 1..m
    int m = 1;
    CEComplex cg;       // word complex of g, top degree m
    CochainComplexFD D; // degrees 0..m
    std::vector<Mat> f; // f[n]: D.dim(n) x (word count at degree n)
};

// validates shapes, the cochain property f e = d f, and that the kernel of
// f on single letters annihilates all products
TransferInput make_transfer_input(const LInfty& g, int m, const CochainComplexFD& D,
                                  const std::vector<Mat>& f);

// expands a product of g-vectors with assigned degrees into sorted words and
// applies f; second member of the result is the D-degree
std::pair<Vec, int> f_of_product(const TransferInput& in,
                                 const std::vector<std::pair<int, Vec>>& word);

// per D-degree basis of {alpha : d alpha = f(x) for a single letter x},
// exact vectors listed first
struct HamSub {
    std::vector<std::vector<Vec>> basis;
    std::vector<int> exact_count;
};

HamSub hamiltonian_subcomplex(const TransferInput& in);

// coordinates of v in the degree-deg basis; empty optional if outside
std::optional<Vec> ham_coords(const HamSub& sub, int deg, const Vec& v);

// a choice of witness letters: f(p(alpha)) = d(alpha), p = 0 on the exact
// block, adjusted towards p(f(p a . p b)) = nu(p a, p b) by iterated
// re-solving; `pins` forces p on given subspace vectors (used to arrange
// p h1 = a1).  Any remaining freedom is a kernel of f choice.
struct PChoice {
    std::vector<Mat> p; // p[i]: g.dim x basis[i].size()
    bool nu_compatible = false;
    int rounds = 0;
};

PChoice construct_p(const TransferInput& in, const HamSub& sub,
                    const std::vector<std::tuple<int, Vec, Vec>>* pins = nullptr);

// g-coefficients of p applied to a D-vector inside the subcomplex
Vec apply_p(const TransferInput& in, const HamSub& sub, const PChoice& pc, int deg,
            const Vec& alpha);

// ---- the bigraded algebras -------------------------------------------

// column hdeg, row vdeg; dvec lives in D-degree m-1-vdeg on column 1 and
// m-hdeg-vdeg beyond; gvec is the paired letter on column 1 (tilde flavor)
struct QElem {
    int hdeg = 1;
    int vdeg = 0;
    Vec dvec;
    Vec gvec;

    bool is_zero() const;
};

struct QAlgebra {
    const TransferInput* in = nullptr;
    const HamSub* sub = nullptr;
    const PChoice* p = nullptr;
    bool tilde = false; // column 1 carries pairs instead of p-witnesses
};

int q_form_degree(const QAlgebra& Q, int hdeg, int vdeg);
QElem q_zero(const QAlgebra& Q, int hdeg, int vdeg);
void validate_q(const QAlgebra& Q, const QElem& e);

// arity 1 is -d on columns >= 2; arities >= 2 apply f to the product of the
// letters (pairs or p-witnesses) on all-column-1 inputs and vanish otherwise
QElem q_bracket(const QAlgebra& Q, const std::vector<QElem>& elems);

using QSum = std::map<std::pair<int, int>, QElem>;

void q_sum_add(QSum& sum, const QElem& e, const Rat& c);
bool q_sum_is_zero(const QSum& sum, bool include_g);

QSum q_jacobi_defect(const QAlgebra& Q, const std::vector<QElem>& elems);

// defect of the strict projection onto g (p on column 1, zero beyond):
// p(q_n(elems)) minus the g-bracket of the projections at arity 2
Vec p_morphism_defect(const QAlgebra& Q, const std::vector<QElem>& elems);

// ---- correspondence with null-homotopies ------------------------------

// a synchronized lift of an action, stored as its homotopy matrices:
// h[n] : C(L)^n -> D^{n-1} for n in 1..m, plus the action a : L -> g
struct LiftData {
    std::vector<Mat> h; // size m+1, index 0 unused
    Mat a;              // g.dim x L.dim, degree preserving
};

// f-hat = f composed with the word-wise extension of a
std::vector<Mat> fhat_from_action(const TransferInput& in, const LInfty& L,
                                  const CEComplex& CL, const Mat& a);

// per-degree defect matrices of fhat = d h + h e
std::vector<Mat> homotopy_defect(const TransferInput& in, const CEComplex& CL,
                                 const std::vector<Mat>& h, const std::vector<Mat>& fhat);

// value of h e on the single-letter words
bool he_vanishes_on_letters(const LInfty& L, const CEComplex& CL,
                            const std::vector<Mat>& h);

// the lift read as an L-infinity morphism into the tilde algebra: checks the
// generating condition d h1 = f a on letters and the morphism equations up
// to max_arity; on failure `why` names the offending check
bool lift_is_morphism(const QAlgebra& Q, const LInfty& L, const CEComplex& CL,
                      const LiftData& lift, int max_arity, std::string* why);

} // namespace msym
