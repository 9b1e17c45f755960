#pragma once

// Pre-multisymplectic structures on R^d with polynomial coefficients:
// contraction pairing against the structure form, hamiltonian pairs,
// Poincare primitives, the naive bracket family on hamiltonian forms and
// the bigraded L-infinity brackets on pairs/forms that repair it.

#include "msym/cartan.hpp"

#include <map>
#include <utility>
#include <vector>

namespace msym {

struct PreMS {
    int dim = 0;
    int m = 1;   // omega has form degree m+1
    Form omega;
};

// validates the degree and closedness of omega
PreMS make_prems(int dim, int m, const Form& omega);

// contraction of the wedge of the word into omega
Form omega_tilde(const PreMS& P, const MVWord& word);

// (x, alpha) with d alpha = i_x omega
bool is_ham_pair(const PreMS& P, const MV& x, const Form& alpha);

// primitive of a closed form of degree >= 1 along rays from the origin;
// d(poincare_primitive(a)) == a
Form poincare_primitive(const Form& a);

enum class FieldClass { General, Multisymplectic, Hamiltonian };

struct FieldReport {
    FieldClass cls = FieldClass::General;
    Form primitive; // d(primitive) = i_x omega when hamiltonian
};

FieldReport classify_field(const PreMS& P, const MV& x);

// ---- naive bracket family on hamiltonian forms -------------------------
// Elements are hamiltonian pairs; the degree of a form is the degree of its
// witness field.  l_1 = -d, l_{n>=2} = contraction of the field word.

Form naive_l1(const Form& alpha);
Form naive_ln(const PreMS& P, const std::vector<std::pair<MV, Form>>& pairs);

// arity-2 Jacobi defect -d i_{x1 x2} omega; nonzero in general
Form naive_jacobi2(const PreMS& P, const std::pair<MV, Form>& p1, const std::pair<MV, Form>& p2);

// the repaired truncation: nonzero only when every witness field has degree 1
Form truncated_ln(const PreMS& P, const std::vector<std::pair<MV, Form>>& pairs);

// ---- bigraded brackets on forms and pairs -------------------------------
// An element sits at column hdeg >= 1 and row vdeg >= 0 with total degree
// hdeg + vdeg.  At hdeg 1 the form has degree m-1-vdeg and carries a
// hamiltonian field (pair data, or a witness when only the form matters);
// at hdeg >= 2 the form has degree m-hdeg-vdeg and the field is zero.
// Rows past the truncation hold only the zero element.
struct XiElem {
    int hdeg = 1;
    int vdeg = 0;
    Form form;
    MV field;

    bool is_zero() const { return form.is_zero() && field.is_zero(); }
};

void validate_xi(const PreMS& P, const XiElem& e);

XiElem xi_zero(const PreMS& P, int hdeg, int vdeg);
XiElem xi_scale(const Rat& c, const XiElem& e);
XiElem xi_add(const XiElem& a, const XiElem& b); // same bigrade (or zero)

// the bracket of bidegree (-1, 0): arity 1 is -d on columns hdeg >= 2,
// arities >= 2 contract the field word into omega on all-hdeg-1 inputs and
// vanish otherwise.  Arity 2 results carry the bracket of the witnesses.
XiElem xi_l(const PreMS& P, const std::vector<XiElem>& elems);

// formal sum of elements keyed by bigrade
using XiSum = std::map<std::pair<int, int>, XiElem>;

void xi_sum_add(XiSum& sum, const XiElem& e, const Rat& c);
bool xi_sum_is_zero(const XiSum& sum, bool include_fields);

// sum over i+j=n+1 and (i, n-i)-unshuffles of l_j(l_i(...), rest) with the
// Koszul sign of the total degrees
XiSum xi_jacobi_defect(const PreMS& P, const std::vector<XiElem>& elems);

// projection onto the field of a column-1 element
MV pi1(const PreMS& P, const XiElem& e);

// pi1(l_n(elems)) minus the image bracket: nu of the fields at arity 2 (and
// nu_n when `strong`), zero otherwise.  Vanishes iff pi1 is a strict
// morphism onto the binary-bracket truncation.
MV pi1_defect(const PreMS& P, const std::vector<XiElem>& elems, bool strong);

// form part of the bracket computed from alternative witness fields; equal
// to xi_l whenever the replacements pair with the same forms
Form xi_l_form_with_witnesses(const PreMS& P, const std::vector<XiElem>& elems,
                              const std::vector<MV>& witnesses);

// d i_{x1...xn} omega - i_{nu_n(x)} omega; zero on words of multisymplectic
// fields (for a single field this is just d i_x omega)
Form maincl_defect(const PreMS& P, const MVWord& word);

// solve i_x omega = beta when omega is a constant multiple of the volume
// form: each generator word contracts to a single complementary form word
MV vol_preimage(const PreMS& P, const Form& beta);

// hamiltonian pair with a random primitive; requires omega = c * vol and
// dim = m + 1, so vol_preimage applies
std::pair<MV, Form> random_ham_pair(const PreMS& P, SplitMix64& rng, int field_deg,
                                    int coeff_deg);

} // namespace msym
