#include "msym/msgeo.hpp"

#include <algorithm>
#include <stdexcept>

namespace msym {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

int total_degree(const XiElem& e) { return e.hdeg + e.vdeg; }

// expected form degree at a bigrade; negative means past the truncation
int form_degree_at(const PreMS& P, int hdeg, int vdeg) {
    return hdeg == 1 ? P.m - 1 - vdeg : P.m - hdeg - vdeg;
}

} // namespace

PreMS make_prems(int dim, int m, const Form& omega) {
    require(dim >= 1 && m >= 1, "make_prems: bad dimensions");
    require(omega.dim == dim, "make_prems: omega on wrong space");
    require(omega.is_zero() || omega.deg == m + 1, "make_prems: omega must have degree m+1");
    require(exterior_d(omega).is_zero(), "make_prems: omega must be closed");
    return PreMS{dim, m, omega};
}

Form omega_tilde(const PreMS& P, const MVWord& word) {
    require(!word.empty(), "omega_tilde: empty word");
    MV x = word[0];
    for (size_t i = 1; i < word.size(); ++i) x = wedge_mv(x, word[i]);
    return contract(x, P.omega);
}

bool is_ham_pair(const PreMS& P, const MV& x, const Form& alpha) {
    return exterior_d(alpha) == contract(x, P.omega);
}

Form poincare_primitive(const Form& a) {
    require(a.deg >= 1 || a.is_zero(), "poincare_primitive: degree must be >= 1");
    require(exterior_d(a).is_zero(), "poincare_primitive: form must be closed");
    Form prim(a.dim, a.deg - 1);
    if (a.is_zero()) return prim;
    int p = a.deg;
    for (const auto& [idx, g] : a.comps) {
        Poly ig = poly_ray_integral(g, p - 1);
        for (size_t k = 0; k < idx.size(); ++k) {
            std::vector<int> rest;
            for (size_t l = 0; l < idx.size(); ++l)
                if (l != k) rest.push_back(idx[l]);
            Poly c = Poly::variable(a.dim, idx[k]) * ig;
            if (k % 2 != 0) c = -c;
            prim.add_signed(rest, c);
        }
    }
    return prim;
}

FieldReport classify_field(const PreMS& P, const MV& x) {
    Form beta = contract(x, P.omega);
    FieldReport rep;
    if (!exterior_d(beta).is_zero()) return rep;
    rep.cls = FieldClass::Multisymplectic;
    if (beta.is_zero()) {
        rep.cls = FieldClass::Hamiltonian;
        rep.primitive = Form(P.dim, beta.deg > 0 ? beta.deg - 1 : 0);
        return rep;
    }
    if (beta.deg == 0) return rep; // nonzero closed function: constant, not exact
    rep.cls = FieldClass::Hamiltonian;
    rep.primitive = poincare_primitive(beta);
    return rep;
}

Form naive_l1(const Form& alpha) { return form_neg(exterior_d(alpha)); }

Form naive_ln(const PreMS& P, const std::vector<std::pair<MV, Form>>& pairs) {
    require(pairs.size() >= 2, "naive_ln: arity must be >= 2");
    MVWord word;
    for (const auto& [x, alpha] : pairs) {
        require(is_ham_pair(P, x, alpha), "naive_ln: input is not a hamiltonian pair");
        word.push_back(x);
    }
    return omega_tilde(P, word);
}

Form naive_jacobi2(const PreMS& P, const std::pair<MV, Form>& p1,
                   const std::pair<MV, Form>& p2) {
    return form_neg(exterior_d(naive_ln(P, {p1, p2})));
}

Form truncated_ln(const PreMS& P, const std::vector<std::pair<MV, Form>>& pairs) {
    for (const auto& [x, alpha] : pairs)
        if (!x.is_zero() && x.deg != 1) return Form(P.dim, 0);
    return naive_ln(P, pairs);
}

void validate_xi(const PreMS& P, const XiElem& e) {
    require(e.hdeg >= 1 && e.vdeg >= 0, "validate_xi: bad bigrade");
    int fdeg = form_degree_at(P, e.hdeg, e.vdeg);
    if (fdeg < 0) {
        require(e.is_zero(), "validate_xi: element past the truncation must be zero");
        return;
    }
    require(e.form.is_zero() || (e.form.dim == P.dim && e.form.deg == fdeg),
            "validate_xi: form degree does not match the bigrade");
    if (e.hdeg == 1) {
        require(e.field.is_zero() || (e.field.dim == P.dim && e.field.deg == 1 + e.vdeg),
                "validate_xi: field degree does not match the bigrade");
        require(is_ham_pair(P, e.field, e.form), "validate_xi: not a hamiltonian pair");
    } else {
        require(e.field.is_zero(), "validate_xi: columns >= 2 carry no field");
    }
}

XiElem xi_zero(const PreMS& P, int hdeg, int vdeg) {
    int fdeg = form_degree_at(P, hdeg, vdeg);
    XiElem e;
    e.hdeg = hdeg;
    e.vdeg = vdeg;
    e.form = Form(P.dim, fdeg >= 0 ? fdeg : 0);
    e.field = MV(P.dim, hdeg == 1 ? 1 + vdeg : 0);
    return e;
}

XiElem xi_scale(const Rat& c, const XiElem& e) {
    XiElem r = e;
    r.form = form_scale(c, e.form);
    r.field = mv_scale(c, e.field);
    return r;
}

XiElem xi_add(const XiElem& a, const XiElem& b) {
    if (a.is_zero() && (a.hdeg != b.hdeg || a.vdeg != b.vdeg)) return b;
    if (b.is_zero() && (a.hdeg != b.hdeg || a.vdeg != b.vdeg)) return a;
    if (a.hdeg != b.hdeg || a.vdeg != b.vdeg)
        throw std::invalid_argument("xi_add: bigrade mismatch");
    XiElem r = a;
    r.form = form_add(a.form, b.form);
    r.field = mv_add(a.field, b.field);
    return r;
}

XiElem xi_l(const PreMS& P, const std::vector<XiElem>& elems) {
    require(!elems.empty(), "xi_l: empty input");
    int k = static_cast<int>(elems.size());
    if (k == 1) {
        const XiElem& e = elems[0];
        if (e.hdeg == 1) return xi_zero(P, 1, e.vdeg); // no differential on column 1
        XiElem r = xi_zero(P, e.hdeg - 1, e.vdeg);
        Form df = form_neg(exterior_d(e.form));
        if (form_degree_at(P, r.hdeg, r.vdeg) < 0) {
            require(df.is_zero(), "xi_l: nonzero value past the truncation");
            return r;
        }
        r.form = df;
        // a result on column 1 pairs with the zero field: d(-d form) = 0
        return r;
    }
    int vsum = 0;
    bool all_col1 = true;
    for (const XiElem& e : elems) {
        vsum += e.vdeg;
        if (e.hdeg != 1) all_col1 = false;
    }
    XiElem r = xi_zero(P, k - 1, vsum);
    if (!all_col1) return r;
    MVWord fields;
    for (const XiElem& e : elems) fields.push_back(e.field);
    Form value = omega_tilde(P, fields);
    if (form_degree_at(P, r.hdeg, r.vdeg) < 0) {
        require(value.is_zero(), "xi_l: nonzero value past the truncation");
        return r;
    }
    r.form = value;
    if (k == 2) r.field = schouten(fields[0], fields[1]);
    return r;
}

void xi_sum_add(XiSum& sum, const XiElem& e, const Rat& c) {
    if (e.is_zero() || c == 0) return;
    auto key = std::make_pair(e.hdeg, e.vdeg);
    auto it = sum.find(key);
    XiElem scaled = xi_scale(c, e);
    if (it == sum.end())
        sum.emplace(key, scaled);
    else
        it->second = xi_add(it->second, scaled);
}

bool xi_sum_is_zero(const XiSum& sum, bool include_fields) {
    for (const auto& [key, e] : sum) {
        if (!e.form.is_zero()) return false;
        if (include_fields && !e.field.is_zero()) return false;
    }
    return true;
}

XiSum xi_jacobi_defect(const PreMS& P, const std::vector<XiElem>& elems) {
    int n = static_cast<int>(elems.size());
    std::vector<int> degs;
    for (const XiElem& e : elems) degs.push_back(total_degree(e));
    XiSum sum;
    for (int i = 1; i <= n; ++i) {
        std::vector<Perm> shs = (i == n) ? std::vector<Perm>{Perm::identity(n)}
                                         : unshuffles({i, n - i});
        for (const Perm& s : shs) {
            int eps = koszul_sign(s, degs);
            std::vector<XiElem> head;
            for (int a = 1; a <= i; ++a) head.push_back(elems[s(a) - 1]);
            XiElem inner = xi_l(P, head);
            if (inner.is_zero()) continue;
            std::vector<XiElem> outer{inner};
            for (int a = i + 1; a <= n; ++a) outer.push_back(elems[s(a) - 1]);
            xi_sum_add(sum, xi_l(P, outer), eps);
        }
    }
    return sum;
}

MV pi1(const PreMS& P, const XiElem& e) {
    return e.hdeg == 1 ? e.field : MV(P.dim, 0);
}

MV pi1_defect(const PreMS& P, const std::vector<XiElem>& elems, bool strong) {
    int n = static_cast<int>(elems.size());
    MV lhs = pi1(P, xi_l(P, elems));
    bool all_col1 = true;
    for (const XiElem& e : elems)
        if (e.hdeg != 1) all_col1 = false;
    MV rhs(P.dim, 0);
    if (all_col1 && n >= 2 && (strong || n == 2)) {
        MVWord fields;
        for (const XiElem& e : elems) fields.push_back(e.field);
        bool any_zero = false;
        for (const MV& f : fields)
            if (f.is_zero()) any_zero = true;
        if (!any_zero) rhs = nu_n(fields);
    }
    return mv_add(lhs, mv_neg(rhs));
}

Form xi_l_form_with_witnesses(const PreMS& P, const std::vector<XiElem>& elems,
                              const std::vector<MV>& witnesses) {
    require(elems.size() == witnesses.size() && elems.size() >= 2,
            "xi_l_form_with_witnesses: arity mismatch");
    for (size_t i = 0; i < elems.size(); ++i) {
        require(elems[i].hdeg == 1, "xi_l_form_with_witnesses: inputs must sit on column 1");
        require(is_ham_pair(P, witnesses[i], elems[i].form),
                "xi_l_form_with_witnesses: witness does not pair with the form");
    }
    return omega_tilde(P, MVWord(witnesses.begin(), witnesses.end()));
}

Form maincl_defect(const PreMS& P, const MVWord& word) {
    require(!word.empty(), "maincl_defect: empty word");
    Form lhs = exterior_d(omega_tilde(P, word));
    MV nu = nu_n(word);
    Form rhs = nu.is_zero() ? Form(P.dim, lhs.deg) : contract(nu, P.omega);
    return form_add(lhs, form_neg(rhs));
}

MV vol_preimage(const PreMS& P, const Form& beta) {
    require(P.omega.comps.size() == 1, "vol_preimage: omega must be a volume multiple");
    const auto& [top, coeff] = *P.omega.comps.begin();
    require(static_cast<int>(top.size()) == P.dim && coeff.is_constant(),
            "vol_preimage: omega must be a constant volume multiple");
    MV x(P.dim, P.dim - beta.deg);
    for (const auto& [idx, g] : beta.comps) {
        std::vector<int> compl_idx;
        for (int i = 1; i <= P.dim; ++i)
            if (std::find(idx.begin(), idx.end(), i) == idx.end()) compl_idx.push_back(i);
        MV gen = mv_monomial(P.dim, Poly::constant(P.dim, 1), compl_idx);
        Poly s = contract(gen, P.omega).comp(idx);
        require(s.is_constant() && !s.is_zero(), "vol_preimage: degenerate pairing");
        x.add_comp(compl_idx, Poly::constant(P.dim, Rat(1) / s.constant_term()) * g);
    }
    return x;
}

std::pair<MV, Form> random_ham_pair(const PreMS& P, SplitMix64& rng, int field_deg,
                                    int coeff_deg) {
    require(P.dim == P.m + 1, "random_ham_pair: needs dim = m + 1");
    require(field_deg >= 1 && field_deg <= P.m, "random_ham_pair: bad field degree");
    while (true) {
        Form prim = random_form(rng, P.dim, P.m - field_deg, coeff_deg);
        Form beta = exterior_d(prim);
        if (beta.is_zero()) continue;
        return {vol_preimage(P, beta), prim};
    }
}

} // namespace msym
