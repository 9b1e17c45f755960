#include "msym/transfer.hpp"

#include "msym/msgeo.hpp"
#include "msym/rng.hpp"

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

using namespace msym;

namespace {

Mat identity_mat(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Vec unit_vec(int n, int i) {
    Vec v(static_cast<size_t>(n));
    v[static_cast<size_t>(i)] = 1;
    return v;
}

// ---- a small instance with a unary bracket on the source ----------------
//
// g abelian with letters g1 (degree 1) and g2 (degree 2), m = 2; D is the
// three-step complex c0 -> c1, c2 with f(g1) = c2, f(g2) = c1 and zero on
// longer words.

struct ToyInstance {
    TransferInput in;
    HamSub sub;
    PChoice pc;
    LInfty L;
    CEComplex CL;
    Mat a;
};

ToyInstance toy() {
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

    // word complex: degree 0 = {g1.g2}, 1 = {g2}, 2 = {g1}
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

// ---- random finite instance: f the identity on the word complex ---------

struct IdInstance {
    TransferInput in;
    HamSub sub;
    PChoice pc;
};

IdInstance identity_instance() {
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

// ---- two letters with the same image: the p-choice is not unique --------

struct TwoLetterInstance {
    TransferInput in;
    HamSub sub;
};

TwoLetterInstance two_letters() {
    TwoLetterInstance t;
    LInfty g;
    g.space = make_space({{"x", 2}, {"y", 2}});

    // delta | alpha | gamma, rho | tau with d(alpha) = gamma, d(rho) = tau
    CochainComplexFD D;
    D.m = 3;
    D.labels = {{"delta"}, {"alpha"}, {"gamma", "rho"}, {"tau"}};
    D.d.resize(3);
    D.d[0] = Mat(1, 1);
    D.d[1] = Mat(2, 1);
    D.d[1].at(0, 0) = 1;
    D.d[2] = Mat(1, 2);
    D.d[2].at(0, 1) = 1;

    // words: degree 0 = {x.x, x.y, y.y}, degree 2 = {x, y}
    CEComplex cg = ce_codifferential(g, 3);
    std::vector<Mat> f(4);
    f[0] = Mat(1, cg.complex.dim(0));
    for (int c = 0; c < f[0].cols; ++c) f[0].at(0, c) = 1;
    f[1] = Mat(1, 0);
    f[2] = Mat(2, 2);
    f[2].at(0, 0) = 1;
    f[2].at(0, 1) = 1;
    f[3] = Mat(1, 0);

    t.in = make_transfer_input(g, 3, D, f);
    t.sub = hamiltonian_subcomplex(t.in);
    return t;
}

QElem random_qelem(const QAlgebra& Q, SplitMix64& rng) {
    const TransferInput& in = *Q.in;
    for (int attempt = 0; attempt < 64; ++attempt) {
        bool col1 = rng.below(3) != 0;
        int hdeg = col1 ? 1 : 2 + static_cast<int>(rng.below(static_cast<uint64_t>(in.m)));
        int vdeg = static_cast<int>(rng.below(static_cast<uint64_t>(in.m)));
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
        validate_q(Q, e);
        return e;
    }
    FAIL("could not sample a nonzero element");
    return QElem{};
}

} // namespace

TEST_CASE("transfer input validation rejects a broken cochain map") {
    LInfty g;
    g.space = make_space({{"g1", 1}, {"g2", 2}});
    CochainComplexFD D;
    D.m = 2;
    D.labels = {{"c0"}, {"c1"}, {"c2"}};
    D.d.resize(2);
    D.d[0] = Mat(1, 1);
    D.d[0].at(0, 0) = 1;
    D.d[1] = Mat(1, 1);
    D.d[1].at(0, 0) = 0;
    std::vector<Mat> f(3);
    f[0] = Mat(1, 1);
    f[0].at(0, 0) = 1; // not a cochain map: d0 f0 != f1 e0 = 0
    f[1] = Mat(1, 1);
    f[2] = Mat(1, 1);
    CHECK_THROWS(make_transfer_input(g, 2, D, f));
}

TEST_CASE("identity instance: subcomplex, p and the graded Jacobi identity") {
    IdInstance t = identity_instance();
    CHECK(t.pc.nu_compatible);

    // f injective on letters: closed vectors are exactly the exact ones plus
    // those whose differential is a letter
    for (int i = 0; i <= 3; ++i) {
        for (const Vec& b : t.sub.basis[static_cast<size_t>(i)]) {
            if (i == 3) break;
            Vec db = mat_apply(t.in.D.d[static_cast<size_t>(i)], b);
            // d(b) = f(p(b)) by construction of p
            auto [fp, n] = f_of_product(t.in, {{3 - i, apply_p(t.in, t.sub, t.pc, i, b)}});
            if (vec_is_zero(db))
                CHECK((n < 0 || vec_is_zero(fp)));
            else
                CHECK(db == fp);
        }
    }

    SplitMix64 rng(2026);
    for (int tilde = 0; tilde <= 1; ++tilde) {
        QAlgebra Q{&t.in, &t.sub, &t.pc, tilde == 1};
        for (int n = 1; n <= 4; ++n) {
            for (int trial = 0; trial < 8; ++trial) {
                std::vector<QElem> elems;
                for (int k = 0; k < n; ++k) elems.push_back(random_qelem(Q, rng));
                CHECK(q_sum_is_zero(q_jacobi_defect(Q, elems), Q.tilde));
            }
        }
    }
}

TEST_CASE("identity instance: the projection onto letters is a strict morphism") {
    IdInstance t = identity_instance();
    SplitMix64 rng(7);
    QAlgebra Q{&t.in, &t.sub, &t.pc, false};
    for (int n = 1; n <= 3; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<QElem> elems;
            for (int k = 0; k < n; ++k) elems.push_back(random_qelem(Q, rng));
            CHECK(vec_is_zero(p_morphism_defect(Q, elems)));
        }
    }
}

TEST_CASE("the bracket does not depend on the choice of p") {
    TwoLetterInstance t = two_letters();

    // degree-1 subspace is spanned by alpha alone, not exact
    REQUIRE(t.sub.basis[1].size() == 1);
    CHECK(t.sub.exact_count[1] == 0);

    PChoice p1 = construct_p(t.in, t.sub);
    CHECK(p1.nu_compatible);
    // pin p(alpha) = y instead of the default solution
    Vec alpha = unit_vec(1, 0);
    Vec target(2);
    target[1] = 1;
    std::vector<std::tuple<int, Vec, Vec>> pins{{1, alpha, target}};
    PChoice p2 = construct_p(t.in, t.sub, &pins);
    CHECK(p2.nu_compatible);

    Vec w1 = apply_p(t.in, t.sub, p1, 1, alpha);
    Vec w2 = apply_p(t.in, t.sub, p2, 1, alpha);
    CHECK(w1 != w2); // genuinely different witnesses

    QAlgebra Q1{&t.in, &t.sub, &p1, false};
    QAlgebra Q2{&t.in, &t.sub, &p2, false};
    QElem e = q_zero(Q1, 1, 1);
    e.dvec = alpha;
    QElem r1 = q_bracket(Q1, {e, e});
    QElem r2 = q_bracket(Q2, {e, e});
    CHECK(r1.dvec == r2.dvec);
    CHECK_FALSE(vec_is_zero(r1.dvec)); // f(x.x) = f(x.y) = f(y.y) = delta
}

TEST_CASE("sampled geometric instance matches the multisymplectic brackets") {
    PreMS P = make_prems(3, 2, form_monomial(3, Poly::constant(3, 1), {1, 2, 3}));

    // a nu-closed span of fields: constant fields, x1 d2, constant bivectors
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

    // coordinates of a field in the span (each basis element is a single
    // monomial component)
    auto field_coords = [&](const MV& x) -> Vec {
        Vec c(gb.size());
        MV rest = x;
        for (size_t a = 0; a < gb.size(); ++a) {
            const auto& [idx, mono] = *gb[a].comps.begin();
            auto it = rest.comps.find(idx);
            if (it == rest.comps.end()) continue;
            auto tm = it->second.terms.find(mono.terms.begin()->first);
            if (tm == it->second.terms.end()) continue;
            c[a] = tm->second;
            rest = mv_add(rest, mv_scale(-c[a], gb[a]));
        }
        REQUIRE(rest.is_zero());
        return c;
    };
    auto field_of = [&](const Vec& c) {
        MV x;
        x.dim = 3;
        for (size_t a = 0; a < gb.size(); ++a) x = mv_add(x, mv_scale(c[a], gb[a]));
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
                Vec c = field_coords(schouten(gb[a], gb[b]));
                for (size_t k = 0; k < c.size(); ++k)
                    if (c[k] != 0)
                        l2.add_entry({static_cast<int>(a), static_cast<int>(b)},
                                     {static_cast<int>(k)}, c[k]);
            }
        g.set_bracket(l2);
    }
    CHECK(linfty_jacobi_defect(g, 3).is_zero());

    // D: forms with polynomial coefficients of degree <= 2
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

    auto form_to_vec = [&](int n, const Form& a) -> Vec {
        Vec v(dbasis[static_cast<size_t>(n)].size());
        Form rest = a;
        for (size_t c = 0; c < v.size(); ++c) {
            const DBasis& b = dbasis[static_cast<size_t>(n)][c];
            auto it = rest.comps.find(b.idx);
            if (it == rest.comps.end()) continue;
            auto tm = it->second.terms.find(b.exps);
            if (tm == it->second.terms.end()) continue;
            v[c] = tm->second;
            Poly mono(3);
            mono.add_term(b.exps, -v[c]);
            rest = form_add(rest, form_monomial(3, mono, b.idx));
        }
        REQUIRE(rest.is_zero());
        return v;
    };
    auto vec_to_form = [&](int n, const Vec& v) {
        Form a;
        a.dim = 3;
        a.deg = n;
        for (size_t c = 0; c < v.size(); ++c) {
            if (v[c] == 0) continue;
            Poly mono(3);
            mono.add_term(dbasis[static_cast<size_t>(n)][c].exps, v[c]);
            a = form_add(a, form_monomial(3, mono, dbasis[static_cast<size_t>(n)][c].idx));
        }
        return a;
    };

    CochainComplexFD D;
    D.m = 2;
    D.labels.resize(3);
    for (int n = 0; n <= 2; ++n)
        for (size_t c = 0; c < dbasis[static_cast<size_t>(n)].size(); ++c)
            D.labels[static_cast<size_t>(n)].push_back("b" + std::to_string(n) + "_" +
                                                       std::to_string(c));
    D.d.resize(2);
    for (int n = 0; n <= 1; ++n) {
        D.d[static_cast<size_t>(n)] = Mat(static_cast<int>(dbasis[static_cast<size_t>(n) + 1].size()),
                                          static_cast<int>(dbasis[static_cast<size_t>(n)].size()));
        for (size_t c = 0; c < dbasis[static_cast<size_t>(n)].size(); ++c) {
            Vec v(dbasis[static_cast<size_t>(n)].size());
            v[c] = 1;
            Vec dv = form_to_vec(n + 1, exterior_d(vec_to_form(n, v)));
            for (size_t r = 0; r < dv.size(); ++r)
                D.d[static_cast<size_t>(n)].at(static_cast<int>(r), static_cast<int>(c)) = dv[r];
        }
    }

    CEComplex cg = ce_codifferential(g, 2);
    std::vector<Mat> f(3);
    for (int n = 0; n <= 2; ++n) {
        f[static_cast<size_t>(n)] = Mat(static_cast<int>(dbasis[static_cast<size_t>(n)].size()),
                                        cg.complex.dim(n));
        for (int c = 0; c < cg.complex.dim(n); ++c) {
            MVWord word;
            for (int idx : cg.words[static_cast<size_t>(n)][static_cast<size_t>(c)])
                word.push_back(gb[static_cast<size_t>(idx)]);
            Vec v = form_to_vec(n, omega_tilde(P, word));
            for (size_t r = 0; r < v.size(); ++r)
                f[static_cast<size_t>(n)].at(static_cast<int>(r), c) = v[r];
        }
    }

    // validates the cochain property: d(contraction) = contraction of the
    // bracket, word by word
    TransferInput in = make_transfer_input(g, 2, D, f);
    HamSub sub = hamiltonian_subcomplex(in);
    PChoice pc = construct_p(in, sub);
    CHECK(pc.nu_compatible);

    // the primitive of i_x omega sits in the subcomplex for every x in g
    for (size_t a = 0; a < gb.size(); ++a) {
        Form beta = omega_tilde(P, {gb[a]});
        Form prim = poincare_primitive(beta);
        int fdeg = 2 - gdeg[a];
        auto coo = ham_coords(sub, fdeg, form_to_vec(fdeg, prim));
        CHECK(coo.has_value());
        // and p recovers a field with the same contraction
        Vec px = apply_p(in, sub, pc, fdeg, form_to_vec(fdeg, prim));
        CHECK(omega_tilde(P, {field_of(px)}) == beta);
    }

    // elementwise agreement of the abstract brackets with the geometric ones
    SplitMix64 rng(99);
    auto random_pair_elem = [&](QAlgebra& Q, XiElem& xe) {
        int vdeg = static_cast<int>(rng.below(2));
        Vec c(gb.size());
        for (size_t a = 0; a < gb.size(); ++a)
            if (gdeg[a] == 1 + vdeg) c[a] = Rat(static_cast<long>(rng.below(5)) - 2);
        MV x = field_of(c);
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
        qe.gvec = c;
        return qe;
    };
    auto random_form_elem = [&](QAlgebra& Q, XiElem& xe) {
        int hdeg = 2;
        int vdeg = 0;
        Form a = vec_to_form(0, Vec{Rat(static_cast<long>(rng.below(7)) - 3)});
        // degree 0 of D is the only bigrade with hdeg >= 2 here (m = 2)
        xe = XiElem{};
        xe.hdeg = hdeg;
        xe.vdeg = vdeg;
        xe.form = a;
        xe.form.dim = 3;
        xe.form.deg = 0;
        QElem qe = q_zero(Q, hdeg, vdeg);
        qe.dvec = form_to_vec(0, a);
        return qe;
    };

    for (int tilde = 0; tilde <= 1; ++tilde) {
        QAlgebra Q{&in, &sub, &pc, tilde == 1};
        for (int n = 1; n <= 3; ++n) {
            for (int trial = 0; trial < 6; ++trial) {
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
                CHECK(qr.hdeg == xr.hdeg);
                CHECK(qr.vdeg == xr.vdeg);
                int fdeg = q_form_degree(Q, qr.hdeg, qr.vdeg);
                if (fdeg >= 0) {
                    CHECK(vec_to_form(fdeg, qr.dvec) == xr.form);
                    if (Q.tilde && qr.hdeg == 1 && !qr.gvec.empty())
                        CHECK(field_of(qr.gvec) == xr.field);
                } else {
                    CHECK(qr.is_zero());
                    CHECK(xr.is_zero());
                }
            }
        }
        // Jacobi holds here too
        for (int trial = 0; trial < 4; ++trial) {
            std::vector<QElem> elems;
            for (int k = 0; k < 3; ++k) {
                XiElem xe;
                elems.push_back(random_pair_elem(Q, xe));
            }
            CHECK(q_sum_is_zero(q_jacobi_defect(Q, elems), Q.tilde));
        }
    }
}

TEST_CASE("null-homotopies with vanishing h e are exactly the lifts") {
    ToyInstance t = toy();
    CHECK(t.pc.nu_compatible);

    std::vector<Mat> fhat = fhat_from_action(t.in, t.L, t.CL, t.a);
    REQUIRE(fhat.size() == 3);
    CHECK(fhat[1].at(0, 0) == 1); // f(a(w)) = c1
    CHECK(fhat[2].at(0, 0) == 0); // f(a(u)) = 0

    LiftData good;
    good.a = t.a;
    good.h.resize(3);
    good.h[1] = Mat(1, 1);
    good.h[1].at(0, 0) = 1; // h(w) = c0
    good.h[2] = Mat(1, 1);  // h(u) = 0

    // shifted by a homotopy witness: still a null-homotopy, but h e != 0
    LiftData skew;
    skew.a = t.a;
    skew.h.resize(3);
    skew.h[1] = Mat(1, 1);
    skew.h[1].at(0, 0) = 2;
    skew.h[2] = Mat(1, 1);
    skew.h[2].at(0, 0) = -1;

    for (const LiftData* lift : {&good, &skew}) {
        for (const Mat& d : homotopy_defect(t.in, t.CL, lift->h, fhat))
            for (const Rat& v : d.a) CHECK(v == 0);
    }
    CHECK(he_vanishes_on_letters(t.L, t.CL, good.h));
    CHECK_FALSE(he_vanishes_on_letters(t.L, t.CL, skew.h));

    QAlgebra Q{&t.in, &t.sub, &t.pc, true};
    std::string why;
    CHECK(lift_is_morphism(Q, t.L, t.CL, good, 3, &why));
    CHECK_FALSE(lift_is_morphism(Q, t.L, t.CL, skew, 3, &why));
    CHECK(why.find("generating") != std::string::npos);

    // breaking the homotopy itself also breaks the lift
    LiftData broken = good;
    broken.h[1].at(0, 0) = 0;
    bool still_homotopy = true;
    for (const Mat& d : homotopy_defect(t.in, t.CL, broken.h, fhat))
        for (const Rat& v : d.a)
            if (v != 0) still_homotopy = false;
    CHECK_FALSE(still_homotopy);
    CHECK_FALSE(lift_is_morphism(Q, t.L, t.CL, broken, 3, &why));
}
