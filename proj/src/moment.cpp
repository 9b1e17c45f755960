#include "msym/moment.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace msym {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

int find_word(const CEComplex& ce, int n, const std::vector<int>& word) {
    if (n < 0 || n > ce.complex.m) return -1;
    const auto& ws = ce.words[static_cast<size_t>(n)];
    auto it = std::find(ws.begin(), ws.end(), word);
    return it == ws.end() ? -1 : static_cast<int>(it - ws.begin());
}

MVWord word_fields(const GAction& act, const std::vector<int>& word) {
    MVWord w;
    for (int idx : word) w.push_back(act.fields[static_cast<size_t>(idx)]);
    return w;
}

void all_tuples(int dim, int len, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> t(static_cast<size_t>(len), 0);
    while (true) {
        fn(t);
        int k = len - 1;
        while (k >= 0 && ++t[static_cast<size_t>(k)] == dim) {
            t[static_cast<size_t>(k)] = 0;
            --k;
        }
        if (k < 0) break;
    }
}

void for_compositions(int n, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> parts;
    std::function<void(int)> rec = [&](int rest) {
        if (rest == 0) {
            fn(parts);
            return;
        }
        for (int a = 1; a <= rest; ++a) {
            parts.push_back(a);
            rec(rest - a);
            parts.pop_back();
        }
    };
    rec(n);
}

Rat factorial(int b) {
    Rat r = 1;
    for (int k = 2; k <= b; ++k) r *= k;
    return r;
}

} // namespace

bool is_action(const PreMS& P, const GAction& act, bool strong, int max_arity) {
    const SpacePtr& sp = act.L.space;
    require(static_cast<int>(act.fields.size()) == sp->dim(), "is_action: field count");
    for (int b = 0; b < sp->dim(); ++b)
        require(act.fields[static_cast<size_t>(b)].is_zero() ||
                    act.fields[static_cast<size_t>(b)].deg == sp->degree(b),
                "is_action: field degree mismatch");
    bool ok = true;
    for (int n = 1; n <= max_arity && ok; ++n) {
        const MultiMap* ln = act.L.bracket(n);
        all_tuples(sp->dim(), n, [&](const std::vector<int>& v) {
            if (!ok) return;
            MV lhs;
            lhs.dim = P.dim;
            if (ln != nullptr)
                for (const auto& [ot, c] : ln->eval(Tuple(v.begin(), v.end())))
                    lhs = mv_add(lhs, mv_scale(c, act.fields[static_cast<size_t>(ot[0])]));
            MV rhs;
            rhs.dim = P.dim;
            if (n == 2 || (strong && n >= 2)) {
                MVWord w = word_fields(act, v);
                bool any_zero = false;
                for (const MV& x : w)
                    if (x.is_zero()) any_zero = true;
                if (!any_zero) rhs = nu_n(w);
            }
            // truncate past the top degree
            if (rhs.deg > P.m && !rhs.is_zero()) rhs = MV{};
            if (!(lhs == rhs)) ok = false;
        });
    }
    return ok;
}

namespace {

// a strict action has one component: its image is spanned by the acting
// fields themselves
bool classify_letters(const PreMS& P, const GAction& act, FieldClass worst) {
    for (const MV& x : act.fields) {
        if (x.is_zero()) continue;
        FieldClass cls = classify_field(P, x).cls;
        if (worst == FieldClass::Hamiltonian && cls != FieldClass::Hamiltonian)
            return false;
        if (worst == FieldClass::Multisymplectic && cls == FieldClass::General)
            return false;
    }
    return true;
}

} // namespace

bool action_multisymplectic(const PreMS& P, const GAction& act) {
    return classify_letters(P, act, FieldClass::Multisymplectic);
}

bool action_prehamiltonian(const PreMS& P, const GAction& act) {
    return classify_letters(P, act, FieldClass::Hamiltonian);
}

std::vector<Form> fhat_forms(const PreMS& P, const GAction& act, const CEComplex& CL,
                             int n) {
    std::vector<Form> out;
    for (const auto& word : CL.words[static_cast<size_t>(n)])
        out.push_back(omega_tilde(P, word_fields(act, word)));
    return out;
}

std::vector<std::vector<Form>> moment_defect(const PreMS& P, const GAction& act,
                                             const CEComplex& CL, const Homotopy& h) {
    int m = CL.complex.m;
    require(static_cast<int>(h.h.size()) == m + 1, "moment_defect: homotopy size");
    std::vector<std::vector<Form>> defect(static_cast<size_t>(m) + 1);
    for (int n = 0; n <= m; ++n) {
        std::vector<Form> d = fhat_forms(P, act, CL, n);
        for (size_t w = 0; w < d.size(); ++w) {
            if (n >= 1)
                d[w] = form_add(d[w], form_scale(-1, exterior_d(h.h[static_cast<size_t>(n)][w])));
            if (n < m) {
                const Mat& e = CL.complex.d[static_cast<size_t>(n)];
                for (int v = 0; v < e.rows; ++v)
                    if (e.at(v, static_cast<int>(w)) != 0)
                        d[w] = form_add(d[w],
                                        form_scale(-e.at(v, static_cast<int>(w)),
                                                   h.h[static_cast<size_t>(n) + 1][static_cast<size_t>(v)]));
            }
        }
        defect[static_cast<size_t>(n)] = std::move(d);
    }
    return defect;
}

bool is_hmm(const PreMS& P, const GAction& act, const CEComplex& CL, const Homotopy& h) {
    for (const auto& level : moment_defect(P, act, CL, h))
        for (const Form& f : level)
            if (!f.is_zero()) return false;
    return true;
}

bool he_zero_on_letters(const GAction& act, const CEComplex& CL, const Homotopy& h) {
    int m = CL.complex.m;
    for (int b = 0; b < act.L.space->dim(); ++b) {
        int n = m + 1 - act.L.space->degree(b);
        if (n < 0 || n >= m) continue;
        int col = find_word(CL, n, {b});
        if (col < 0) continue;
        const Mat& e = CL.complex.d[static_cast<size_t>(n)];
        Form acc;
        acc.dim = act.fields.empty() ? 0 : act.fields[0].dim;
        for (int v = 0; v < e.rows; ++v)
            if (e.at(v, col) != 0)
                acc = form_add(acc, form_scale(e.at(v, col),
                                               h.h[static_cast<size_t>(n) + 1][static_cast<size_t>(v)]));
        if (!acc.is_zero()) return false;
    }
    return true;
}

bool is_hhmm(const PreMS& P, const GAction& act, const CEComplex& CL, const Homotopy& h) {
    return is_hmm(P, act, CL, h) && he_zero_on_letters(act, CL, h);
}

std::optional<Homotopy> build_homotopy(const PreMS& P, const GAction& act,
                                       const CEComplex& CL) {
    int m = CL.complex.m;
    Homotopy h;
    h.h.resize(static_cast<size_t>(m) + 1);
    for (int n = m; n >= 1; --n) {
        std::vector<Form> rhs = fhat_forms(P, act, CL, n);
        if (n < m) {
            const Mat& e = CL.complex.d[static_cast<size_t>(n)];
            for (size_t w = 0; w < rhs.size(); ++w)
                for (int v = 0; v < e.rows; ++v)
                    if (e.at(v, static_cast<int>(w)) != 0)
                        rhs[w] = form_add(rhs[w],
                                          form_scale(-e.at(v, static_cast<int>(w)),
                                                     h.h[static_cast<size_t>(n) + 1][static_cast<size_t>(v)]));
        }
        std::vector<Form> level;
        for (Form& f : rhs) {
            if (!exterior_d(f).is_zero()) return std::nullopt;
            level.push_back(f.is_zero() ? Form{} : poincare_primitive(f));
        }
        h.h[static_cast<size_t>(n)] = std::move(level);
    }
    // bottom equation: no h-term of its own is left, so the residue must be
    // absorbed by constant shifts of the degree-zero forms in h[1]
    const auto& words0 = CL.words[0];
    if (!words0.empty()) {
        std::vector<Form> res = fhat_forms(P, act, CL, 0);
        const Mat& e = CL.complex.d[0];
        for (size_t w = 0; w < res.size(); ++w)
            for (int v = 0; v < e.rows; ++v)
                if (e.at(v, static_cast<int>(w)) != 0)
                    res[w] = form_add(res[w], form_scale(-e.at(v, static_cast<int>(w)),
                                                         h.h[1][static_cast<size_t>(v)]));
        Mat sys(static_cast<int>(res.size()), e.rows);
        std::vector<Rat> rhs;
        for (size_t w = 0; w < res.size(); ++w) {
            Poly po = res[w].comp({});
            if (!po.is_constant()) return std::nullopt; // closed by construction
            rhs.push_back(po.constant_term());
            for (int v = 0; v < e.rows; ++v) sys.at(static_cast<int>(w), v) = e.at(v, static_cast<int>(w));
        }
        auto sol = solve(sys, rhs);
        if (!sol) return std::nullopt;
        for (int v = 0; v < e.rows; ++v)
            if ((*sol)[static_cast<size_t>(v)] != 0) {
                Form c = form_monomial(P.dim, Poly::constant(P.dim, (*sol)[static_cast<size_t>(v)]), {});
                h.h[1][static_cast<size_t>(v)] = form_add(h.h[1][static_cast<size_t>(v)], c);
            }
    }
    return h;
}

namespace {

XiElem lift_component(const PreMS& P, const GAction& act, const CEComplex& CL,
                      const Homotopy& h, const std::vector<int>& tuple) {
    int j = static_cast<int>(tuple.size());
    int k = 0;
    for (int idx : tuple) k += act.L.space->degree(idx);
    XiElem out = xi_zero(P, j, k - j);
    int fdeg = j == 1 ? P.m - 1 - (k - j) : P.m - j - (k - j);
    if (fdeg < 0) return out;
    auto norm = normalize_word(act.L.space, tuple);
    if (!norm) return out;
    int n = P.m + 1 - k;
    int col = find_word(CL, n, norm->first);
    if (col < 0) return out;
    out.form = form_scale(norm->second, h.h[static_cast<size_t>(n)][static_cast<size_t>(col)]);
    if (j == 1) out.field = mv_scale(norm->second, act.fields[static_cast<size_t>(tuple[0])]);
    return out;
}

} // namespace

bool is_linfty_mm(const PreMS& P, const GAction& act, const CEComplex& CL,
                  const Homotopy& h, int max_arity, std::string* why) {
    const SpacePtr& sp = act.L.space;
    // letters must carry hamiltonian pairs: d h(x) = i_{a x} omega
    for (int b = 0; b < sp->dim(); ++b) {
        XiElem e = lift_component(P, act, CL, h, {b});
        if (!is_ham_pair(P, act.fields[static_cast<size_t>(b)], e.form)) {
            if (why) *why = "pair condition fails on letter " + sp->labels[static_cast<size_t>(b)];
            return false;
        }
    }
    for (int n = 1; n <= max_arity; ++n) {
        bool bad = false;
        all_tuples(sp->dim(), n, [&](const std::vector<int>& v) {
            if (bad) return;
            std::vector<int> degs;
            for (int idx : v) degs.push_back(sp->degree(idx));
            XiSum defect;
            for (int i = 1; i <= n; ++i) {
                const MultiMap* li = act.L.bracket(i);
                if (li == nullptr) continue;
                std::vector<Perm> shs = (i == n) ? std::vector<Perm>{Perm::identity(n)}
                                                 : unshuffles({i, n - i});
                for (const Perm& s : shs) {
                    int eps = koszul_sign(s, degs);
                    Tuple head(static_cast<size_t>(i));
                    for (int a = 1; a <= i; ++a) head[static_cast<size_t>(a) - 1] = v[s(a) - 1];
                    for (const auto& [ot, c] : li->eval(head)) {
                        std::vector<int> tuple{ot[0]};
                        for (int a = i + 1; a <= n; ++a) tuple.push_back(v[s(a) - 1]);
                        xi_sum_add(defect, lift_component(P, act, CL, h, tuple), Rat(eps) * c);
                    }
                }
            }
            for_compositions(n, [&](const std::vector<int>& parts) {
                int b = static_cast<int>(parts.size());
                Rat weight = Rat(-1) / factorial(b);
                std::vector<Perm> shs = (b == 1) ? std::vector<Perm>{Perm::identity(n)}
                                                 : unshuffles(parts);
                for (const Perm& s : shs) {
                    int eps = koszul_sign(s, degs);
                    std::vector<XiElem> args;
                    int pos = 0;
                    for (int part : parts) {
                        std::vector<int> block;
                        for (int a = 0; a < part; ++a) block.push_back(v[s(pos + a + 1) - 1]);
                        pos += part;
                        args.push_back(lift_component(P, act, CL, h, block));
                    }
                    xi_sum_add(defect, xi_l(P, args), weight * eps);
                }
            });
            if (!xi_sum_is_zero(defect, true)) {
                bad = true;
                if (why) *why = "morphism equation fails at arity " + std::to_string(n);
            }
        });
        if (bad) return false;
    }
    return true;
}

bool is_strong_mm(const PreMS& P, const GAction& act, const CEComplex& CL,
                  const Homotopy& h, int max_arity, std::string* why) {
    if (!is_linfty_mm(P, act, CL, h, max_arity, why)) return false;
    const SpacePtr& sp = act.L.space;
    for (int n = 2; n <= max_arity; ++n) {
        bool bad = false;
        all_tuples(sp->dim(), n, [&](const std::vector<int>& v) {
            if (bad) return;
            std::vector<XiElem> elems;
            for (int idx : v) elems.push_back(lift_component(P, act, CL, h, {idx}));
            if (!pi1_defect(P, elems, true).is_zero()) {
                bad = true;
                if (why) *why = "field projection is not strong at arity " + std::to_string(n);
            }
        });
        if (bad) return false;
    }
    return true;
}

bool is_comoment(const PreMS& P, const GAction& act, const std::vector<Poly>& mu) {
    require(P.m == 1, "is_comoment: needs a two-form");
    const SpacePtr& sp = act.L.space;
    require(static_cast<int>(mu.size()) == sp->dim(), "is_comoment: one function per letter");
    for (int b = 0; b < sp->dim(); ++b) {
        require(sp->degree(b) == 1, "is_comoment: letters must be in degree 1");
        Form dmu;
        dmu.dim = P.dim;
        dmu.deg = 0;
        if (!mu[static_cast<size_t>(b)].is_zero())
            dmu = form_monomial(P.dim, mu[static_cast<size_t>(b)], {});
        if (!(exterior_d(dmu) == omega_tilde(P, {act.fields[static_cast<size_t>(b)]})))
            return false;
    }
    const MultiMap* l2 = act.L.bracket(2);
    for (int i = 0; i < sp->dim(); ++i)
        for (int j = 0; j < sp->dim(); ++j) {
            Poly lhs(P.dim);
            if (l2 != nullptr)
                for (const auto& [ot, c] : l2->eval({i, j}))
                    lhs = lhs + c * mu[static_cast<size_t>(ot[0])];
            Poly rhs = omega_tilde(P, {act.fields[static_cast<size_t>(i)],
                                       act.fields[static_cast<size_t>(j)]})
                           .comp({});
            if (!(lhs == rhs)) return false;
        }
    return true;
}

Homotopy homotopy_from_comoment(const PreMS& P, const GAction& act, const CEComplex& CL,
                                const std::vector<Poly>& mu) {
    require(P.m == 1, "homotopy_from_comoment: needs a two-form");
    Homotopy h;
    h.h.resize(2);
    for (const auto& word : CL.words[1]) {
        require(word.size() == 1, "homotopy_from_comoment: degree-one words are letters");
        const Poly& p = mu[static_cast<size_t>(word[0])];
        Form f;
        f.dim = P.dim;
        f.deg = 0;
        if (!p.is_zero()) f = form_monomial(P.dim, p, {});
        h.h[1].push_back(f);
    }
    return h;
}

// ---- worked instances ---------------------------------------------------

namespace {

MV const_field(int dim, const std::vector<int>& idx) {
    return mv_monomial(dim, Poly::constant(dim, 1), idx);
}

GalleryInstance translations_x() {
    GalleryInstance g;
    g.name = "translations-x";
    g.P = make_prems(2, 1, form_monomial(2, Poly::constant(2, 1), {1, 2}));
    g.act.L.space = make_space({{"e", 1}});
    g.act.fields = {const_field(2, {1})};
    g.CL = ce_codifferential(g.act.L, 1);
    g.mu = {Poly::variable(2, 2)}; // i_{d1}(dx1^dx2) = dx2 = d(x2)
    g.h = homotopy_from_comoment(g.P, g.act, g.CL, g.mu);
    g.expected_accept = true;
    return g;
}

GalleryInstance translations_r2() {
    GalleryInstance g;
    g.name = "translations-r2";
    g.P = make_prems(2, 1, form_monomial(2, Poly::constant(2, 1), {1, 2}));
    g.act.L.space = make_space({{"e1", 1}, {"e2", 1}});
    g.act.fields = {const_field(2, {1}), const_field(2, {2})};
    g.CL = ce_codifferential(g.act.L, 1);
    // the natural candidate: primitives of the two contractions.  The word
    // e1.e2 pairs the fields into the volume, a nonzero constant, while the
    // bracket is zero: no choice of mu can absorb it.
    g.mu = {Poly::variable(2, 2), -Poly::variable(2, 1)};
    g.h = std::nullopt; // build_homotopy has no solution here
    g.expected_accept = false;
    return g;
}

GalleryInstance rotations_r3() {
    GalleryInstance g;
    g.name = "rotations-r3";
    g.P = make_prems(3, 2, form_monomial(3, Poly::constant(3, 1), {1, 2, 3}));
    g.act.L.space = make_space({{"e1", 1}, {"e2", 1}, {"e3", 1}});
    // rotation fields x_j d_k - x_k d_j
    auto rot = [](int j, int k) {
        return mv_add(mv_monomial(3, Poly::variable(3, j), {k}),
                      mv_scale(-1, mv_monomial(3, Poly::variable(3, k), {j})));
    };
    g.act.fields = {rot(2, 3), rot(3, 1), rot(1, 2)};
    // structure constants read off the image fields, so the bracket matches
    // the acting convention by construction
    MultiMap l2;
    l2.in = g.act.L.space;
    l2.out = g.act.L.space;
    l2.arity_in = 2;
    l2.arity_out = 1;
    l2.degree = -1;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            MV br = schouten(g.act.fields[static_cast<size_t>(i)],
                             g.act.fields[static_cast<size_t>(j)]);
            for (int k = 0; k < 3; ++k) {
                // each rotation field has a distinct leading monomial
                const auto& [idx, mono] = *g.act.fields[static_cast<size_t>(k)].comps.begin();
                auto it = br.comps.find(idx);
                if (it == br.comps.end()) continue;
                auto tm = it->second.terms.find(mono.terms.begin()->first);
                if (tm == it->second.terms.end() || tm->second == 0) continue;
                Rat c = tm->second / mono.terms.begin()->second;
                l2.add_entry({i, j}, {k}, c);
                br = mv_add(br, mv_scale(-c, g.act.fields[static_cast<size_t>(k)]));
            }
            require(br.is_zero(), "rotations: fields do not close");
        }
    g.act.L.set_bracket(l2);
    g.CL = ce_codifferential(g.act.L, 2);
    g.h = build_homotopy(g.P, g.act, g.CL);
    g.expected_accept = true;
    return g;
}

GalleryInstance graded_m3() {
    GalleryInstance g;
    g.name = "graded-m3";
    g.P = make_prems(4, 3, form_monomial(4, Poly::constant(4, 1), {1, 2, 3, 4}));
    g.act.L.space = make_space({{"e1", 1}, {"e2", 1}, {"w", 2}});
    g.act.fields = {const_field(4, {1}), const_field(4, {2}), const_field(4, {1, 2})};
    g.CL = ce_codifferential(g.act.L, 3);
    g.h = build_homotopy(g.P, g.act, g.CL);
    g.expected_accept = true;
    return g;
}

} // namespace

std::vector<GalleryInstance> moment_gallery() {
    return {translations_x(), translations_r2(), rotations_r3(), graded_m3()};
}

} // namespace msym
