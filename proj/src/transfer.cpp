#include "msym/transfer.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace msym {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

} // namespace

Vec mat_apply(const Mat& m, const Vec& v) {
    require(static_cast<int>(v.size()) == m.cols, "mat_apply: size mismatch");
    Vec r(static_cast<size_t>(m.rows));
    for (int i = 0; i < m.rows; ++i) {
        Rat s = 0;
        for (int j = 0; j < m.cols; ++j) s += m.at(i, j) * v[static_cast<size_t>(j)];
        r[static_cast<size_t>(i)] = s;
    }
    return r;
}

Vec vec_add(const Vec& a, const Vec& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    require(a.size() == b.size(), "vec_add: size mismatch");
    Vec r = a;
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

Vec vec_scale(const Rat& c, const Vec& v) {
    Vec r = v;
    for (Rat& x : r) x *= c;
    return r;
}

bool vec_is_zero(const Vec& v) {
    for (const Rat& x : v)
        if (x != 0) return false;
    return true;
}

namespace {

int word_column(const CEComplex& ce, int n, const std::vector<int>& word) {
    if (n < 0 || n > ce.complex.m) return -1;
    const auto& ws = ce.words[static_cast<size_t>(n)];
    auto it = std::find(ws.begin(), ws.end(), word);
    return it == ws.end() ? -1 : static_cast<int>(it - ws.begin());
}

// indices of the g-basis elements of a given degree
std::vector<int> letters_of_degree(const SpacePtr& sp, int deg) {
    std::vector<int> r;
    for (int b = 0; b < sp->dim(); ++b)
        if (sp->degree(b) == deg) r.push_back(b);
    return r;
}

// f restricted to single-letter words of degree m - i; column order follows
// letters_of_degree
Mat single_letter_f(const TransferInput& in, int i) {
    int deg = in.m - i;
    std::vector<int> letters = letters_of_degree(in.g.space, deg);
    int n = i + 1;
    Mat F(in.D.dim(n), static_cast<int>(letters.size()));
    for (size_t c = 0; c < letters.size(); ++c) {
        int col = word_column(in.cg, n, {letters[c]});
        require(col >= 0, "single_letter_f: letter missing from the word complex");
        for (int r = 0; r < F.rows; ++r)
            F.at(r, static_cast<int>(c)) = in.f[static_cast<size_t>(n)].at(r, col);
    }
    return F;
}

// binary g-bracket on coefficient vectors
Vec g_bracket2(const TransferInput& in, const Vec& x, const Vec& y) {
    Vec r(static_cast<size_t>(in.g.space->dim()));
    const MultiMap* l2 = in.g.bracket(2);
    if (l2 == nullptr) return r;
    for (int a = 0; a < in.g.space->dim(); ++a) {
        if (x[static_cast<size_t>(a)] == 0) continue;
        for (int b = 0; b < in.g.space->dim(); ++b) {
            if (y[static_cast<size_t>(b)] == 0) continue;
            for (const auto& [ot, c] : l2->eval({a, b}))
                r[static_cast<size_t>(ot[0])] +=
                    x[static_cast<size_t>(a)] * y[static_cast<size_t>(b)] * c;
        }
    }
    return r;
}

// echelon basis of the row span
std::vector<Vec> row_span_basis(const std::vector<Vec>& rows, size_t width) {
    if (rows.empty()) return {};
    Mat m(static_cast<int>(rows.size()), static_cast<int>(width));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < width; ++j) m.at(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    rref(m);
    std::vector<Vec> out;
    for (int i = 0; i < m.rows; ++i) {
        Vec v(width);
        bool nz = false;
        for (size_t j = 0; j < width; ++j) {
            v[j] = m.at(i, static_cast<int>(j));
            if (v[j] != 0) nz = true;
        }
        if (nz) out.push_back(v);
    }
    return out;
}

bool grows_rank(const std::vector<Vec>& basis, const Vec& v) {
    if (vec_is_zero(v)) return false;
    if (basis.empty()) return true;
    Mat m(static_cast<int>(basis.size()) + 1, static_cast<int>(v.size()));
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) m.at(static_cast<int>(i), static_cast<int>(j)) = basis[i][j];
    for (size_t j = 0; j < v.size(); ++j)
        m.at(static_cast<int>(basis.size()), static_cast<int>(j)) = v[j];
    return rank(m) == static_cast<int>(basis.size()) + 1;
}

} // namespace

TransferInput make_transfer_input(const LInfty& g, int m, const CochainComplexFD& D,
                                  const std::vector<Mat>& f) {
    require(g.max_arity <= 2, "make_transfer_input: g must carry at most a binary bracket");
    for (int b = 0; b < g.space->dim(); ++b)
        require(g.space->degree(b) >= 1 && g.space->degree(b) <= m,
                "make_transfer_input: g must sit in degrees 1..m");
    TransferInput in;
    in.g = g;
    in.m = m;
    in.cg = ce_codifferential(g, m);
    in.D = D;
    in.D.validate();
    require(in.D.m == m, "make_transfer_input: complex has the wrong top degree");
    in.f = f;
    require(static_cast<int>(f.size()) == m + 1, "make_transfer_input: f needs m+1 blocks");
    for (int n = 0; n <= m; ++n)
        require(f[static_cast<size_t>(n)].rows == D.dim(n) &&
                    f[static_cast<size_t>(n)].cols == in.cg.complex.dim(n),
                "make_transfer_input: f block shape mismatch");
    // cochain property
    for (int n = 0; n < m; ++n) {
        const Mat& fe = f[static_cast<size_t>(n) + 1];
        const Mat& e = in.cg.complex.d[static_cast<size_t>(n)];
        const Mat& df = D.d[static_cast<size_t>(n)];
        const Mat& fn = f[static_cast<size_t>(n)];
        for (int r = 0; r < D.dim(n + 1); ++r)
            for (int c = 0; c < in.cg.complex.dim(n); ++c) {
                Rat lhs = 0, rhs = 0;
                for (int k = 0; k < fe.cols; ++k) lhs += fe.at(r, k) * e.at(k, c);
                for (int k = 0; k < fn.rows; ++k) rhs += df.at(r, k) * fn.at(k, c);
                require(lhs == rhs, "make_transfer_input: f is not a cochain map");
            }
    }
    // hypothesis: letters with equal image have equal products, i.e. the
    // kernel of f on letters annihilates every word
    for (int d = 1; d <= m; ++d) {
        std::vector<int> letters = letters_of_degree(g.space, d);
        if (letters.empty()) continue;
        Mat F = single_letter_f(in, m - d);
        for (const Vec& k : nullspace(F)) {
            for (int nw = 0; nw <= m; ++nw) {
                for (const auto& w : in.cg.words[static_cast<size_t>(nw)]) {
                    int n_out = nw - d;
                    if (n_out < 0) continue;
                    Vec acc(static_cast<size_t>(in.cg.complex.dim(n_out)));
                    for (size_t c = 0; c < letters.size(); ++c) {
                        if (k[c] == 0) continue;
                        std::vector<int> word = w;
                        word.push_back(letters[c]);
                        auto norm = normalize_word(g.space, std::move(word));
                        if (!norm) continue;
                        int col = word_column(in.cg, n_out, norm->first);
                        require(col >= 0, "make_transfer_input: missing product word");
                        acc[static_cast<size_t>(col)] += k[c] * norm->second;
                    }
                    require(vec_is_zero(mat_apply(in.f[static_cast<size_t>(n_out)], acc)),
                            "make_transfer_input: kernel of f does not annihilate products");
                }
            }
        }
    }
    return in;
}

std::pair<Vec, int> f_of_product(const TransferInput& in,
                                 const std::vector<std::pair<int, Vec>>& word) {
    require(!word.empty(), "f_of_product: empty word");
    int total = 0;
    for (const auto& [deg, v] : word) {
        total += deg;
        require(static_cast<int>(v.size()) == in.g.space->dim(), "f_of_product: bad letter");
    }
    int n = in.m + 1 - total;
    if (n < 0 || n > in.m) return {Vec{}, -1};
    Vec acc(static_cast<size_t>(in.cg.complex.dim(n)));
    std::vector<int> picked;
    std::function<void(size_t, const Rat&)> rec = [&](size_t k, const Rat& c) {
        if (k == word.size()) {
            auto norm = normalize_word(in.g.space, picked);
            if (!norm) return;
            int col = word_column(in.cg, n, norm->first);
            require(col >= 0, "f_of_product: missing word");
            acc[static_cast<size_t>(col)] += c * norm->second;
            return;
        }
        for (int b = 0; b < in.g.space->dim(); ++b) {
            const Rat& cb = word[k].second[static_cast<size_t>(b)];
            if (cb == 0) continue;
            if (in.g.space->degree(b) != word[k].first) {
                throw std::invalid_argument("f_of_product: letter is not homogeneous");
            }
            picked.push_back(b);
            rec(k + 1, c * cb);
            picked.pop_back();
        }
    };
    rec(0, 1);
    return {mat_apply(in.f[static_cast<size_t>(n)], acc), n};
}

HamSub hamiltonian_subcomplex(const TransferInput& in) {
    HamSub sub;
    sub.basis.resize(static_cast<size_t>(in.m) + 1);
    sub.exact_count.resize(static_cast<size_t>(in.m) + 1, 0);
    for (int i = 0; i <= in.m; ++i) {
        size_t dim = static_cast<size_t>(in.D.dim(i));
        if (dim == 0) continue;
        // exact block
        std::vector<Vec> exact_rows;
        if (i >= 1) {
            const Mat& d = in.D.d[static_cast<size_t>(i) - 1];
            for (int c = 0; c < d.cols; ++c) {
                Vec v(dim);
                for (int r = 0; r < d.rows; ++r) v[static_cast<size_t>(r)] = d.at(r, c);
                exact_rows.push_back(v);
            }
        }
        std::vector<Vec> basis = row_span_basis(exact_rows, dim);
        sub.exact_count[static_cast<size_t>(i)] = static_cast<int>(basis.size());
        // spanning set of the subcomplex
        std::vector<Vec> span;
        if (i == in.m) {
            for (size_t j = 0; j < dim; ++j) {
                Vec v(dim);
                v[j] = 1;
                span.push_back(v);
            }
        } else {
            Mat F = single_letter_f(in, i);
            const Mat& d = in.D.d[static_cast<size_t>(i)];
            Mat big(d.rows, d.cols + F.cols);
            for (int r = 0; r < d.rows; ++r) {
                for (int c = 0; c < d.cols; ++c) big.at(r, c) = d.at(r, c);
                for (int c = 0; c < F.cols; ++c) big.at(r, d.cols + c) = -F.at(r, c);
            }
            for (const Vec& nv : nullspace(big))
                span.push_back(Vec(nv.begin(), nv.begin() + d.cols));
        }
        for (const Vec& v : span)
            if (grows_rank(basis, v)) basis.push_back(v);
        sub.basis[static_cast<size_t>(i)] = std::move(basis);
    }
    return sub;
}

std::optional<Vec> ham_coords(const HamSub& sub, int deg, const Vec& v) {
    if (deg < 0 || deg >= static_cast<int>(sub.basis.size())) return std::nullopt;
    const auto& basis = sub.basis[static_cast<size_t>(deg)];
    if (vec_is_zero(v)) return Vec(basis.size());
    if (basis.empty()) return std::nullopt;
    Mat m(static_cast<int>(v.size()), static_cast<int>(basis.size()));
    for (size_t c = 0; c < basis.size(); ++c)
        for (size_t r = 0; r < v.size(); ++r)
            m.at(static_cast<int>(r), static_cast<int>(c)) = basis[c][r];
    return solve(m, v);
}

namespace {

struct PinRow {
    int deg = 0;
    Vec coords; // over the full subcomplex basis
    Vec target; // over the letters of degree m - deg
};

// solve the per-degree systems: f p = d on the non-exact block plus the
// accumulated constraint rows; returns false if any system is inconsistent
bool solve_p(const TransferInput& in, const HamSub& sub, const std::vector<PinRow>& cons,
             std::vector<Mat>& out) {
    out.assign(static_cast<size_t>(in.m) + 1, Mat());
    for (int i = 0; i <= in.m; ++i) {
        const auto& basis = sub.basis[static_cast<size_t>(i)];
        out[static_cast<size_t>(i)] = Mat(in.g.space->dim(), static_cast<int>(basis.size()));
        int exact = sub.exact_count[static_cast<size_t>(i)];
        int nfree = static_cast<int>(basis.size()) - exact;
        if (nfree == 0) continue;
        std::vector<int> letters = letters_of_degree(in.g.space, in.m - i);
        int L = static_cast<int>(letters.size());
        if (L == 0) continue; // p must be zero; nothing to solve
        // unknowns: x_{r, l} laid out r-major
        std::vector<Vec> rows;
        Vec rhs;
        if (i < in.m) {
            Mat F = single_letter_f(in, i);
            const Mat& d = in.D.d[static_cast<size_t>(i)];
            for (int r = 0; r < nfree; ++r) {
                Vec da = mat_apply(d, basis[static_cast<size_t>(exact + r)]);
                for (int row = 0; row < F.rows; ++row) {
                    Vec eq(static_cast<size_t>(nfree) * L);
                    for (int l = 0; l < L; ++l)
                        eq[static_cast<size_t>(r) * L + l] = F.at(row, l);
                    rows.push_back(eq);
                    rhs.push_back(da[static_cast<size_t>(row)]);
                }
            }
        }
        for (const PinRow& pin : cons) {
            if (pin.deg != i) continue;
            for (int l = 0; l < L; ++l) {
                Vec eq(static_cast<size_t>(nfree) * L);
                for (int r = 0; r < nfree; ++r)
                    eq[static_cast<size_t>(r) * L + l] = pin.coords[static_cast<size_t>(exact + r)];
                rows.push_back(eq);
                rhs.push_back(pin.target[static_cast<size_t>(l)]);
            }
        }
        if (rows.empty()) continue;
        Mat sys(static_cast<int>(rows.size()), nfree * L);
        for (size_t r = 0; r < rows.size(); ++r)
            for (int c = 0; c < nfree * L; ++c) sys.at(static_cast<int>(r), c) = rows[r][static_cast<size_t>(c)];
        auto sol = solve(sys, rhs);
        if (!sol) return false;
        for (int r = 0; r < nfree; ++r)
            for (int l = 0; l < L; ++l)
                out[static_cast<size_t>(i)].at(letters[static_cast<size_t>(l)], exact + r) =
                    (*sol)[static_cast<size_t>(r) * L + l];
    }
    return true;
}

Vec p_of_basis(const TransferInput& in, const std::vector<Mat>& p, int deg, int col) {
    Vec r(static_cast<size_t>(in.g.space->dim()));
    for (int row = 0; row < in.g.space->dim(); ++row)
        r[static_cast<size_t>(row)] = p[static_cast<size_t>(deg)].at(row, col);
    return r;
}

} // namespace

PChoice construct_p(const TransferInput& in, const HamSub& sub,
                    const std::vector<std::tuple<int, Vec, Vec>>* pins) {
    std::vector<PinRow> base;
    if (pins != nullptr) {
        for (const auto& [deg, alpha, target] : *pins) {
            auto coo = ham_coords(sub, deg, alpha);
            require(coo.has_value(), "construct_p: pinned vector is outside the subcomplex");
            std::vector<int> letters = letters_of_degree(in.g.space, in.m - deg);
            PinRow pin;
            pin.deg = deg;
            pin.coords = *coo;
            for (int l : letters) pin.target.push_back(target[static_cast<size_t>(l)]);
            for (int b = 0; b < in.g.space->dim(); ++b)
                if (in.g.space->degree(b) != in.m - deg)
                    require(target[static_cast<size_t>(b)] == 0,
                            "construct_p: pin target has the wrong degree");
            base.push_back(pin);
        }
    }

    PChoice pc;
    require(solve_p(in, sub, base, pc.p), "construct_p: base system is inconsistent");

    for (int round = 1; round <= 8; ++round) {
        pc.rounds = round;
        // collect bracket-compatibility constraints with the current p
        std::vector<PinRow> cons = base;
        bool expressible = true;
        for (int i1 = 0; i1 <= in.m; ++i1) {
            for (int i2 = i1; i2 <= in.m; ++i2) {
                const auto& b1 = sub.basis[static_cast<size_t>(i1)];
                const auto& b2 = sub.basis[static_cast<size_t>(i2)];
                for (size_t r1 = static_cast<size_t>(sub.exact_count[static_cast<size_t>(i1)]);
                     r1 < b1.size(); ++r1) {
                    for (size_t r2 = static_cast<size_t>(sub.exact_count[static_cast<size_t>(i2)]);
                         r2 < b2.size(); ++r2) {
                        Vec x = p_of_basis(in, pc.p, i1, static_cast<int>(r1));
                        Vec y = p_of_basis(in, pc.p, i2, static_cast<int>(r2));
                        auto [v, n] = f_of_product(in, {{in.m - i1, x}, {in.m - i2, y}});
                        if (n < 0 || vec_is_zero(v)) continue;
                        auto coo = ham_coords(sub, n, v);
                        if (!coo) {
                            expressible = false;
                            continue;
                        }
                        Vec t = g_bracket2(in, x, y);
                        std::vector<int> letters = letters_of_degree(in.g.space, in.m - n);
                        PinRow pin;
                        pin.deg = n;
                        pin.coords = *coo;
                        for (int l : letters) pin.target.push_back(t[static_cast<size_t>(l)]);
                        cons.push_back(pin);
                    }
                }
            }
        }
        std::vector<Mat> next;
        if (!solve_p(in, sub, cons, next)) {
            pc.nu_compatible = false;
            return pc;
        }
        bool stable = true;
        for (size_t i = 0; i < next.size(); ++i)
            if (next[i].a != pc.p[i].a) stable = false;
        pc.p = std::move(next);
        if (stable) {
            pc.nu_compatible = expressible;
            return pc;
        }
    }
    pc.nu_compatible = false;
    return pc;
}

Vec apply_p(const TransferInput& in, const HamSub& sub, const PChoice& pc, int deg,
            const Vec& alpha) {
    auto coo = ham_coords(sub, deg, alpha);
    require(coo.has_value(), "apply_p: vector is outside the subcomplex");
    return mat_apply(pc.p[static_cast<size_t>(deg)], *coo);
}

bool QElem::is_zero() const { return vec_is_zero(dvec) && vec_is_zero(gvec); }

int q_form_degree(const QAlgebra& Q, int hdeg, int vdeg) {
    return hdeg == 1 ? Q.in->m - 1 - vdeg : Q.in->m - hdeg - vdeg;
}

QElem q_zero(const QAlgebra& Q, int hdeg, int vdeg) {
    QElem e;
    e.hdeg = hdeg;
    e.vdeg = vdeg;
    int fdeg = q_form_degree(Q, hdeg, vdeg);
    if (fdeg >= 0) e.dvec.assign(static_cast<size_t>(Q.in->D.dim(fdeg)), 0);
    if (hdeg == 1 && Q.tilde) e.gvec.assign(static_cast<size_t>(Q.in->g.space->dim()), 0);
    return e;
}

void validate_q(const QAlgebra& Q, const QElem& e) {
    require(e.hdeg >= 1 && e.vdeg >= 0, "validate_q: bad bigrade");
    int fdeg = q_form_degree(Q, e.hdeg, e.vdeg);
    if (fdeg < 0) {
        require(e.is_zero(), "validate_q: element past the truncation must be zero");
        return;
    }
    if (!e.dvec.empty())
        require(static_cast<int>(e.dvec.size()) == Q.in->D.dim(fdeg), "validate_q: dvec size");
    if (e.hdeg == 1) {
        require(ham_coords(*Q.sub, fdeg, e.dvec).has_value(),
                "validate_q: column-1 element outside the subcomplex");
        if (Q.tilde) {
            // pair condition d alpha = f(x)
            Vec dx = fdeg < Q.in->m ? mat_apply(Q.in->D.d[static_cast<size_t>(fdeg)], e.dvec)
                                    : Vec(static_cast<size_t>(0));
            auto [fx, n] = f_of_product(*Q.in, {{1 + e.vdeg, e.gvec}});
            if (fdeg == Q.in->m)
                require(n < 0 || vec_is_zero(fx), "validate_q: pair condition fails at the top");
            else
                require(n == fdeg + 1 && dx == fx, "validate_q: pair condition fails");
        }
    } else {
        require(e.gvec.empty() || vec_is_zero(e.gvec), "validate_q: columns >= 2 carry no letter");
    }
}

QElem q_bracket(const QAlgebra& Q, const std::vector<QElem>& elems) {
    require(!elems.empty(), "q_bracket: empty input");
    int k = static_cast<int>(elems.size());
    if (k == 1) {
        const QElem& e = elems[0];
        if (e.hdeg == 1) return q_zero(Q, 1, e.vdeg);
        QElem r = q_zero(Q, e.hdeg - 1, e.vdeg);
        int fdeg = q_form_degree(Q, e.hdeg, e.vdeg);
        if (fdeg < 0 || q_form_degree(Q, r.hdeg, r.vdeg) < 0) return r;
        r.dvec = vec_scale(-1, mat_apply(Q.in->D.d[static_cast<size_t>(fdeg)], e.dvec));
        return r;
    }
    int vsum = 0;
    bool all_col1 = true;
    for (const QElem& e : elems) {
        vsum += e.vdeg;
        if (e.hdeg != 1) all_col1 = false;
    }
    QElem r = q_zero(Q, k - 1, vsum);
    if (!all_col1) return r;
    std::vector<std::pair<int, Vec>> word;
    for (const QElem& e : elems) {
        Vec x = Q.tilde ? e.gvec
                        : apply_p(*Q.in, *Q.sub, *Q.p, q_form_degree(Q, 1, e.vdeg), e.dvec);
        word.push_back({1 + e.vdeg, x});
    }
    auto [v, n] = f_of_product(*Q.in, word);
    int fdeg = q_form_degree(Q, r.hdeg, r.vdeg);
    if (fdeg < 0) {
        require(n < 0 || vec_is_zero(v), "q_bracket: nonzero value past the truncation");
        return r;
    }
    r.dvec = v;
    if (k == 2 && Q.tilde) r.gvec = g_bracket2(*Q.in, word[0].second, word[1].second);
    return r;
}

void q_sum_add(QSum& sum, const QElem& e, const Rat& c) {
    if (e.is_zero() || c == 0) return;
    auto key = std::make_pair(e.hdeg, e.vdeg);
    auto it = sum.find(key);
    if (it == sum.end()) {
        QElem s = e;
        s.dvec = vec_scale(c, e.dvec);
        s.gvec = vec_scale(c, e.gvec);
        sum.emplace(key, std::move(s));
    } else {
        it->second.dvec = vec_add(it->second.dvec, vec_scale(c, e.dvec));
        it->second.gvec = vec_add(it->second.gvec, vec_scale(c, e.gvec));
    }
}

bool q_sum_is_zero(const QSum& sum, bool include_g) {
    for (const auto& [key, e] : sum) {
        if (!vec_is_zero(e.dvec)) return false;
        if (include_g && !vec_is_zero(e.gvec)) return false;
    }
    return true;
}

QSum q_jacobi_defect(const QAlgebra& Q, const std::vector<QElem>& elems) {
    int n = static_cast<int>(elems.size());
    std::vector<int> degs;
    for (const QElem& e : elems) degs.push_back(e.hdeg + e.vdeg);
    QSum sum;
    for (int i = 1; i <= n; ++i) {
        std::vector<Perm> shs = (i == n) ? std::vector<Perm>{Perm::identity(n)}
                                         : unshuffles({i, n - i});
        for (const Perm& s : shs) {
            int eps = koszul_sign(s, degs);
            std::vector<QElem> head;
            for (int a = 1; a <= i; ++a) head.push_back(elems[s(a) - 1]);
            QElem inner = q_bracket(Q, head);
            if (inner.is_zero() && !(Q.tilde && inner.hdeg == 1)) continue;
            std::vector<QElem> outer{inner};
            for (int a = i + 1; a <= n; ++a) outer.push_back(elems[s(a) - 1]);
            q_sum_add(sum, q_bracket(Q, outer), eps);
        }
    }
    return sum;
}

Vec p_morphism_defect(const QAlgebra& Q, const std::vector<QElem>& elems) {
    int n = static_cast<int>(elems.size());
    auto project = [&](const QElem& e) -> Vec {
        if (e.hdeg != 1 || q_form_degree(Q, e.hdeg, e.vdeg) < 0)
            return Vec(static_cast<size_t>(Q.in->g.space->dim()));
        if (Q.tilde) return e.gvec;
        return apply_p(*Q.in, *Q.sub, *Q.p, q_form_degree(Q, 1, e.vdeg), e.dvec);
    };
    Vec lhs = project(q_bracket(Q, elems));
    Vec rhs(static_cast<size_t>(Q.in->g.space->dim()));
    if (n == 2 && elems[0].hdeg == 1 && elems[1].hdeg == 1)
        rhs = g_bracket2(*Q.in, project(elems[0]), project(elems[1]));
    return vec_add(lhs, vec_scale(-1, rhs));
}

std::vector<Mat> fhat_from_action(const TransferInput& in, const LInfty& L,
                                  const CEComplex& CL, const Mat& a) {
    require(a.rows == in.g.space->dim() && a.cols == L.space->dim(),
            "fhat_from_action: action shape mismatch");
    for (int c = 0; c < a.cols; ++c)
        for (int r = 0; r < a.rows; ++r)
            if (a.at(r, c) != 0)
                require(in.g.space->degree(r) == L.space->degree(c),
                        "fhat_from_action: action must preserve degrees");
    std::vector<Mat> fh(static_cast<size_t>(in.m) + 1);
    for (int n = 0; n <= in.m; ++n) {
        const auto& words = CL.words[static_cast<size_t>(n)];
        fh[static_cast<size_t>(n)] = Mat(in.D.dim(n), static_cast<int>(words.size()));
        for (size_t col = 0; col < words.size(); ++col) {
            Vec acc(static_cast<size_t>(in.cg.complex.dim(n)));
            std::vector<int> picked;
            std::function<void(size_t, const Rat&)> rec = [&](size_t k, const Rat& c) {
                if (k == words[col].size()) {
                    auto norm = normalize_word(in.g.space, picked);
                    if (!norm) return;
                    int wc = word_column(in.cg, n, norm->first);
                    require(wc >= 0, "fhat_from_action: image word missing");
                    acc[static_cast<size_t>(wc)] += c * norm->second;
                    return;
                }
                int lidx = words[col][k];
                for (int b = 0; b < in.g.space->dim(); ++b) {
                    if (a.at(b, lidx) == 0) continue;
                    picked.push_back(b);
                    rec(k + 1, c * a.at(b, lidx));
                    picked.pop_back();
                }
            };
            rec(0, 1);
            Vec v = mat_apply(in.f[static_cast<size_t>(n)], acc);
            for (size_t r = 0; r < v.size(); ++r)
                fh[static_cast<size_t>(n)].at(static_cast<int>(r), static_cast<int>(col)) = v[r];
        }
    }
    return fh;
}

namespace {

Mat mat_mul(const Mat& a, const Mat& b) {
    Mat r(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < b.cols; ++j) {
            Rat s = 0;
            for (int k = 0; k < a.cols; ++k) s += a.at(i, k) * b.at(k, j);
            r.at(i, j) = s;
        }
    return r;
}

Mat mat_sub(const Mat& a, const Mat& b) {
    Mat r = a;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= b.a[i];
    return r;
}

} // namespace

std::vector<Mat> homotopy_defect(const TransferInput& in, const CEComplex& CL,
                                 const std::vector<Mat>& h, const std::vector<Mat>& fhat) {
    int m = in.m;
    std::vector<Mat> defect(static_cast<size_t>(m) + 1);
    for (int n = 0; n <= m; ++n) {
        Mat v = fhat[static_cast<size_t>(n)];
        if (n >= 1) v = mat_sub(v, mat_mul(in.D.d[static_cast<size_t>(n) - 1], h[static_cast<size_t>(n)]));
        if (n < m) v = mat_sub(v, mat_mul(h[static_cast<size_t>(n) + 1], CL.complex.d[static_cast<size_t>(n)]));
        defect[static_cast<size_t>(n)] = v;
    }
    return defect;
}

bool he_vanishes_on_letters(const LInfty& L, const CEComplex& CL,
                            const std::vector<Mat>& h) {
    int m = CL.complex.m;
    for (int b = 0; b < L.space->dim(); ++b) {
        int n = m + 1 - L.space->degree(b);
        if (n < 0 || n >= m) continue; // top-degree letters have no codifferential output
        int col = word_column(CL, n, {b});
        if (col < 0) continue;
        const Mat& e = CL.complex.d[static_cast<size_t>(n)];
        Vec ev(static_cast<size_t>(e.rows));
        for (int r = 0; r < e.rows; ++r) ev[static_cast<size_t>(r)] = e.at(r, col);
        if (!vec_is_zero(mat_apply(h[static_cast<size_t>(n) + 1], ev))) return false;
    }
    return true;
}

namespace {

// evaluate the arity-j lift component on a tuple of L basis indices
QElem lift_component(const QAlgebra& Q, const LInfty& L, const CEComplex& CL,
                     const LiftData& lift, const std::vector<int>& tuple) {
    int j = static_cast<int>(tuple.size());
    int k = 0;
    for (int idx : tuple) k += L.space->degree(idx);
    QElem out = q_zero(Q, j, k - j);
    auto norm = normalize_word(L.space, tuple);
    if (!norm) return out;
    int n = Q.in->m + 1 - k;
    int col = word_column(CL, n, norm->first);
    if (col < 0) return out;
    if (q_form_degree(Q, j, k - j) < 0) return out;
    const Mat& hn = lift.h[static_cast<size_t>(n)];
    for (size_t r = 0; r < out.dvec.size(); ++r)
        out.dvec[r] = Rat(norm->second) * hn.at(static_cast<int>(r), col);
    if (j == 1 && Q.tilde) {
        out.gvec.assign(static_cast<size_t>(Q.in->g.space->dim()), 0);
        for (int r = 0; r < lift.a.rows; ++r)
            out.gvec[static_cast<size_t>(r)] = Rat(norm->second) * lift.a.at(r, tuple[0]);
    }
    return out;
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

} // namespace

bool lift_is_morphism(const QAlgebra& Q, const LInfty& L, const CEComplex& CL,
                      const LiftData& lift, int max_arity, std::string* why) {
    const TransferInput& in = *Q.in;
    // generating condition on letters: d h1 = f a
    for (int b = 0; b < L.space->dim(); ++b) {
        int deg = L.space->degree(b);
        QElem e = lift_component(Q, L, CL, lift, {b});
        int fdeg = q_form_degree(Q, 1, deg - 1);
        if (fdeg < 0) continue;
        Vec gx(static_cast<size_t>(in.g.space->dim()));
        for (int r = 0; r < lift.a.rows; ++r) gx[static_cast<size_t>(r)] = lift.a.at(r, b);
        Vec dh = fdeg < in.m ? mat_apply(in.D.d[static_cast<size_t>(fdeg)], e.dvec)
                             : Vec{};
        auto [fa, n] = f_of_product(in, {{deg, gx}});
        bool ok = (fdeg == in.m) ? (n < 0 || vec_is_zero(fa)) : (n == fdeg + 1 && dh == fa);
        if (!ok) {
            if (why) *why = "generating condition fails on letter " + L.space->labels[b];
            return false;
        }
    }
    // morphism equations
    for (int n = 1; n <= max_arity; ++n) {
        bool bad = false;
        std::string badwhy;
        all_tuples(L.space->dim(), n, [&](const std::vector<int>& v) {
            if (bad) return;
            std::vector<int> degs;
            for (int idx : v) degs.push_back(L.space->degree(idx));
            QSum defect;
            // insertion side
            for (int i = 1; i <= n; ++i) {
                const MultiMap* li = L.bracket(i);
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
                        q_sum_add(defect, lift_component(Q, L, CL, lift, tuple), Rat(eps) * c);
                    }
                }
            }
            // bracket side, subtracted
            for_compositions(n, [&](const std::vector<int>& parts) {
                int b = static_cast<int>(parts.size());
                Rat weight = Rat(-1) / factorial(b);
                std::vector<Perm> shs = (b == 1) ? std::vector<Perm>{Perm::identity(n)}
                                                 : unshuffles(parts);
                for (const Perm& s : shs) {
                    int eps = koszul_sign(s, degs);
                    std::vector<QElem> args;
                    int pos = 0;
                    for (int part : parts) {
                        std::vector<int> block;
                        for (int a = 0; a < part; ++a) block.push_back(v[s(pos + a + 1) - 1]);
                        pos += part;
                        args.push_back(lift_component(Q, L, CL, lift, block));
                    }
                    q_sum_add(defect, q_bracket(Q, args), weight * eps);
                }
            });
            if (!q_sum_is_zero(defect, Q.tilde)) {
                bad = true;
                badwhy = "morphism equation fails at arity " + std::to_string(n);
            }
        });
        if (bad) {
            if (why) *why = badwhy;
            return false;
        }
    }
    return true;
}

} // namespace msym
