#include "msym/linfty.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace msym {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// iterate all tuples of given length over a space's basis
void all_tuples(int dim, int len, const std::function<void(const Tuple&)>& fn) {
    Tuple t(static_cast<size_t>(len), 0);
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

void LInfty::set_bracket(const MultiMap& l) {
    require(static_cast<bool>(space), "LInfty: space not set");
    require(l.in == space && l.out == space, "LInfty: bracket on wrong space");
    require(l.arity_out == 1, "LInfty: bracket must have one output");
    require(l.degree == -1, "LInfty: bracket must have degree -1");
    require(is_symmetric(l), "LInfty: bracket must be symmetric");
    brackets[l.arity_in] = l;
    max_arity = std::max(max_arity, l.arity_in);
}

const MultiMap* LInfty::bracket(int arity) const {
    auto it = brackets.find(arity);
    return it == brackets.end() ? nullptr : &it->second;
}

MultiMap linfty_jacobi_defect(const LInfty& L, int n) {
    MultiMap acc = zero_map(L.space, L.space, n, 1, -2);
    for (int i = 1; i <= n; ++i) {
        int j = n + 1 - i;
        const MultiMap* li = L.bracket(i);
        const MultiMap* lj = L.bracket(j);
        if (li == nullptr || lj == nullptr) continue;
        acc = map_add(acc, insert(*lj, *li, InsertVariant::Sym));
    }
    return acc;
}

void LMorphism::set_comp(const MultiMap& f) {
    require(static_cast<bool>(source) && static_cast<bool>(target), "LMorphism: spaces not set");
    require(f.in == source && f.out == target, "LMorphism: component on wrong spaces");
    require(f.arity_out == 1, "LMorphism: component must have one output");
    require(f.degree == 0, "LMorphism: component must have degree 0");
    require(is_symmetric(f), "LMorphism: component must be symmetric");
    comps[f.arity_in] = f;
    max_arity = std::max(max_arity, f.arity_in);
}

const MultiMap* LMorphism::comp(int arity) const {
    auto it = comps.find(arity);
    return it == comps.end() ? nullptr : &it->second;
}

namespace {

// ordered compositions of n into b positive parts, then all b
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

MultiMap morphism_defect(const LMorphism& f, const LInfty& src, const LInfty& tgt, int n) {
    require(f.source == src.space && f.target == tgt.space, "morphism_defect: space mismatch");

    MultiMap lhs = zero_map(f.source, f.target, n, 1, -1);
    for (int i = 1; i <= n; ++i) {
        int j = n + 1 - i;
        const MultiMap* li = src.bracket(i);
        const MultiMap* fj = f.comp(j);
        if (li == nullptr || fj == nullptr) continue;
        lhs = map_add(lhs, insert(*fj, *li, InsertVariant::Sym));
    }

    MultiMap rhs = zero_map(f.source, f.target, n, 1, -1);
    for_compositions(n, [&](const std::vector<int>& parts) {
        int b = static_cast<int>(parts.size());
        const MultiMap* qb = tgt.bracket(b);
        if (qb == nullptr) return;
        std::vector<const MultiMap*> fs(parts.size());
        for (size_t k = 0; k < parts.size(); ++k) {
            fs[k] = f.comp(parts[k]);
            if (fs[k] == nullptr) return;
        }
        Rat weight = Rat(1) / factorial(b);
        auto shuffles = unshuffles(parts);
        all_tuples(f.source->dim(), n, [&](const Tuple& v) {
            std::vector<int> degs(v.size());
            for (size_t k = 0; k < v.size(); ++k) degs[k] = f.source->degree(v[k]);
            Tensor total;
            for (const Perm& s : shuffles) {
                int eps = koszul_sign(s, degs);
                Tuple w(v.size());
                for (size_t k = 0; k < v.size(); ++k) w[k] = v[s(static_cast<int>(k) + 1) - 1];
                // evaluate the components on the blocks (all of degree 0,
                // so no interchange signs), then the target bracket
                std::vector<Tensor> block_vals(parts.size());
                int pos = 0;
                bool any_zero = false;
                for (size_t k = 0; k < parts.size(); ++k) {
                    Tuple block(w.begin() + pos, w.begin() + pos + parts[k]);
                    pos += parts[k];
                    block_vals[k] = fs[k]->eval(block);
                    if (block_vals[k].empty()) {
                        any_zero = true;
                        break;
                    }
                }
                if (any_zero) continue;
                std::function<void(size_t, Tuple&, const Rat&)> expand =
                    [&](size_t k, Tuple& picked, const Rat& c) {
                        if (k == parts.size()) {
                            for (const auto& [ot, oc] : qb->eval(picked))
                                tensor_add(total, ot, c * oc);
                            return;
                        }
                        for (const auto& [bt, bc] : block_vals[k]) {
                            picked.push_back(bt[0]);
                            expand(k + 1, picked, c * bc);
                            picked.pop_back();
                        }
                    };
                Tuple picked;
                expand(0, picked, weight * eps);
            }
            for (const auto& [ot, oc] : total)
                if (oc != 0) rhs.add_entry(v, ot, oc);
        });
    });

    return map_add(lhs, map_scale(Rat(-1), rhs));
}

bool is_strict(const LMorphism& f) {
    for (const auto& [arity, comp] : f.comps)
        if (arity >= 2 && !comp.is_zero()) return false;
    return true;
}

bool is_synchronized(const LMorphism& f, const std::map<std::string, int>& word_length) {
    for (const auto& [arity, comp] : f.comps) {
        for (const auto& [ins, out] : comp.coeffs) {
            for (const auto& [ot, c] : out) {
                if (c == 0) continue;
                auto it = word_length.find(f.target->labels[ot[0]]);
                require(it != word_length.end(), "is_synchronized: unlabeled target element");
                if (it->second != arity) return false;
            }
        }
    }
    return true;
}

int CochainComplexFD::dim(int deg) const {
    if (deg < 0 || deg > m) return 0;
    return static_cast<int>(labels[static_cast<size_t>(deg)].size());
}

int CochainComplexFD::index_of(int deg, const std::string& label) const {
    if (deg < 0 || deg > m) return -1;
    const auto& row = labels[static_cast<size_t>(deg)];
    auto it = std::find(row.begin(), row.end(), label);
    return it == row.end() ? -1 : static_cast<int>(it - row.begin());
}

void CochainComplexFD::validate() const {
    require(static_cast<int>(labels.size()) == m + 1, "complex: wrong number of degrees");
    require(static_cast<int>(d.size()) == m, "complex: wrong number of differentials");
    for (int i = 0; i < m; ++i) {
        require(d[static_cast<size_t>(i)].rows == dim(i + 1) && d[static_cast<size_t>(i)].cols == dim(i),
                "complex: differential shape mismatch");
    }
    for (int i = 0; i + 1 < m; ++i) {
        const Mat& a = d[static_cast<size_t>(i + 1)];
        const Mat& b = d[static_cast<size_t>(i)];
        for (int r = 0; r < a.rows; ++r)
            for (int c = 0; c < b.cols; ++c) {
                Rat s = 0;
                for (int k = 0; k < a.cols; ++k) s += a.at(r, k) * b.at(k, c);
                require(s == 0, "complex: d.d != 0");
            }
    }
}

std::optional<std::pair<std::vector<int>, int>>
normalize_word(const SpacePtr& space, std::vector<int> labels) {
    int sign = 1;
    for (size_t i = 1; i < labels.size(); ++i) {
        size_t j = i;
        while (j > 0 && labels[j - 1] > labels[j]) {
            int s = space->degree(labels[j - 1]) * space->degree(labels[j]);
            if (s % 2 != 0) sign = -sign;
            std::swap(labels[j - 1], labels[j]);
            --j;
        }
    }
    for (size_t i = 1; i < labels.size(); ++i)
        if (labels[i] == labels[i - 1] && space->degree(labels[i]) % 2 != 0)
            return std::nullopt;
    return std::make_pair(std::move(labels), sign);
}

std::string word_label(const SpacePtr& space, const std::vector<int>& word) {
    std::string s;
    for (size_t i = 0; i < word.size(); ++i) {
        if (i > 0) s += ".";
        s += space->labels[word[i]];
    }
    return s;
}

namespace {

// sorted multisets of basis indices of the given total degree
void words_of_degree(const SpacePtr& space, int total, std::vector<std::vector<int>>& out) {
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int start, int rest) {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int idx = start; idx < space->dim(); ++idx) {
            int d = space->degree(idx);
            if (d > rest) continue;
            if (!cur.empty() && cur.back() == idx && d % 2 != 0) continue;
            cur.push_back(idx);
            rec(idx, rest - d);
            cur.pop_back();
        }
    };
    rec(0, total);
}

} // namespace

CEComplex ce_codifferential(const LInfty& L, int m) {
    require(static_cast<bool>(L.space), "ce_codifferential: space not set");
    for (int idx = 0; idx < L.space->dim(); ++idx)
        require(L.space->degree(idx) >= 1, "ce_codifferential: generators must sit in degree >= 1");

    CEComplex ce;
    ce.complex.m = m;
    ce.complex.labels.resize(static_cast<size_t>(m) + 1);
    ce.words.resize(static_cast<size_t>(m) + 1);
    for (int n = 0; n <= m; ++n) {
        words_of_degree(L.space, m + 1 - n, ce.words[static_cast<size_t>(n)]);
        for (const auto& w : ce.words[static_cast<size_t>(n)])
            ce.complex.labels[static_cast<size_t>(n)].push_back(word_label(L.space, w));
    }

    // column index of a word within its cochain degree
    std::vector<std::map<std::vector<int>, int>> index(static_cast<size_t>(m) + 1);
    for (int n = 0; n <= m; ++n)
        for (size_t c = 0; c < ce.words[static_cast<size_t>(n)].size(); ++c)
            index[static_cast<size_t>(n)][ce.words[static_cast<size_t>(n)][c]] = static_cast<int>(c);

    ce.complex.d.resize(static_cast<size_t>(m));
    for (int n = 0; n < m; ++n)
        ce.complex.d[static_cast<size_t>(n)] =
            Mat(ce.complex.dim(n + 1), ce.complex.dim(n));

    for (int n = 0; n <= m; ++n) {
        const auto& basis = ce.words[static_cast<size_t>(n)];
        for (size_t col = 0; col < basis.size(); ++col) {
            const std::vector<int>& w = basis[col];
            int len = static_cast<int>(w.size());
            std::vector<int> degs(w.size());
            for (size_t k = 0; k < w.size(); ++k) degs[k] = L.space->degree(w[k]);

            std::map<std::vector<int>, Rat> result;
            for (int i = 1; i <= len; ++i) {
                const MultiMap* li = L.bracket(i);
                if (li == nullptr) continue;
                std::vector<Perm> shs = (i == len) ? std::vector<Perm>{Perm::identity(len)}
                                                   : unshuffles({i, len - i});
                for (const Perm& s : shs) {
                    int eps = koszul_sign(s, degs);
                    Tuple head(static_cast<size_t>(i));
                    for (int k = 0; k < i; ++k) head[static_cast<size_t>(k)] = w[s(k + 1) - 1];
                    std::vector<int> tail;
                    for (int k = i; k < len; ++k) tail.push_back(w[s(k + 1) - 1]);
                    for (const auto& [ot, oc] : li->eval(head)) {
                        std::vector<int> nw;
                        nw.push_back(ot[0]);
                        nw.insert(nw.end(), tail.begin(), tail.end());
                        auto norm = normalize_word(L.space, std::move(nw));
                        if (!norm) continue;
                        result[norm->first] += Rat(eps * norm->second) * oc;
                    }
                }
            }

            for (const auto& [nw, c] : result) {
                if (c == 0) continue;
                if (n + 1 > m) {
                    ++ce.boundary_drops;
                    continue;
                }
                auto it = index[static_cast<size_t>(n) + 1].find(nw);
                if (it == index[static_cast<size_t>(n) + 1].end()) {
                    ++ce.boundary_drops;
                    continue;
                }
                ce.complex.d[static_cast<size_t>(n)].at(it->second, static_cast<int>(col)) = c;
            }
        }
    }

    ce.complex.validate();
    return ce;
}

} // namespace msym
