#pragma once

#include "msym/multilinear.hpp"
#include "msym/matrix.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace msym {

// L-infinity algebra in the symmetric (shifted) convention: every bracket
// l_n is a symmetric multilinear map of degree -1.  Brackets are stored by
// arity; a missing arity means the zero bracket.
struct LInfty {
    SpacePtr space;
    std::map<int, MultiMap> brackets;
    int max_arity = 0;

    LInfty() = default;
    explicit LInfty(SpacePtr sp) : space(std::move(sp)) {}

    // validates arity, degree -1, symmetry, and matching space
    void set_bracket(const MultiMap& l);
    const MultiMap* bracket(int arity) const;
};

// sum over i + j = n + 1 of the insertion of l_i into l_j (symmetric
// variant); the generalized Jacobi identity says this vanishes.
MultiMap linfty_jacobi_defect(const LInfty& L, int n);

// Morphism of L-infinity algebras: degree-0 symmetric components, one per
// arity.  Missing arity means the zero component.
struct LMorphism {
    SpacePtr source;
    SpacePtr target;
    std::map<int, MultiMap> comps;
    int max_arity = 0;

    void set_comp(const MultiMap& f);
    const MultiMap* comp(int arity) const;
};

// Defect of the arity-n morphism equation: the insertion side
//   sum_{i+j=n+1} f_j with l_i inserted
// minus the bracket side
//   sum over compositions (a_1,...,a_b) of n, over (a_1,...,a_b)-unshuffles,
//   of (1/b!) l'_b ( f_{a_1} x ... x f_{a_b} ) composed with the unshuffle.
// All component maps have degree 0, so no interchange signs appear on the
// bracket side beyond the Koszul sign of the unshuffle.
MultiMap morphism_defect(const LMorphism& f, const LInfty& src, const LInfty& tgt, int n);

bool is_strict(const LMorphism& f);

// A morphism into a space whose basis labels carry a word-length grading is
// synchronized when the arity-n component lands in the length-n part.
bool is_synchronized(const LMorphism& f, const std::map<std::string, int>& word_length);

// Finite-dimensional cochain complex concentrated in degrees 0..m, given by
// basis labels per degree and differentials d[i] : degree i -> degree i+1.
struct CochainComplexFD {
    int m = 0;
    std::vector<std::vector<std::string>> labels; // size m+1
    std::vector<Mat> d;                           // size m, d[i]: dim(i+1) x dim(i)

    int dim(int deg) const;
    int index_of(int deg, const std::string& label) const;
    void validate() const; // shapes and d.d == 0
};

// Words of the Chevalley-Eilenberg construction: sorted multisets of basis
// indices.  Normalization sorts by insertion, picking up the Koszul sign
// (-1)^{d1 d2} per adjacent swap; a repeated odd-degree index kills the word.
std::optional<std::pair<std::vector<int>, int>>
normalize_word(const SpacePtr& space, std::vector<int> labels);

std::string word_label(const SpacePtr& space, const std::vector<int>& word);

// Chevalley-Eilenberg complex of an L-infinity algebra, truncated for a
// fixed top degree m: cochain degree n in 0..m holds the words of internal
// degree m+1-n.  The codifferential applies every bracket over the
// 2-block unshuffles of each word.  Requires all generators in degree >= 1.
struct CEComplex {
    CochainComplexFD complex;
    std::vector<std::vector<std::vector<int>>> words; // per cochain degree
    long long boundary_drops = 0; // outputs falling outside the truncation
};

CEComplex ce_codifferential(const LInfty& L, int m);

} // namespace msym
