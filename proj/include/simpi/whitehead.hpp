#pragma once

#include <map>
#include <optional>

#include "simpi/chain.hpp"
#include "simpi/hurewicz.hpp"
#include "simpi/loopgroup.hpp"

namespace simpi {

struct WhiteheadError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using AbElem = std::vector<Int>;

// Z/q_1 + ... + Z/q_m with q_i = 0 meaning a free summand
struct AbelianGroup {
    std::vector<Int> orders;

    size_t rank() const { return orders.size(); }
    AbElem zero() const { return AbElem(orders.size(), 0); }
    AbElem normalize(AbElem a) const;
    AbElem add(const AbElem& a, const AbElem& b) const;
    AbElem neg(const AbElem& a) const;
    AbElem sub(const AbElem& a, const AbElem& b) const { return add(a, neg(b)); }
    AbElem scale(const AbElem& a, const Int& n) const;
    bool is_zero(const AbElem& a) const;
    // the i-th basis element
    AbElem unit(size_t i) const;
    std::string describe(const AbElem& a) const;
};

// q-simplex of K(pi, n): a labeling of the n-faces of the standard q-simplex,
// n-faces given as vertex bitmasks; zero labels are not stored
struct EMSimplex {
    int n = 0, q = 0;
    std::map<unsigned, AbElem> labels;

    friend bool operator==(const EMSimplex&, const EMSimplex&) = default;
    friend bool operator<(const EMSimplex& a, const EMSimplex& b)
    {
        if (a.n != b.n || a.q != b.q)
            return std::pair(a.n, a.q) < std::pair(b.n, b.q);
        return a.labels < b.labels;
    }
};

// locally effective simplicial abelian group K(pi, n); simplices are cocycles on standard simplices
class EMSpace {
public:
    EMSpace(AbelianGroup pi, int n);

    const AbelianGroup& group() const { return pi_; }
    int degree() const { return n_; }

    EMSimplex zero(int q) const;
    AbElem label(const EMSimplex& s, unsigned face) const;
    EMSimplex make(int q, const std::map<unsigned, AbElem>& labels) const;

    EMSimplex face(const EMSimplex& s, int j) const;
    EMSimplex degen(const EMSimplex& s, int j) const;
    EMSimplex add(const EMSimplex& a, const EMSimplex& b) const;
    EMSimplex neg(const EMSimplex& a) const;

    // alternating sums over boundaries of (n+1)-faces all vanish
    bool is_cocycle(const EMSimplex& s) const;
    // coboundary of an (n-1)-cochain on the q-simplex, given as a labeling of (n-1)-faces
    EMSimplex coboundary(int q, const std::map<unsigned, AbElem>& cochain) const;

    // for K(pi,1): the q-simplex with label `k` on the edge (i, j); K(pi,n)_n is identified with pi
    EMSimplex from_element(const AbElem& k) const;
    AbElem as_element(const EMSimplex& s) const;

private:
    AbelianGroup pi_;
    int n_;
};

// all n-faces of the q-simplex as masks, in lexicographic order of their vertex lists
std::vector<unsigned> faces_of_size(int q, int size);

// twisting K(pi,n)_q -> K(pi,n-1)_{q-1} of the path fibration with the last face twisted:
// tau(b)(e) = (-1)^n (b(e + {q}) - b(e + {q-1}))  with the second term only when q-1 is not in e
EMSimplex em_twisting(const EMSpace& base, const EMSpace& fiber, const EMSimplex& b);
// the (n-1)-cochain coning b from the last vertex; d of it is b
std::map<unsigned, AbElem> em_cone(const EMSpace& base, const EMSimplex& b);

// first Postnikov map X -> K(pi_2, 2) through a projection onto 2-cycles
class PostnikovTwo {
public:
    explicit PostnikovTwo(std::shared_ptr<const SimplicialSet> x);

    const SimplicialSet& space() const { return *x_; }
    const EMSpace& target() const { return k2_; }
    const AbelianGroup& group() const { return k2_.group(); }
    // representative cycles of the basis of pi_2 = H_2
    const std::vector<Chain>& generators() const { return gens_; }
    Chain representative(const AbElem& k) const;
    AbElem class_of(const Chain& z) const;

    AbElem on_triangle(const Simplex& t) const;
    EMSimplex operator()(const Simplex& x) const;

private:
    std::shared_ptr<const SimplicialSet> x_;
    ChainOps ops_;
    EMSpace k2_;
    std::vector<Chain> gens_;
    std::vector<int> flip_;
    std::map<int, AbElem> triangles_;
};

// F_3 = X x_tau' K(pi_2, 1) with tau' = tau phi_2, accessed simplex by simplex
struct F3Cell {
    Simplex x;
    EMSimplex k;

    int dim() const { return x.dim; }
    friend bool operator==(const F3Cell&, const F3Cell&) = default;
    friend bool operator<(const F3Cell& a, const F3Cell& b)
    {
        if (a.x != b.x)
            return a.x < b.x;
        return a.k < b.k;
    }
};

using F3Word = Word<F3Cell>;

class StageThree {
public:
    explicit StageThree(std::shared_ptr<const SimplicialSet> x);

    const SimplicialSet& base() const { return phi_.space(); }
    const PostnikovTwo& phi2() const { return phi_; }
    const EMSpace& fiber() const { return k1_; }
    const AbelianGroup& pi2() const { return phi_.group(); }

    // tau'(x) in K(pi_2,1)_{dim x - 1}
    EMSimplex twisting(const Simplex& x) const;

    F3Cell face(const F3Cell& c, int i) const;
    F3Cell degen(const F3Cell& c, int j) const;

    // named cells: (x, k) on level 0, the basepoint edge is "*"
    F3Cell point(int n) const;
    F3Cell edge(const Simplex& x, const AbElem& k) const;
    F3Cell star(const AbElem& k) const { return edge(base().point(1), k); }
    // a 2-cell with fiber labels (k0, k1, k2) on the edges 12, 02, 01
    F3Cell triangle(const Simplex& y, const AbElem& k0, const AbElem& k1, const AbElem& k2) const;

    // loop group GF_3
    bool killed(const F3Cell& g) const;
    F3Word bar(const F3Cell& g, const Int& e = 1) const;
    F3Word gen_face(const F3Cell& g, int i) const;
    F3Word face(const F3Word& w, int i) const;
    F3Word degen(const F3Word& w, int j) const;
    // the level-0 word of x-bar from GX_0 with zero fiber labels
    F3Word lift_zero(const GroupWord& w) const;

    std::string describe(const F3Cell& c) const;
    std::string describe(const F3Word& w) const;

private:
    PostnikovTwo phi_;
    EMSpace k1_;
};

// one state of the rewriting: z in (GF_3)_1 with d_0 z = 1 and w = d_1 z
class F3Rewriter {
public:
    F3Rewriter(const StageThree& f, F3Word z, bool check_each_step = false);

    const F3Word& z() const { return z_; }
    const F3Word& w() const { return w_; }
    size_t steps() const { return steps_; }

    // w = u a  ~  a u
    void rotate(const F3Word& u);
    // w = g^e a  ~  a g^e
    void rule1(const F3Cell& g, const Int& e);
    // w = (*,k)^e a  ~  (*,-k)^-e a
    void rule2(const AbElem& k, const Int& e);
    // w = (*,-k)^-1 (x,0) a  ~  (x,k) a
    void rule3(const Simplex& x, const AbElem& k);
    // w = (x,0)^-1 (x,k) a  ~  (*,k) a
    void rule4(const Simplex& x, const AbElem& k);
    // w = (*,-l)^-1 (*,k) a  ~  (*,k+l) a
    void rule5(const AbElem& k, const AbElem& l);
    // w = (x,0)^e (*,c) (x,0)^-e a  ~  (*,c) a
    void drop_conjugation(const Simplex& x, const AbElem& c, int e);

    // faces of z recomputed from scratch
    bool verify() const;

private:
    const StageThree& f_;
    F3Word z_, w_;
    bool check_;
    size_t steps_ = 0;

    void replace(const F3Word& from, const F3Word& to, const F3Word& witness);
};

// loop contraction on GF_3 built from one on GX
class F3Contraction {
public:
    F3Contraction(std::shared_ptr<const SimplicialSet> x, LoopContraction c0);

    const StageThree& stage() const { return f_; }

    F3Word on_star(const AbElem& k);
    F3Word on_zero(const Simplex& x);
    F3Word on_edge(const Simplex& x, const AbElem& k);
    F3Word on_generator(const F3Cell& g);
    F3Word operator()(const F3Word& w);

    // spherical word of GX_1 for the class k, with its factors' tau' values
    GroupWord spherical(const AbElem& k);

private:
    StageThree f_;
    LoopContraction c0_;
    HurewiczContext hurewicz_;
    std::map<AbElem, F3Word> stars_;
};

// d_0 c(g) = g and d_1 c(g) = 1
bool check_f3_contraction(const StageThree& f, const F3Cell& g, const F3Word& c);

// F_i for i > 3 in dimensions up to 2: an F_3 cell padded by zeros in the
// 1-reduced fibers K(pi_j, j-1), j = 3..i-1
struct PaddedCell {
    F3Cell core;
    std::vector<EMSimplex> tail;

    friend bool operator==(const PaddedCell&, const PaddedCell&) = default;
    friend bool operator<(const PaddedCell& a, const PaddedCell& b)
    {
        if (!(a.core == b.core))
            return a.core < b.core;
        return a.tail < b.tail;
    }
};
using PaddedWord = Word<PaddedCell>;

class StageHigher {
public:
    // fibers K(pi_j, j-1) for j = 3 .. 3 + groups.size() - 1
    StageHigher(const StageThree& f3, std::vector<AbelianGroup> groups);

    const StageThree& core() const { return f3_; }
    int stage() const { return 3 + static_cast<int>(tail_.size()); }

    PaddedCell pad(const F3Cell& c) const;
    PaddedWord pad(const F3Word& w) const;
    F3Word strip(const PaddedWord& w) const;

    // faces on cells of dimension <= 2, where every higher twisting lands in a trivial group
    PaddedCell face(const PaddedCell& c, int i) const;
    bool killed(const PaddedCell& g) const;
    PaddedWord face(const PaddedWord& w, int i) const;

private:
    const StageThree& f3_;
    std::vector<EMSpace> tail_;
};

PaddedWord fi_contract(const StageHigher& fi, F3Contraction& c3, const PaddedWord& w);

}  // namespace simpi
