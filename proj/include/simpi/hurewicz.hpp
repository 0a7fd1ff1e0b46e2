#pragma once

#include <map>
#include <optional>

#include "simpi/chain.hpp"
#include "simpi/loopgroup.hpp"

namespace simpi {

struct HurewiczError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// boundary of the unnormalized chain complex (degenerate faces kept)
Chain full_boundary(const SimplicialSet& x, const Chain& c);

// every simplex of dimension n, degenerate ones included, in a fixed order
std::vector<Simplex> all_simplices(const SimplicialSet& x, int n);

// Abelianized loop group AF. An element of level l is a chain of (l+1)-simplices
// outside the image of the last degeneracy.
Chain af_face(const LoopGroup& gx, const Chain& x, int level, int i);
Chain af_degen(const LoopGroup& gx, const Chain& x, int level, int i);
Chain af_boundary(const LoopGroup& gx, const Chain& x, int level);
bool af_is_moore(const LoopGroup& gx, const Chain& x, int level);

// retraction of C_*(F) onto the shifted Moore complex of AF
struct MooreRetraction {
    const LoopGroup* gx;

    Chain f(const Chain& c) const;
    Chain g(const Chain& x) const;
    Chain h(const Chain& c) const;
    // sum of the tower homotopies, before the side conditions are imposed
    Chain tower_h(const Chain& c) const;
    // the tower f_p ... f_1 from AF to its Moore complex
    Chain to_moore(const Chain& x, int level) const;

    Reduction<Simplex, Simplex> as_reduction() const;
};

// arrow 1: normalized d-cycle of F -> Moore cycle of AF at level d-1
Chain arrow1(const LoopGroup& gx, const Chain& z);

// a word whose abelianization is the given chain, factors in chain order
GroupWord lift_chain(const Chain& c);

struct SphericalSplit {
    GroupWord spherical;  // x^s
    GroupWord moore;      // x_0
    GroupWord cone;       // c_{k-1}(d_0 x_0)
    GroupWord conical;    // c_{k-1}(d_0 x_0) * tail
    GroupWord tail;       // product of degenerate factors
};

// state of the effective Hurewicz inverse for one space and target dimension;
// memo tables make it unsafe to share across threads
class HurewiczContext {
public:
    HurewiczContext(std::shared_ptr<const SimplicialSet> f, int d, std::optional<LoopContraction> c0 = {});

    const LoopGroup& group() const { return gx_; }
    int dim() const { return d_; }

    // c^A: Moore-differential preimage of a Moore cycle z of level j < d-1
    Chain boundary_certificate(const Chain& z, int j);

    // delta with d_0 delta = [alpha, gamma] and the other faces trivial
    GroupWord simple_commutator_contraction(const GroupWord& alpha, const GroupWord& gamma, int k) const;

    GroupWord contraction_c(int k, const GroupWord& w);
    GroupWord contraction_generator(int k, const Simplex& g);

    SphericalSplit split(const GroupWord& w, int k);
    GroupWord contract_conical(const SphericalSplit& s, int k);
    GroupWord contract_commutator(const GroupWord& w, int k);
    GroupWord contract_spherical(const GroupWord& xs, int k);

    // arrow 2: Moore cycle of AF at level d-1 -> Moore cycle of GF with that abelianization
    GroupWord arrow2(const Chain& z);

    size_t memo_size() const { return memo_.size(); }
    // run-length factors held by the memo; bounded by word_factor_cap()
    size_t memo_factors() const { return memo_factors_; }

private:
    std::shared_ptr<const SimplicialSet> f_;
    LoopGroup gx_;
    int d_;
    LoopContraction c0_;
    std::map<std::pair<int, Simplex>, GroupWord> memo_;
    size_t memo_factors_ = 0;
    std::map<int, std::vector<Simplex>> basis_;
    std::map<int, std::map<Simplex, size_t>> index_;
    std::map<int, SNFResult> snf_;

    GroupWord c0_word(const GroupWord& w) const;
    const std::vector<Simplex>& basis(int n);
    const SNFResult& full_snf(int n);
    std::optional<Chain> solve_full(const Chain& z, int n);
};

// checks of the contraction properties on one word; empty string when all hold
std::string check_contraction(HurewiczContext& ctx, int k, const GroupWord& w);

}  // namespace simpi
