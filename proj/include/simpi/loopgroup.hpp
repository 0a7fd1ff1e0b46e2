#pragma once

#include <map>
#include <string>

#include "simpi/sset.hpp"
#include "simpi/word.hpp"

namespace simpi {

using GroupWord = Word<Simplex>;

// Kan loop group of a finite reduced simplicial set; level-n generators are
// (n+1)-simplices outside the image of s_n
class LoopGroup {
public:
    using Gen = Simplex;

    explicit LoopGroup(std::shared_ptr<const SimplicialSet> x) : x_(std::move(x)) {}

    const SimplicialSet& space() const { return *x_; }
    std::shared_ptr<const SimplicialSet> space_ptr() const { return x_; }

    bool killed(const Simplex& y) const { return y.dim == 0 || y.in_image_of(y.dim - 1); }
    GroupWord bar(const Simplex& y, const Int& e = 1) const
    {
        return killed(y) ? GroupWord{} : GroupWord(y, e);
    }

    GroupWord gen_face(const Simplex& g, int i) const;
    GroupWord gen_degeneracy(const Simplex& g, int i) const { return bar(degeneracy(g, i)); }

    GroupWord face(const GroupWord& w, int i) const;
    GroupWord degen(const GroupWord& w, int i) const;

    // generator order by (dimension, name, degeneracies)
    bool less(const Simplex& a, const Simplex& b) const;
    std::string describe(const GroupWord& w) const;

private:
    std::shared_ptr<const SimplicialSet> x_;
};

// w = w0 * tail with d_j w0 = 1 for j >= 1
struct MooreSplit {
    GroupWord spherical_part, tail;
};
MooreSplit moore_normalize(const LoopGroup& gx, const GroupWord& w, int level);

bool is_moore(const LoopGroup& gx, const GroupWord& w, int level);
bool is_spherical(const LoopGroup& gx, const GroupWord& w, int level);

struct LoopContraction {
    std::map<Simplex, GroupWord> c0;  // generator of GX_0 -> level-1 word
};

// d_0 c_0(x) = x and d_1 c_0(x) = 1; returns the failing generators
std::vector<Simplex> check_loop_contraction(const LoopGroup& gx, const LoopContraction& c);

struct EdgeContraction {
    std::vector<int> a, b;  // A_0..A_s and B_1..B_s
};
using ComplexCertificate = std::map<std::array<int, 2>, EdgeContraction>;

struct CertificateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

LoopContraction certificate_to_contraction(const Complex& k, const ComplexSet& xs, const TreeQuotient& q,
                                           const ComplexCertificate& cert);

}  // namespace simpi

namespace simpi {

// Eliminates non-tree edges one triangle at a time (a triangle whose other two
// edges are already contracted) and writes each contraction as a strip of
// triangles based at the root. Fails when the elimination gets stuck.
ComplexCertificate greedy_certificate(const Complex& k);

}  // namespace simpi
