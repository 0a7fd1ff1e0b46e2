#pragma once

#include <optional>
#include <span>

#include "simpi/chain.hpp"
#include "simpi/sset.hpp"

namespace simpi {

struct SubdivisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// (a_0..a_m) and (b_0..b_m) differ by one unit moved between two positions
bool esd_adjacent(const std::vector<int>& a, const std::vector<int>& b);

// Esd_k of the standard m-simplex: lattice points with coordinate sum k, and the
// top simplices of the Freudenthal triangulation in partial-sum coordinates
struct LocalEsd {
    int m = 0, k = 0;
    std::vector<std::vector<int>> points;     // lexicographic
    std::vector<std::vector<int>> simplices;  // indices into points
    std::vector<int> orientation;             // sign of each simplex against the standard one
};

const LocalEsd& esd_simplex(int m, int k);

// smallest index among maximal coordinates
int argmax_first(const std::vector<int>& x);
// distance from the union of extended faces, faces given as position masks
int dist_et(const std::vector<int>& x, const std::vector<unsigned>& tree_faces);

// Esd_k of a simplicial complex; vertices are numbered face by face, each face of
// the complex owning the lattice points with all its coordinates positive
class EsdComplex {
public:
    EsdComplex(const Complex& sigma, int k);

    int parts() const { return k_; }
    int dim() const { return dim_; }
    const std::vector<std::vector<int>>& faces() const { return faces_; }
    const std::vector<std::vector<int>>& maximal() const { return maximal_; }

    long vertex_count() const { return offset_.back(); }
    size_t facet_count() const { return first_.back(); }
    std::vector<long> facet(size_t i) const;
    // maximal simplex of the complex that facet i subdivides, as an index into maximal()
    int facet_parent(size_t i) const;
    // index of facet i in esd_simplex(dim of parent, k).simplices
    int facet_local(size_t i) const { return static_cast<int>(i - first_[facet_parent(i)]); }

    // vertex of the face with the given vertices and positive coordinates
    long vertex_id(const std::vector<int>& face, const std::vector<int>& coords) const;
    // (complex vertex, positive coordinate) pairs
    std::vector<std::pair<int, int>> coordinates(long v) const;

    // ids of the lattice points of esd_simplex(dim, k) inside the given face
    std::vector<long> local_ids(const std::vector<int>& face) const;

private:
    int k_, dim_ = 0;
    std::vector<std::vector<int>> faces_, maximal_;
    std::map<std::vector<int>, int> index_;
    std::vector<long> offset_;
    std::vector<size_t> first_;  // first facet of each maximal simplex
};

// simplices not contained in another simplex, each as a sorted vertex list
std::vector<std::vector<int>> maximal_simplices(const Complex& sigma);

// closed-form count of top simplices of Esd_k over the maximal simplices: sum k^m
long esd_facet_count(const Complex& sigma, int k);

struct TreeMetric {
    int root = 0;
    std::vector<int> dist, parent;
    int depth = 0;  // l

    // M(j)(v)
    int at(int j, int v) const;
    bool tree_edge(int a, int b) const { return a != b && (parent[a] == b || parent[b] == a); }
};

TreeMetric tree_metric(const Complex& x);

// X^sc with its simplicial set X^ss and the quotient X = X^ss / T
struct TreeTarget {
    Complex complex;
    ComplexSet set;
    TreeQuotient quotient;
    TreeMetric metric;
    std::vector<int> lift;  // quotient handle -> set handle, -1 for the basepoint
};

TreeTarget tree_target(const Complex& x);

// the vertices V_0..V_m of the unique lift of a simplex of X, or nullopt for basepoint degeneracies
std::optional<std::vector<int>> lift_vertices(const TreeTarget& x, const Simplex& s);
// maximal position sets whose vertices form a tree vertex or tree edge
std::vector<unsigned> tree_faces(const TreeMetric& metric, const std::vector<int>& v);
// M(dist_ET(x))(V_argmax x) for each lattice point of esd_simplex(m, k) (coordinates padded to v.size())
std::vector<int> label_points(const TreeTarget& x, const std::vector<int>& v, int m, int k);

// labels of Esd_k over one simplex depend only on its image in X, so they are memoized per image
class ImageLabels {
public:
    // d: dimension the vertex lists are padded to
    ImageLabels(const TreeTarget& x, int d, int k) : x_(x), d_(d), k_(k) {}

    int parts() const { return k_; }
    // label of each point of esd_simplex(img.dim, k)
    const std::vector<int>& operator()(const Simplex& img);

private:
    const TreeTarget& x_;
    int d_, k_;
    std::map<Simplex, std::vector<int>> memo_;
};

struct LiftedMap {
    EsdComplex esd;
    int depth = 0;
    std::vector<int> label;  // per Esd vertex, a vertex of X^sc
};

// k = l(d+1)+1
int lift_parts(const TreeTarget& x, int d);

// f: Sigma^ss -> X with Sigma^ss = from_complex(sigma)
LiftedMap reconstruct_map(const Complex& sigma, const ComplexSet& sigma_set, const SimplicialMap& f, const TreeTarget& x,
                          std::optional<int> parts = std::nullopt);

// maximal simplices of sigma with their images under f
MappedFacets mapped_facets(const Complex& sigma, const ComplexSet& sigma_set, const SimplicialMap& f);

// signs (aligned with maximal_simplices) making the signed sum a cycle, or nullopt if sigma is not an oriented pseudomanifold
std::optional<std::vector<int>> orient_pseudomanifold(const Complex& sigma);
// the same for the facets in their stored order
std::optional<std::vector<int>> orient_pseudomanifold(const MappedFacets& sigma);

struct LiftAudit {
    size_t sigma_facets = 0, images = 0;
    size_t facets = 0, simplicial = 0;  // top simplices of Esd_k(Sigma)
    bool tree_to_root = true;
    bool interior_onto = true;
    bool faces_consistent = true;  // labels on a face agree with the labels of its own image
    std::optional<bool> degree;    // only for oriented pseudomanifolds

    bool ok() const
    {
        return simplicial == facets && tree_to_root && interior_onto && faces_consistent && degree.value_or(true);
    }
};

// audit of the lift of Sigma -> X given facet by facet, with the images in the tree quotient
LiftAudit audit_mapped(const MappedFacets& sigma, const TreeTarget& x, int k);
// the same for an explicit labeling; the simplicial count is taken from g itself
LiftAudit audit_lift(const LiftedMap& g, const Complex& sigma, const ComplexSet& sigma_set, const SimplicialMap& f,
                     const TreeTarget& x);

// image chains in X of the subdivided map and of f over a signed sum of maximal simplices
Chain lifted_image(const LiftedMap& g, const TreeTarget& x, const std::vector<int>& signs);
Chain direct_image(const Complex& sigma, const ComplexSet& sigma_set, const SimplicialMap& f, const std::vector<int>& signs);

}  // namespace simpi
