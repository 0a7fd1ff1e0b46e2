#pragma once

#include <array>
#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace simpi {

/* s_{i_k}...s_{i_1} y with i_1 < ... < i_k, y nondegenerate */
struct Simplex {
    int dim = 0;
    int base = -1;
    std::vector<int> degs;

    bool degenerate() const { return !degs.empty(); }
    int base_dim() const { return dim - static_cast<int>(degs.size()); }
    bool in_image_of(int j) const;

    friend auto operator<=>(const Simplex&, const Simplex&) = default;
    friend bool operator==(const Simplex&, const Simplex&) = default;
};

struct SimplexError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// canonical s_j x; purely structural, no table needed
Simplex degeneracy(const Simplex& x, int j);
// the monotone surjection [dim x] -> [base_dim x] of the degeneracy part
std::vector<int> collapse_map(const Simplex& x);

class SimplicialSet {
public:
    int add(const std::string& name, int dim, std::vector<Simplex> faces);
    void set_faces(int h, std::vector<Simplex> faces);

    Simplex nd(int h) const { return Simplex{dims_[h], h, {}}; }
    Simplex face(const Simplex& x, int i) const;
    Simplex degen(const Simplex& x, int j) const { return degeneracy(x, j); }
    // x composed with a monotone map [k] -> [dim x]
    Simplex restrict(const Simplex& x, const std::vector<int>& theta) const;
    // basepoint degenerated up to dimension n
    Simplex point(int n) const;
    bool is_point(const Simplex& x) const { return x.base == basepoint; }

    int size() const { return static_cast<int>(dims_.size()); }
    int dim_of(int h) const { return dims_[h]; }
    int max_dim() const { return static_cast<int>(cells_.size()) - 1; }
    const std::string& name(int h) const { return names_[h]; }
    const std::vector<int>& cells(int n) const;
    const std::vector<Simplex>& faces_of(int h) const { return faces_[h]; }
    std::optional<int> find(const std::string& name) const;

    int basepoint = -1;
    // largest r with exactly one vertex and nothing nondegenerate in dims 1..r; -1 if several vertices
    int reduced_level() const;
    // violations of d_i d_j = d_{j-1} d_i, as (handle, i, j)
    std::vector<std::array<int, 3>> check_identities() const;
    std::string describe(const Simplex& x) const;

private:
    std::vector<std::string> names_;
    std::vector<int> dims_;
    std::vector<std::vector<Simplex>> faces_;
    std::vector<std::vector<int>> cells_;
    std::map<std::string, int> by_name_;
};

struct SimplicialMap {
    std::shared_ptr<const SimplicialSet> source, target;
    std::vector<Simplex> image;  // indexed by source handle

    Simplex operator()(const Simplex& x) const;
};

struct MapViolation {
    int simplex;
    int face;
};
std::vector<MapViolation> validate_map(const SimplicialMap& f);

struct Complex {
    int vertices = 0;
    std::vector<std::vector<int>> facets;
    std::vector<std::array<int, 2>> tree;
    int root = 0;

    // all faces, sorted by dimension then lexicographically
    std::vector<std::vector<int>> closure() const;
    int dimension() const;
};

struct ComplexSet {
    std::shared_ptr<SimplicialSet> set;
    std::map<std::vector<int>, int> handle;
    std::vector<std::vector<int>> vertices_of;  // by handle
};

ComplexSet from_complex(const Complex& k);

struct TreeQuotient {
    std::shared_ptr<SimplicialSet> set;
    SimplicialMap projection;
};

// tree given as nondegenerate edges of the source
TreeQuotient quotient_tree(std::shared_ptr<const SimplicialSet> x, const std::vector<int>& tree_edges);
TreeQuotient quotient_tree(const ComplexSet& xs, const Complex& k);

struct Complexified {
    Complex complex;
    ComplexSet set;
    SimplicialMap gamma;  // set -> original
};

Complexified complexify(std::shared_ptr<const SimplicialSet> y);

// maximal simplices of a complex, each carrying an image simplex; images are interned
class MappedFacets {
public:
    int vertices = 0;

    size_t size() const { return image_.size(); }
    std::span<const int> facet(size_t i) const { return {flat_.data() + start_[i], start_[i + 1] - start_[i]}; }
    int image(size_t i) const { return image_[i]; }
    const std::vector<Simplex>& images() const { return images_; }
    int dim() const;

    void add(std::span<const int> vs, const Simplex& img);
    // same facets, images pushed through g
    MappedFacets compose(const SimplicialMap& g) const;

private:
    std::vector<int> flat_;
    std::vector<size_t> start_{0};
    std::vector<int> image_;
    std::vector<Simplex> images_;
    std::map<Simplex, int> index_;
};

// the maximal simplices of complexify(y) with gamma on each, without building the complex;
// vertex numbering agrees with complexify
MappedFacets complexify_facets(const SimplicialSet& y);
// number of cells of the barycentric subdivision, counted without building it
size_t subdivision_cells(const SimplicialSet& y);

}  // namespace simpi
