#pragma once

#include "simpi/loopgroup.hpp"

namespace simpi {

struct PathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// [x, i]^eps in the multigraph on X_n, x of dimension n+1
struct PathEdge {
    Simplex x;
    int i = 0;
    int eps = 1;

    friend bool operator==(const PathEdge&, const PathEdge&) = default;
};

// n-path; with no edges it is the unit at `unit`
struct Path {
    int level = 0;
    Simplex unit;
    std::vector<PathEdge> edges;

    bool is_unit() const { return edges.empty(); }
    size_t length() const { return edges.size(); }
    friend bool operator==(const Path&, const Path&) = default;
};

Simplex edge_source(const SimplicialSet& x, const PathEdge& e);
Simplex edge_target(const SimplicialSet& x, const PathEdge& e);
Simplex path_source(const SimplicialSet& x, const Path& p);
Simplex path_target(const SimplicialSet& x, const Path& p);

Path unit_path(const Simplex& x);
// validates composability
Path make_path(const SimplicialSet& x, int level, std::vector<PathEdge> edges);
Path path_inverse(const Path& p);
Path path_concat(const SimplicialSet& x, const Path& a, const Path& b);

Path path_face(const SimplicialSet& x, const Path& p, int j);
Path path_degen(const SimplicialSet& x, const Path& p, int j);

inline bool compressible(const PathEdge& e) { return e.x.in_image_of(e.i); }
// erase compressible edges, cancel e e^-1 pairs
Path reduce_compress(const SimplicialSet& x, const Path& p);

// canonical path from x to the basepoint through iterated last faces
Path gamma_x(const SimplicialSet& x, const Simplex& s);

// edges allowed in an expanded t(w) before giving up
inline size_t& path_length_cap()
{
    static size_t cap = 10'000'000;
    return cap;
}

// homomorphism GX -> reduced compressed loops; exponents are expanded letter by letter
Path t_hom(const LoopGroup& gx, const GroupWord& w, int level);

struct SpherePairing {
    int face;
    size_t first, second;  // positions in the face path
};

struct SphereMap {
    std::shared_ptr<SimplicialSet> sphere;
    SimplicialMap map;
    Path path;
    std::vector<Simplex> tops;  // per edge of the path, in the sphere
    std::vector<int> signs;     // per edge
    std::vector<SpherePairing> pairings;
};

// realizes a spherical loop of level d-1 as a simplicial map from a d-sphere
SphereMap sphere_of(std::shared_ptr<const SimplicialSet> x, const Path& gamma);

// signed sum of the top simplices, in the sphere and pushed into the target
Chain sphere_fundamental(const SphereMap& s);
Chain sphere_image(const SphereMap& s);

struct SphereAudit {
    bool map_valid = false, identities = false, euler = false, pseudomanifold = false, fundamental_cycle = false;
    bool ok() const { return map_valid && identities && euler && pseudomanifold && fundamental_cycle; }
};

// cheap structural checks: chi = 1 + (-1)^d, each nondegenerate (d-1)-simplex
// is a face of exactly two top simplices, signed tops form a cycle
SphereAudit audit_sphere(const SphereMap& s);

}  // namespace simpi
