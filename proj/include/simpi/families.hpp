#pragma once

#include <optional>

#include "simpi/chain.hpp"
#include "simpi/loopgroup.hpp"

namespace simpi {

struct XkFamily {
    std::shared_ptr<SimplicialSet> set;
    std::optional<LoopContraction> c0;  // only for d = 2
    int a = -1, b = -1;
    std::vector<int> sigma, c;  // sigma_1..sigma_k, C_1..C_{k-1}
};

XkFamily xk_set(int d, int k);

// 2^{k-1} A - 2^{k-2} C_1 - ... - C_{k-1} - B
Chain xk_generator(const XkFamily& x);

struct MoebiusTower {
    Complex complex;
    ComplexCertificate certificate;
    std::vector<int> a, b;  // vertex triples of the two caps
};

// d = 2: stacked degree-2 mapping cylinders capped by triangles A, B; d = 3: its suspension,
// with caps A and B coned to the north pole
MoebiusTower moebius_tower(int k, int d = 2);

// unreduced suspension: every maximal face coned to a north and a south pole
Complex suspension(const Complex& k);

std::shared_ptr<SimplicialSet> sphere_set(int d);
Complex sphere_complex(int d);
std::shared_ptr<SimplicialSet> wedge(const std::vector<std::shared_ptr<const SimplicialSet>>& parts);

}  // namespace simpi
