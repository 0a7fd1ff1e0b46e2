#pragma once

#include <gmpxx.h>

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "simpi/sset.hpp"

namespace simpi {

using Int = mpz_class;

// sparse formal sum with big integer coefficients; zero terms are never stored
template <class K>
struct LinComb {
    std::map<K, Int> terms;

    LinComb() = default;
    LinComb(const K& k, const Int& c = 1) { add(k, c); }

    void add(const K& k, const Int& c)
    {
        if (c == 0)
            return;
        auto [it, fresh] = terms.emplace(k, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0)
                terms.erase(it);
        }
    }
    Int coeff(const K& k) const
    {
        auto it = terms.find(k);
        return it == terms.end() ? Int(0) : it->second;
    }
    bool zero() const { return terms.empty(); }
    size_t size() const { return terms.size(); }

    LinComb& operator+=(const LinComb& o)
    {
        for (const auto& [k, c] : o.terms)
            add(k, c);
        return *this;
    }
    LinComb& operator-=(const LinComb& o)
    {
        for (const auto& [k, c] : o.terms)
            add(k, -c);
        return *this;
    }
    LinComb& operator*=(const Int& s)
    {
        if (s == 0)
            terms.clear();
        for (auto& [k, c] : terms)
            c *= s;
        return *this;
    }
    friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
    friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
    friend LinComb operator*(const Int& s, LinComb a) { return a *= s; }
    friend LinComb operator-(LinComb a) { return a *= Int(-1); }
    friend bool operator==(const LinComb& a, const LinComb& b) { return a.terms == b.terms; }
};

using Chain = LinComb<Simplex>;

struct ChainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// normalized boundary; degenerate faces are dropped
Chain boundary(const SimplicialSet& x, const Chain& c);

using Matrix = std::vector<std::vector<Int>>;

Matrix identity_matrix(size_t n);
Matrix multiply(const Matrix& a, const Matrix& b, size_t inner);

struct SNFResult {
    Matrix S, U, V, U_inv, V_inv;
    size_t rows = 0, cols = 0, rank = 0;
    Int diagonal(size_t i) const { return i < rank ? S[i][i] : Int(0); }
};

// U A V = S, unimodular U and V; pivot = smallest absolute value, ties to the lowest (row, column)
SNFResult smith_normal_form(const Matrix& a, size_t rows, size_t cols);

struct Homology {
    std::vector<Chain> torsion;
    std::vector<Int> torsion_orders;
    std::vector<Chain> free;
};

// linear algebra over one finite simplicial set; SNFs of the boundary maps are cached
class ChainOps {
public:
    explicit ChainOps(std::shared_ptr<const SimplicialSet> x) : x_(std::move(x)) {}

    const SimplicialSet& space() const { return *x_; }
    // rows: (k-1)-cells, columns: k-cells
    Matrix boundary_matrix(int k) const;
    const SNFResult& snf(int k) const;

    std::vector<Int> to_vector(const Chain& c, int k) const;
    Chain from_vector(const std::vector<Int>& v, int k) const;

    Homology homology(int k) const;
    std::optional<Chain> solve_boundary(const Chain& z, int k) const;
    Chain project_to_cycles(const Chain& c, int k) const;
    // coordinates of the class of a cycle against homology(k): torsion (reduced) then free
    std::vector<Int> homology_class(const Chain& z, int k) const;

private:
    std::shared_ptr<const SimplicialSet> x_;
    mutable std::map<int, SNFResult> snf_;
    mutable std::map<int, std::map<int, size_t>> position_;
    mutable std::map<int, SNFResult> relations_;
    const SNFResult& relations(int k) const;
    size_t position(int h, int k) const;
};

template <class S, class T>
struct Reduction {
    std::function<LinComb<T>(const LinComb<S>&)> f;
    std::function<LinComb<S>(const LinComb<T>&)> g;
    std::function<LinComb<S>(const LinComb<S>&)> h;
    std::function<LinComb<S>(const LinComb<S>&)> d_source;
    std::function<LinComb<T>(const LinComb<T>&)> d_target;
};

struct ReductionReport {
    bool fg = true, homotopy = true, hh = true, hg = true, fh = true;
    bool ok() const { return fg && homotopy && hh && hg && fh; }
};

template <class S, class T>
ReductionReport check_reduction(const Reduction<S, T>& r, const LinComb<S>& a, const LinComb<T>& b)
{
    ReductionReport rep;
    rep.fg = r.f(r.g(b)) == b;
    rep.homotopy = r.g(r.f(a)) - a == r.h(r.d_source(a)) + r.d_source(r.h(a));
    rep.hh = r.h(r.h(a)).zero();
    rep.hg = r.h(r.g(b)).zero();
    rep.fh = r.f(r.h(a)).zero();
    return rep;
}

template <class K>
Reduction<K, K> identity_reduction(std::function<LinComb<K>(const LinComb<K>&)> d)
{
    auto id = [](const LinComb<K>& c) { return c; };
    return {id, id, [](const LinComb<K>&) { return LinComb<K>{}; }, d, d};
}

}  // namespace simpi
