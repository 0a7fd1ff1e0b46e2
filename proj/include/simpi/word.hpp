#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "simpi/chain.hpp"

namespace simpi {

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// words longer than this (in run-length factors) abort instead of exhausting memory
inline size_t& word_factor_cap()
{
    static size_t cap = 2'000'000;
    return cap;
}

// element of a free group in run-length form; kept freely reduced by every operation
template <class G>
struct Word {
    std::vector<std::pair<G, Int>> f;

    Word() = default;
    explicit Word(const G& g, const Int& e = 1)
    {
        if (e != 0)
            f.emplace_back(g, e);
    }

    bool empty() const { return f.empty(); }
    size_t size() const { return f.size(); }

    // letter count, i.e. sum of |exponents|
    Int length() const
    {
        Int n = 0;
        for (const auto& [g, e] : f)
            n += abs(e);
        return n;
    }

    void push(const G& g, const Int& e)
    {
        if (e == 0)
            return;
        if (!f.empty() && f.back().first == g) {
            f.back().second += e;
            if (f.back().second == 0)
                f.pop_back();
            return;
        }
        if (f.size() >= word_factor_cap())
            throw CapExceeded("word length cap exceeded");
        f.emplace_back(g, e);
    }

    Word& operator*=(const Word& o)
    {
        for (const auto& [g, e] : o.f)
            push(g, e);
        return *this;
    }
    friend Word operator*(Word a, const Word& b) { return a *= b; }
    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word& a, const Word& b) { return a.f <=> b.f; }

    Word inverse() const
    {
        Word r;
        r.f.reserve(f.size());
        for (auto it = f.rbegin(); it != f.rend(); ++it)
            r.f.emplace_back(it->first, -it->second);
        return r;
    }
};

template <class G>
Word<G> free_reduce(const Word<G>& w)
{
    Word<G> r;
    for (const auto& [g, e] : w.f)
        r.push(g, e);
    return r;
}

template <class G>
Word<G> power(const Word<G>& w, const Int& n)
{
    if (n == 0 || w.empty())
        return {};
    if (n < 0)
        return power(w.inverse(), -n);
    if (w.size() == 1)
        return Word<G>(w.f[0].first, w.f[0].second * n);
    // w = u v u^-1 with v cyclically reduced, so w^n = u v^n u^-1
    size_t a = 0, b = w.size() - 1;
    Word<G> u;
    while (a < b && w.f[a].first == w.f[b].first && w.f[a].second == -w.f[b].second) {
        u.f.push_back(w.f[a]);
        ++a;
        --b;
    }
    Word<G> v;
    v.f.assign(w.f.begin() + a, w.f.begin() + b + 1);
    Word<G> vn;
    if (v.size() == 1) {
        vn = Word<G>(v.f[0].first, v.f[0].second * n);
    } else {
        Int want = n * v.size();
        if (want > Int(word_factor_cap()))
            throw CapExceeded("word power exceeds the length cap");
        if (v.f.front().first == v.f.back().first) {
            // first and last factors merge across copies
            vn = v;
            for (Int i = 1; i < n; ++i)
                vn *= v;
        } else {
            unsigned long reps = n.get_ui();
            vn.f.reserve(v.size() * reps);
            for (unsigned long i = 0; i < reps; ++i)
                vn.f.insert(vn.f.end(), v.f.begin(), v.f.end());
        }
    }
    return u * vn * u.inverse();
}

template <class G>
Word<G> commutator(const Word<G>& a, const Word<G>& b)
{
    return a * b * a.inverse() * b.inverse();
}

// ^b a = b a b^-1
template <class G>
Word<G> conjugate(const Word<G>& b, const Word<G>& a)
{
    return b * a * b.inverse();
}

template <class G>
LinComb<G> abelianize(const Word<G>& w)
{
    LinComb<G> c;
    for (const auto& [g, e] : w.f)
        c.add(g, e);
    return c;
}

// homomorphic extension of a generator map
template <class G, class H, class F>
Word<H> substitute(const Word<G>& w, F&& on_generator)
{
    Word<H> r;
    for (const auto& [g, e] : w.f)
        r *= power(on_generator(g), e);
    return r;
}

struct CommutatorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class G>
struct CommutatorDecomposition {
    std::vector<std::pair<Word<G>, Word<G>>> pairs;
    size_t swaps = 0;
};

// w = prod [a_j, b_j]; bubble sort of the run-length factors by generator order.
// Pairs are handed to visit(a, b) last factor first; returns the swap count.
template <class G, class Visit, class Less = std::less<G>>
size_t visit_commutators(const Word<G>& w, Visit visit, Less less = {})
{
    for (const auto& [g, c] : abelianize(w).terms)
        if (c != 0)
            throw CommutatorError("word is not in the commutator subgroup");
    size_t swaps = 0;
    std::vector<std::pair<G, Int>> runs = free_reduce(w).f;
    for (;;) {
        size_t i = 0;
        while (i + 1 < runs.size() && !less(runs[i + 1].first, runs[i].first))
            ++i;
        if (i + 1 >= runs.size())
            break;
        Word<G> x(runs[i].first, runs[i].second), y(runs[i + 1].first, runs[i + 1].second);
        Word<G> rest;
        rest.f.assign(runs.begin() + i + 2, runs.end());
        if (!rest.empty())
            visit(commutator(y.inverse(), x.inverse()), rest.inverse());
        visit(x.inverse(), y.inverse());
        ++swaps;
        std::swap(runs[i], runs[i + 1]);
        Word<G> merged;
        for (const auto& [g, e] : runs)
            merged.push(g, e);
        runs = std::move(merged.f);
    }
    if (!runs.empty())
        throw CommutatorError("residual after sorting");
    return swaps;
}

template <class G, class Less = std::less<G>>
CommutatorDecomposition<G> commutator_decompose(const Word<G>& w, Less less = {})
{
    CommutatorDecomposition<G> out;
    out.swaps = visit_commutators(
        w, [&](Word<G> a, Word<G> b) { out.pairs.emplace_back(std::move(a), std::move(b)); }, less);
    std::reverse(out.pairs.begin(), out.pairs.end());
    return out;
}

}  // namespace simpi
