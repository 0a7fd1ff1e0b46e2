#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <set>

#include "simpi/sset.hpp"

namespace simpi {

namespace {

using Mask = unsigned;

struct Cell {
    int carrier;              // nondegenerate simplex of Y
    std::vector<Mask> chain;  // strictly increasing, ends with the full vertex set
    int dim() const { return static_cast<int>(chain.size()) - 1; }
    auto operator<=>(const Cell&) const = default;
};

std::vector<int> members(Mask m)
{
    std::vector<int> v;
    for (int i = 0; m; ++i, m >>= 1)
        if (m & 1)
            v.push_back(i);
    return v;
}

class Subdivision {
public:
    explicit Subdivision(const SimplicialSet& y) : y_(y) {}

    // the nondegenerate cell represented by a chain of faces of a simplex
    Cell normalize(int carrier, const std::vector<Mask>& chain) const
    {
        std::vector<int> top = members(chain.back());
        Simplex face = y_.restrict(y_.nd(carrier), top);
        std::vector<int> theta = collapse_map(face);
        Cell c{face.base, {}};
        for (Mask g : chain) {
            Mask img = 0;
            for (size_t p = 0; p < top.size(); ++p)
                if (g >> top[p] & 1)
                    img |= 1u << theta[p];
            if (c.chain.empty() || c.chain.back() != img)
                c.chain.push_back(img);
        }
        return c;
    }

    std::vector<Cell> cells() const
    {
        std::vector<Cell> out;
        for (int n = 0; n <= y_.max_dim(); ++n)
            for (int h : y_.cells(n)) {
                Mask full = (1u << (n + 1)) - 1;
                std::vector<Mask> below;
                std::function<void(Mask)> grow = [&](Mask cur) {
                    std::vector<Mask> chain(below.rbegin(), below.rend());
                    chain.push_back(full);
                    out.push_back({h, chain});
                    for (Mask q = (cur - 1) & cur; q; q = (q - 1) & cur) {
                        below.push_back(q);
                        grow(q);
                        below.pop_back();
                    }
                };
                grow(full);
            }
        return out;
    }

private:
    const SimplicialSet& y_;
};

}  // namespace

Complexified complexify(std::shared_ptr<const SimplicialSet> yp)
{
    const SimplicialSet& y = *yp;
    Subdivision sd(y);
    std::vector<Cell> cells = sd.cells();
    std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
        if (a.dim() != b.dim())
            return a.dim() > b.dim();
        return a < b;
    });
    std::map<Cell, int> id;
    for (size_t i = 0; i < cells.size(); ++i)
        id[cells[i]] = static_cast<int>(i);

    std::map<std::vector<int>, Simplex> image;
    for (const Cell& top : cells) {
        int m = top.dim();
        Mask full = (1u << (m + 1)) - 1;
        std::vector<int> chain{id.at(top)};
        std::vector<Mask> subsets{full};
        auto record = [&]() {
            std::vector<int> theta;
            for (Mask p : subsets)
                theta.push_back(std::bit_width(top.chain[std::countr_zero(p)]) - 1);
            Simplex img = y.restrict(y.nd(top.carrier), theta);
            auto [it, fresh] = image.emplace(chain, img);
            if (!fresh && it->second != img)
                throw SimplexError("inconsistent subdivision map");
        };
        std::function<void(Mask, int)> descend = [&](Mask cur, int cur_dim) {
            record();
            for (Mask q = (cur - 1) & cur; q; q = (q - 1) & cur) {
                std::vector<Mask> sub;
                for (int p : members(q))
                    sub.push_back(top.chain[p]);
                Cell c = sd.normalize(top.carrier, sub);
                if (c.dim() >= cur_dim)
                    continue;
                chain.push_back(id.at(c));
                subsets.push_back(q);
                descend(q, c.dim());
                chain.pop_back();
                subsets.pop_back();
            }
        };
        descend(full, m);
    }

    Complexified out;
    out.complex.vertices = static_cast<int>(cells.size());
    std::set<std::vector<int>> inner;
    for (const auto& [s, img] : image)
        for (size_t i = 0; s.size() > 1 && i < s.size(); ++i) {
            auto t = s;
            t.erase(t.begin() + i);
            inner.insert(t);
        }
    for (const auto& [s, img] : image)
        if (!inner.count(s))
            out.complex.facets.push_back(s);
    out.set = from_complex(out.complex);
    std::vector<Simplex> g(out.set.set->size());
    for (int h = 0; h < out.set.set->size(); ++h)
        g[h] = image.at(out.set.vertices_of[h]);
    out.gamma = {out.set.set, yp, std::move(g)};
    return out;
}

int MappedFacets::dim() const
{
    size_t d = 0;
    for (size_t i = 0; i < size(); ++i)
        d = std::max(d, start_[i + 1] - start_[i]);
    return static_cast<int>(d) - 1;
}

void MappedFacets::add(std::span<const int> vs, const Simplex& img)
{
    flat_.insert(flat_.end(), vs.begin(), vs.end());
    start_.push_back(flat_.size());
    auto [it, fresh] = index_.emplace(img, static_cast<int>(images_.size()));
    if (fresh)
        images_.push_back(img);
    image_.push_back(it->second);
}

MappedFacets MappedFacets::compose(const SimplicialMap& g) const
{
    MappedFacets out;
    out.vertices = vertices;
    out.flat_ = flat_;
    out.start_ = start_;
    std::vector<int> moved(images_.size());
    for (size_t i = 0; i < images_.size(); ++i) {
        Simplex img = g(images_[i]);
        auto [it, fresh] = out.index_.emplace(img, static_cast<int>(out.images_.size()));
        if (fresh)
            out.images_.push_back(img);
        moved[i] = it->second;
    }
    out.image_.reserve(image_.size());
    for (int i : image_)
        out.image_.push_back(moved[i]);
    return out;
}

namespace {

// a cell packed for sorting in the order of complexify: dimension descending, then carrier, then chain
struct CellKey {
    int dim;
    int carrier;
    std::uint64_t masks;  // byte i from the top holds chain[i]

    friend bool operator==(const CellKey&, const CellKey&) = default;
    friend bool operator<(const CellKey& a, const CellKey& b)
    {
        if (a.dim != b.dim)
            return a.dim > b.dim;
        if (a.carrier != b.carrier)
            return a.carrier < b.carrier;
        return a.masks < b.masks;
    }
};

Mask chain_mask(const CellKey& c, int i)
{
    return static_cast<Mask>(c.masks >> (56 - 8 * i) & 0xff);
}

class PackedCells {
public:
    explicit PackedCells(const SimplicialSet& y) : y_(y) {}

    CellKey normalize(int carrier, const Mask* chain, int len) const
    {
        std::vector<int> top = members(chain[len - 1]);
        Simplex face = y_.restrict(y_.nd(carrier), top);
        std::vector<int> theta = collapse_map(face);
        CellKey c{-1, face.base, 0};
        Mask last = 0;
        for (int i = 0; i < len; ++i) {
            Mask img = 0;
            for (size_t p = 0; p < top.size(); ++p)
                if (chain[i] >> top[p] & 1)
                    img |= 1u << theta[p];
            if (c.dim < 0 || img != last) {
                ++c.dim;
                c.masks |= static_cast<std::uint64_t>(img) << (56 - 8 * c.dim);
                last = img;
            }
        }
        return c;
    }

    std::vector<CellKey> all() const
    {
        std::vector<CellKey> out;
        for (int n = 0; n <= y_.max_dim(); ++n)
            for (int h : y_.cells(n)) {
                Mask full = (1u << (n + 1)) - 1;
                std::vector<Mask> below;
                std::function<void(Mask)> grow = [&](Mask cur) {
                    CellKey c{static_cast<int>(below.size()), h, 0};
                    int i = 0;
                    for (auto it = below.rbegin(); it != below.rend(); ++it, ++i)
                        c.masks |= static_cast<std::uint64_t>(*it) << (56 - 8 * i);
                    c.masks |= static_cast<std::uint64_t>(full) << (56 - 8 * i);
                    out.push_back(c);
                    for (Mask q = (cur - 1) & cur; q; q = (q - 1) & cur) {
                        below.push_back(q);
                        grow(q);
                        below.pop_back();
                    }
                };
                grow(full);
            }
        return out;
    }

private:
    const SimplicialSet& y_;
};

}  // namespace

size_t subdivision_cells(const SimplicialSet& y)
{
    // chains of faces ending at an n-simplex: ordered partitions of n+1 vertices
    std::vector<size_t> fubini{1};
    size_t total = 0;
    for (int n = 0; n <= y.max_dim(); ++n) {
        size_t f = 0, binom = 1;
        for (int j = 1; j <= n + 1; ++j) {
            binom = binom * (n + 2 - j) / j;
            f += binom * fubini[n + 1 - j];
        }
        fubini.push_back(f);
        total += y.cells(n).size() * f;
    }
    return total;
}

MappedFacets complexify_facets(const SimplicialSet& y)
{
    if (y.max_dim() > 7)
        throw SimplexError("complexify_facets handles dimension at most 7");
    PackedCells sd(y);
    std::vector<CellKey> cells = sd.all();
    std::sort(cells.begin(), cells.end());
    auto id = [&](const CellKey& c) {
        auto it = std::lower_bound(cells.begin(), cells.end(), c);
        if (it == cells.end() || !(*it == c))
            throw SimplexError("subdivision cell out of range");
        return static_cast<int>(it - cells.begin());
    };

    // a cell below another is below one of its codimension-one faces
    std::vector<char> covered(cells.size(), 0);
    Mask chain[8];
    for (const CellKey& c : cells) {
        for (int drop = 0; drop <= c.dim && c.dim > 0; ++drop) {
            int len = 0;
            for (int i = 0; i <= c.dim; ++i)
                if (i != drop)
                    chain[len++] = chain_mask(c, i);
            covered[id(sd.normalize(c.carrier, chain, len))] = 1;
        }
    }

    MappedFacets out;
    out.vertices = static_cast<int>(cells.size());
    std::vector<CellKey> key;
    std::vector<int> dims, flag, theta;
    std::vector<Mask> path;
    for (size_t t = 0; t < cells.size(); ++t) {
        if (covered[t])
            continue;
        const CellKey& top = cells[t];
        int len = top.dim + 1;
        Mask full = (1u << len) - 1;
        key.assign(full + 1, CellKey{-1, -1, 0});
        dims.assign(full + 1, -1);
        for (Mask s = 1; s <= full; ++s) {
            int n = 0;
            for (int p : members(s))
                chain[n++] = chain_mask(top, p);
            key[s] = sd.normalize(top.carrier, chain, n);
            dims[s] = key[s].dim;
        }
        // no cell strictly between the cells of q and cur
        auto covers = [&](Mask cur, Mask q) {
            for (Mask mid = (cur - 1) & cur; mid; mid = (mid - 1) & cur) {
                if (dims[mid] <= dims[q] || dims[mid] >= dims[cur])
                    continue;
                for (Mask s = mid; s; s = (s - 1) & mid)
                    if (key[s] == key[q])
                        return false;
            }
            return true;
        };
        flag.assign(1, static_cast<int>(t));
        path.assign(1, full);
        std::function<void(Mask)> descend = [&](Mask cur) {
            if (dims[cur] == 0) {
                theta.clear();
                for (Mask p : path)
                    theta.push_back(std::bit_width(chain_mask(top, std::countr_zero(p))) - 1);
                out.add(flag, y.restrict(y.nd(top.carrier), theta));
                return;
            }
            std::vector<CellKey> seen;
            for (Mask q = (cur - 1) & cur; q; q = (q - 1) & cur) {
                if (dims[q] >= dims[cur] || std::find(seen.begin(), seen.end(), key[q]) != seen.end())
                    continue;
                seen.push_back(key[q]);
                if (!covers(cur, q))
                    continue;
                flag.push_back(id(key[q]));
                path.push_back(q);
                descend(q);
                flag.pop_back();
                path.pop_back();
            }
        };
        descend(full);
    }
    return out;
}

}  // namespace simpi
