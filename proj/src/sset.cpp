#include "simpi/sset.hpp"

#include <algorithm>
#include <numeric>

namespace simpi {

bool Simplex::in_image_of(int j) const
{
    return std::binary_search(degs.begin(), degs.end(), j);
}

Simplex degeneracy(const Simplex& x, int j)
{
    if (j < 0 || j > x.dim)
        throw SimplexError("degeneracy index out of range");
    Simplex r{x.dim + 1, x.base, {}};
    r.degs.reserve(x.degs.size() + 1);
    bool placed = false;
    for (int i : x.degs) {
        if (i >= j && !placed) {
            r.degs.push_back(j);
            placed = true;
        }
        r.degs.push_back(i >= j ? i + 1 : i);
    }
    if (!placed)
        r.degs.push_back(j);
    return r;
}

std::vector<int> collapse_map(const Simplex& x)
{
    std::vector<int> theta(x.dim + 1);
    size_t below = 0;
    for (int l = 0; l <= x.dim; ++l) {
        while (below < x.degs.size() && x.degs[below] < l)
            ++below;
        theta[l] = l - static_cast<int>(below);
    }
    return theta;
}

int SimplicialSet::add(const std::string& name, int dim, std::vector<Simplex> faces)
{
    if (by_name_.count(name))
        throw SimplexError("duplicate simplex name " + name);
    int h = size();
    names_.push_back(name);
    dims_.push_back(dim);
    faces_.push_back({});
    by_name_[name] = h;
    if (static_cast<int>(cells_.size()) <= dim)
        cells_.resize(dim + 1);
    cells_[dim].push_back(h);
    set_faces(h, std::move(faces));
    if (dim == 0 && basepoint < 0)
        basepoint = h;
    return h;
}

void SimplicialSet::set_faces(int h, std::vector<Simplex> faces)
{
    int n = dims_[h];
    if (n == 0 && !faces.empty())
        throw SimplexError("vertex with faces: " + names_[h]);
    if (n > 0 && static_cast<int>(faces.size()) != n + 1)
        throw SimplexError("wrong face count for " + names_[h]);
    for (auto& f : faces) {
        if (f.dim != n - 1 || f.base < 0 || f.base >= size())
            throw SimplexError("bad face for " + names_[h]);
        if (dims_[f.base] != f.base_dim())
            throw SimplexError("face dimension mismatch for " + names_[h]);
    }
    faces_[h] = std::move(faces);
}

const std::vector<int>& SimplicialSet::cells(int n) const
{
    static const std::vector<int> none;
    if (n < 0 || n >= static_cast<int>(cells_.size()))
        return none;
    return cells_[n];
}

std::optional<int> SimplicialSet::find(const std::string& name) const
{
    auto it = by_name_.find(name);
    if (it == by_name_.end())
        return std::nullopt;
    return it->second;
}

Simplex SimplicialSet::face(const Simplex& x, int i) const
{
    if (x.dim < 1 || i < 0 || i > x.dim)
        throw SimplexError("face index out of range");
    if (x.base < 0 || x.base >= size())
        throw SimplexError("dangling simplex reference");
    if (x.degs.empty())
        return faces_[x.base][i];
    int j = x.degs.back();
    Simplex z{x.dim - 1, x.base, {x.degs.begin(), x.degs.end() - 1}};
    if (i == j || i == j + 1)
        return z;
    if (i < j)
        return degeneracy(face(z, i), j - 1);
    return degeneracy(face(z, i - 1), j);
}

Simplex SimplicialSet::restrict(const Simplex& x, const std::vector<int>& theta) const
{
    std::vector<int> distinct;
    for (int v : theta)
        if (distinct.empty() || distinct.back() != v)
            distinct.push_back(v);
    Simplex r = x;
    for (int i = x.dim; i >= 0; --i)
        if (!std::binary_search(distinct.begin(), distinct.end(), i))
            r = face(r, i);
    for (size_t l = 0; l + 1 < theta.size(); ++l)
        if (theta[l] == theta[l + 1])
            r = degeneracy(r, static_cast<int>(l));
    return r;
}

Simplex SimplicialSet::point(int n) const
{
    Simplex r{n, basepoint, {}};
    r.degs.resize(n);
    std::iota(r.degs.begin(), r.degs.end(), 0);
    return r;
}

int SimplicialSet::reduced_level() const
{
    if (cells(0).size() != 1)
        return -1;
    int r = 0;
    while (r + 1 <= max_dim() && cells(r + 1).empty())
        ++r;
    return r;
}

std::vector<std::array<int, 3>> SimplicialSet::check_identities() const
{
    std::vector<std::array<int, 3>> bad;
    for (int h = 0; h < size(); ++h) {
        int n = dims_[h];
        if (n < 2)
            continue;
        Simplex x = nd(h);
        for (int j = 1; j <= n; ++j)
            for (int i = 0; i < j; ++i)
                if (face(face(x, j), i) != face(face(x, i), j - 1))
                    bad.push_back({h, i, j});
    }
    return bad;
}

std::string SimplicialSet::describe(const Simplex& x) const
{
    std::string s;
    for (auto it = x.degs.rbegin(); it != x.degs.rend(); ++it)
        s += "s" + std::to_string(*it) + " ";
    return s + (x.base >= 0 && x.base < size() ? names_[x.base] : "?");
}

Simplex SimplicialMap::operator()(const Simplex& x) const
{
    Simplex r = image.at(x.base);
    for (int j : x.degs)
        r = degeneracy(r, j);
    return r;
}

std::vector<MapViolation> validate_map(const SimplicialMap& f)
{
    std::vector<MapViolation> bad;
    const auto& src = *f.source;
    const auto& tgt = *f.target;
    for (int h = 0; h < src.size(); ++h) {
        const Simplex& y = f.image[h];
        if (y.dim != src.dim_of(h)) {
            bad.push_back({h, -1});
            continue;
        }
        for (int i = 0; i <= y.dim && y.dim > 0; ++i)
            if (f(src.face(src.nd(h), i)) != tgt.face(y, i))
                bad.push_back({h, i});
    }
    return bad;
}

}  // namespace simpi
