#include "simpi/subdivide.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <deque>
#include <mutex>
#include <numeric>
#include <set>

namespace simpi {

namespace {

long binom(long n, long r)
{
    if (r < 0 || n < r)
        return 0;
    long b = 1;
    for (long i = 1; i <= r; ++i)
        b = b * (n - r + i) / i;
    return b;
}

void compositions(int parts, int total, std::vector<int>& cur, std::vector<std::vector<int>>& out)
{
    if (static_cast<int>(cur.size()) == parts - 1) {
        cur.push_back(total);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int a = total; a >= 0; --a) {
        cur.push_back(a);
        compositions(parts, total - a, cur, out);
        cur.pop_back();
    }
}

long det(std::vector<std::vector<long>> a)
{
    // Bareiss elimination, exact on integers
    int n = static_cast<int>(a.size());
    long sign = 1, prev = 1;
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (p < n && a[p][c] == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            sign = -sign;
        }
        for (int r = c + 1; r < n; ++r) {
            for (int j = c + 1; j < n; ++j)
                a[r][j] = (a[r][j] * a[c][c] - a[r][c] * a[c][j]) / prev;
            a[r][c] = 0;
        }
        prev = a[c][c];
    }
    return sign * a[n - 1][n - 1];
}

LocalEsd build_local(int m, int k)
{
    LocalEsd e;
    e.m = m;
    e.k = k;
    std::vector<int> cur;
    compositions(m + 1, k, cur, e.points);
    std::reverse(e.points.begin(), e.points.end());
    std::map<std::vector<int>, int> index;
    for (size_t i = 0; i < e.points.size(); ++i)
        index[e.points[i]] = static_cast<int>(i);
    if (m == 0) {
        e.simplices = {{0}};
        e.orientation = {1};
        return e;
    }
    // partial sums y_i = a_0 + ... + a_i, i < m; the region 0 <= y_0 <= ... <= y_{m-1} <= k
    auto to_point = [&](const std::vector<int>& y) -> std::optional<int> {
        std::vector<int> a(m + 1);
        int prev = 0;
        for (int i = 0; i < m; ++i) {
            if (y[i] < prev)
                return std::nullopt;
            a[i] = y[i] - prev;
            prev = y[i];
        }
        if (prev > k)
            return std::nullopt;
        a[m] = k - prev;
        return index.at(a);
    };
    std::vector<int> perm(m);
    for (const auto& p : e.points) {
        std::vector<int> base(m);
        std::partial_sum(p.begin(), p.end() - 1, base.begin());
        std::iota(perm.begin(), perm.end(), 0);
        do {
            std::vector<int> y = base, s;
            auto first = to_point(y);
            if (!first)
                continue;
            s.push_back(*first);
            bool inside = true;
            for (int t : perm) {
                ++y[t];
                auto q = to_point(y);
                if (!q) {
                    inside = false;
                    break;
                }
                s.push_back(*q);
            }
            if (!inside)
                continue;
            std::vector<std::vector<long>> rows;
            for (int v : s)
                rows.emplace_back(e.points[v].begin(), e.points[v].end());
            long d = det(rows);
            e.simplices.push_back(std::move(s));
            e.orientation.push_back(d > 0 ? 1 : -1);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return e;
}

// colex rank of the cut points of a positive composition
long rank_positive(const std::vector<int>& c)
{
    long r = 0;
    int s = 0;
    for (size_t j = 0; j + 1 < c.size(); ++j) {
        s += c[j];
        r += binom(s - 1, static_cast<long>(j) + 1);
    }
    return r;
}

std::vector<int> unrank_positive(long r, int parts, int k)
{
    std::vector<int> cuts(parts - 1);
    for (int j = parts - 2; j >= 0; --j) {
        long t = j;
        while (binom(t + 1, j + 1) <= r)
            ++t;
        r -= binom(t, j + 1);
        cuts[j] = static_cast<int>(t) + 1;
    }
    std::vector<int> c(parts);
    int prev = 0;
    for (int j = 0; j < parts - 1; ++j) {
        c[j] = cuts[j] - prev;
        prev = cuts[j];
    }
    c[parts - 1] = k - prev;
    return c;
}

int perm_sign_sort(std::vector<int>& v)
{
    int sign = 1;
    for (size_t i = 1; i < v.size(); ++i)
        for (size_t j = i; j > 0 && v[j - 1] > v[j]; --j) {
            std::swap(v[j - 1], v[j]);
            sign = -sign;
        }
    return sign;
}

}  // namespace

bool esd_adjacent(const std::vector<int>& a, const std::vector<int>& b)
{
    if (a.size() != b.size())
        return false;
    int plus = 0, minus = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        int d = b[i] - a[i];
        if (d == 1)
            ++plus;
        else if (d == -1)
            ++minus;
        else if (d != 0)
            return false;
    }
    return plus == 1 && minus == 1;
}

const LocalEsd& esd_simplex(int m, int k)
{
    if (m < 0 || k < 1)
        throw SubdivisionError("edgewise subdivision needs m >= 0 and k >= 1");
    static std::mutex lock;
    static std::map<std::pair<int, int>, LocalEsd> cache;
    std::lock_guard guard(lock);
    auto it = cache.find({m, k});
    if (it == cache.end())
        it = cache.emplace(std::pair(m, k), build_local(m, k)).first;
    return it->second;
}

int argmax_first(const std::vector<int>& x)
{
    return static_cast<int>(std::max_element(x.begin(), x.end()) - x.begin());
}

int dist_et(const std::vector<int>& x, const std::vector<unsigned>& tree_faces)
{
    int total = std::accumulate(x.begin(), x.end(), 0);
    int best = total;
    for (unsigned s : tree_faces) {
        int out = 0;
        for (size_t u = 0; u < x.size(); ++u)
            if (!(s >> u & 1))
                out += x[u];
        best = std::min(best, out);
    }
    return best;
}

std::vector<std::vector<int>> maximal_simplices(const Complex& sigma)
{
    std::set<std::vector<int>> inner;
    auto all = sigma.closure();
    for (const auto& s : all)
        for (size_t i = 0; s.size() > 1 && i < s.size(); ++i) {
            auto t = s;
            t.erase(t.begin() + static_cast<long>(i));
            inner.insert(t);
        }
    std::vector<std::vector<int>> out;
    for (const auto& s : all)
        if (!inner.count(s))
            out.push_back(s);
    return out;
}

long esd_facet_count(const Complex& sigma, int k)
{
    long n = 0;
    for (const auto& s : maximal_simplices(sigma)) {
        long p = 1;
        for (size_t i = 1; i < s.size(); ++i)
            p *= k;
        n += p;
    }
    return n;
}

EsdComplex::EsdComplex(const Complex& sigma, int k) : k_(k)
{
    if (k < 1)
        throw SubdivisionError("edgewise subdivision needs k >= 1");
    faces_ = sigma.closure();
    maximal_ = maximal_simplices(sigma);
    offset_.push_back(0);
    for (size_t i = 0; i < faces_.size(); ++i) {
        index_[faces_[i]] = static_cast<int>(i);
        int r = static_cast<int>(faces_[i].size()) - 1;
        dim_ = std::max(dim_, r);
        offset_.push_back(offset_.back() + binom(k - 1, r));
    }
    first_.push_back(0);
    for (const auto& tau : maximal_) {
        size_t n = 1;
        for (size_t i = 1; i < tau.size(); ++i)
            n *= static_cast<size_t>(k);
        first_.push_back(first_.back() + n);
    }
}

int EsdComplex::facet_parent(size_t i) const
{
    if (i >= facet_count())
        throw SubdivisionError("no such subdivision facet");
    return static_cast<int>(std::upper_bound(first_.begin(), first_.end(), i) - first_.begin()) - 1;
}

std::vector<long> EsdComplex::facet(size_t i) const
{
    int p = facet_parent(i);
    const auto& tau = maximal_[p];
    const LocalEsd& loc = esd_simplex(static_cast<int>(tau.size()) - 1, k_);
    std::vector<long> ids = local_ids(tau);
    std::vector<long> out;
    for (int v : loc.simplices[i - first_[p]])
        out.push_back(ids[v]);
    return out;
}

long EsdComplex::vertex_id(const std::vector<int>& face, const std::vector<int>& coords) const
{
    auto it = index_.find(face);
    if (it == index_.end() || coords.size() != face.size())
        throw SubdivisionError("not a face of the subdivided complex");
    return offset_[it->second] + rank_positive(coords);
}

std::vector<std::pair<int, int>> EsdComplex::coordinates(long v) const
{
    if (v < 0 || v >= vertex_count())
        throw SubdivisionError("no such subdivision vertex");
    size_t f = static_cast<size_t>(std::upper_bound(offset_.begin(), offset_.end(), v) - offset_.begin()) - 1;
    const auto& face = faces_[f];
    auto c = unrank_positive(v - offset_[f], static_cast<int>(face.size()), k_);
    std::vector<std::pair<int, int>> out;
    for (size_t i = 0; i < face.size(); ++i)
        out.emplace_back(face[i], c[i]);
    return out;
}

std::vector<long> EsdComplex::local_ids(const std::vector<int>& face) const
{
    int m = static_cast<int>(face.size()) - 1;
    const LocalEsd& loc = esd_simplex(m, k_);
    std::vector<int> sub_index(1u << (m + 1), -1);
    for (unsigned mask = 1; mask < sub_index.size(); ++mask) {
        std::vector<int> sub;
        for (int i = 0; i <= m; ++i)
            if (mask >> i & 1)
                sub.push_back(face[i]);
        auto it = index_.find(sub);
        if (it == index_.end())
            throw SubdivisionError("face missing from the complex");
        sub_index[mask] = it->second;
    }
    std::vector<long> ids;
    ids.reserve(loc.points.size());
    for (const auto& p : loc.points) {
        unsigned mask = 0;
        std::vector<int> pos;
        for (int i = 0; i <= m; ++i)
            if (p[i] > 0) {
                mask |= 1u << i;
                pos.push_back(p[i]);
            }
        ids.push_back(offset_[sub_index[mask]] + rank_positive(pos));
    }
    return ids;
}

int TreeMetric::at(int j, int v) const
{
    int u = v;
    for (int t = dist[v]; t > j; --t)
        u = parent[u];
    return u;
}

TreeMetric tree_metric(const Complex& x)
{
    TreeMetric t;
    t.root = x.root;
    t.dist.assign(x.vertices, -1);
    t.parent.assign(x.vertices, -1);
    std::vector<std::vector<int>> adj(x.vertices);
    for (auto [a, b] : x.tree) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::deque<int> queue{x.root};
    t.dist[x.root] = 0;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int w : adj[u]) {
            if (t.dist[w] >= 0) {
                if (w != t.parent[u])
                    throw SubdivisionError("tree contains a cycle");
                continue;
            }
            t.dist[w] = t.dist[u] + 1;
            t.parent[w] = u;
            t.depth = std::max(t.depth, t.dist[w]);
            queue.push_back(w);
        }
    }
    if (std::count(t.dist.begin(), t.dist.end(), -1) > 0)
        throw SubdivisionError("tree is not spanning");
    return t;
}

TreeTarget tree_target(const Complex& x)
{
    TreeTarget t;
    t.complex = x;
    t.metric = tree_metric(x);
    t.set = from_complex(x);
    t.quotient = quotient_tree(t.set, x);
    t.lift.assign(t.quotient.set->size(), -1);
    for (int h = 0; h < t.set.set->size(); ++h) {
        const Simplex& img = t.quotient.projection.image[h];
        if (!img.degenerate() && img.base != t.quotient.set->basepoint)
            t.lift[img.base] = h;
    }
    return t;
}

std::optional<std::vector<int>> lift_vertices(const TreeTarget& x, const Simplex& s)
{
    if (s.base == x.quotient.set->basepoint)
        return std::nullopt;
    int h = x.lift.at(s.base);
    if (h < 0)
        throw SubdivisionError("simplex has no lift");
    Simplex up = s;
    up.base = h;
    std::vector<int> v;
    for (int i = 0; i <= s.dim; ++i) {
        Simplex p = x.set.set->restrict(up, {i});
        v.push_back(x.set.vertices_of[p.base].at(0));
    }
    return v;
}

std::vector<unsigned> tree_faces(const TreeMetric& metric, const std::vector<int>& v)
{
    int n = static_cast<int>(v.size());
    std::vector<unsigned> ok;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::set<int> vs;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1)
                vs.insert(v[i]);
        if (vs.size() == 1 || (vs.size() == 2 && metric.tree_edge(*vs.begin(), *vs.rbegin())))
            ok.push_back(mask);
    }
    std::vector<unsigned> out;
    for (unsigned a : ok) {
        bool maximal = true;
        for (unsigned b : ok)
            if (b != a && (a & b) == a)
                maximal = false;
        if (maximal)
            out.push_back(a);
    }
    return out;
}

std::vector<int> label_points(const TreeTarget& x, const std::vector<int>& v, int m, int k)
{
    const LocalEsd& loc = esd_simplex(m, k);
    auto faces = tree_faces(x.metric, v);
    std::vector<int> out;
    out.reserve(loc.points.size());
    std::vector<int> p(v.size(), 0);
    for (const auto& q : loc.points) {
        std::copy(q.begin(), q.end(), p.begin());
        out.push_back(x.metric.at(dist_et(p, faces), v[argmax_first(p)]));
    }
    return out;
}

const std::vector<int>& ImageLabels::operator()(const Simplex& img)
{
    auto it = memo_.find(img);
    if (it != memo_.end())
        return it->second;
    const LocalEsd& loc = esd_simplex(img.dim, k_);
    std::vector<int> labels;
    if (auto v = lift_vertices(x_, img)) {
        // pad lower-dimensional simplices by repeating the last vertex
        v->resize(std::max(d_ + 1, img.dim + 1), v->back());
        labels = label_points(x_, *v, img.dim, k_);
    } else {
        labels.assign(loc.points.size(), x_.metric.root);
    }
    return memo_.emplace(img, std::move(labels)).first->second;
}

int lift_parts(const TreeTarget& x, int d)
{
    return x.metric.depth * (d + 1) + 1;
}

LiftedMap reconstruct_map(const Complex& sigma, const ComplexSet& sigma_set, const SimplicialMap& f, const TreeTarget& x,
                          std::optional<int> parts)
{
    int d = sigma.dimension();
    int k = parts.value_or(lift_parts(x, d));
    LiftedMap g{EsdComplex(sigma, k), x.metric.depth, {}};
    ImageLabels labels(x, d, k);
    g.label.assign(g.esd.vertex_count(), -1);
    for (const auto& tau : g.esd.maximal()) {
        const auto& lab = labels(f(sigma_set.set->nd(sigma_set.handle.at(tau))));
        std::vector<long> ids = g.esd.local_ids(tau);
        for (size_t i = 0; i < ids.size(); ++i) {
            int& slot = g.label[ids[i]];
            if (slot >= 0 && slot != lab[i])
                throw SubdivisionError("inconsistent labeling across a shared face");
            slot = lab[i];
        }
    }
    return g;
}

MappedFacets mapped_facets(const Complex& sigma, const ComplexSet& sigma_set, const SimplicialMap& f)
{
    MappedFacets out;
    out.vertices = sigma.vertices;
    for (const auto& tau : maximal_simplices(sigma))
        out.add(tau, f(sigma_set.set->nd(sigma_set.handle.at(tau))));
    return out;
}

std::optional<std::vector<int>> orient_pseudomanifold(const Complex& sigma)
{
    auto tops = maximal_simplices(sigma);
    MappedFacets m;
    m.vertices = sigma.vertices;
    for (const auto& t : tops)
        m.add(t, Simplex{});
    return orient_pseudomanifold(m);
}

std::optional<std::vector<int>> orient_pseudomanifold(const MappedFacets& sigma)
{
    size_t tops = sigma.size();
    if (tops == 0)
        return std::nullopt;
    size_t n = sigma.facet(0).size();
    for (size_t t = 0; t < tops; ++t)
        if (sigma.facet(t).size() != n)
            return std::nullopt;
    if (n == 1)
        return std::vector<int>(tops, 1);

    // every ridge (a facet with one vertex dropped) must occur exactly twice
    struct Ridge {
        std::uint64_t key;
        std::uint32_t top;
        std::uint32_t drop;
    };
    int bits = std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(sigma.vertices))));
    bool packed = bits * static_cast<int>(n - 1) <= 64;
    std::vector<Ridge> ridges;
    ridges.reserve(tops * n);
    for (size_t t = 0; t < tops; ++t)
        for (size_t i = 0; i < n; ++i) {
            std::uint64_t key = 0;
            if (packed) {
                auto f = sigma.facet(t);
                for (size_t j = 0; j < n; ++j)
                    if (j != i)
                        key = key << bits | static_cast<std::uint64_t>(f[j]);
            }
            ridges.push_back({key, static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(i)});
        }
    auto vertices = [&](const Ridge& r, size_t j) { return sigma.facet(r.top)[j < r.drop ? j : j + 1]; };
    auto less = [&](const Ridge& a, const Ridge& b) {
        if (packed)
            return a.key < b.key;
        for (size_t j = 0; j + 1 < n; ++j)
            if (vertices(a, j) != vertices(b, j))
                return vertices(a, j) < vertices(b, j);
        return false;
    };
    std::sort(ridges.begin(), ridges.end(), less);
    for (size_t p = 0; p < ridges.size(); p += 2) {
        if (p + 1 >= ridges.size() || less(ridges[p], ridges[p + 1]))
            return std::nullopt;
        if (p + 2 < ridges.size() && !less(ridges[p + 1], ridges[p + 2]))
            return std::nullopt;
    }
    std::vector<std::uint32_t> where(tops * n);
    for (size_t p = 0; p < ridges.size(); ++p)
        where[ridges[p].top * n + ridges[p].drop] = static_cast<std::uint32_t>(p);

    std::vector<int> sign(tops, 0);
    std::vector<std::uint32_t> queue;
    for (size_t s = 0; s < tops; ++s) {
        if (sign[s])
            continue;
        sign[s] = 1;
        queue.assign(1, static_cast<std::uint32_t>(s));
        while (!queue.empty()) {
            std::uint32_t t = queue.back();
            queue.pop_back();
            for (size_t i = 0; i < n; ++i) {
                const Ridge& other = ridges[where[t * n + i] ^ 1];
                // sign[t] e_t + sign[u] e_u = 0 on the shared ridge, e = (-1)^drop
                int parity = (i + other.drop) % 2 ? -1 : 1;
                int want = -sign[t] * parity;
                if (!sign[other.top]) {
                    sign[other.top] = want;
                    queue.push_back(other.top);
                } else if (sign[other.top] != want) {
                    return std::nullopt;
                }
            }
        }
    }
    return sign;
}

namespace {

// signed image in X of one labeled subdivided simplex
void add_local_image(Chain& c, const TreeTarget& x, const LocalEsd& loc, const std::vector<int>& labels, const Int& weight)
{
    std::vector<int> w;
    for (size_t s = 0; s < loc.simplices.size(); ++s) {
        w.clear();
        for (int v : loc.simplices[s])
            w.push_back(labels[v]);
        int sign = loc.orientation[s] * perm_sign_sort(w);
        if (std::adjacent_find(w.begin(), w.end()) != w.end())
            continue;
        auto it = x.set.handle.find(w);
        if (it == x.set.handle.end())
            throw SubdivisionError("facet image is not a simplex of the target");
        Simplex y = x.quotient.projection(x.set.set->nd(it->second));
        if (!y.degenerate())
            c.add(y, weight * sign);
    }
}

std::vector<unsigned> supports(const LocalEsd& loc)
{
    std::vector<unsigned> out;
    for (const auto& p : loc.points) {
        unsigned s = 0;
        for (size_t u = 0; u < p.size(); ++u)
            if (p[u] > 0)
                s |= 1u << u;
        out.push_back(s);
    }
    return out;
}

std::optional<bool> degree_check(const TreeTarget& x, const Chain& lifted, const Chain& direct, int d)
{
    if (d < 1)
        return false;
    ChainOps ops(x.quotient.set);
    try {
        return ops.solve_boundary(lifted - direct, d).has_value();
    } catch (const ChainError&) {
        return false;  // not even a cycle
    }
}

}  // namespace

LiftAudit audit_mapped(const MappedFacets& sigma, const TreeTarget& x, int k)
{
    LiftAudit a;
    const SimplicialSet& target = *x.quotient.set;
    int d = sigma.dim(), l = x.metric.depth;
    a.sigma_facets = sigma.size();
    a.images = sigma.images().size();
    auto signs = orient_pseudomanifold(sigma);
    std::vector<size_t> mult(a.images, 0);
    std::vector<Int> weight(a.images, Int(0));
    for (size_t t = 0; t < sigma.size(); ++t) {
        ++mult[sigma.image(t)];
        if (signs)
            weight[sigma.image(t)] += (*signs)[t];
    }

    ImageLabels labels(x, d, k);
    Chain lifted, direct;
    std::vector<int> w;
    for (size_t i = 0; i < a.images; ++i) {
        const Simplex& img = sigma.images()[i];
        int m = img.dim;
        const LocalEsd& loc = esd_simplex(m, k);
        const std::vector<int> lab = labels(img);
        auto sup = supports(loc);

        size_t good = 0;
        for (const auto& s : loc.simplices) {
            w.clear();
            for (int v : s)
                w.push_back(lab[v]);
            std::sort(w.begin(), w.end());
            w.erase(std::unique(w.begin(), w.end()), w.end());
            good += x.set.handle.count(w);
        }
        a.facets += loc.simplices.size() * mult[i];
        a.simplicial += good * mult[i];

        auto v = lift_vertices(x, img);
        if (!v) {
            for (int label : lab)
                a.tree_to_root = a.tree_to_root && label == x.metric.root;
        } else {
            // membership in an extended face straight from its definition
            auto faces = tree_faces(x.metric, *v);
            for (size_t p = 0; p < loc.points.size(); ++p) {
                bool in_tree = std::any_of(faces.begin(), faces.end(), [&](unsigned s) { return (sup[p] & s) == sup[p]; });
                if (in_tree && lab[p] != x.metric.root)
                    a.tree_to_root = false;
            }
            if (m == d && k == lift_parts(x, d))
                for (int u = 0; u <= m; ++u) {
                    std::vector<int> c(m + 1, l);
                    c[u] = l + 1;
                    size_t p = std::find(loc.points.begin(), loc.points.end(), c) - loc.points.begin();
                    if (lab[p] != (*v)[u])
                        a.interior_onto = false;
                }
        }

        for (unsigned mask = 1; mask + 1 < (1u << (m + 1)); ++mask) {
            std::vector<int> pos;
            for (int u = 0; u <= m; ++u)
                if (mask >> u & 1)
                    pos.push_back(u);
            const LocalEsd& sub = esd_simplex(static_cast<int>(pos.size()) - 1, k);
            const std::vector<int>& own = labels(target.restrict(img, pos));
            std::vector<int> q(pos.size());
            for (size_t p = 0; p < loc.points.size(); ++p) {
                if ((sup[p] & mask) != sup[p])
                    continue;
                for (size_t j = 0; j < pos.size(); ++j)
                    q[j] = loc.points[p][pos[j]];
                size_t r = std::lower_bound(sub.points.begin(), sub.points.end(), q) - sub.points.begin();
                if (r == sub.points.size() || sub.points[r] != q || own[r] != lab[p])
                    a.faces_consistent = false;
            }
        }

        if (signs && weight[i] != 0) {
            add_local_image(lifted, x, loc, lab, weight[i]);
            if (!img.degenerate())
                direct.add(img, weight[i]);
        }
    }
    if (signs)
        a.degree = degree_check(x, lifted, direct, d);
    return a;
}

Chain lifted_image(const LiftedMap& g, const TreeTarget& x, const std::vector<int>& signs)
{
    Chain c;
    int k = g.esd.parts();
    for (size_t p = 0; p < g.esd.maximal().size(); ++p) {
        const auto& tau = g.esd.maximal()[p];
        const LocalEsd& loc = esd_simplex(static_cast<int>(tau.size()) - 1, k);
        std::vector<long> ids = g.esd.local_ids(tau);
        std::vector<int> lab;
        for (long id : ids)
            lab.push_back(g.label[id]);
        add_local_image(c, x, loc, lab, Int(signs[p]));
    }
    return c;
}

Chain direct_image(const Complex& sigma, const ComplexSet& sigma_set, const SimplicialMap& f, const std::vector<int>& signs)
{
    Chain c;
    auto tops = maximal_simplices(sigma);
    for (size_t t = 0; t < tops.size(); ++t) {
        Simplex y = f(sigma_set.set->nd(sigma_set.handle.at(tops[t])));
        if (!y.degenerate())
            c.add(y, signs[t]);
    }
    return c;
}

LiftAudit audit_lift(const LiftedMap& g, const Complex& sigma, const ComplexSet& sigma_set, const SimplicialMap& f,
                     const TreeTarget& x)
{
    LiftAudit a = audit_mapped(mapped_facets(sigma, sigma_set, f), x, g.esd.parts());
    const EsdComplex& e = g.esd;
    a.facets = e.facet_count();
    a.simplicial = 0;
    std::vector<int> w;
    for (const auto& tau : e.maximal()) {
        const LocalEsd& loc = esd_simplex(static_cast<int>(tau.size()) - 1, e.parts());
        std::vector<long> ids = e.local_ids(tau);
        for (const auto& s : loc.simplices) {
            w.clear();
            for (int v : s)
                w.push_back(g.label[ids[v]]);
            std::sort(w.begin(), w.end());
            w.erase(std::unique(w.begin(), w.end()), w.end());
            a.simplicial += x.set.handle.count(w);
        }
    }
    return a;
}

}  // namespace simpi
