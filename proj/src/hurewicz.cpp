#include "simpi/hurewicz.hpp"

#include <set>

namespace simpi {

Chain full_boundary(const SimplicialSet& x, const Chain& c)
{
    Chain out;
    for (const auto& [s, coeff] : c.terms) {
        if (s.dim == 0)
            throw ChainError("boundary of a degree 0 chain");
        for (int i = 0; i <= s.dim; ++i)
            out.add(x.face(s, i), i % 2 ? Int(-coeff) : coeff);
    }
    return out;
}

std::vector<Simplex> all_simplices(const SimplicialSet& x, int n)
{
    std::set<Simplex> out;
    for (int m = 0; m <= n && m <= x.max_dim(); ++m)
        for (int h : x.cells(m)) {
            std::set<Simplex> layer{x.nd(h)};
            for (int up = m; up < n; ++up) {
                std::set<Simplex> next;
                for (const auto& s : layer)
                    for (int j = 0; j <= s.dim; ++j)
                        next.insert(degeneracy(s, j));
                layer = std::move(next);
            }
            out.insert(layer.begin(), layer.end());
        }
    return {out.begin(), out.end()};
}

Chain af_face(const LoopGroup& gx, const Chain& x, int level, int i)
{
    Chain out;
    if (level == 0)
        return out;
    for (const auto& [s, c] : x.terms)
        out += c * abelianize(gx.gen_face(s, i));
    return out;
}

Chain af_degen(const LoopGroup& gx, const Chain& x, int level, int i)
{
    if (i < 0 || i > level)
        throw SimplexError("degeneracy index out of range");
    Chain out;
    for (const auto& [s, c] : x.terms)
        out += c * abelianize(gx.gen_degeneracy(s, i));
    return out;
}

Chain af_boundary(const LoopGroup& gx, const Chain& x, int level)
{
    Chain out;
    for (int i = 0; i <= level && level > 0; ++i) {
        Chain f = af_face(gx, x, level, i);
        out += i % 2 ? -f : f;
    }
    return out;
}

bool af_is_moore(const LoopGroup& gx, const Chain& x, int level)
{
    for (int j = 1; j <= level; ++j)
        if (!af_face(gx, x, level, j).zero())
            return false;
    return true;
}

namespace {

// x - s_{i-1} d_i x in AF
Chain af_peel(const LoopGroup& gx, const Chain& x, int level, int i)
{
    return x - af_degen(gx, af_face(gx, x, level, i), level - 1, i - 1);
}

Chain f0(const LoopGroup& gx, const Chain& c)
{
    Chain out;
    for (const auto& [s, coeff] : c.terms)
        if (s.dim > 0 && !gx.killed(s))
            out.add(s, coeff);
    return out;
}

std::map<int, Chain> by_degree(const Chain& c)
{
    std::map<int, Chain> out;
    for (const auto& [s, coeff] : c.terms)
        out[s.dim].add(s, coeff);
    return out;
}

}  // namespace

Chain MooreRetraction::to_moore(const Chain& x, int level) const
{
    Chain y = x;
    for (int p = 0; level - p > 0; ++p)
        y = af_peel(*gx, y, level, level - p);
    return y;
}

Chain MooreRetraction::f(const Chain& c) const
{
    Chain out;
    for (const auto& [k, part] : by_degree(c))
        if (k > 0)
            out += to_moore(f0(*gx, part), k - 1);
    return out;
}

Chain MooreRetraction::g(const Chain& x) const
{
    const SimplicialSet& sp = gx->space();
    Chain out;
    for (const auto& [s, coeff] : x.terms) {
        int l = s.dim - 1;
        out.add(s, coeff);
        out.add(degeneracy(sp.face(s, l + 1), l), -coeff);
    }
    return out;
}

Chain MooreRetraction::tower_h(const Chain& c) const
{
    Chain out;
    for (const auto& [k, part] : by_degree(c)) {
        if (k == 0)
            continue;
        for (const auto& [s, coeff] : part.terms)
            out.add(degeneracy(s, k), k % 2 ? Int(-coeff) : coeff);
        int l = k - 1;
        Chain y = f0(*gx, part);
        // the last homotopy (p = l) is s_0 and is not zero
        for (int p = 0; l - p >= 0; ++p) {
            Chain lifted = af_degen(*gx, y, l, l - p);
            out += g((l - p) % 2 ? -lifted : lifted);
            if (l - p > 0)
                y = af_peel(*gx, y, l, l - p);
        }
    }
    return out;
}

Chain MooreRetraction::h(const Chain& c) const
{
    const SimplicialSet& sp = gx->space();
    // conjugating by gf - 1 gives fh = hg = 0, then -h d h gives hh = 0
    auto defect = [&](const Chain& x) { return g(f(x)) - x; };
    auto h1 = [&](const Chain& x) { return defect(tower_h(defect(x))); };
    Chain once = h1(c);
    if (once.zero())
        return once;
    return -h1(full_boundary(sp, once));
}

Reduction<Simplex, Simplex> MooreRetraction::as_reduction() const
{
    const LoopGroup* G = gx;
    MooreRetraction r = *this;
    Reduction<Simplex, Simplex> out;
    out.f = [r](const Chain& c) { return r.f(c); };
    out.g = [r](const Chain& x) { return r.g(x); };
    out.h = [r](const Chain& c) { return r.h(c); };
    out.d_source = [G](const Chain& c) {
        Chain out;
        for (const auto& [k, part] : by_degree(c))
            if (k > 1)
                out += full_boundary(G->space(), part);
        return out;
    };
    out.d_target = [G](const Chain& x) {
        Chain out;
        for (const auto& [k, part] : by_degree(x))
            out += af_boundary(*G, part, k - 1);
        return out;
    };
    return out;
}

Chain arrow1(const LoopGroup& gx, const Chain& z)
{
    const SimplicialSet& sp = gx.space();
    Chain nd;
    int n = -1;
    for (const auto& [s, c] : z.terms) {
        if (n >= 0 && s.dim != n)
            throw HurewiczError("arrow 1 needs a homogeneous chain");
        n = s.dim;
        if (!s.degenerate())
            nd.add(s, c);
    }
    if (n < 1)
        return {};
    if (n > 1 && !boundary(sp, nd).zero())
        throw HurewiczError("arrow 1 input is not a cycle");
    // lift to the normalized subcomplex of the unnormalized chains (kernels of d_1..d_n)
    Chain x = nd;
    for (int i = n; i >= 1; --i) {
        Chain down;
        for (const auto& [s, c] : x.terms)
            down.add(degeneracy(sp.face(s, i), i - 1), c);
        x -= down;
    }
    return MooreRetraction{&gx}.f(x);
}

GroupWord lift_chain(const Chain& c)
{
    GroupWord w;
    for (const auto& [s, e] : c.terms)
        w.push(s, e);
    return w;
}

HurewiczContext::HurewiczContext(std::shared_ptr<const SimplicialSet> f, int d, std::optional<LoopContraction> c0)
    : f_(std::move(f)), gx_(f_), d_(d)
{
    if (d < 2)
        throw HurewiczError("target dimension must be at least 2");
    if (f_->cells(0).size() != 1)
        throw HurewiczError("space must have a single vertex");
    if (c0)
        c0_ = *c0;
    for (int h : f_->cells(1))
        if (!c0_.c0.count(f_->nd(h)))
            throw HurewiczError("loop contraction misses edge " + f_->name(h));
}

GroupWord HurewiczContext::c0_word(const GroupWord& w) const
{
    return substitute<Simplex, Simplex>(w, [&](const Simplex& g) {
        auto it = c0_.c0.find(g);
        if (it == c0_.c0.end())
            throw HurewiczError("loop contraction undefined on " + f_->describe(g));
        return it->second;
    });
}

const std::vector<Simplex>& HurewiczContext::basis(int n)
{
    auto it = basis_.find(n);
    if (it != basis_.end())
        return it->second;
    auto& b = basis_[n];
    b = all_simplices(*f_, n);
    auto& idx = index_[n];
    for (size_t i = 0; i < b.size(); ++i)
        idx[b[i]] = i;
    return b;
}

const SNFResult& HurewiczContext::full_snf(int n)
{
    auto it = snf_.find(n);
    if (it != snf_.end())
        return it->second;
    const auto& rows = basis(n - 1);
    const auto& cols = basis(n);
    Matrix m(rows.size(), std::vector<Int>(cols.size(), 0));
    for (size_t j = 0; j < cols.size(); ++j)
        for (int i = 0; i <= n; ++i)
            m[index_[n - 1].at(f_->face(cols[j], i))][j] += i % 2 ? -1 : 1;
    return snf_[n] = smith_normal_form(m, rows.size(), cols.size());
}

std::optional<Chain> HurewiczContext::solve_full(const Chain& z, int n)
{
    const auto& rows = basis(n);
    const auto& cols = basis(n + 1);
    const SNFResult& d = full_snf(n + 1);
    std::vector<Int> zv(rows.size(), 0);
    for (const auto& [s, c] : z.terms)
        zv[index_[n].at(s)] += c;
    std::vector<Int> w(rows.size(), 0);
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows.size(); ++j)
            if (d.U[i][j] != 0 && zv[j] != 0)
                w[i] += d.U[i][j] * zv[j];
    std::vector<Int> y(cols.size(), 0);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (i < d.rank) {
            if (!mpz_divisible_p(w[i].get_mpz_t(), d.S[i][i].get_mpz_t()))
                return std::nullopt;
            y[i] = w[i] / d.S[i][i];
        } else if (w[i] != 0) {
            return std::nullopt;
        }
    }
    Chain t;
    for (size_t r = 0; r < cols.size(); ++r) {
        Int v = 0;
        for (size_t i = 0; i < d.rank; ++i)
            if (y[i] != 0)
                v += d.V[r][i] * y[i];
        t.add(cols[r], v);
    }
    return t;
}

Chain HurewiczContext::boundary_certificate(const Chain& z, int j)
{
    if (j < 0 || j >= d_ - 1)
        throw HurewiczError("boundary certificate needs j < d-1");
    if (z.zero())
        return {};
    if (!af_is_moore(gx_, z, j) || !af_face(gx_, z, j, 0).zero())
        throw HurewiczError("boundary certificate input is not a Moore cycle");
    MooreRetraction r{&gx_};
    auto t = solve_full(r.g(z), j + 1);
    if (!t)
        throw HurewiczError("cycle is not a boundary; the space is not (d-1)-connected");
    Chain c = r.f(*t);
    if (af_face(gx_, c, j + 1, 0) != z)
        throw HurewiczError("boundary certificate failed its differential check");
    return c;
}

GroupWord HurewiczContext::simple_commutator_contraction(const GroupWord& alpha, const GroupWord& gamma, int k) const
{
    if (!is_spherical(gx_, gamma, k))
        throw HurewiczError("simple commutator contraction needs a spherical element");
    GroupWord base = alpha;
    for (int i = 0; i < k; ++i)
        base = gx_.face(base, 0);
    GroupWord b = c0_word(base);
    for (int i = 0; i < k; ++i)
        b = gx_.degen(b, 0);
    std::vector<GroupWord> beta(k + 1);
    beta[k] = b;
    for (int j = k; j >= 1; --j)
        beta[j - 1] = gx_.degen(gx_.face(beta[j], j), j) * gx_.degen(alpha.inverse(), j) * gx_.degen(alpha, j - 1);
    GroupWord delta;
    for (int j = 0; j <= k; ++j) {
        GroupWord c = commutator(beta[j], gx_.degen(gamma, j));
        delta *= j % 2 ? c.inverse() : c;
    }
    return delta;
}

GroupWord HurewiczContext::contraction_c(int k, const GroupWord& w)
{
    if (k < 0 || k >= d_ - 1)
        throw HurewiczError("contraction c_k needs 0 <= k < d-1");
    if (k == 0)
        return c0_word(w);
    return substitute<Simplex, Simplex>(w, [&](const Simplex& g) { return contraction_generator(k, g); });
}

GroupWord HurewiczContext::contraction_generator(int k, const Simplex& g)
{
    auto key = std::make_pair(k, g);
    auto it = memo_.find(key);
    if (it != memo_.end())
        return it->second;
    GroupWord out;
    if (g.degenerate()) {
        int j = g.degs.back();
        Simplex z = f_->face(g, j);
        out = gx_.degen(contraction_c(k - 1, gx_.bar(z)), j + 1);
    } else {
        SphericalSplit s = split(GroupWord(g), k);
        out = contract_spherical(s.spherical, k) * contract_conical(s, k);
    }
    memo_factors_ += out.size();
    if (memo_factors_ > word_factor_cap())
        throw CapExceeded("contraction words exceed the length cap");
    memo_.emplace(key, out);
    return out;
}

SphericalSplit HurewiczContext::split(const GroupWord& w, int k)
{
    MooreSplit m = moore_normalize(gx_, w, k);
    SphericalSplit s;
    s.moore = m.spherical_part;
    s.tail = m.tail;
    s.cone = contraction_c(k - 1, gx_.face(s.moore, 0));
    s.spherical = s.moore * s.cone.inverse();
    s.conical = s.cone * s.tail;
    return s;
}

GroupWord HurewiczContext::contract_conical(const SphericalSplit& s, int k)
{
    return gx_.degen(s.cone, 0) * contraction_c(k, s.tail);
}

GroupWord HurewiczContext::contract_commutator(const GroupWord& w, int k)
{
    // pieces arrive last first; their total length is held to the word cap
    std::vector<GroupWord> pieces;
    size_t total = 0;
    auto on_pair = [&](const GroupWord& x, const GroupWord& y) {
        SphericalSplit sx = split(x, k), sy = split(y, k);
        const GroupWord &xh = sx.conical, &yh = sy.conical;
        GroupWord xy = x * y;
        GroupWord a1 = conjugate(xy, x.inverse()), g1 = conjugate(xy, y.inverse() * yh);
        GroupWord a2 = conjugate(x, yh), g2 = conjugate(x, x.inverse() * xh);
        if (commutator(a1, g1) * commutator(a2, g2) * commutator(xh, yh) != commutator(x, y))
            throw HurewiczError("commutator rewriting identity failed");
        GroupWord cx = contract_conical(sx, k), cy = contract_conical(sy, k);
        pieces.push_back(simple_commutator_contraction(a1, g1, k) * simple_commutator_contraction(a2, g2, k) *
                         commutator(cx, cy));
        total += pieces.back().size();
        if (total > word_factor_cap())
            throw CapExceeded("commutator contraction exceeds the length cap");
    };
    visit_commutators(w, on_pair, [&](const Simplex& a, const Simplex& b) { return gx_.less(a, b); });
    GroupWord out;
    for (auto it = pieces.rbegin(); it != pieces.rend(); ++it)
        out *= *it;
    return out;
}

GroupWord HurewiczContext::contract_spherical(const GroupWord& xs, int k)
{
    if (xs.empty())
        return {};
    Chain t = boundary_certificate(abelianize(xs), k);
    GroupWord lifted = moore_normalize(gx_, lift_chain(t), k + 1).spherical_part;
    GroupWord rest = xs * gx_.face(lifted, 0).inverse();
    return contract_commutator(rest, k) * lifted;
}

GroupWord HurewiczContext::arrow2(const Chain& z)
{
    int top = d_ - 1;
    if (!af_is_moore(gx_, z, top) || !af_face(gx_, z, top, 0).zero())
        throw HurewiczError("arrow 2 input is not a Moore cycle");
    GroupWord y0 = moore_normalize(gx_, lift_chain(z), top).spherical_part;
    return y0 * contraction_c(top - 1, gx_.face(y0, 0)).inverse();
}

std::string check_contraction(HurewiczContext& ctx, int k, const GroupWord& w)
{
    const LoopGroup& gx = ctx.group();
    GroupWord c = ctx.contraction_c(k, w);
    if (gx.face(c, 0) != w)
        return "d_0 c_k != id";
    for (int i = 1; i <= k + 1; ++i) {
        GroupWord want = k == 0 ? GroupWord{} : ctx.contraction_c(k - 1, gx.face(w, i - 1));
        if (gx.face(c, i) != want)
            return "d_" + std::to_string(i) + " c_k != c_{k-1} d_" + std::to_string(i - 1);
    }
    if (k > 0) {
        GroupWord v = gx.face(w, 0);
        for (int i = 0; i < k; ++i)
            if (ctx.contraction_c(k, gx.degen(v, i)) != gx.degen(ctx.contraction_c(k - 1, v), i + 1))
                return "c_k s_" + std::to_string(i) + " != s_" + std::to_string(i + 1) + " c_{k-1}";
    }
    return {};
}

}  // namespace simpi
