#include "simpi/whitehead.hpp"

#include <bit>
#include <sstream>

namespace simpi {

AbElem AbelianGroup::normalize(AbElem a) const
{
    if (a.size() != orders.size())
        throw WhiteheadError("group element of the wrong length");
    for (size_t i = 0; i < a.size(); ++i)
        if (orders[i] != 0)
            mpz_fdiv_r(a[i].get_mpz_t(), a[i].get_mpz_t(), orders[i].get_mpz_t());
    return a;
}

AbElem AbelianGroup::add(const AbElem& a, const AbElem& b) const
{
    AbElem r = a;
    for (size_t i = 0; i < r.size(); ++i)
        r[i] += b[i];
    return normalize(std::move(r));
}

AbElem AbelianGroup::neg(const AbElem& a) const
{
    AbElem r = a;
    for (auto& c : r)
        c = -c;
    return normalize(std::move(r));
}

AbElem AbelianGroup::scale(const AbElem& a, const Int& n) const
{
    AbElem r = a;
    for (auto& c : r)
        c *= n;
    return normalize(std::move(r));
}

bool AbelianGroup::is_zero(const AbElem& a) const
{
    for (const auto& c : normalize(a))
        if (c != 0)
            return false;
    return true;
}

AbElem AbelianGroup::unit(size_t i) const
{
    AbElem r = zero();
    r.at(i) = 1;
    return normalize(std::move(r));
}

std::string AbelianGroup::describe(const AbElem& a) const
{
    std::ostringstream out;
    out << "(";
    for (size_t i = 0; i < a.size(); ++i)
        out << (i ? "," : "") << a[i].get_str();
    out << ")";
    return out.str();
}

std::vector<unsigned> faces_of_size(int q, int size)
{
    std::vector<unsigned> out;
    if (size < 0 || size > q + 1)
        return out;
    // lexicographic on vertex lists
    std::vector<int> v(size);
    for (int i = 0; i < size; ++i)
        v[i] = i;
    for (;;) {
        unsigned m = 0;
        for (int i : v)
            m |= 1u << i;
        out.push_back(m);
        int i = size - 1;
        while (i >= 0 && v[i] == q - (size - 1 - i))
            --i;
        if (i < 0)
            break;
        ++v[i];
        for (int j = i + 1; j < size; ++j)
            v[j] = v[j - 1] + 1;
    }
    return out;
}

namespace {

std::vector<int> bits(unsigned m)
{
    std::vector<int> v;
    for (int i = 0; m >> i; ++i)
        if (m >> i & 1)
            v.push_back(i);
    return v;
}

// drop vertex j, shift the higher ones down
unsigned delete_vertex(unsigned m, int j)
{
    unsigned low = m & ((1u << j) - 1);
    return low | ((m >> (j + 1)) << j);
}

}  // namespace

EMSpace::EMSpace(AbelianGroup pi, int n) : pi_(std::move(pi)), n_(n)
{
    if (n < 1)
        throw WhiteheadError("Eilenberg-MacLane degree must be positive");
}

EMSimplex EMSpace::zero(int q) const
{
    return EMSimplex{n_, q, {}};
}

AbElem EMSpace::label(const EMSimplex& s, unsigned face) const
{
    auto it = s.labels.find(face);
    return it == s.labels.end() ? pi_.zero() : it->second;
}

EMSimplex EMSpace::make(int q, const std::map<unsigned, AbElem>& labels) const
{
    EMSimplex s = zero(q);
    for (const auto& [m, a] : labels) {
        if (std::popcount(m) != n_ + 1 || (m >> (q + 1)) != 0)
            throw WhiteheadError("label on a face of the wrong size");
        AbElem v = pi_.normalize(a);
        if (!pi_.is_zero(v))
            s.labels[m] = std::move(v);
    }
    return s;
}

EMSimplex EMSpace::face(const EMSimplex& s, int j) const
{
    if (j < 0 || j > s.q)
        throw WhiteheadError("face index out of range");
    EMSimplex r = zero(s.q - 1);
    for (const auto& [m, a] : s.labels)
        if (!(m >> j & 1))
            r.labels[delete_vertex(m, j)] = a;
    return r;
}

EMSimplex EMSpace::degen(const EMSimplex& s, int j) const
{
    if (j < 0 || j > s.q)
        throw WhiteheadError("degeneracy index out of range");
    EMSimplex r = zero(s.q + 1);
    for (const auto& [m, a] : s.labels) {
        // preimages under eta_j: vertices above j move up by one
        unsigned low = m & ((1u << (j + 1)) - 1);
        unsigned high = (m >> (j + 1)) << (j + 2);
        unsigned up = low | high;
        r.labels[up] = a;
        if (m >> j & 1)
            r.labels[(up & ~(1u << j)) | (1u << (j + 1))] = a;
    }
    return r;
}

EMSimplex EMSpace::add(const EMSimplex& a, const EMSimplex& b) const
{
    if (a.q != b.q || a.n != n_ || b.n != n_)
        throw WhiteheadError("adding simplices of different shape");
    std::map<unsigned, AbElem> sum = a.labels;
    for (const auto& [m, v] : b.labels) {
        auto it = sum.find(m);
        if (it == sum.end())
            sum[m] = v;
        else
            it->second = pi_.add(it->second, v);
    }
    return make(a.q, sum);
}

EMSimplex EMSpace::neg(const EMSimplex& a) const
{
    std::map<unsigned, AbElem> r;
    for (const auto& [m, v] : a.labels)
        r[m] = pi_.neg(v);
    return make(a.q, r);
}

bool EMSpace::is_cocycle(const EMSimplex& s) const
{
    for (unsigned h : faces_of_size(s.q, n_ + 2)) {
        AbElem sum = pi_.zero();
        std::vector<int> v = bits(h);
        for (size_t i = 0; i < v.size(); ++i) {
            AbElem l = label(s, h & ~(1u << v[i]));
            sum = i % 2 ? pi_.sub(sum, l) : pi_.add(sum, l);
        }
        if (!pi_.is_zero(sum))
            return false;
    }
    return true;
}

EMSimplex EMSpace::coboundary(int q, const std::map<unsigned, AbElem>& cochain) const
{
    std::map<unsigned, AbElem> out;
    for (unsigned f : faces_of_size(q, n_ + 1)) {
        AbElem sum = pi_.zero();
        std::vector<int> v = bits(f);
        for (size_t i = 0; i < v.size(); ++i) {
            auto it = cochain.find(f & ~(1u << v[i]));
            if (it == cochain.end())
                continue;
            sum = i % 2 ? pi_.sub(sum, it->second) : pi_.add(sum, it->second);
        }
        out[f] = sum;
    }
    return make(q, out);
}

EMSimplex EMSpace::from_element(const AbElem& k) const
{
    return make(n_, {{(1u << (n_ + 1)) - 1, k}});
}

AbElem EMSpace::as_element(const EMSimplex& s) const
{
    if (s.q != n_)
        throw WhiteheadError("not a simplex of dimension n");
    return label(s, (1u << (n_ + 1)) - 1);
}

EMSimplex em_twisting(const EMSpace& base, const EMSpace& fiber, const EMSimplex& b)
{
    int n = base.degree(), q = b.q;
    if (fiber.degree() != n - 1 || q < 1)
        throw WhiteheadError("twisting needs K(pi,n) over K(pi,n-1) and q >= 1");
    const AbelianGroup& pi = base.group();
    std::map<unsigned, AbElem> out;
    for (unsigned e : faces_of_size(q - 1, n)) {
        AbElem v = base.label(b, e | (1u << q));
        if (!(e >> (q - 1) & 1))
            v = pi.sub(v, base.label(b, e | (1u << (q - 1))));
        out[e] = n % 2 ? pi.neg(v) : v;
    }
    return fiber.make(q - 1, out);
}

std::map<unsigned, AbElem> em_cone(const EMSpace& base, const EMSimplex& b)
{
    int n = base.degree(), q = b.q;
    std::map<unsigned, AbElem> out;
    for (unsigned e : faces_of_size(q, n)) {
        if (e >> q & 1)
            continue;
        AbElem v = base.label(b, e | (1u << q));
        out[e] = n % 2 ? base.group().neg(v) : v;
    }
    return out;
}

PostnikovTwo::PostnikovTwo(std::shared_ptr<const SimplicialSet> x)
    : x_(std::move(x)), ops_(x_), k2_(AbelianGroup{}, 2)
{
    if (x_->reduced_level() < 0)
        throw WhiteheadError("phi_2 needs a single vertex");
    Homology h1 = ops_.homology(1);
    if (!h1.free.empty() || !h1.torsion.empty())
        throw WhiteheadError("phi_2 needs H_1 = 0");
    Homology h2 = ops_.homology(2);
    AbelianGroup pi;
    for (size_t i = 0; i < h2.torsion.size(); ++i) {
        pi.orders.push_back(h2.torsion_orders[i]);
        gens_.push_back(h2.torsion[i]);
        flip_.push_back(1);
    }
    for (const auto& g : h2.free) {
        pi.orders.push_back(0);
        // leading coefficient positive, so a single 2-cell cycle is the unit
        bool negative = g.terms.begin()->second < 0;
        gens_.push_back(negative ? -g : g);
        flip_.push_back(negative ? -1 : 1);
    }
    k2_ = EMSpace(pi, 2);
    for (int h : x_->cells(2))
        triangles_[h] = class_of(ops_.project_to_cycles(x_->nd(h), 2));
}

AbElem PostnikovTwo::class_of(const Chain& z) const
{
    std::vector<Int> c = ops_.homology_class(z, 2);
    for (size_t i = 0; i < c.size(); ++i)
        c[i] *= flip_[i];
    return group().normalize(c);
}

Chain PostnikovTwo::representative(const AbElem& k) const
{
    AbElem n = group().normalize(k);
    Chain z;
    for (size_t i = 0; i < gens_.size(); ++i)
        z += n[i] * gens_[i];
    return z;
}

AbElem PostnikovTwo::on_triangle(const Simplex& t) const
{
    if (t.dim != 2)
        throw WhiteheadError("phi_2 on a non-triangle");
    if (t.degenerate())
        return group().zero();
    return triangles_.at(t.base);
}

EMSimplex PostnikovTwo::operator()(const Simplex& x) const
{
    std::map<unsigned, AbElem> labels;
    for (unsigned f : faces_of_size(x.dim, 3))
        labels[f] = on_triangle(x_->restrict(x, bits(f)));
    return k2_.make(x.dim, labels);
}

StageThree::StageThree(std::shared_ptr<const SimplicialSet> x) : phi_(std::move(x)), k1_(phi_.group(), 1) {}

EMSimplex StageThree::twisting(const Simplex& x) const
{
    return em_twisting(phi_.target(), k1_, phi_(x));
}

F3Cell StageThree::face(const F3Cell& c, int i) const
{
    int q = c.dim();
    if (i < 0 || i > q || q == 0)
        throw WhiteheadError("face index out of range");
    F3Cell r{base().face(c.x, i), k1_.face(c.k, i)};
    if (i == q)
        r.k = k1_.add(twisting(c.x), r.k);
    return r;
}

F3Cell StageThree::degen(const F3Cell& c, int j) const
{
    return {degeneracy(c.x, j), k1_.degen(c.k, j)};
}

F3Cell StageThree::point(int n) const
{
    return {base().point(n), k1_.zero(n)};
}

F3Cell StageThree::edge(const Simplex& x, const AbElem& k) const
{
    if (x.dim != 1)
        throw WhiteheadError("edge cell needs a 1-simplex");
    return {x, k1_.make(1, {{3u, k}})};
}

F3Cell StageThree::triangle(const Simplex& y, const AbElem& k0, const AbElem& k1, const AbElem& k2) const
{
    if (y.dim != 2)
        throw WhiteheadError("triangle cell needs a 2-simplex");
    EMSimplex k = k1_.make(2, {{6u, k0}, {5u, k1}, {3u, k2}});
    if (!k1_.is_cocycle(k))
        throw WhiteheadError("fiber labels violate k0 - k1 + k2 = 0");
    return {y, k};
}

bool StageThree::killed(const F3Cell& g) const
{
    int m = g.dim();
    if (m == 0)
        return true;
    return g.x.in_image_of(m - 1) && g.k == k1_.degen(k1_.face(g.k, m - 1), m - 1);
}

F3Word StageThree::bar(const F3Cell& g, const Int& e) const
{
    return killed(g) ? F3Word{} : F3Word(g, e);
}

F3Word StageThree::gen_face(const F3Cell& g, int i) const
{
    int n = g.dim() - 1;
    if (i < 0 || i > n)
        throw WhiteheadError("loop group face index out of range");
    if (i < n)
        return bar(face(g, i));
    return bar(face(g, n + 1)).inverse() * bar(face(g, n));
}

F3Word StageThree::face(const F3Word& w, int i) const
{
    return substitute<F3Cell, F3Cell>(w, [&](const F3Cell& g) { return gen_face(g, i); });
}

F3Word StageThree::degen(const F3Word& w, int j) const
{
    F3Word r;
    for (const auto& [g, e] : w.f)
        r *= bar(degen(g, j), e);
    return r;
}

F3Word StageThree::lift_zero(const GroupWord& w) const
{
    F3Word r;
    for (const auto& [g, e] : w.f)
        r *= bar(F3Cell{g, k1_.zero(g.dim)}, e);
    return r;
}

std::string StageThree::describe(const F3Cell& c) const
{
    std::ostringstream out;
    out << "(" << base().describe(c.x) << ";";
    bool first = true;
    for (const auto& [m, a] : c.k.labels) {
        out << (first ? "" : " ") << m << ":" << pi2().describe(a);
        first = false;
    }
    out << ")";
    return out.str();
}

std::string StageThree::describe(const F3Word& w) const
{
    std::ostringstream out;
    for (size_t i = 0; i < w.f.size(); ++i)
        out << (i ? " " : "") << describe(w.f[i].first) << "^" << w.f[i].second.get_str();
    return w.empty() ? "1" : out.str();
}

F3Rewriter::F3Rewriter(const StageThree& f, F3Word z, bool check_each_step)
    : f_(f), z_(std::move(z)), check_(check_each_step)
{
    if (!f_.face(z_, 0).empty())
        throw WhiteheadError("rewriting starts from z with d_0 z = 1");
    w_ = f_.face(z_, 1);
}

bool F3Rewriter::verify() const
{
    return f_.face(z_, 0).empty() && f_.face(z_, 1) == w_;
}

void F3Rewriter::rotate(const F3Word& u)
{
    F3Word s = f_.degen(u, 0);
    w_ = u.inverse() * w_ * u;
    z_ = s.inverse() * z_ * s;
    ++steps_;
    if (check_ && !verify())
        throw WhiteheadError("rotation broke the witness");
}

void F3Rewriter::replace(const F3Word& from, const F3Word& to, const F3Word& witness)
{
    if (!f_.face(witness, 0).empty() || !(f_.face(witness, 1) == to * from.inverse()))
        throw WhiteheadError("rewriting witness has the wrong faces");
    w_ = to * (from.inverse() * w_);
    z_ = witness * z_;
    ++steps_;
    if (check_ && !verify())
        throw WhiteheadError("rewriting broke the witness");
}

void F3Rewriter::rule1(const F3Cell& g, const Int& e)
{
    rotate(f_.bar(g, e));
}

void F3Rewriter::rule2(const AbElem& k, const Int& e)
{
    const AbelianGroup& pi = f_.pi2();
    F3Word s0 = f_.degen(f_.bar(f_.star(k)), 0);
    F3Cell t = f_.triangle(f_.base().point(2), k, pi.zero(), pi.neg(k));
    replace(f_.bar(f_.star(k), e), f_.bar(f_.star(pi.neg(k)), -e), f_.bar(t, e) * power(s0, -e));
}

void F3Rewriter::rule3(const Simplex& x, const AbElem& k)
{
    const AbelianGroup& pi = f_.pi2();
    F3Word from = f_.bar(f_.star(pi.neg(k)), -1) * f_.bar(f_.edge(x, pi.zero()));
    F3Word to = f_.bar(f_.edge(x, k));
    F3Cell t = f_.triangle(degeneracy(x, 0), k, pi.zero(), pi.neg(k));
    replace(from, to, f_.degen(to, 0) * f_.bar(t, -1));
}

void F3Rewriter::rule4(const Simplex& x, const AbElem& k)
{
    const AbelianGroup& pi = f_.pi2();
    F3Word from = f_.bar(f_.edge(x, pi.zero()), -1) * f_.bar(f_.edge(x, k));
    F3Word to = f_.bar(f_.star(k));
    F3Cell t = f_.triangle(degeneracy(x, 1), k, k, pi.zero());
    replace(from, to, f_.degen(to, 0) * f_.bar(t, -1));
}

void F3Rewriter::rule5(const AbElem& k, const AbElem& l)
{
    const AbelianGroup& pi = f_.pi2();
    AbElem kl = pi.add(k, l);
    F3Word from = f_.bar(f_.star(pi.neg(l)), -1) * f_.bar(f_.star(k));
    F3Word to = f_.bar(f_.star(kl));
    F3Cell t = f_.triangle(f_.base().point(2), kl, k, pi.neg(l));
    replace(from, to, f_.degen(to, 0) * f_.bar(t, -1));
}

void F3Rewriter::drop_conjugation(const Simplex& x, const AbElem& c, int e)
{
    const AbelianGroup& pi = f_.pi2();
    F3Word xw = f_.bar(f_.edge(x, pi.zero()));
    F3Word sw = f_.bar(f_.star(c));
    // v has d_0 v = [x, s] and d_1 v = 1
    F3Word v = f_.degen(xw, 0) * f_.bar(f_.triangle(degeneracy(x, 1), c, c, pi.zero())) *
               f_.bar(f_.triangle(degeneracy(x, 0), pi.zero(), c, c), -1) * f_.degen(sw, 0).inverse();
    F3Word witness = v * f_.degen(f_.face(v, 0), 0).inverse();
    if (e < 0)
        witness = f_.degen(xw, 0).inverse() * witness.inverse() * f_.degen(xw, 0);
    F3Word xe = power(xw, e);
    replace(xe * sw * xe.inverse(), sw, witness);
}

F3Contraction::F3Contraction(std::shared_ptr<const SimplicialSet> x, LoopContraction c0)
    : f_(x), c0_(c0), hurewicz_(x, 2, std::move(c0))
{
}

GroupWord F3Contraction::spherical(const AbElem& k)
{
    Chain gamma = f_.phi2().representative(k);
    if (gamma.zero())
        return {};
    return hurewicz_.arrow2(arrow1(hurewicz_.group(), gamma));
}

namespace {

struct Block {
    AbElem star;
    Simplex x;
    int eps;
};

}  // namespace

F3Word F3Contraction::on_star(const AbElem& k0)
{
    const AbelianGroup& pi = f_.pi2();
    AbElem k = pi.normalize(k0);
    if (pi.is_zero(k))
        return {};
    if (auto it = stars_.find(k); it != stars_.end())
        return it->second;

    GroupWord gamma = spherical(k);
    const SimplicialSet& x = f_.base();
    F3Word left, right;
    for (const auto& [y, e] : gamma.f) {
        AbElem ky = f_.phi2().on_triangle(y);
        AbElem zero = pi.zero();
        left *= f_.bar(f_.triangle(degeneracy(x.face(y, 0), 0), ky, zero, pi.neg(ky)), e);
        right *= f_.bar(f_.triangle(y, ky, zero, pi.neg(ky)), e);
    }
    F3Rewriter r(f_, left * right.inverse());

    // w is kept as U S P: unread letters, reduced blocks (*,s)(x,0)^eps, pending star
    std::vector<std::pair<F3Cell, int>> unread;
    for (const auto& [g, e] : r.w().f)
        for (Int n = abs(e); n > 0; --n)
            unread.emplace_back(g, e > 0 ? 1 : -1);
    std::vector<Block> stack;
    std::optional<AbElem> pending;
    Simplex base_edge = x.point(1);
    auto star = [&](const AbElem& c, int e = 1) { return f_.bar(f_.star(c), e); };
    auto xletter = [&](const Simplex& s, int e = 1) { return f_.bar(f_.edge(s, pi.zero()), e); };

    for (const auto& [g, eps] : unread) {
        if (g.x == base_edge) {
            AbElem c = f_.fiber().label(g.k, 3u);
            if (eps < 0) {
                r.rule2(c, -1);
                c = pi.neg(c);
            }
            if (pending) {
                r.rotate(star(*pending, -1));
                r.rule2(*pending, 1);
                r.rule5(c, *pending);
                c = pi.add(c, *pending);
            }
            r.rotate(star(c));
            pending = c;
            continue;
        }
        if (!g.k.labels.empty())
            throw WhiteheadError("unexpected fiber label on a loop letter");
        if (!stack.empty() && stack.back().x == g.x && stack.back().eps == -eps) {
            AbElem t = stack.back().star, p = pending.value_or(pi.zero());
            stack.pop_back();
            if (pending)
                r.rotate(star(p, -1));
            r.rotate(xletter(g.x, eps));
            r.rotate(star(t, -1));
            // front: (*,t) x^-eps (*,p) x^eps
            if (eps > 0) {
                r.rule2(t, 1);
                F3Word head = star(pi.neg(t), -1) * xletter(g.x, -1);
                r.rotate(head);
                r.rule2(p, 1);
                // (*,-p)^-1 (x,0) ... (*,-t)^-1 (x,0)^-1
                r.rule3(g.x, p);
                r.rotate(xletter(g.x));
                r.rule4(g.x, p);
                r.rotate(star(pi.neg(t)));
                r.rule5(p, t);
            } else {
                r.rotate(star(t));
                r.drop_conjugation(g.x, p, 1);
                r.rotate(star(t, -1));
                r.rule2(t, 1);
                r.rule5(p, t);
            }
            AbElem s = pi.add(t, p);
            r.rotate(star(s));
            pending = s;
            continue;
        }
        r.rotate(xletter(g.x, eps));
        stack.push_back({pending.value_or(pi.zero()), g.x, eps});
        pending.reset();
    }
    if (!stack.empty())
        throw WhiteheadError("loop letters do not cancel; the spherical word is not spherical");
    AbElem total = pending.value_or(pi.zero());
    if (total != k)
        throw WhiteheadError("spherical representative has class " + pi.describe(total) + ", expected " +
                             pi.describe(k));
    if (!(r.w() == star(k)) || !r.verify())
        throw WhiteheadError("rewriting did not end at (*,k)");
    F3Word out = f_.degen(star(k), 0) * r.z().inverse();
    stars_.emplace(k, out);
    return out;
}

F3Word F3Contraction::on_zero(const Simplex& x)
{
    auto it = c0_.c0.find(x);
    if (it == c0_.c0.end())
        throw WhiteheadError("no loop contraction for edge " + f_.base().describe(x));
    const AbelianGroup& pi = f_.pi2();
    F3Word out;
    for (const auto& [y, e] : it->second.f) {
        AbElem ky = f_.phi2().on_triangle(y);
        F3Word piece = on_star(ky).inverse() *
                       f_.bar(f_.triangle(degeneracy(f_.base().face(y, 2), 1), ky, ky, pi.zero())) *
                       f_.bar(F3Cell{y, f_.fiber().zero(2)});
        out *= power(piece, e);
    }
    return out;
}

F3Word F3Contraction::on_edge(const Simplex& x, const AbElem& k0)
{
    const AbelianGroup& pi = f_.pi2();
    AbElem k = pi.normalize(k0);
    if (x == f_.base().point(1))
        return on_star(k);
    if (pi.is_zero(k))
        return on_zero(x);
    AbElem mk = pi.neg(k);
    return f_.bar(f_.triangle(degeneracy(x, 0), k, pi.zero(), mk)) *
           f_.degen(f_.bar(f_.edge(x, pi.zero())), 0).inverse() * f_.degen(f_.bar(f_.star(mk)), 0) *
           on_star(mk).inverse() * on_zero(x);
}

F3Word F3Contraction::on_generator(const F3Cell& g)
{
    if (g.dim() != 1)
        throw WhiteheadError("contraction on a generator of level 0 only");
    return on_edge(g.x, f_.fiber().label(g.k, 3u));
}

F3Word F3Contraction::operator()(const F3Word& w)
{
    F3Word out;
    for (const auto& [g, e] : w.f)
        out *= power(on_generator(g), e);
    return out;
}

bool check_f3_contraction(const StageThree& f, const F3Cell& g, const F3Word& c)
{
    return f.face(c, 0) == f.bar(g) && f.face(c, 1).empty();
}

StageHigher::StageHigher(const StageThree& f3, std::vector<AbelianGroup> groups) : f3_(f3)
{
    for (size_t j = 0; j < groups.size(); ++j)
        tail_.emplace_back(groups[j], static_cast<int>(j) + 2);
}

PaddedCell StageHigher::pad(const F3Cell& c) const
{
    PaddedCell p{c, {}};
    for (const auto& k : tail_)
        p.tail.push_back(k.zero(c.dim()));
    return p;
}

PaddedWord StageHigher::pad(const F3Word& w) const
{
    PaddedWord r;
    for (const auto& [g, e] : w.f)
        r.push(pad(g), e);
    return r;
}

F3Word StageHigher::strip(const PaddedWord& w) const
{
    F3Word r;
    for (const auto& [g, e] : w.f) {
        for (const auto& t : g.tail)
            if (!t.labels.empty())
                throw WhiteheadError("stripping a cell with a nonzero tail");
        r.push(g.core, e);
    }
    return r;
}

PaddedCell StageHigher::face(const PaddedCell& c, int i) const
{
    if (c.core.dim() > 2)
        throw WhiteheadError("higher stages are only modelled up to dimension 2");
    // the twistings into K(pi_j, j-1) land in dimension <= 1, where those groups are trivial
    PaddedCell r{f3_.face(c.core, i), {}};
    for (size_t j = 0; j < tail_.size(); ++j)
        r.tail.push_back(tail_[j].face(c.tail[j], i));
    return r;
}

bool StageHigher::killed(const PaddedCell& g) const
{
    int m = g.core.dim();
    if (m == 0)
        return true;
    if (!f3_.killed(g.core))
        return false;
    for (size_t j = 0; j < tail_.size(); ++j)
        if (!(g.tail[j] == tail_[j].degen(tail_[j].face(g.tail[j], m - 1), m - 1)))
            return false;
    return true;
}

PaddedWord StageHigher::face(const PaddedWord& w, int i) const
{
    auto bar = [&](const PaddedCell& g) { return killed(g) ? PaddedWord{} : PaddedWord(g); };
    return substitute<PaddedCell, PaddedCell>(w, [&](const PaddedCell& g) {
        int n = g.core.dim() - 1;
        if (i < n)
            return bar(face(g, i));
        return bar(face(g, n + 1)).inverse() * bar(face(g, n));
    });
}

PaddedWord fi_contract(const StageHigher& fi, F3Contraction& c3, const PaddedWord& w)
{
    PaddedWord out;
    for (const auto& [g, e] : w.f) {
        PaddedWord single;
        single.push(g, 1);
        F3Word core = fi.strip(single);
        out *= power(fi.pad(c3.on_generator(core.f.at(0).first)), e);
    }
    return out;
}

}  // namespace simpi
