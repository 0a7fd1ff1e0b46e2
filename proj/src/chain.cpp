#include "simpi/chain.hpp"

#include <algorithm>

namespace simpi {

Chain boundary(const SimplicialSet& x, const Chain& c)
{
    Chain out;
    for (const auto& [s, coeff] : c.terms) {
        if (s.dim == 0)
            throw ChainError("boundary of a degree 0 chain");
        for (int i = 0; i <= s.dim; ++i) {
            Simplex f = x.face(s, i);
            if (!f.degenerate())
                out.add(f, i % 2 ? Int(-coeff) : coeff);
        }
    }
    return out;
}

Matrix identity_matrix(size_t n)
{
    Matrix m(n, std::vector<Int>(n, 0));
    for (size_t i = 0; i < n; ++i)
        m[i][i] = 1;
    return m;
}

Matrix multiply(const Matrix& a, const Matrix& b, size_t inner)
{
    size_t cols = b.empty() ? 0 : b[0].size();
    Matrix r(a.size(), std::vector<Int>(cols, 0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t k = 0; k < inner; ++k) {
            if (a[i][k] == 0)
                continue;
            for (size_t j = 0; j < cols; ++j)
                if (b[k][j] != 0)
                    r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

namespace {

class Smith {
public:
    Smith(const Matrix& a, size_t m, size_t n) : m_(m), n_(n)
    {
        r_.S = a;
        r_.S.resize(m, std::vector<Int>(n, 0));
        r_.U = r_.U_inv = identity_matrix(m);
        r_.V = r_.V_inv = identity_matrix(n);
        r_.rows = m;
        r_.cols = n;
    }

    SNFResult run()
    {
        auto& s = r_.S;
        size_t t = 0;
        for (; t < std::min(m_, n_); ++t) {
            size_t pi = 0, pj = 0;
            if (!smallest(t, t, m_, n_, pi, pj))
                break;
            swap_rows(t, pi);
            swap_cols(t, pj);
            for (;;) {
                bool clean = true;
                for (size_t i = t + 1; i < m_; ++i)
                    if (s[i][t] != 0) {
                        Int q;
                        mpz_tdiv_q(q.get_mpz_t(), s[i][t].get_mpz_t(), s[t][t].get_mpz_t());
                        add_row(i, t, -q);
                        clean = clean && s[i][t] == 0;
                    }
                for (size_t j = t + 1; j < n_; ++j)
                    if (s[t][j] != 0) {
                        Int q;
                        mpz_tdiv_q(q.get_mpz_t(), s[t][j].get_mpz_t(), s[t][t].get_mpz_t());
                        add_col(j, t, -q);
                        clean = clean && s[t][j] == 0;
                    }
                if (!clean) {
                    size_t bi = t, bj = t;
                    for (size_t i = t + 1; i < m_; ++i)
                        if (s[i][t] != 0 && abs(s[i][t]) < abs(s[bi][bj]))
                            bi = i, bj = t;
                    for (size_t j = t + 1; j < n_; ++j)
                        if (s[t][j] != 0 && abs(s[t][j]) < abs(s[bi][bj]))
                            bi = t, bj = j;
                    swap_rows(t, bi);
                    swap_cols(t, bj);
                    continue;
                }
                size_t bad = m_;
                for (size_t i = t + 1; i < m_ && bad == m_; ++i)
                    for (size_t j = t + 1; j < n_; ++j)
                        if (s[i][j] != 0 && !mpz_divisible_p(s[i][j].get_mpz_t(), s[t][t].get_mpz_t())) {
                            bad = i;
                            break;
                        }
                if (bad == m_)
                    break;
                add_row(t, bad, 1);
            }
            if (s[t][t] < 0)
                negate_row(t);
        }
        r_.rank = t;
        return std::move(r_);
    }

private:
    bool smallest(size_t r0, size_t c0, size_t r1, size_t c1, size_t& bi, size_t& bj) const
    {
        bool found = false;
        for (size_t i = r0; i < r1; ++i)
            for (size_t j = c0; j < c1; ++j) {
                const Int& v = r_.S[i][j];
                if (v != 0 && (!found || abs(v) < abs(r_.S[bi][bj]))) {
                    bi = i;
                    bj = j;
                    found = true;
                }
            }
        return found;
    }
    void swap_rows(size_t i, size_t j)
    {
        if (i == j)
            return;
        std::swap(r_.S[i], r_.S[j]);
        std::swap(r_.U[i], r_.U[j]);
        for (auto& row : r_.U_inv)
            std::swap(row[i], row[j]);
    }
    void swap_cols(size_t i, size_t j)
    {
        if (i == j)
            return;
        for (auto& row : r_.S)
            std::swap(row[i], row[j]);
        for (auto& row : r_.V)
            std::swap(row[i], row[j]);
        std::swap(r_.V_inv[i], r_.V_inv[j]);
    }
    // row i += q row j
    void add_row(size_t i, size_t j, const Int& q)
    {
        for (size_t c = 0; c < n_; ++c)
            if (r_.S[j][c] != 0)
                r_.S[i][c] += q * r_.S[j][c];
        for (size_t c = 0; c < m_; ++c)
            if (r_.U[j][c] != 0)
                r_.U[i][c] += q * r_.U[j][c];
        for (auto& row : r_.U_inv)
            if (row[i] != 0)
                row[j] -= q * row[i];
    }
    // column i += q column j
    void add_col(size_t i, size_t j, const Int& q)
    {
        for (auto& row : r_.S)
            if (row[j] != 0)
                row[i] += q * row[j];
        for (auto& row : r_.V)
            if (row[j] != 0)
                row[i] += q * row[j];
        for (size_t c = 0; c < n_; ++c)
            if (r_.V_inv[i][c] != 0)
                r_.V_inv[j][c] -= q * r_.V_inv[i][c];
    }
    void negate_row(size_t i)
    {
        for (auto& v : r_.S[i])
            v = -v;
        for (auto& v : r_.U[i])
            v = -v;
        for (auto& row : r_.U_inv)
            row[i] = -row[i];
    }

    size_t m_, n_;
    SNFResult r_;
};

}  // namespace

SNFResult smith_normal_form(const Matrix& a, size_t rows, size_t cols)
{
    return Smith(a, rows, cols).run();
}

size_t ChainOps::position(int h, int k) const
{
    auto& pos = position_[k];
    if (pos.empty())
        for (size_t i = 0; i < x_->cells(k).size(); ++i)
            pos[x_->cells(k)[i]] = i;
    auto it = pos.find(h);
    if (it == pos.end())
        throw ChainError("simplex not in the basis of the requested degree");
    return it->second;
}

Matrix ChainOps::boundary_matrix(int k) const
{
    size_t rows = k > 0 ? x_->cells(k - 1).size() : 0;
    const auto& cols = x_->cells(k);
    Matrix m(rows, std::vector<Int>(cols.size(), 0));
    if (k == 0)
        return m;
    for (size_t j = 0; j < cols.size(); ++j)
        for (const auto& [f, c] : boundary(*x_, Chain(x_->nd(cols[j]))).terms)
            m[position(f.base, k - 1)][j] += c;
    return m;
}

const SNFResult& ChainOps::snf(int k) const
{
    auto it = snf_.find(k);
    if (it != snf_.end())
        return it->second;
    size_t rows = k > 0 ? x_->cells(k - 1).size() : 0;
    return snf_[k] = smith_normal_form(boundary_matrix(k), rows, x_->cells(k).size());
}

std::vector<Int> ChainOps::to_vector(const Chain& c, int k) const
{
    std::vector<Int> v(x_->cells(k).size(), 0);
    for (const auto& [s, coeff] : c.terms) {
        if (s.dim != k || s.degenerate())
            throw ChainError("chain term of wrong degree or degenerate");
        v[position(s.base, k)] += coeff;
    }
    return v;
}

Chain ChainOps::from_vector(const std::vector<Int>& v, int k) const
{
    Chain c;
    for (size_t i = 0; i < v.size(); ++i)
        c.add(x_->nd(x_->cells(k)[i]), v[i]);
    return c;
}

// boundaries of degree k written in the cycle basis, in Smith form
const SNFResult& ChainOps::relations(int k) const
{
    auto it = relations_.find(k);
    if (it != relations_.end())
        return it->second;
    const SNFResult& dk = snf(k);
    size_t nk = x_->cells(k).size();
    Matrix next = boundary_matrix(k + 1);
    size_t nk1 = x_->cells(k + 1).size();
    Matrix coords = multiply(dk.V_inv, next, nk);
    Matrix m(coords.begin() + dk.rank, coords.end());
    return relations_.emplace(k, smith_normal_form(m, nk - dk.rank, nk1)).first->second;
}

Homology ChainOps::homology(int k) const
{
    const SNFResult& dk = snf(k);
    size_t nk = x_->cells(k).size();
    size_t z = nk - dk.rank;
    const SNFResult& rel = relations(k);

    Homology out;
    for (size_t i = 0; i < z; ++i) {
        Int s = rel.diagonal(i);
        if (s == 1)
            continue;
        std::vector<Int> v(nk, 0);
        for (size_t a = 0; a < z; ++a)
            if (rel.U_inv[a][i] != 0)
                for (size_t r = 0; r < nk; ++r)
                    v[r] += dk.V[r][dk.rank + a] * rel.U_inv[a][i];
        if (i < rel.rank) {
            out.torsion.push_back(from_vector(v, k));
            out.torsion_orders.push_back(s);
        } else {
            out.free.push_back(from_vector(v, k));
        }
    }
    return out;
}

std::optional<Chain> ChainOps::solve_boundary(const Chain& z, int k) const
{
    if (k > 0 && !boundary(*x_, z).zero())
        throw ChainError("solve_boundary on a non-cycle");
    const SNFResult& d = snf(k + 1);
    size_t nk = x_->cells(k).size();
    std::vector<Int> w(nk, 0), zv = to_vector(z, k);
    for (size_t i = 0; i < nk; ++i)
        for (size_t j = 0; j < nk; ++j)
            if (d.U[i][j] != 0 && zv[j] != 0)
                w[i] += d.U[i][j] * zv[j];
    size_t n1 = x_->cells(k + 1).size();
    std::vector<Int> y(n1, 0);
    for (size_t i = 0; i < nk; ++i) {
        if (i < d.rank) {
            if (!mpz_divisible_p(w[i].get_mpz_t(), d.S[i][i].get_mpz_t()))
                return std::nullopt;
            y[i] = w[i] / d.S[i][i];
        } else if (w[i] != 0) {
            return std::nullopt;
        }
    }
    std::vector<Int> t(n1, 0);
    for (size_t r = 0; r < n1; ++r)
        for (size_t i = 0; i < d.rank; ++i)
            if (y[i] != 0)
                t[r] += d.V[r][i] * y[i];
    return from_vector(t, k + 1);
}

Chain ChainOps::project_to_cycles(const Chain& c, int k) const
{
    const SNFResult& d = snf(k);
    size_t nk = x_->cells(k).size();
    std::vector<Int> v = to_vector(c, k), y(nk, 0), out(nk, 0);
    for (size_t i = d.rank; i < nk; ++i)
        for (size_t j = 0; j < nk; ++j)
            if (d.V_inv[i][j] != 0)
                y[i] += d.V_inv[i][j] * v[j];
    for (size_t r = 0; r < nk; ++r)
        for (size_t i = d.rank; i < nk; ++i)
            if (y[i] != 0)
                out[r] += d.V[r][i] * y[i];
    return from_vector(out, k);
}

std::vector<Int> ChainOps::homology_class(const Chain& z, int k) const
{
    if (k > 0 && !boundary(*x_, z).zero())
        throw ChainError("homology_class of a non-cycle");
    const SNFResult& dk = snf(k);
    const SNFResult& rel = relations(k);
    size_t nk = x_->cells(k).size();
    size_t nz = nk - dk.rank;
    std::vector<Int> v = to_vector(z, k), y(nz, 0);
    for (size_t a = 0; a < nz; ++a)
        for (size_t j = 0; j < nk; ++j)
            if (dk.V_inv[dk.rank + a][j] != 0)
                y[a] += dk.V_inv[dk.rank + a][j] * v[j];
    std::vector<Int> torsion, free;
    for (size_t i = 0; i < nz; ++i) {
        Int s = rel.diagonal(i);
        if (s == 1)
            continue;
        Int c = 0;
        for (size_t a = 0; a < nz; ++a)
            if (rel.U[i][a] != 0)
                c += rel.U[i][a] * y[a];
        if (i < rel.rank) {
            mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), s.get_mpz_t());
            torsion.push_back(c);
        } else {
            free.push_back(c);
        }
    }
    torsion.insert(torsion.end(), free.begin(), free.end());
    return torsion;
}

}  // namespace simpi
