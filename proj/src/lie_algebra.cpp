#include "plectic/lie_algebra.hpp"

#include <sstream>
#include <stdexcept>

namespace plectic {

LieAlgebra::LieAlgebra(int dim, std::vector<StructureEntry> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (dim <= 0) throw std::invalid_argument("LieAlgebra: dimension must be positive");
    for (const auto& e : entries_) {
        if (e.i < 1 || e.i > dim || e.j < 1 || e.j > dim || e.k < 1 || e.k > dim)
            throw std::invalid_argument("LieAlgebra: structure index out of range");
        c_[{e.i, e.j, e.k}] += e.c;
    }
}

std::vector<Rational> LieAlgebra::bracket_basis(int i, int j) const {
    std::vector<Rational> out(dim_);
    if (i == j) return out;
    int a = i, b = j, sign = 1;
    if (a > b) {
        std::swap(a, b);
        sign = -1;
    }
    for (int k = 1; k <= dim_; ++k) {
        auto it = c_.find({a, b, k});
        if (it != c_.end()) out[k - 1] = it->second * Rational(sign);
    }
    return out;
}

std::vector<Rational> LieAlgebra::bracket(const std::vector<Rational>& x,
                                          const std::vector<Rational>& y) const {
    std::vector<Rational> out(dim_);
    for (int i = 1; i <= dim_; ++i) {
        if (x[i - 1].is_zero()) continue;
        for (int j = 1; j <= dim_; ++j) {
            if (y[j - 1].is_zero() || i == j) continue;
            std::vector<Rational> br = bracket_basis(i, j);
            Rational f = x[i - 1] * y[j - 1];
            for (int k = 0; k < dim_; ++k)
                if (!br[k].is_zero()) out[k] += f * br[k];
        }
    }
    return out;
}

RationalMatrix LieAlgebra::ad(int i) const {
    RationalMatrix m(dim_, dim_);
    for (int j = 1; j <= dim_; ++j) {
        std::vector<Rational> br = bracket_basis(i, j);
        for (int k = 0; k < dim_; ++k) m.at(k, j - 1) = br[k];
    }
    return m;
}

LieValidation LieAlgebra::validate() const {
    for (const auto& e : entries_) {
        if (e.i >= e.j) {
            std::ostringstream os;
            os << "malformed structure entry (" << e.i << "," << e.j << "," << e.k
               << "): expected i < j";
            return {false, os.str()};
        }
    }
    for (int i = 1; i <= dim_; ++i)
        for (int j = i + 1; j <= dim_; ++j)
            for (int k = j + 1; k <= dim_; ++k) {
                // [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]
                std::vector<Rational> res(dim_);
                auto add_term = [&](int a, int b, int c) {
                    std::vector<Rational> inner = bracket_basis(a, b);
                    std::vector<Rational> unit(dim_);
                    unit[c - 1] = Rational(1);
                    std::vector<Rational> outer = bracket(inner, unit);
                    for (int t = 0; t < dim_; ++t) res[t] += outer[t];
                };
                add_term(i, j, k);
                add_term(j, k, i);
                add_term(k, i, j);
                for (int t = 0; t < dim_; ++t)
                    if (!res[t].is_zero()) {
                        std::ostringstream os;
                        os << "Jacobi fails on (e" << i << ",e" << j << ",e" << k
                           << "): residual coefficient " << res[t].str() << " on e" << (t + 1);
                        return {false, os.str()};
                    }
            }
    return {};
}

bool is_zero(const CECochain& c) {
    for (const auto& [k, v] : c.coeff)
        if (!v.is_zero()) return false;
    return true;
}

RationalMatrix ce_differential(const LieAlgebra& g, int k) {
    // Degrees above dim(g) are the zero space; callers in the bicomplex
    // machinery rely on that.
    if (k < 0) throw std::invalid_argument("ce_differential: negative degree");
    const auto in = index_subsets(g.dim(), k);
    const auto out = index_subsets(g.dim(), k + 1);
    RationalMatrix m(static_cast<int>(out.size()), static_cast<int>(in.size()));
    for (size_t c = 0; c < in.size(); ++c) {
        std::map<IndexSet, Rational> unit{{in[c], Rational(1)}};
        auto img = ce_delta(g, unit, k);
        for (const auto& [t, v] : img) m.at(static_cast<int>(subset_position(g.dim(), t)), static_cast<int>(c)) = v;
    }
    return m;
}

CochainSplit::CochainSplit(const LieAlgebra& g, int k) : g_(&g), k_(k) {
    space_dim_ = static_cast<int>(binomial(g.dim(), k));
    RationalMatrix d_prev =
        (k >= 1) ? ce_differential(g, k - 1) : RationalMatrix(space_dim_, 0);
    RationalMatrix d_here = ce_differential(g, k);
    kernel_dim_ = space_dim_ - rank(d_here);

    // Greedy echelon extension: exact image first, then kernel vectors, then
    // unit vectors. Rank growth is tracked with a running RREF.
    RationalMatrix probe(space_dim_, 0);
    std::vector<std::vector<Rational>> cols;
    auto try_add = [&](const std::vector<Rational>& v) {
        cols.push_back(v);
        RationalMatrix m(space_dim_, static_cast<int>(cols.size()));
        for (size_t c = 0; c < cols.size(); ++c) m.set_column(static_cast<int>(c), cols[c]);
        if (rank(m) == static_cast<int>(cols.size())) return true;
        cols.pop_back();
        return false;
    };
    (void)probe;

    for (int c = 0; c < d_prev.cols(); ++c) {
        std::vector<Rational> v = d_prev.column(c);
        bool nz = false;
        for (const auto& e : v)
            if (!e.is_zero()) nz = true;
        if (nz && try_add(v)) {
            exact_.push_back(v);
            std::vector<Rational> pre(d_prev.cols());
            pre[c] = Rational(1);
            preimages_.push_back(std::move(pre));
        }
    }
    for (const auto& v : kernel_basis(d_here))
        if (try_add(v)) rep_.push_back(v);
    for (int u = 0; u < space_dim_ && static_cast<int>(cols.size()) < space_dim_; ++u) {
        std::vector<Rational> v(space_dim_);
        v[u] = Rational(1);
        if (try_add(v)) rest_.push_back(v);
    }
    if (static_cast<int>(cols.size()) != space_dim_)
        throw std::logic_error("CochainSplit: basis extension failed");

    RationalMatrix basis(space_dim_, space_dim_);
    int c = 0;
    for (const auto& v : exact_) basis.set_column(c++, v);
    for (const auto& v : rep_) basis.set_column(c++, v);
    for (const auto& v : rest_) basis.set_column(c++, v);
    auto inv = inverse(basis);
    if (!inv) throw std::logic_error("CochainSplit: basis not invertible");
    basis_inverse_ = *inv;

    const auto subsets = index_subsets(g.dim(), k);
    for (const auto& v : rep_) {
        CECochain rc;
        rc.degree = k;
        for (size_t t = 0; t < subsets.size(); ++t)
            if (!v[t].is_zero()) rc.coeff[subsets[t]] = v[t];
        reps_cochains_.push_back(std::move(rc));
    }
}

CochainSplit::Coords CochainSplit::decompose(const std::vector<Rational>& coeffs) const {
    if (static_cast<int>(coeffs.size()) != space_dim_)
        throw std::invalid_argument("CochainSplit::decompose: dimension mismatch");
    std::vector<Rational> all = basis_inverse_.apply(coeffs);
    Coords out;
    out.exact.assign(all.begin(), all.begin() + exact_.size());
    out.rep.assign(all.begin() + exact_.size(), all.begin() + exact_.size() + rep_.size());
    out.rest.assign(all.begin() + exact_.size() + rep_.size(), all.end());
    return out;
}

std::vector<Rational> CochainSplit::to_coords(const CECochain& z) const {
    std::vector<Rational> v(space_dim_);
    for (const auto& [s, c] : z.coeff) {
        if (!within_dimension(s, g_->dim()) || static_cast<int>(s.size()) != k_)
            throw std::invalid_argument("CochainSplit: cochain/degree mismatch");
        v[subset_position(g_->dim(), s)] = c;
    }
    return v;
}

CECochain CochainSplit::from_coords(const std::vector<Rational>& v, int degree) const {
    CECochain out;
    out.degree = degree;
    const auto subsets = index_subsets(g_->dim(), degree);
    for (size_t t = 0; t < subsets.size(); ++t)
        if (!v[t].is_zero()) out.coeff[subsets[t]] = v[t];
    return out;
}

std::vector<Rational> CochainSplit::project_cocycle(const CECochain& z) const {
    Coords c = decompose(to_coords(z));
    for (const auto& r : c.rest)
        if (!r.is_zero())
            throw std::invalid_argument("project_cocycle: input is not a cocycle");
    return c.rep;
}

CohomologyInfo ce_cohomology(const LieAlgebra& g, int k) {
    if (k < 0 || k > g.dim()) throw std::invalid_argument("ce_cohomology: degree out of range");
    CochainSplit split(g, k);
    return {k, split.h_dim(), split.representatives()};
}

RationalMatrix killing_form(const LieAlgebra& g) {
    const int n = g.dim();
    std::vector<RationalMatrix> ads;
    ads.reserve(n);
    for (int i = 1; i <= n; ++i) ads.push_back(g.ad(i));
    RationalMatrix kappa(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            RationalMatrix p = ads[i] * ads[j];
            Rational tr;
            for (int t = 0; t < n; ++t) tr += p.at(t, t);
            kappa.at(i, j) = tr;
            kappa.at(j, i) = tr;
        }
    return kappa;
}

CECochain cartan_three_cocycle(const LieAlgebra& g) {
    RationalMatrix kappa = killing_form(g);
    CECochain out;
    out.degree = 3;
    for (const IndexSet& t : index_subsets(g.dim(), 3)) {
        std::vector<Rational> br = g.bracket_basis(t[1], t[2]);
        Rational v;
        for (int m = 0; m < g.dim(); ++m)
            if (!br[m].is_zero()) v += kappa.at(t[0] - 1, m) * br[m];
        if (!v.is_zero()) out.coeff[t] = v;
    }
    return out;
}

RationalMatrix boundary_delta_star(const LieAlgebra& g, int n) {
    if (n < 1 || n > g.dim())
        throw std::invalid_argument("boundary_delta_star: degree out of range");
    return ce_differential(g, n - 1).transposed();
}

std::vector<CEChain> multimoment_domain(const LieAlgebra& g, int n) {
    const auto subsets = index_subsets(g.dim(), n);
    std::vector<CEChain> out;
    for (const auto& v : kernel_basis(boundary_delta_star(g, n))) {
        CEChain p;
        p.degree = n;
        for (size_t t = 0; t < subsets.size(); ++t)
            if (!v[t].is_zero()) p.coeff[subsets[t]] = v[t];
        out.push_back(std::move(p));
    }
    return out;
}

CEChain adjoint_on_chains(const LieAlgebra& g, const std::vector<Rational>& x, const CEChain& p) {
    CEChain out;
    out.degree = p.degree;
    for (const auto& [s, c] : p.coeff) {
        for (size_t slot = 0; slot < s.size(); ++slot) {
            std::vector<Rational> unit(g.dim());
            unit[s[slot] - 1] = Rational(1);
            std::vector<Rational> br = g.bracket(x, unit);
            IndexSet rest;
            for (size_t q = 0; q < s.size(); ++q)
                if (q != slot) rest.push_back(s[q]);
            for (int m = 1; m <= g.dim(); ++m) {
                if (br[m - 1].is_zero()) continue;
                WedgeMerge ins = insert_index(m, rest);
                if (ins.sign == 0) continue;
                // e_m replaces slot `slot`: move it back from the front.
                int move_sign = (slot % 2 == 0) ? 1 : -1;
                Rational add = c * br[m - 1] * Rational(ins.sign * move_sign);
                auto [it, fresh] = out.coeff.try_emplace(ins.merged, add);
                if (!fresh) it->second += add;
            }
        }
    }
    for (auto it = out.coeff.begin(); it != out.coeff.end();)
        it = it->second.is_zero() ? out.coeff.erase(it) : std::next(it);
    return out;
}

}  // namespace plectic
