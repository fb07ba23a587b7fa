#pragma once

#include "plectic/moment.hpp"

namespace plectic {

// ---------------------------------------------------------------------------
// Weak co-moments
// ---------------------------------------------------------------------------

template <CartanBackend B>
struct WeakComoment {
    std::vector<typename B::Form> j;  // per generator, degree n-1, d j(X) = -iota_{zeta X} omega
};

template <CartanBackend B>
struct WeakOutcome {
    bool exists = false;
    std::optional<WeakComoment<B>> weak;
    RationalMatrix obstruction;  // dim g x dim H^n rows of [g_1] when it does not vanish
};

template <CartanBackend B>
WeakOutcome<B> weak_comoment(const SymmetryProblem<B>& pr) {
    const auto& g = pr.algebra();
    WeakOutcome<B> out;
    out.obstruction = RationalMatrix(g.dim(), pr.b().de_rham_dim(pr.n));
    WeakComoment<B> w;
    bool all = true;
    for (int a = 1; a <= g.dim(); ++a) {
        typename B::Form g1 = pr.b().contract(pr.action.field[a - 1], pr.omega);
        auto res = pr.b().find_potential(g1);
        if (res.potential) {
            w.j.push_back(*res.potential * Rational(-1));
        } else {
            all = false;
            w.j.push_back(pr.b().zero_form(pr.n - 1));
            for (size_t t = 0; t < res.obstruction.size(); ++t)
                out.obstruction.at(a - 1, static_cast<int>(t)) = res.obstruction[t];
        }
    }
    out.exists = all;
    if (all) out.weak = std::move(w);
    return out;
}

// ---------------------------------------------------------------------------
// Exact case: invariant potential eta gives the closed-form co-moment
//   f_1(X) = (zeta X, iota_{zeta X} eta),
//   f_k = (-1)^k (-1)^{k(k+1)/2} iota_{zeta X_k}...iota_{zeta X_1} eta.
// ---------------------------------------------------------------------------

template <CartanBackend B>
Comoment<B> exact_comoment(const SymmetryProblem<B>& pr, const typename B::Form& eta) {
    const auto& g = pr.algebra();
    const B& b = pr.b();
    if (!(b.d(eta) - pr.omega).is_zero())
        throw std::invalid_argument("exact_comoment: d(eta) != omega");
    for (int a = 1; a <= g.dim(); ++a)
        if (!b.lie_derivative(pr.action.field[a - 1], eta).is_zero()) {
            std::ostringstream os;
            os << "exact_comoment: eta is not invariant along zeta(e" << a << ")";
            throw std::invalid_argument(os.str());
        }
    Comoment<B> F;
    F.n = pr.n;
    for (int k = 1; k <= pr.n; ++k) {
        Bigraded<B> fk{k, pr.n - k, {}};
        int sign = ((k + k * (k + 1) / 2) % 2 == 0) ? 1 : -1;
        if (k == 1) sign = 1;
        for (const IndexSet& s : index_subsets(g.dim(), k)) {
            typename B::Form f = eta;
            for (int idx : s) f = b.contract(pr.action.field[idx - 1], f);
            fk.add_value(s, f * Rational(sign));
        }
        F.f.push_back(std::move(fk));
    }
    MorphismCheck mc = verify_morphism(pr, F);
    if (!mc.ok) throw std::logic_error("exact_comoment: closed form fails verification: " + mc.detail);
    return F;
}

// Universal momentum map J(v) = iota_v eta on fields preserving eta.
template <CartanBackend B>
struct UniversalMomentumEntry {
    typename B::Form value;
    bool preserves_eta = false;  // v in X_EH
};

template <CartanBackend B>
struct UniversalMomentumReport {
    std::vector<UniversalMomentumEntry<B>> entries;
    bool comoment_identity = false;  // pi_Omega f_1 = J o zeta against exact_comoment
};

template <CartanBackend B>
UniversalMomentumReport<B> universal_momentum_report(
    const SymmetryProblem<B>& pr, const typename B::Form& eta,
    const std::vector<typename B::VectorField>& fields) {
    const B& b = pr.b();
    UniversalMomentumReport<B> out;
    for (const auto& v : fields)
        out.entries.push_back({b.contract(v, eta), b.lie_derivative(v, eta).is_zero()});
    Comoment<B> F = exact_comoment(pr, eta);
    out.comoment_identity = true;
    for (int a = 1; a <= pr.algebra().dim(); ++a) {
        typename B::Form lhs = F.component(1).value(b, IndexSet{a});
        typename B::Form rhs = b.contract(pr.action.field[a - 1], eta);
        if (!(lhs - rhs).is_zero()) out.comoment_identity = false;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Covariant multimomentum obstruction: cocycle c = j* l_2 + delta j, whose
// class is the second obstruction class.
// ---------------------------------------------------------------------------

template <CartanBackend B>
struct CovariantObstruction {
    Bigraded<B> cocycle;  // (2, n-1)
    ObstructionClass<B> h2;
    bool exists = false;  // a covariant multimomentum map exists iff h2 = 0
};

template <CartanBackend B>
CovariantObstruction<B> covariant_obstruction(const SymmetryProblem<B>& pr,
                                              const WeakComoment<B>& w) {
    const auto& g = pr.algebra();
    const B& b = pr.b();
    CovariantObstruction<B> out;
    out.cocycle = Bigraded<B>{2, pr.n - 1, {}};
    for (const IndexSet& s : index_subsets(g.dim(), 2)) {
        typename B::Form val =
            b.contract(pr.action.field[s[1] - 1], b.contract(pr.action.field[s[0] - 1], pr.omega));
        std::vector<Rational> br = g.bracket_basis(s[0], s[1]);
        for (int m = 0; m < g.dim(); ++m)
            if (!br[m].is_zero()) val -= w.j[m] * br[m];
        out.cocycle.add_value(s, val);
    }
    out.h2 = kunneth_class(b, g, out.cocycle);
    out.exists = !out.h2.nonzero;
    return out;
}

// ---------------------------------------------------------------------------
// The iterative staircase: solve D(p) = g level by level from the top,
// meeting each obstruction class on the way down.
// ---------------------------------------------------------------------------

template <CartanBackend B>
struct DeltaSolve {
    bool ok = false;
    Bigraded<B> solution;  // gdeg k with delta(solution) = target
};

template <CartanBackend B>
DeltaSolve<B> delta_solve(const B& b, const LieAlgebra& g, const Bigraded<B>& target) {
    CochainSplit sp(g, target.gdeg);
    LieSplit<B> ls = lie_split(b, g, sp, target);
    for (const auto& f : ls.rep_value)
        if (!f.is_zero()) return {};
    for (const auto& f : ls.rest_value)
        if (!f.is_zero()) return {};
    return {true, std::move(ls.delta_preimage)};
}

template <CartanBackend B>
struct StaircaseOutcome {
    SolveStatus status = SolveStatus::obstructed;
    std::optional<Comoment<B>> comoment;
    int failed_k = 0;                            // obstruction level when blocked
    std::optional<ObstructionClass<B>> failure;  // the nonvanishing class
    TotalElement<B> potential;                   // filled on success
};

namespace detail {

// Shared machinery: runs the staircase from the top down to `stop_k`
// (inclusive). Levels k = n..1 fix p_k; between levels a delta-solve
// produces the next candidate.
template <CartanBackend B>
StaircaseOutcome<B> run_staircase(const SymmetryProblem<B>& pr, int stop_k) {
    const auto& g = pr.algebra();
    const B& b = pr.b();
    TotalElement<B> gc = action_cocycle(pr);
    auto g_comp = [&](int k) {
        const Bigraded<B>* c = gc.component(k);
        return c ? *c : Bigraded<B>{k, pr.n + 1 - k, {}};
    };

    StaircaseOutcome<B> out;
    DeltaSolve<B> top = delta_solve(b, g, g_comp(pr.n + 1));
    if (!top.ok) {
        out.failed_k = pr.n + 1;
        out.failure = kunneth_class(b, g, g_comp(pr.n + 1));
        if (!out.failure->nonzero)
            throw std::logic_error("staircase: top delta-solve failed with vanishing class");
        return out;
    }
    Bigraded<B> candidate = std::move(top.solution);  // p-hat_k for the current level

    TotalElement<B> p;
    p.degree = pr.n;
    for (int k = pr.n; k >= stop_k; --k) {
        Bigraded<B> residual = g_comp(k) - d_bigraded(b, candidate);
        CochainSplit sp(g, k);
        LieSplit<B> ls = lie_split(b, g, sp, residual);
        for (const auto& f : ls.rest_value)
            if (!f.is_zero())
                throw std::logic_error("staircase: level residual is not delta-closed");
        // Correction: representatives tensor d-potentials of the level values.
        Bigraded<B> correction{k, pr.n - k, {}};
        const auto& reps = sp.representatives();
        for (int s = 0; s < sp.h_dim(); ++s) {
            const typename B::Form& u = ls.rep_value[s];
            if (u.is_zero()) continue;
            if (!b.d(u).is_zero())
                throw std::logic_error("staircase: level value is not closed");
            auto pot = b.find_potential(u);
            if (!pot.potential) {
                out.failed_k = k;
                out.failure = kunneth_class(b, g, residual);
                if (!out.failure->nonzero)
                    throw std::logic_error("staircase: blocked level with vanishing class");
                return out;
            }
            for (const auto& [subset, c] : reps[s].coeff)
                correction.add_value(subset, *pot.potential * c);
        }
        Bigraded<B> pk = candidate + correction;
        if (!pk.is_zero()) p.add_component(pk);
        if (k > stop_k) {
            DeltaSolve<B> ds = delta_solve(b, g, g_comp(k) - d_bigraded(b, pk));
            if (!ds.ok) throw std::logic_error("staircase: interior delta-solve failed");
            candidate = std::move(ds.solution);
        }
    }
    out.status = SolveStatus::found;
    out.potential = std::move(p);
    return out;
}

}  // namespace detail

// Continues the construction down to f_1; the result is a verified co-moment
// and agrees with the direct solver up to a D-cocycle.
template <CartanBackend B>
StaircaseOutcome<B> iterate_full_comoment(const SymmetryProblem<B>& pr) {
    StaircaseOutcome<B> out = detail::run_staircase(pr, 1);
    if (out.status != SolveStatus::found) return out;
    TotalElement<B> check =
        total_differential(pr.algebra(), pr.b(), pr.n, out.potential) - action_cocycle(pr);
    if (!check.is_zero()) throw std::logic_error("iterate_full_comoment: D(p) != g");
    Comoment<B> F = comoment_from_potential(pr.b(), out.potential, pr.n);
    MorphismCheck mc = verify_morphism(pr, F);
    if (!mc.ok)
        throw std::logic_error("iterate_full_comoment: verification failed: " + mc.detail);
    out.comoment = std::move(F);
    return out;
}

// ---------------------------------------------------------------------------
// Multi-moment maps on the kernel of the boundary operator
// ---------------------------------------------------------------------------

template <CartanBackend B>
struct Multimoment {
    int n = 0;
    std::vector<CEChain> domain;          // basis of ker(delta*)
    std::vector<typename B::Form> value;  // v-bar of each basis chain (degree 0)
    Bigraded<B> f_top;                    // the constructed f_n
};

template <CartanBackend B>
struct MultimomentOutcome {
    SolveStatus status = SolveStatus::obstructed;
    std::optional<Multimoment<B>> moment;
    int failed_k = 0;
    std::optional<ObstructionClass<B>> failure;
};

struct MultimomentCheck {
    bool ok = true;
    std::string detail;
};

// Conditions (i) d(v(p)) = iota_{zeta(p)} omega and (ii) v(ad_X p) =
// L_{zeta X} v(p), both exact, on a basis of the domain.
template <CartanBackend B>
MultimomentCheck multimoment_verify(const SymmetryProblem<B>& pr, const Multimoment<B>& mm) {
    const auto& g = pr.algebra();
    const B& b = pr.b();
    const auto subsets = index_subsets(g.dim(), mm.n);
    RationalMatrix basis(static_cast<int>(subsets.size()), static_cast<int>(mm.domain.size()));
    for (size_t c = 0; c < mm.domain.size(); ++c)
        for (const auto& [s, v] : mm.domain[c].coeff)
            basis.at(static_cast<int>(subset_position(g.dim(), s)), static_cast<int>(c)) = v;

    for (size_t i = 0; i < mm.domain.size(); ++i) {
        // (i)
        typename B::Form rhs = b.zero_form(pr.n);
        for (const auto& [s, c] : mm.domain[i].coeff) rhs += contract_along(pr, s) * c;
        if (!(b.d(mm.value[i]) - rhs).is_zero()) {
            std::ostringstream os;
            os << "condition (i) fails on domain basis element " << (i + 1);
            return {false, os.str()};
        }
        // (ii)
        for (int a = 1; a <= g.dim(); ++a) {
            std::vector<Rational> x(g.dim());
            x[a - 1] = Rational(1);
            CEChain adp = adjoint_on_chains(g, x, mm.domain[i]);
            std::vector<Rational> target(subsets.size());
            for (const auto& [s, v] : adp.coeff) target[subset_position(g.dim(), s)] = v;
            LinearSolution sol = solve_linear(basis, target);
            if (!sol.solvable) {
                std::ostringstream os;
                os << "ad_{e" << a << "} leaves the domain span on basis element " << (i + 1);
                return {false, os.str()};
            }
            typename B::Form lhs = b.zero_form(0);
            for (size_t c = 0; c < mm.domain.size(); ++c)
                if (!sol.x[c].is_zero()) lhs += mm.value[c] * sol.x[c];
            typename B::Form rhs2 = b.lie_derivative(pr.action.field[a - 1], mm.value[i]);
            if (!(lhs - rhs2).is_zero()) {
                std::ostringstream os;
                os << "condition (ii) fails on domain basis element " << (i + 1) << " with e" << a;
                return {false, os.str()};
            }
        }
    }
    return {};
}

// Two-step construction: delta-potential of g_{n+1}, correction through the
// d-potential of the level residual, one further delta-solve; then restrict
// (-1)^{n(n+1)/2} f_n to the kernel of the boundary.
template <CartanBackend B>
MultimomentOutcome<B> multimoment_construct(const SymmetryProblem<B>& pr) {
    const auto& g = pr.algebra();
    const B& b = pr.b();
    MultimomentOutcome<B> out;
    StaircaseOutcome<B> st = detail::run_staircase(pr, pr.n);
    if (st.status != SolveStatus::found) {
        out.failed_k = st.failed_k;
        out.failure = st.failure;
        return out;
    }
    const Bigraded<B>* pn = st.potential.component(pr.n);
    Bigraded<B> fn = pn ? (*pn * Rational(-1)) : Bigraded<B>{pr.n, 0, {}};

    // Final delta-solve of the construction; its success is part of the
    // existence argument even though v-bar only consumes f_n.
    if (pr.n >= 2) {
        TotalElement<B> gc = action_cocycle(pr);
        const Bigraded<B>* gn = gc.component(pr.n);
        Bigraded<B> target =
            (gn ? *gn : Bigraded<B>{pr.n, 1, {}}) - d_bigraded(b, fn * Rational(-1));
        if (!delta_solve(b, g, target).ok)
            throw std::logic_error("multimoment_construct: final delta-solve failed");
    }

    Multimoment<B> mm;
    mm.n = pr.n;
    mm.f_top = fn;
    mm.domain = multimoment_domain(g, pr.n);
    int sign = ((pr.n * (pr.n + 1) / 2) % 2 == 0) ? 1 : -1;
    for (const CEChain& p : mm.domain)
        mm.value.push_back(pair_with_chain(b, fn, p) * Rational(sign));

    MultimomentCheck chk = multimoment_verify(pr, mm);
    if (!chk.ok)
        throw std::logic_error("multimoment_construct: verification failed: " + chk.detail);
    out.status = SolveStatus::found;
    out.moment = std::move(mm);
    return out;
}

// Base-point normalized value, the reporting convention.
template <CartanBackend B>
typename B::Form multimoment_normalized_value(const B& b, const Multimoment<B>& mm, size_t i) {
    auto vals = b.evaluate_at(mm.value[i], b.base_point());
    auto it = vals.find(IndexSet{});
    Rational c = (it == vals.end()) ? Rational(0) : it->second;
    return mm.value[i] - b.constant_form(c);
}

}  // namespace plectic
