#pragma once

#include "plectic/bicomplex.hpp"
#include "plectic/cartan.hpp"
#include "plectic/observables.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <sstream>
#include <string>

namespace plectic {

// Lie algebra action on the model by symmetry fields, one per generator.
template <CartanBackend B>
struct InfinitesimalAction {
    LieAlgebra algebra;
    std::vector<typename B::VectorField> field;

    typename B::VectorField field_of(const B& b, const std::vector<Rational>& x) const {
        typename B::VectorField out = b.zero_field();
        for (size_t i = 0; i < field.size(); ++i)
            if (!x[i].is_zero()) out = b.field_add(out, b.field_scale(field[i], x[i]));
        return out;
    }
};

// Bundle passed around by every solver-level operation.
template <CartanBackend B>
struct SymmetryProblem {
    const B* backend = nullptr;
    InfinitesimalAction<B> action;
    typename B::Form omega;
    int n = 0;  // omega has degree n+1

    const LieAlgebra& algebra() const { return action.algebra; }
    const B& b() const { return *backend; }
};

struct ActionCheck {
    bool ok = true;
    std::string detail;
};

// Bracket homomorphism on all generator pairs plus invariance of omega.
template <CartanBackend B>
ActionCheck validate_action(const SymmetryProblem<B>& pr) {
    const auto& g = pr.algebra();
    if (static_cast<int>(pr.action.field.size()) != g.dim())
        return {false, "action must assign a field to every generator"};
    if (pr.omega.degree != pr.n + 1) return {false, "omega degree differs from n+1"};
    if (!pr.b().d(pr.omega).is_zero()) return {false, "omega is not closed"};
    for (int a = 1; a <= g.dim(); ++a) {
        auto lie = pr.b().lie_derivative(pr.action.field[a - 1], pr.omega);
        if (!lie.is_zero()) {
            std::ostringstream os;
            os << "L_{zeta(e" << a << ")} omega != 0";
            return {false, os.str()};
        }
    }
    for (int a = 1; a <= g.dim(); ++a)
        for (int c = a + 1; c <= g.dim(); ++c) {
            auto lhs = pr.action.field_of(pr.b(), g.bracket_basis(a, c));
            auto rhs = pr.b().field_bracket(pr.action.field[a - 1], pr.action.field[c - 1]);
            auto diff = pr.b().field_add(lhs, pr.b().field_scale(rhs, Rational(-1)));
            if (!is_zero(diff)) {
                std::ostringstream os;
                os << "zeta([e" << a << ",e" << c << "]) != [zeta(e" << a << "),zeta(e" << c
                   << ")]";
                return {false, os.str()};
            }
        }
    return {};
}

// Full contraction of omega along the action over an increasing tuple,
// innermost field first.
template <CartanBackend B>
typename B::Form contract_along(const SymmetryProblem<B>& pr, const IndexSet& s) {
    typename B::Form f = pr.omega;
    for (int idx : s) f = pr.b().contract(pr.action.field[idx - 1], f);
    return f;
}

inline int staircase_sign(int k) { return ((k * (k + 1) / 2) % 2 == 0) ? -1 : 1; }

// The degree-(n+1) cocycle attached to the action, with components
// g_k = -(-1)^{k(k+1)/2} iota_{zeta(X_k)}...iota_{zeta(X_1)} omega.
// Construction verifies D(g) = 0 and refuses otherwise.
template <CartanBackend B>
TotalElement<B> action_cocycle(const SymmetryProblem<B>& pr) {
    TotalElement<B> g;
    g.degree = pr.n + 1;
    for (int k = 1; k <= pr.n + 1; ++k) {
        Bigraded<B> comp{k, pr.n + 1 - k, {}};
        for (const IndexSet& s : index_subsets(pr.algebra().dim(), k))
            comp.add_value(s, contract_along(pr, s) * Rational(staircase_sign(k)));
        g.add_component(std::move(comp));
    }
    if (!total_differential(pr.algebra(), pr.b(), pr.n, g).is_zero())
        throw std::invalid_argument(
            "action_cocycle: D(g) != 0 (the action does not preserve omega "
            "or is not a homomorphism)");
    return g;
}

// ---------------------------------------------------------------------------
// Kunneth obstruction classes
// ---------------------------------------------------------------------------

// Transpose a bigraded element into Lie-side coordinate columns per form key.
template <CartanBackend B>
std::map<typename B::FormKey, std::vector<Rational>> lie_columns(const LieAlgebra& g,
                                                                 const Bigraded<B>& x) {
    std::map<typename B::FormKey, std::vector<Rational>> cols;
    const long dim = binomial(g.dim(), x.gdeg);
    for (const auto& [s, f] : x.coeff) {
        long row = subset_position(g.dim(), s);
        for (const auto& [key, c] : f.terms) {
            auto [it, fresh] = cols.try_emplace(key, std::vector<Rational>(dim));
            it->second[row] += c;
        }
    }
    return cols;
}

// Splitting of a bigraded element along the Lie factor:
//   x = delta(preimage) + sum_s rep_s (x) rep_value[s] + sum_t rest_t (x) rest_value[t].
template <CartanBackend B>
struct LieSplit {
    std::vector<typename B::Form> rep_value;
    std::vector<typename B::Form> rest_value;
    Bigraded<B> delta_preimage;  // gdeg k-1
};

template <CartanBackend B>
LieSplit<B> lie_split(const B& b, const LieAlgebra& g, const CochainSplit& sp,
                      const Bigraded<B>& x) {
    LieSplit<B> out;
    out.rep_value.assign(sp.h_dim(), b.zero_form(x.fdeg));
    out.rest_value.assign(sp.space_dim() - sp.h_dim() - sp.exact_dim(), b.zero_form(x.fdeg));
    out.delta_preimage = Bigraded<B>{x.gdeg - 1, x.fdeg, {}};
    const auto prev_subsets = index_subsets(g.dim(), x.gdeg - 1);
    for (const auto& [key, col] : lie_columns(g, x)) {
        CochainSplit::Coords c = sp.decompose(col);
        typename B::Form unit = b.basis_form(key, x.fdeg);
        for (size_t s = 0; s < c.rep.size(); ++s)
            if (!c.rep[s].is_zero()) out.rep_value[s] += unit * c.rep[s];
        for (size_t t = 0; t < c.rest.size(); ++t)
            if (!c.rest[t].is_zero()) out.rest_value[t] += unit * c.rest[t];
        for (size_t e = 0; e < c.exact.size(); ++e) {
            if (c.exact[e].is_zero()) continue;
            const auto& pre = sp.exact_preimage(static_cast<int>(e));
            for (size_t t = 0; t < prev_subsets.size(); ++t)
                if (!pre[t].is_zero())
                    out.delta_preimage.add_value(prev_subsets[t], unit * (pre[t] * c.exact[e]));
        }
    }
    return out;
}

// One Kunneth component h_k in H^k(g) tensor H^{n+1-k}_dR.
template <CartanBackend B>
struct ObstructionClass {
    int k = 0;
    int dim_lie = 0;      // dim H^k(g)
    int dim_de_rham = 0;  // dim H^{n+1-k}
    RationalMatrix coords;
    Bigraded<B> representative;
    bool nonzero = false;
};

// Projects one component of a D-cocycle through both quotient maps. The
// echelon complements make the projection well defined; the containment
// checks below fail only on inputs that are not D-cocycle components.
template <CartanBackend B>
ObstructionClass<B> kunneth_class(const B& b, const LieAlgebra& g, const Bigraded<B>& xk) {
    ObstructionClass<B> out;
    out.k = xk.gdeg;
    CochainSplit sp(g, xk.gdeg);
    out.dim_lie = sp.h_dim();
    out.dim_de_rham = b.de_rham_dim(xk.fdeg);
    out.coords = RationalMatrix(out.dim_lie, out.dim_de_rham);
    out.representative = Bigraded<B>{xk.gdeg, xk.fdeg, {}};

    LieSplit<B> ls = lie_split(b, g, sp, xk);
    for (const auto& rest : ls.rest_value) {
        auto os = b.split_form(rest);
        if (!is_zero(os.rep_coords) || !os.rest.is_zero())
            throw std::invalid_argument("kunneth_class: input is not a D-cocycle component");
    }
    const auto dr_reps = b.de_rham_reps(xk.fdeg);
    const auto& lie_reps = sp.representatives();
    for (int s = 0; s < out.dim_lie; ++s) {
        auto os = b.split_form(ls.rep_value[s]);
        if (!os.rest.is_zero())
            throw std::invalid_argument("kunneth_class: input is not a D-cocycle component");
        for (int t = 0; t < out.dim_de_rham; ++t) {
            if (os.rep_coords[t].is_zero()) continue;
            out.coords.at(s, t) = os.rep_coords[t];
            out.nonzero = true;
            for (const auto& [subset, c] : lie_reps[s].coeff)
                out.representative.add_value(subset, dr_reps[t] * (c * os.rep_coords[t]));
        }
    }
    return out;
}

template <CartanBackend B>
struct ObstructionReport {
    int n = 0;
    std::vector<ObstructionClass<B>> classes;  // k = 1..n+1
    bool exists = false;                       // all classes vanish
    std::vector<Rational> point_class;         // class of c_p in H^{n+1}(g), base point
    CECochain point_cocycle;
};

struct PointObstruction {
    CECochain cocycle;               // c_p itself, degree n+1
    std::vector<Rational> h_coords;  // class in H^{n+1}(g)
    bool nonzero = false;
};

// Point class c_p(X_1..X_{n+1}) = -(-1)^n (-1)^{n(n+1)/2}
// omega(zeta X_1,...,zeta X_{n+1})|_p, projected to H^{n+1}(g). For connected
// models its vanishing is point-independent.
template <CartanBackend B>
PointObstruction point_obstruction(const SymmetryProblem<B>& pr, const typename B::Point& p) {
    const auto& g = pr.algebra();
    int sign = (((pr.n + pr.n * (pr.n + 1) / 2) % 2) == 0) ? -1 : 1;
    CECochain c;
    c.degree = pr.n + 1;
    for (const IndexSet& s : index_subsets(g.dim(), pr.n + 1)) {
        auto vals = pr.b().evaluate_at(contract_along(pr, s), p);
        auto it = vals.find(IndexSet{});
        if (it == vals.end() || it->second.is_zero()) continue;
        c.coeff[s] = it->second * Rational(sign);
    }
    PointObstruction out;
    out.cocycle = c;
    CochainSplit sp(g, pr.n + 1);
    out.h_coords = sp.project_cocycle(c);
    out.nonzero = !is_zero(out.h_coords);
    return out;
}

template <CartanBackend B>
ObstructionReport<B> decompose_obstruction(const SymmetryProblem<B>& pr,
                                           const TotalElement<B>& g_cocycle) {
    ObstructionReport<B> out;
    out.n = pr.n;
    out.exists = true;
    for (int k = 1; k <= pr.n + 1; ++k) {
        const Bigraded<B>* comp = g_cocycle.component(k);
        Bigraded<B> empty{k, pr.n + 1 - k, {}};
        ObstructionClass<B> cls = kunneth_class(pr.b(), pr.algebra(), comp ? *comp : empty);
        if (cls.nonzero) out.exists = false;
        out.classes.push_back(std::move(cls));
    }
    auto pc = point_obstruction(pr, pr.b().base_point());
    out.point_class = pc.h_coords;
    out.point_cocycle = pc.cocycle;
    return out;
}

// ---------------------------------------------------------------------------
// Co-moment maps and the potential correspondence
// ---------------------------------------------------------------------------

// Homotopy co-moment map: form parts f_k (k = 1..n); the vector part of f_1
// is the action itself. Stored alongside the potential dictionary
// p_1 = -pi_Omega f_1, p_k = -f_k.
template <CartanBackend B>
struct Comoment {
    int n = 0;
    std::vector<Bigraded<B>> f;  // f[k-1]: gdeg k, fdeg n-k

    const Bigraded<B>& component(int k) const { return f.at(k - 1); }
};

template <CartanBackend B>
Comoment<B> comoment_from_potential(const B& b, const TotalElement<B>& p, int n) {
    if (p.degree != n) throw std::invalid_argument("comoment_from_potential: degree must be n");
    Comoment<B> out;
    out.n = n;
    for (int k = 1; k <= n; ++k) {
        const Bigraded<B>* comp = p.component(k);
        Bigraded<B> fk{k, n - k, {}};
        if (comp) fk = *comp * Rational(-1);
        out.f.push_back(std::move(fk));
    }
    if (p.component(0))
        throw std::invalid_argument("comoment_from_potential: unexpected (0,n) component");
    (void)b;
    return out;
}

template <CartanBackend B>
TotalElement<B> potential_from_comoment(const Comoment<B>& F) {
    TotalElement<B> p;
    p.degree = F.n;
    for (const auto& fk : F.f) p.add_component(fk * Rational(-1));
    return p;
}

// f_1 of a generator as a (field, form) observable pair.
template <CartanBackend B>
Observable<B> comoment_pair(const SymmetryProblem<B>& pr, const Comoment<B>& F, int generator) {
    return {0, pr.action.field[generator - 1],
            F.component(1).value(pr.b(), IndexSet{generator})};
}

struct MorphismCheck {
    bool ok = true;
    std::string detail;
};

// Checks that the family is an L-infinity morphism lifting the action:
// equivariance of the vector parts, the pairing condition on f_1, and
// delta f_k + d f_{k+1} = -f_1^* l_{k+1} for k = 1..n (f_{n+1} = 0), with the
// right side evaluated through the observable brackets.
template <CartanBackend B>
MorphismCheck verify_morphism(const SymmetryProblem<B>& pr, const Comoment<B>& F) {
    const auto& g = pr.algebra();
    const B& b = pr.b();
    ObservableAlgebra<B> obs(b, pr.omega);
    // Vector parts lift the action through a homomorphism.
    for (int a = 1; a <= g.dim(); ++a)
        for (int c = a + 1; c <= g.dim(); ++c) {
            auto lhs = pr.action.field_of(b, g.bracket_basis(a, c));
            auto rhs = b.field_bracket(pr.action.field[a - 1], pr.action.field[c - 1]);
            if (!is_zero(b.field_add(lhs, b.field_scale(rhs, Rational(-1))))) {
                std::ostringstream os;
                os << "vector parts: zeta([e" << a << ",e" << c << "]) != [zeta e" << a
                   << ", zeta e" << c << "]";
                return {false, os.str()};
            }
        }
    // Observable condition d(pi_Omega f_1) = -iota_zeta omega.
    for (int a = 1; a <= g.dim(); ++a) {
        Observable<B> f1 = comoment_pair(pr, F, a);
        auto chk = obs.check_pair(f1.v, f1.alpha);
        if (!chk.ok) {
            std::ostringstream os;
            os << "f1(e" << a << ") violates d(alpha) = -iota_v omega, residual at bidegree (1,"
               << pr.n << ")";
            return {false, os.str()};
        }
    }
    // Higher identities.
    for (int k = 1; k <= pr.n; ++k) {
        Bigraded<B> lhs = ce_delta_bigraded(g, F.component(k));
        if (k + 1 <= pr.n) lhs += d_bigraded(b, F.component(k + 1));
        Bigraded<B> rhs{k + 1, pr.n - k, {}};
        for (const IndexSet& s : index_subsets(g.dim(), k + 1)) {
            std::vector<Observable<B>> args;
            args.reserve(k + 1);
            for (int idx : s) args.push_back(comoment_pair(pr, F, idx));
            Observable<B> br = obs.bracket(args);
            rhs.add_value(s, br.alpha * Rational(-1));
        }
        if (!(lhs == rhs)) {
            std::ostringstream os;
            os << "delta f_" << k << " + d f_" << (k + 1) << " != -f1* l_" << (k + 1)
               << " at bidegree (" << (k + 1) << "," << (pr.n - k) << ")";
            return {false, os.str()};
        }
    }
    return {};
}

struct GaugeCheck {
    bool ok = false;
    std::string detail;
};

// Two co-moments for the same action differ by a D-cocycle of degree n; the
// (0,n) slot is structurally absent from the stored family.
template <CartanBackend B>
GaugeCheck gauge_check(const SymmetryProblem<B>& pr, const Comoment<B>& F1,
                       const Comoment<B>& F2) {
    TotalElement<B> q = potential_from_comoment(F1) - potential_from_comoment(F2);
    TotalElement<B> dq = total_differential(pr.algebra(), pr.b(), pr.n, q);
    if (dq.is_zero()) return {true, ""};
    int bad = dq.comp.begin()->first;
    std::ostringstream os;
    os << "difference is not a D-cocycle: D-residual at bidegree (" << bad << ","
       << (pr.n + 1 - bad) << ")";
    return {false, os.str()};
}

// ---------------------------------------------------------------------------
// Exact solver for D(p) = g over the truncated finite model
// ---------------------------------------------------------------------------

struct SolveOptions {
    std::optional<int> max_coeff_degree;  // euclidean truncation override
    unsigned order_seed = 0;              // forces a different echelon route
};

enum class SolveStatus { found, obstructed, inconclusive };

template <CartanBackend B>
struct SolveOutcome {
    SolveStatus status = SolveStatus::inconclusive;
    std::optional<Comoment<B>> comoment;
    std::optional<ObstructionReport<B>> obstruction;
    int bound = 0;
};

template <CartanBackend B>
SolveOutcome<B> solve_comoment(const SymmetryProblem<B>& pr, const SolveOptions& opts = {}) {
    const auto& g = pr.algebra();
    const B& b = pr.b();
    TotalElement<B> gc = action_cocycle(pr);

    int bound = 0;
    if (opts.max_coeff_degree) {
        bound = *opts.max_coeff_degree;
    } else {
        for (const auto& [i, comp] : gc.comp)
            for (const auto& [s, f] : comp.coeff)
                for (const auto& [key, c] : f.terms) bound = std::max(bound, B::stratum(key));
        bound += pr.n;
    }

    struct Slot {
        int gdeg;
        IndexSet subset;
        typename B::FormKey key;
        auto operator<=>(const Slot&) const = default;
    };

    // Group unknown columns and equation rows by the D-invariant stratum.
    std::map<int, std::vector<Slot>> cols_by, rows_by;
    for (int k = 1; k <= pr.n; ++k)
        for (const IndexSet& s : index_subsets(g.dim(), k))
            for (const auto& key : b.form_basis(pr.n - k, bound))
                cols_by[B::stratum(key)].push_back({k, s, key});
    for (int k = 1; k <= pr.n + 1; ++k)
        for (const IndexSet& s : index_subsets(g.dim(), k))
            for (const auto& key : b.form_basis(pr.n + 1 - k, bound))
                rows_by[B::stratum(key)].push_back({k, s, key});
    // Rows must cover every term of g even when the bound is set low.
    for (const auto& [i, comp] : gc.comp)
        for (const auto& [s, f] : comp.coeff)
            for (const auto& [key, c] : f.terms) {
                Slot slot{i, s, key};
                auto& rows = rows_by[B::stratum(key)];
                if (std::find(rows.begin(), rows.end(), slot) == rows.end())
                    rows.push_back(slot);
            }

    TotalElement<B> p;
    p.degree = pr.n;
    bool solvable = true;
    for (auto& [stratum, cols] : cols_by) {
        auto rit = rows_by.find(stratum);
        if (rit == rows_by.end()) continue;  // unconstrained columns stay zero
        std::vector<Slot>& rows = rit->second;
        std::map<Slot, int> row_index;
        for (size_t r = 0; r < rows.size(); ++r) row_index.emplace(rows[r], static_cast<int>(r));

        if (opts.order_seed != 0) {
            std::mt19937 rng(opts.order_seed + static_cast<unsigned>(stratum));
            std::shuffle(cols.begin(), cols.end(), rng);
        }

        RationalMatrix A(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
        for (size_t c = 0; c < cols.size(); ++c) {
            TotalElement<B> unit;
            unit.degree = pr.n;
            Bigraded<B> comp{cols[c].gdeg, pr.n - cols[c].gdeg, {}};
            comp.add_value(cols[c].subset, b.basis_form(cols[c].key, pr.n - cols[c].gdeg));
            unit.add_component(std::move(comp));
            TotalElement<B> img = total_differential(g, b, pr.n, unit);
            for (const auto& [i, ic] : img.comp)
                for (const auto& [s, f] : ic.coeff)
                    for (const auto& [key, cc] : f.terms) {
                        auto it = row_index.find({i, s, key});
                        if (it == row_index.end())
                            throw std::logic_error("solve_comoment: D image escapes the model");
                        A.at(it->second, static_cast<int>(c)) += cc;
                    }
        }
        std::vector<Rational> rhs(rows.size());
        for (const auto& [i, comp] : gc.comp)
            for (const auto& [s, f] : comp.coeff)
                for (const auto& [key, cc] : f.terms) {
                    auto it = row_index.find({i, s, key});
                    if (it != row_index.end() && B::stratum(key) == stratum)
                        rhs[it->second] += cc;
                }
        LinearSolution sol = solve_linear(A, rhs);
        if (!sol.solvable) {
            solvable = false;
            break;
        }
        for (size_t c = 0; c < cols.size(); ++c) {
            if (sol.x[c].is_zero()) continue;
            Bigraded<B> comp{cols[c].gdeg, pr.n - cols[c].gdeg, {}};
            comp.add_value(cols[c].subset,
                           b.basis_form(cols[c].key, pr.n - cols[c].gdeg) * sol.x[c]);
            p.add_component(std::move(comp));
        }
    }
    // Strata of g with no unknown columns at all must vanish identically.
    if (solvable)
        for (const auto& [stratum, rows] : rows_by) {
            if (cols_by.count(stratum)) continue;
            for (const auto& [i, comp] : gc.comp)
                for (const auto& [s, f] : comp.coeff)
                    for (const auto& [key, cc] : f.terms)
                        if (B::stratum(key) == stratum && !cc.is_zero()) solvable = false;
        }

    SolveOutcome<B> out;
    out.bound = bound;
    if (solvable) {
        TotalElement<B> check = total_differential(g, b, pr.n, p) - gc;
        if (!check.is_zero()) throw std::logic_error("solve_comoment: solution fails D(p) = g");
        Comoment<B> F = comoment_from_potential(b, p, pr.n);
        MorphismCheck mc = verify_morphism(pr, F);
        if (!mc.ok) throw std::logic_error("solve_comoment: solution fails verification: " + mc.detail);
        out.status = SolveStatus::found;
        out.comoment = std::move(F);
        return out;
    }
    out.obstruction = decompose_obstruction(pr, gc);
    if constexpr (B::complete_model) {
        if (out.obstruction->exists)
            throw std::logic_error("solve_comoment: unsolvable but all classes vanish");
        out.status = SolveStatus::obstructed;
    } else {
        out.status = is_zero(out.obstruction->point_class) ? SolveStatus::inconclusive
                                                           : SolveStatus::obstructed;
    }
    return out;
}

}  // namespace plectic
