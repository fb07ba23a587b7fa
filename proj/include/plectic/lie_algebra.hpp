#pragma once

#include "plectic/combinatorics.hpp"
#include "plectic/matrix.hpp"
#include "plectic/rational.hpp"

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace plectic {

// Structure constant record: [e_i, e_j] = sum_k c e_k, stored for i < j only.
struct StructureEntry {
    int i, j, k;
    Rational c;
};

struct LieValidation {
    bool ok = true;
    std::string detail;  // first failing triple / malformed entry
};

// Finite-dimensional Lie algebra over the rationals, given by structure
// constants on a fixed basis e_1..e_dim.
class LieAlgebra {
public:
    LieAlgebra(int dim, std::vector<StructureEntry> entries);

    int dim() const { return dim_; }

    // Antisymmetry is structural: only i < j entries are consulted.
    std::vector<Rational> bracket_basis(int i, int j) const;
    std::vector<Rational> bracket(const std::vector<Rational>& x,
                                  const std::vector<Rational>& y) const;

    // Matrix of ad_{e_i} acting on coordinate columns.
    RationalMatrix ad(int i) const;

    // Jacobi on all basis triples plus well-formedness of the constant map.
    LieValidation validate() const;

    const std::vector<StructureEntry>& entries() const { return entries_; }

private:
    int dim_;
    std::vector<StructureEntry> entries_;
    std::map<std::tuple<int, int, int>, Rational> c_;
};

// Cochains of the Chevalley-Eilenberg complex with trivial coefficients
// (and chains of the dual complex; same shape).
struct CECochain {
    int degree = 0;
    std::map<IndexSet, Rational> coeff;
};
using CEChain = CECochain;

bool is_zero(const CECochain& c);

// Generic Chevalley-Eilenberg differential on alternating maps with values in
// any module V supporting v + v, v * Rational and is_zero(v):
//   (delta f)(X_1..X_{k+1}) = sum_{a<b} (-1)^{a+b} f([X_a,X_b], ..^a..^b..).
template <class V>
std::map<IndexSet, V> ce_delta(const LieAlgebra& g, const std::map<IndexSet, V>& f, int k) {
    std::map<IndexSet, V> out;
    for (const IndexSet& t : index_subsets(g.dim(), k + 1)) {
        bool any = false;
        V acc{};
        for (size_t a = 0; a < t.size(); ++a) {
            for (size_t b = a + 1; b < t.size(); ++b) {
                std::vector<Rational> br = g.bracket_basis(t[a], t[b]);
                IndexSet rest;
                rest.reserve(t.size() - 2);
                for (size_t q = 0; q < t.size(); ++q)
                    if (q != a && q != b) rest.push_back(t[q]);
                int outer = ((a + 1 + b + 1) % 2 == 0) ? 1 : -1;
                for (int m = 1; m <= g.dim(); ++m) {
                    if (br[m - 1].is_zero()) continue;
                    WedgeMerge ins = insert_index(m, rest);
                    if (ins.sign == 0) continue;
                    auto it = f.find(ins.merged);
                    if (it == f.end() || is_zero(it->second)) continue;
                    V term = it->second * (br[m - 1] * Rational(outer * ins.sign));
                    if (!any) {
                        acc = std::move(term);
                        any = true;
                    } else {
                        acc = acc + term;
                    }
                }
            }
        }
        if (any && !is_zero(acc)) out.emplace(t, std::move(acc));
    }
    return out;
}

// Matrix of delta_k : Lambda^k g* -> Lambda^{k+1} g* in the canonical
// ordered-subset bases.
RationalMatrix ce_differential(const LieAlgebra& g, int k);

// Splitting Lambda^k g* = im(delta_{k-1}) + representatives + non-closed rest,
// built by deterministic echelon extension, with delta-preimages of the exact
// basis vectors. Drives cohomology, class projection and delta-potentials.
class CochainSplit {
public:
    CochainSplit(const LieAlgebra& g, int k);

    int degree() const { return k_; }
    int space_dim() const { return space_dim_; }
    int h_dim() const { return static_cast<int>(rep_.size()); }
    int kernel_dim() const { return kernel_dim_; }
    int exact_dim() const { return static_cast<int>(exact_.size()); }

    const std::vector<CECochain>& representatives() const { return reps_cochains_; }

    struct Coords {
        std::vector<Rational> exact, rep, rest;
    };
    Coords decompose(const std::vector<Rational>& coeffs) const;

    // Class coordinates of a cocycle; throws if the input is not delta-closed.
    std::vector<Rational> project_cocycle(const CECochain& z) const;

    // Cochain in Lambda^{k-1} whose delta equals the e-th exact basis vector.
    const std::vector<Rational>& exact_preimage(int e) const { return preimages_[e]; }

    std::vector<Rational> to_coords(const CECochain& z) const;
    CECochain from_coords(const std::vector<Rational>& v, int degree) const;

private:
    const LieAlgebra* g_;
    int k_;
    int space_dim_;
    int kernel_dim_ = 0;
    std::vector<std::vector<Rational>> exact_, rep_, rest_;
    std::vector<std::vector<Rational>> preimages_;  // in Lambda^{k-1}
    std::vector<CECochain> reps_cochains_;
    RationalMatrix basis_inverse_;  // inverse of [exact | rep | rest]
};

struct CohomologyInfo {
    int degree = 0;
    int dim = 0;
    std::vector<CECochain> representatives;
};
CohomologyInfo ce_cohomology(const LieAlgebra& g, int k);

RationalMatrix killing_form(const LieAlgebra& g);

// omega_e(e_i,e_j,e_k) = kappa(e_i, [e_j,e_k]); delta-closed.
CECochain cartan_three_cocycle(const LieAlgebra& g);

// Boundary Lambda^n g -> Lambda^{n-1} g, the transpose of delta_{n-1} in the
// canonical dual bases; only its kernel is consumed downstream.
RationalMatrix boundary_delta_star(const LieAlgebra& g, int n);
// Basis of ker(delta_star) = the admissible domain of multi-moment maps.
std::vector<CEChain> multimoment_domain(const LieAlgebra& g, int n);

// Leibniz extension of ad_X to Lambda^n g.
CEChain adjoint_on_chains(const LieAlgebra& g, const std::vector<Rational>& x, const CEChain& p);

}  // namespace plectic
