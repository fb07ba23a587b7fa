#pragma once

#include "plectic/rational.hpp"

#include <vector>

namespace plectic {

// Basis label for exterior powers: strictly increasing 1-based indices.
using IndexSet = std::vector<int>;

bool strictly_increasing(const IndexSet& s);
bool within_dimension(const IndexSet& s, int dim);

long binomial(int n, int k);

// All k-element subsets of {1..dim} in lexicographic order.
std::vector<IndexSet> index_subsets(int dim, int k);
// Position of s in index_subsets(dim, |s|); s must be strictly increasing.
long subset_position(int dim, const IndexSet& s);

// Sign bookkeeping for wedge products on ordered labels.
// sign == 0 means the product vanishes (repeated index).
struct WedgeMerge {
    int sign = 0;
    IndexSet merged;
};
WedgeMerge wedge_merge(const IndexSet& a, const IndexSet& b);
// e_idx wedged in front of e_s.
WedgeMerge insert_index(int idx, const IndexSet& s);

// Permutations are stored as images. For koszul_sign the vector is read as a
// destination map (slot i's element ends up in slot perm[i-1]); degrees are
// indexed by the original slots.
int permutation_sign(const std::vector<int>& perm);
std::vector<int> invert_permutation(const std::vector<int>& perm);
int koszul_sign(const std::vector<int>& perm, const std::vector<int>& degrees);
// Same sign with the permutation given as the source of each final slot
// (slots[k-1] = original position of the element now in slot k), which is the
// form unshuffles() produces.
int koszul_sign_sources(const std::vector<int>& slots, const std::vector<int>& degrees);

// All (i,j)-unshuffles of {1..i+j}: permutations sigma with
// sigma(1)<...<sigma(i) and sigma(i+1)<...<sigma(i+j), as source maps,
// enumerated lexicographically by the first block.
std::vector<std::vector<int>> unshuffles(int i, int j);

}  // namespace plectic
