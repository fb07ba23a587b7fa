#include "plectic/combinatorics.hpp"

#include <algorithm>
#include <stdexcept>

namespace plectic {

bool strictly_increasing(const IndexSet& s) {
    for (size_t i = 0; i + 1 < s.size(); ++i)
        if (s[i] >= s[i + 1]) return false;
    return s.empty() || s.front() >= 1;
}

bool within_dimension(const IndexSet& s, int dim) {
    return strictly_increasing(s) && (s.empty() || s.back() <= dim);
}

long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long r = 1;
    for (int t = 0; t < k; ++t) r = r * (n - t) / (t + 1);
    return r;
}

std::vector<IndexSet> index_subsets(int dim, int k) {
    std::vector<IndexSet> out;
    if (k < 0 || k > dim) return out;
    IndexSet cur(k);
    for (int t = 0; t < k; ++t) cur[t] = t + 1;
    while (true) {
        out.push_back(cur);
        int pos = k - 1;
        while (pos >= 0 && cur[pos] == dim - (k - 1 - pos)) --pos;
        if (pos < 0) break;
        ++cur[pos];
        for (int t = pos + 1; t < k; ++t) cur[t] = cur[t - 1] + 1;
    }
    return out;
}

long subset_position(int dim, const IndexSet& s) {
    // Combinatorial ranking in lexicographic order.
    long pos = 0;
    int k = static_cast<int>(s.size());
    int prev = 0;
    for (int t = 0; t < k; ++t) {
        for (int v = prev + 1; v < s[t]; ++v) pos += binomial(dim - v, k - 1 - t);
        prev = s[t];
    }
    return pos;
}

WedgeMerge wedge_merge(const IndexSet& a, const IndexSet& b) {
    WedgeMerge r;
    r.merged.reserve(a.size() + b.size());
    size_t ia = 0, ib = 0;
    int sign = 1;
    while (ia < a.size() && ib < b.size()) {
        if (a[ia] == b[ib]) return {0, {}};
        if (a[ia] < b[ib]) {
            r.merged.push_back(a[ia++]);
        } else {
            // b[ib] moves past the remaining entries of a
            if ((a.size() - ia) % 2 == 1) sign = -sign;
            r.merged.push_back(b[ib++]);
        }
    }
    while (ia < a.size()) r.merged.push_back(a[ia++]);
    while (ib < b.size()) r.merged.push_back(b[ib++]);
    r.sign = sign;
    return r;
}

WedgeMerge insert_index(int idx, const IndexSet& s) { return wedge_merge({idx}, s); }

int permutation_sign(const std::vector<int>& perm) {
    int sign = 1;
    for (size_t i = 0; i < perm.size(); ++i)
        for (size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) sign = -sign;
    return sign;
}

std::vector<int> invert_permutation(const std::vector<int>& perm) {
    std::vector<int> inv(perm.size());
    for (size_t i = 0; i < perm.size(); ++i) inv[perm[i] - 1] = static_cast<int>(i) + 1;
    return inv;
}

int koszul_sign(const std::vector<int>& perm, const std::vector<int>& degrees) {
    if (perm.size() != degrees.size())
        throw std::invalid_argument("koszul_sign: length mismatch");
    // Elements a,b cross exactly when their destinations invert; each crossing
    // of odd-degree pair contributes -1.
    int sign = 1;
    for (size_t a = 0; a < perm.size(); ++a)
        for (size_t b = a + 1; b < perm.size(); ++b)
            if (perm[a] > perm[b] && (degrees[a] % 2 != 0) && (degrees[b] % 2 != 0))
                sign = -sign;
    return sign;
}

int koszul_sign_sources(const std::vector<int>& slots, const std::vector<int>& degrees) {
    if (slots.size() != degrees.size())
        throw std::invalid_argument("koszul_sign_sources: length mismatch");
    int sign = 1;
    for (size_t k = 0; k < slots.size(); ++k)
        for (size_t l = k + 1; l < slots.size(); ++l)
            if (slots[k] > slots[l] && (degrees[slots[k] - 1] % 2 != 0) &&
                (degrees[slots[l] - 1] % 2 != 0))
                sign = -sign;
    return sign;
}

std::vector<std::vector<int>> unshuffles(int i, int j) {
    if (i < 0 || j < 0) throw std::invalid_argument("unshuffles: negative block size");
    int n = i + j;
    std::vector<std::vector<int>> out;
    for (const IndexSet& first : index_subsets(n, i)) {
        std::vector<int> sigma;
        sigma.reserve(n);
        std::vector<bool> used(n + 1, false);
        for (int v : first) {
            sigma.push_back(v);
            used[v] = true;
        }
        for (int v = 1; v <= n; ++v)
            if (!used[v]) sigma.push_back(v);
        out.push_back(std::move(sigma));
    }
    return out;
}

}  // namespace plectic
