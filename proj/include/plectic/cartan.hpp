#pragma once

#include "plectic/combinatorics.hpp"
#include "plectic/matrix.hpp"

#include <concepts>
#include <map>
#include <vector>

namespace plectic {

// Contract satisfied by both form backends. Every operation is exact; the two
// implementations must pass one and the same property suite.
template <class B>
concept CartanBackend = requires(const B b, const typename B::Form f,
                                 const typename B::VectorField v,
                                 const typename B::Point p, const typename B::FormKey key,
                                 const Rational r, int j) {
    { B::complete_model } -> std::convertible_to<bool>;
    { b.top_degree() } -> std::convertible_to<int>;
    { b.connected() } -> std::convertible_to<bool>;
    { b.zero_form(j) } -> std::same_as<typename B::Form>;
    { b.constant_form(r) } -> std::same_as<typename B::Form>;
    { b.d(f) } -> std::same_as<typename B::Form>;
    { b.wedge(f, f) } -> std::same_as<typename B::Form>;
    { b.contract(v, f) } -> std::same_as<typename B::Form>;
    { b.lie_derivative(v, f) } -> std::same_as<typename B::Form>;
    { b.field_bracket(v, v) } -> std::same_as<typename B::VectorField>;
    { b.field_add(v, v) } -> std::same_as<typename B::VectorField>;
    { b.field_scale(v, r) } -> std::same_as<typename B::VectorField>;
    { b.zero_field() } -> std::same_as<typename B::VectorField>;
    { b.evaluate_at(f, p) };
    { b.de_rham_dim(j) } -> std::convertible_to<int>;
    { b.form_basis(j, j) } -> std::same_as<std::vector<typename B::FormKey>>;
    { b.basis_form(key, j) } -> std::same_as<typename B::Form>;
    { b.split_form(f) };
    { b.find_potential(f) };
};

struct NondegeneracyVerdict {
    bool nondegenerate = false;
    int rank = 0;
};

// Rank of v -> iota_v omega at each sample point; full rank means the
// structure is multisymplectic there, otherwise merely pre-n-plectic.
template <CartanBackend B>
std::vector<NondegeneracyVerdict> nondegeneracy_check(
    const B& b, const typename B::Form& omega,
    const std::vector<typename B::Point>& points) {
    const auto fields = b.coordinate_fields();
    const int m = static_cast<int>(fields.size());
    std::vector<NondegeneracyVerdict> out;
    for (const auto& p : points) {
        std::vector<std::map<IndexSet, Rational>> cols;
        cols.reserve(m);
        std::map<IndexSet, int> row_of;
        for (const auto& v : fields) {
            auto vals = b.evaluate_at(b.contract(v, omega), p);
            for (const auto& [s, c] : vals) row_of.emplace(s, 0);
            cols.push_back(std::move(vals));
        }
        int r = 0;
        for (auto& [s, idx] : row_of) idx = r++;
        RationalMatrix mat(std::max(r, 1), m);
        for (int c = 0; c < m; ++c)
            for (const auto& [s, val] : cols[c]) mat.at(row_of[s], c) = val;
        int rk = rank(mat);
        out.push_back({rk == m, rk});
    }
    return out;
}

}  // namespace plectic
