#pragma once

#include "plectic/lie_algebra.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace plectic {

// Invariant differential form: a Chevalley-Eilenberg cochain of the model
// algebra. Exterior derivative is the CE differential, vector fields are
// elements of the model algebra.
class AlgForm {
public:
    AlgForm() = default;
    AlgForm(int ambient, int degree) : ambient(ambient), degree(degree) {}

    int ambient = 0;  // dim of the model algebra
    int degree = 0;
    std::map<IndexSet, Rational> terms;

    void add_term(IndexSet indices, const Rational& c);
    bool is_zero() const { return terms.empty(); }

    AlgForm& operator+=(const AlgForm& o);
    AlgForm& operator-=(const AlgForm& o);
    friend AlgForm operator+(AlgForm a, const AlgForm& b) { return a += b; }
    friend AlgForm operator-(AlgForm a, const AlgForm& b) { return a -= b; }
    AlgForm operator*(const Rational& s) const;
    AlgForm operator-() const { return *this * Rational(-1); }
    bool operator==(const AlgForm& o) const;
};

inline bool is_zero(const AlgForm& f) { return f.is_zero(); }

// The algebraic model of invariant forms on a group: the finite dgca
// (Lambda h*, delta) of a second Lie algebra h, with exactly computable
// cohomology. Point evaluation is evaluation at the identity.
class InvariantBackend {
public:
    using Form = AlgForm;
    using VectorField = std::vector<Rational>;  // element of the model algebra
    using FormKey = IndexSet;
    using Point = std::vector<Rational>;  // ignored; kept for interface parity

    // The form space is finite-dimensional: solver verdicts are definitive.
    static constexpr bool complete_model = true;

    explicit InvariantBackend(LieAlgebra model);

    const LieAlgebra& model() const { return *h_; }
    int ambient_dim() const { return h_->dim(); }
    int top_degree() const { return h_->dim(); }
    Point base_point() const { return {}; }
    bool connected() const { return true; }
    std::string describe() const;

    Form zero_form(int degree) const { return Form(h_->dim(), degree); }
    Form constant_form(const Rational& c) const;

    Form d(const Form& a) const;
    Form wedge(const Form& a, const Form& b) const;
    Form contract(const VectorField& v, const Form& a) const;
    Form lie_derivative(const VectorField& v, const Form& a) const;
    VectorField field_bracket(const VectorField& v, const VectorField& w) const;
    VectorField zero_field() const { return VectorField(h_->dim()); }
    VectorField field_add(const VectorField& v, const VectorField& w) const;
    VectorField field_scale(const VectorField& v, const Rational& s) const;
    std::vector<VectorField> coordinate_fields() const;

    struct PotentialResult {
        std::optional<Form> potential;
        std::vector<Rational> obstruction;
    };
    PotentialResult find_potential(const Form& a) const;

    std::map<IndexSet, Rational> evaluate_at(const Form& a, const Point&) const;

    int de_rham_dim(int degree) const;
    std::vector<Form> de_rham_reps(int degree) const;

    struct FormSplit {
        Form exact;
        std::vector<Rational> rep_coords;
        Form rest;
    };
    FormSplit split_form(const Form& a) const;

    std::vector<FormKey> form_basis(int degree, int max_coeff_degree) const;
    Form basis_form(const FormKey& key, int degree) const;
    static int stratum(const FormKey&) { return 0; }

private:
    std::shared_ptr<const LieAlgebra> h_;
    std::vector<CochainSplit> splits_;  // per degree 0..dim, built eagerly

    const CochainSplit& split(int degree) const;
    std::vector<Rational> coords(const Form& a) const;
    Form from_coords(const std::vector<Rational>& v, int degree) const;
};

}  // namespace plectic
