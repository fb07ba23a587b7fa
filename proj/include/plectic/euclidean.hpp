#pragma once

#include "plectic/combinatorics.hpp"
#include "plectic/matrix.hpp"
#include "plectic/rational.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace plectic {

// Multivariate polynomial: exponent vector (fixed length = ambient dim) -> coefficient.
using Exponents = std::vector<int>;
using PolyMap = std::map<Exponents, Rational>;

PolyMap poly_mul(const PolyMap& a, const PolyMap& b);
void poly_add_scaled(PolyMap& dst, const PolyMap& src, const Rational& s);
PolyMap poly_diff(const PolyMap& p, int var);  // var 1-based
Rational poly_eval(const PolyMap& p, const std::vector<Rational>& pt);
// Substitute x_i -> x_i + offset_i.
PolyMap poly_shift(const PolyMap& p, const std::vector<Rational>& offset);
int poly_total_degree(const PolyMap& p);  // -1 for the zero polynomial

struct PolyFormKey {
    IndexSet indices;
    Exponents exponents;
    auto operator<=>(const PolyFormKey&) const = default;
};

// Differential form with polynomial coefficients on R^m, exact rationals.
class PolyForm {
public:
    PolyForm() = default;
    PolyForm(int ambient, int degree) : ambient(ambient), degree(degree) {}

    int ambient = 0;
    int degree = 0;
    std::map<PolyFormKey, Rational> terms;  // no zero coefficients stored

    void add_term(IndexSet indices, Exponents exponents, const Rational& c);
    bool is_zero() const { return terms.empty(); }
    int coefficient_degree() const;  // max |alpha| over terms, -1 if zero

    PolyForm& operator+=(const PolyForm& o);
    PolyForm& operator-=(const PolyForm& o);
    friend PolyForm operator+(PolyForm a, const PolyForm& b) { return a += b; }
    friend PolyForm operator-(PolyForm a, const PolyForm& b) { return a -= b; }
    PolyForm operator*(const Rational& s) const;
    PolyForm operator-() const { return *this * Rational(-1); }
    bool operator==(const PolyForm& o) const;
};

inline bool is_zero(const PolyForm& f) { return f.is_zero(); }

struct PolyVectorField {
    int ambient = 0;
    std::vector<PolyMap> component;  // length = ambient

    PolyVectorField() = default;
    explicit PolyVectorField(int m) : ambient(m), component(m) {}
    bool is_zero() const;
    bool operator==(const PolyVectorField& o) const = default;
};

inline bool is_zero(const PolyVectorField& v) { return v.is_zero(); }

// Cartan calculus on polynomial forms over R^m with a distinguished base
// point. Contractible model: de Rham cohomology is certified by the homotopy
// operator K with dK + Kd = id in positive degrees.
class EuclideanBackend {
public:
    using Form = PolyForm;
    using VectorField = PolyVectorField;
    using FormKey = PolyFormKey;
    using Point = std::vector<Rational>;

    // Truncated polynomial model: a failed solve at a finite coefficient
    // degree is not by itself a proof of nonexistence.
    static constexpr bool complete_model = false;

    explicit EuclideanBackend(int ambient, Point base_point = {});

    int ambient_dim() const { return m_; }
    int top_degree() const { return m_; }
    const Point& base_point() const { return base_; }
    bool connected() const { return true; }
    std::string describe() const;

    Form zero_form(int degree) const { return Form(m_, degree); }
    Form constant_form(const Rational& c) const;

    Form d(const Form& a) const;
    Form wedge(const Form& a, const Form& b) const;
    Form contract(const VectorField& v, const Form& a) const;
    Form lie_derivative(const VectorField& v, const Form& a) const;
    VectorField field_bracket(const VectorField& v, const VectorField& w) const;
    VectorField zero_field() const { return VectorField(m_); }
    VectorField field_add(const VectorField& v, const VectorField& w) const;
    VectorField field_scale(const VectorField& v, const Rational& s) const;
    std::vector<VectorField> coordinate_fields() const;

    // Poincare homotopy operator centred at the base point.
    Form homotopy_potential(const Form& a) const;

    struct PotentialResult {
        std::optional<Form> potential;
        std::vector<Rational> obstruction;  // class coords in H^deg when unsolvable
    };
    PotentialResult find_potential(const Form& a) const;  // throws if a not closed

    std::map<IndexSet, Rational> evaluate_at(const Form& a, const Point& p) const;

    int de_rham_dim(int degree) const { return degree == 0 ? 1 : 0; }
    std::vector<Form> de_rham_reps(int degree) const;

    // Splitting Omega^j = exact + H-representatives + non-closed rest,
    // realized by dK / evaluation at the base point / Kd.
    struct FormSplit {
        Form exact;
        std::vector<Rational> rep_coords;
        Form rest;
    };
    FormSplit split_form(const Form& a) const;

    std::vector<FormKey> form_basis(int degree, int max_coeff_degree) const;
    Form basis_form(const FormKey& key, int degree) const;
    static int stratum(const FormKey& key);

private:
    int m_;
    Point base_;
    bool centred_;  // base point == origin

    Form homotopy_origin(const Form& a) const;
    Form shift(const Form& a, const Point& offset) const;
};

}  // namespace plectic
