#include "plectic/invariant.hpp"

#include <sstream>
#include <stdexcept>

namespace plectic {

void AlgForm::add_term(IndexSet indices, const Rational& c) {
    if (c.is_zero()) return;
    if (static_cast<int>(indices.size()) != degree)
        throw std::invalid_argument("AlgForm::add_term: index count != degree");
    if (!within_dimension(indices, ambient))
        throw std::invalid_argument("AlgForm::add_term: index outside model algebra");
    auto [it, fresh] = terms.try_emplace(std::move(indices), c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

AlgForm& AlgForm::operator+=(const AlgForm& o) {
    if (o.is_zero()) return *this;
    if (is_zero() && terms.empty()) {
        ambient = o.ambient;
        degree = o.degree;
    }
    if (ambient != o.ambient || degree != o.degree)
        throw std::invalid_argument("AlgForm: adding forms of different shape");
    for (const auto& [k, c] : o.terms) {
        auto [it, fresh] = terms.try_emplace(k, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }
    return *this;
}

AlgForm& AlgForm::operator-=(const AlgForm& o) { return *this += o * Rational(-1); }

AlgForm AlgForm::operator*(const Rational& s) const {
    AlgForm out(ambient, degree);
    if (s.is_zero()) return out;
    for (const auto& [k, c] : terms) out.terms.emplace(k, c * s);
    return out;
}

bool AlgForm::operator==(const AlgForm& o) const {
    if (is_zero() && o.is_zero()) return true;
    return ambient == o.ambient && degree == o.degree && terms == o.terms;
}

InvariantBackend::InvariantBackend(LieAlgebra model)
    : h_(std::make_shared<const LieAlgebra>(std::move(model))) {
    splits_.reserve(h_->dim() + 1);
    for (int k = 0; k <= h_->dim(); ++k) splits_.emplace_back(*h_, k);
}

std::string InvariantBackend::describe() const {
    std::ostringstream os;
    os << "invariant model, dim " << h_->dim();
    return os.str();
}

const CochainSplit& InvariantBackend::split(int degree) const {
    if (degree < 0 || degree > h_->dim())
        throw std::invalid_argument("InvariantBackend: degree out of range");
    return splits_[degree];
}

std::vector<Rational> InvariantBackend::coords(const Form& a) const {
    std::vector<Rational> v(binomial(h_->dim(), a.degree));
    for (const auto& [s, c] : a.terms) v[subset_position(h_->dim(), s)] = c;
    return v;
}

AlgForm InvariantBackend::from_coords(const std::vector<Rational>& v, int degree) const {
    AlgForm out(h_->dim(), degree);
    const auto subsets = index_subsets(h_->dim(), degree);
    for (size_t t = 0; t < subsets.size(); ++t)
        if (!v[t].is_zero()) out.terms.emplace(subsets[t], v[t]);
    return out;
}

AlgForm InvariantBackend::constant_form(const Rational& c) const {
    AlgForm f(h_->dim(), 0);
    f.add_term({}, c);
    return f;
}

AlgForm InvariantBackend::d(const Form& a) const {
    AlgForm out(h_->dim(), a.degree + 1);
    if (a.degree + 1 > h_->dim()) return out;
    std::map<IndexSet, Rational> img = ce_delta(*h_, a.terms, a.degree);
    out.terms = std::move(img);
    return out;
}

AlgForm InvariantBackend::wedge(const Form& a, const Form& b) const {
    int deg = std::min(a.degree + b.degree, h_->dim());
    AlgForm out(h_->dim(), deg);
    if (a.degree + b.degree > h_->dim()) return out;
    for (const auto& [ka, ca] : a.terms)
        for (const auto& [kb, cb] : b.terms) {
            WedgeMerge mg = wedge_merge(ka, kb);
            if (mg.sign == 0) continue;
            out.add_term(mg.merged, ca * cb * Rational(mg.sign));
        }
    return out;
}

AlgForm InvariantBackend::contract(const VectorField& v, const Form& a) const {
    if (a.degree == 0) throw std::invalid_argument("contract: degree-0 form");
    if (static_cast<int>(v.size()) != h_->dim())
        throw std::invalid_argument("contract: field dimension mismatch");
    AlgForm out(h_->dim(), a.degree - 1);
    for (const auto& [s, c] : a.terms)
        for (size_t j = 0; j < s.size(); ++j) {
            if (v[s[j] - 1].is_zero()) continue;
            IndexSet rest;
            for (size_t q = 0; q < s.size(); ++q)
                if (q != j) rest.push_back(s[q]);
            int sign = (j % 2 == 0) ? 1 : -1;
            out.add_term(std::move(rest), c * v[s[j] - 1] * Rational(sign));
        }
    return out;
}

AlgForm InvariantBackend::lie_derivative(const VectorField& v, const Form& a) const {
    if (a.degree == 0) return contract(v, d(a));
    return d(contract(v, a)) + contract(v, d(a));
}

InvariantBackend::VectorField InvariantBackend::field_bracket(const VectorField& v,
                                                              const VectorField& w) const {
    return h_->bracket(v, w);
}

InvariantBackend::VectorField InvariantBackend::field_add(const VectorField& v,
                                                          const VectorField& w) const {
    VectorField out(h_->dim());
    for (int i = 0; i < h_->dim(); ++i) out[i] = v[i] + w[i];
    return out;
}

InvariantBackend::VectorField InvariantBackend::field_scale(const VectorField& v,
                                                            const Rational& s) const {
    VectorField out(h_->dim());
    for (int i = 0; i < h_->dim(); ++i) out[i] = v[i] * s;
    return out;
}

std::vector<InvariantBackend::VectorField> InvariantBackend::coordinate_fields() const {
    std::vector<VectorField> out;
    for (int i = 0; i < h_->dim(); ++i) {
        VectorField v(h_->dim());
        v[i] = Rational(1);
        out.push_back(std::move(v));
    }
    return out;
}

InvariantBackend::PotentialResult InvariantBackend::find_potential(const Form& a) const {
    if (a.degree < 1) throw std::invalid_argument("find_potential: degree must be >= 1");
    if (!d(a).is_zero()) throw std::invalid_argument("find_potential: input is not closed");
    const CochainSplit& sp = split(a.degree);
    CochainSplit::Coords c = sp.decompose(coords(a));
    for (const auto& r : c.rep)
        if (!r.is_zero()) return {std::nullopt, c.rep};
    // Exact: assemble the delta-preimage of the exact part.
    std::vector<Rational> pre(binomial(h_->dim(), a.degree - 1));
    for (size_t e = 0; e < c.exact.size(); ++e) {
        if (c.exact[e].is_zero()) continue;
        const auto& p = sp.exact_preimage(static_cast<int>(e));
        for (size_t t = 0; t < pre.size(); ++t) pre[t] += c.exact[e] * p[t];
    }
    return {from_coords(pre, a.degree - 1), {}};
}

std::map<IndexSet, Rational> InvariantBackend::evaluate_at(const Form& a, const Point&) const {
    return a.terms;
}

int InvariantBackend::de_rham_dim(int degree) const {
    if (degree < 0 || degree > h_->dim()) return 0;
    return split(degree).h_dim();
}

std::vector<AlgForm> InvariantBackend::de_rham_reps(int degree) const {
    std::vector<AlgForm> out;
    if (degree < 0 || degree > h_->dim()) return out;
    for (const CECochain& r : split(degree).representatives()) {
        AlgForm f(h_->dim(), degree);
        f.terms = r.coeff;
        out.push_back(std::move(f));
    }
    return out;
}

InvariantBackend::FormSplit InvariantBackend::split_form(const Form& a) const {
    const CochainSplit& sp = split(a.degree);
    CochainSplit::Coords c = sp.decompose(coords(a));
    FormSplit out;
    out.rep_coords = c.rep;
    const auto& reps = sp.representatives();
    AlgForm reppart(h_->dim(), a.degree);
    for (size_t s = 0; s < reps.size(); ++s) {
        if (c.rep[s].is_zero()) continue;
        AlgForm rf(h_->dim(), a.degree);
        rf.terms = reps[s].coeff;
        reppart += rf * c.rep[s];
    }
    AlgForm exact(h_->dim(), a.degree);
    for (size_t e = 0; e < c.exact.size(); ++e) {
        if (c.exact[e].is_zero()) continue;
        exact += d(from_coords(sp.exact_preimage(static_cast<int>(e)), a.degree - 1)) * c.exact[e];
    }
    out.exact = exact;
    out.rest = a - exact - reppart;
    return out;
}

std::vector<InvariantBackend::FormKey> InvariantBackend::form_basis(int degree, int) const {
    if (degree < 0 || degree > h_->dim()) return {};
    return index_subsets(h_->dim(), degree);
}

AlgForm InvariantBackend::basis_form(const FormKey& key, int degree) const {
    AlgForm f(h_->dim(), degree);
    f.add_term(key, Rational(1));
    return f;
}

}  // namespace plectic
