#include "plectic/euclidean.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace plectic {

PolyMap poly_mul(const PolyMap& a, const PolyMap& b) {
    PolyMap out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            Exponents e(ea.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            Rational c = ca * cb;
            auto [it, fresh] = out.try_emplace(std::move(e), c);
            if (!fresh) it->second += c;
        }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

void poly_add_scaled(PolyMap& dst, const PolyMap& src, const Rational& s) {
    if (s.is_zero()) return;
    for (const auto& [e, c] : src) {
        auto [it, fresh] = dst.try_emplace(e, c * s);
        if (!fresh) {
            it->second += c * s;
            if (it->second.is_zero()) dst.erase(it);
        }
    }
}

PolyMap poly_diff(const PolyMap& p, int var) {
    PolyMap out;
    for (const auto& [e, c] : p) {
        if (e[var - 1] == 0) continue;
        Exponents d = e;
        --d[var - 1];
        out[std::move(d)] = c * Rational(e[var - 1]);
    }
    return out;
}

Rational poly_eval(const PolyMap& p, const std::vector<Rational>& pt) {
    Rational out;
    for (const auto& [e, c] : p) {
        if (e.size() != pt.size()) throw std::invalid_argument("poly_eval: dimension mismatch");
        Rational t = c;
        for (size_t i = 0; i < e.size(); ++i)
            for (int a = 0; a < e[i]; ++a) t *= pt[i];
        out += t;
    }
    return out;
}

PolyMap poly_shift(const PolyMap& p, const std::vector<Rational>& offset) {
    PolyMap out;
    for (const auto& [e, c] : p) {
        // Expand prod_i (x_i + b_i)^{e_i} binomially.
        PolyMap term{{Exponents(e.size(), 0), c}};
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            PolyMap lin;
            Exponents unit(e.size(), 0);
            unit[i] = 1;
            lin[unit] = Rational(1);
            if (!offset[i].is_zero()) lin[Exponents(e.size(), 0)] = offset[i];
            for (int a = 0; a < e[i]; ++a) term = poly_mul(term, lin);
        }
        for (const auto& [te, tc] : term) poly_add_scaled(out, {{te, tc}}, Rational(1));
    }
    return out;
}

int poly_total_degree(const PolyMap& p) {
    int deg = -1;
    for (const auto& [e, c] : p)
        deg = std::max(deg, std::accumulate(e.begin(), e.end(), 0));
    return deg;
}

void PolyForm::add_term(IndexSet indices, Exponents exponents, const Rational& c) {
    if (c.is_zero()) return;
    if (static_cast<int>(indices.size()) != degree)
        throw std::invalid_argument("PolyForm::add_term: index count != degree");
    if (!within_dimension(indices, ambient) || static_cast<int>(exponents.size()) != ambient)
        throw std::invalid_argument("PolyForm::add_term: term outside ambient space");
    PolyFormKey key{std::move(indices), std::move(exponents)};
    auto [it, fresh] = terms.try_emplace(std::move(key), c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

int PolyForm::coefficient_degree() const {
    int deg = -1;
    for (const auto& [k, c] : terms)
        deg = std::max(deg, std::accumulate(k.exponents.begin(), k.exponents.end(), 0));
    return deg;
}

PolyForm& PolyForm::operator+=(const PolyForm& o) {
    if (o.is_zero()) return *this;
    if (is_zero() && terms.empty()) {
        ambient = o.ambient;
        degree = o.degree;
    }
    if (ambient != o.ambient || degree != o.degree)
        throw std::invalid_argument("PolyForm: adding forms of different shape");
    for (const auto& [k, c] : o.terms) {
        auto [it, fresh] = terms.try_emplace(k, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }
    return *this;
}

PolyForm& PolyForm::operator-=(const PolyForm& o) { return *this += o * Rational(-1); }

PolyForm PolyForm::operator*(const Rational& s) const {
    PolyForm out(ambient, degree);
    if (s.is_zero()) return out;
    for (const auto& [k, c] : terms) out.terms.emplace(k, c * s);
    return out;
}

bool PolyForm::operator==(const PolyForm& o) const {
    if (is_zero() && o.is_zero()) return true;
    return ambient == o.ambient && degree == o.degree && terms == o.terms;
}

bool PolyVectorField::is_zero() const {
    for (const auto& p : component)
        if (!p.empty()) return false;
    return true;
}

EuclideanBackend::EuclideanBackend(int ambient, Point base_point)
    : m_(ambient), base_(std::move(base_point)) {
    if (m_ <= 0) throw std::invalid_argument("EuclideanBackend: ambient dim must be positive");
    if (base_.empty()) base_.assign(m_, Rational(0));
    if (static_cast<int>(base_.size()) != m_)
        throw std::invalid_argument("EuclideanBackend: base point dimension mismatch");
    centred_ = true;
    for (const auto& c : base_)
        if (!c.is_zero()) centred_ = false;
}

std::string EuclideanBackend::describe() const {
    std::ostringstream os;
    os << "euclidean R^" << m_ << ", base point (";
    for (int i = 0; i < m_; ++i) os << (i ? "," : "") << base_[i].str();
    os << ")";
    return os.str();
}

PolyForm EuclideanBackend::constant_form(const Rational& c) const {
    PolyForm f(m_, 0);
    f.add_term({}, Exponents(m_, 0), c);
    return f;
}

PolyForm EuclideanBackend::d(const Form& a) const {
    PolyForm out(m_, a.degree + 1);
    if (a.degree + 1 > m_) return out;
    for (const auto& [k, c] : a.terms)
        for (int i = 1; i <= m_; ++i) {
            if (k.exponents[i - 1] == 0) continue;
            WedgeMerge ins = insert_index(i, k.indices);
            if (ins.sign == 0) continue;
            Exponents e = k.exponents;
            --e[i - 1];
            out.add_term(ins.merged, std::move(e),
                         c * Rational(k.exponents[i - 1] * ins.sign));
        }
    return out;
}

PolyForm EuclideanBackend::wedge(const Form& a, const Form& b) const {
    int deg = std::min(a.degree + b.degree, m_);
    PolyForm out(m_, deg);
    if (a.degree + b.degree > m_) return out;  // clamped zero form
    for (const auto& [ka, ca] : a.terms)
        for (const auto& [kb, cb] : b.terms) {
            WedgeMerge mg = wedge_merge(ka.indices, kb.indices);
            if (mg.sign == 0) continue;
            Exponents e(m_);
            for (int i = 0; i < m_; ++i) e[i] = ka.exponents[i] + kb.exponents[i];
            out.add_term(mg.merged, std::move(e), ca * cb * Rational(mg.sign));
        }
    return out;
}

PolyForm EuclideanBackend::contract(const VectorField& v, const Form& a) const {
    if (a.degree == 0) throw std::invalid_argument("contract: degree-0 form");
    if (v.ambient != m_) throw std::invalid_argument("contract: field dimension mismatch");
    PolyForm out(m_, a.degree - 1);
    for (const auto& [k, c] : a.terms)
        for (size_t j = 0; j < k.indices.size(); ++j) {
            const PolyMap& comp = v.component[k.indices[j] - 1];
            if (comp.empty()) continue;
            IndexSet rest;
            for (size_t q = 0; q < k.indices.size(); ++q)
                if (q != j) rest.push_back(k.indices[q]);
            int sign = (j % 2 == 0) ? 1 : -1;
            for (const auto& [e, cc] : comp) {
                Exponents sum(m_);
                for (int i = 0; i < m_; ++i) sum[i] = e[i] + k.exponents[i];
                out.add_term(rest, std::move(sum), c * cc * Rational(sign));
            }
        }
    return out;
}

PolyForm EuclideanBackend::lie_derivative(const VectorField& v, const Form& a) const {
    if (a.degree == 0) return contract(v, d(a));
    return d(contract(v, a)) + contract(v, d(a));
}

PolyVectorField EuclideanBackend::field_bracket(const VectorField& v, const VectorField& w) const {
    PolyVectorField out(m_);
    for (int i = 0; i < m_; ++i) {
        PolyMap acc;
        for (int j = 1; j <= m_; ++j) {
            poly_add_scaled(acc, poly_mul(v.component[j - 1], poly_diff(w.component[i], j)),
                            Rational(1));
            poly_add_scaled(acc, poly_mul(w.component[j - 1], poly_diff(v.component[i], j)),
                            Rational(-1));
        }
        out.component[i] = std::move(acc);
    }
    return out;
}

PolyVectorField EuclideanBackend::field_add(const VectorField& v, const VectorField& w) const {
    PolyVectorField out = v;
    for (int i = 0; i < m_; ++i) poly_add_scaled(out.component[i], w.component[i], Rational(1));
    return out;
}

PolyVectorField EuclideanBackend::field_scale(const VectorField& v, const Rational& s) const {
    PolyVectorField out(m_);
    for (int i = 0; i < m_; ++i) poly_add_scaled(out.component[i], v.component[i], s);
    return out;
}

std::vector<PolyVectorField> EuclideanBackend::coordinate_fields() const {
    std::vector<PolyVectorField> out;
    for (int i = 0; i < m_; ++i) {
        PolyVectorField v(m_);
        v.component[i][Exponents(m_, 0)] = Rational(1);
        out.push_back(std::move(v));
    }
    return out;
}

PolyForm EuclideanBackend::homotopy_origin(const Form& a) const {
    // K(x^alpha dx_{i_1..i_k}) = 1/(|alpha|+k) sum_j (-1)^{j-1} x_{i_j} x^alpha dx_{..^j..}
    PolyForm out(m_, a.degree - 1);
    for (const auto& [k, c] : a.terms) {
        int weight = std::accumulate(k.exponents.begin(), k.exponents.end(), 0) +
                     static_cast<int>(k.indices.size());
        Rational scale = c / Rational(weight);
        for (size_t j = 0; j < k.indices.size(); ++j) {
            IndexSet rest;
            for (size_t q = 0; q < k.indices.size(); ++q)
                if (q != j) rest.push_back(k.indices[q]);
            Exponents e = k.exponents;
            ++e[k.indices[j] - 1];
            int sign = (j % 2 == 0) ? 1 : -1;
            out.add_term(std::move(rest), std::move(e), scale * Rational(sign));
        }
    }
    return out;
}

PolyForm EuclideanBackend::shift(const Form& a, const Point& offset) const {
    PolyForm out(m_, a.degree);
    for (const auto& [k, c] : a.terms)
        for (const auto& [e, cc] : poly_shift({{k.exponents, c}}, offset))
            out.add_term(k.indices, e, cc);
    return out;
}

PolyForm EuclideanBackend::homotopy_potential(const Form& a) const {
    if (a.degree < 1) throw std::invalid_argument("homotopy_potential: degree must be >= 1");
    if (centred_) return homotopy_origin(a);
    Point neg(m_);
    for (int i = 0; i < m_; ++i) neg[i] = -base_[i];
    return shift(homotopy_origin(shift(a, base_)), neg);
}

EuclideanBackend::PotentialResult EuclideanBackend::find_potential(const Form& a) const {
    if (a.degree < 1) throw std::invalid_argument("find_potential: degree must be >= 1");
    if (!d(a).is_zero()) throw std::invalid_argument("find_potential: input is not closed");
    return {homotopy_potential(a), {}};
}

std::map<IndexSet, Rational> EuclideanBackend::evaluate_at(const Form& a, const Point& p) const {
    if (static_cast<int>(p.size()) != m_)
        throw std::invalid_argument("evaluate_at: point dimension mismatch");
    std::map<IndexSet, Rational> out;
    for (const auto& [k, c] : a.terms) {
        Rational v = poly_eval({{k.exponents, c}}, p);
        if (v.is_zero()) continue;
        auto [it, fresh] = out.try_emplace(k.indices, v);
        if (!fresh) {
            it->second += v;
            if (it->second.is_zero()) out.erase(it);
        }
    }
    return out;
}

std::vector<PolyForm> EuclideanBackend::de_rham_reps(int degree) const {
    if (degree == 0) return {constant_form(Rational(1))};
    return {};
}

EuclideanBackend::FormSplit EuclideanBackend::split_form(const Form& a) const {
    FormSplit out;
    if (a.degree == 0) {
        Rational v;
        for (const auto& [k, c] : a.terms) v += poly_eval({{k.exponents, c}}, base_);
        out.exact = zero_form(0);
        out.rep_coords = {v};
        out.rest = a - constant_form(v);
        return out;
    }
    out.exact = d(homotopy_potential(a));
    Form da = d(a);
    out.rest = da.is_zero() ? zero_form(a.degree) : homotopy_potential(da);
    return out;
}

std::vector<EuclideanBackend::FormKey> EuclideanBackend::form_basis(int degree,
                                                                    int max_coeff_degree) const {
    std::vector<FormKey> out;
    if (degree < 0 || degree > m_) return out;
    std::vector<Exponents> exps;
    Exponents cur(m_, 0);
    // All exponent vectors with total degree <= bound, lexicographic.
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == m_) {
            exps.push_back(cur);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            cur[pos] = e;
            self(self, pos + 1, left - e);
        }
        cur[pos] = 0;
    };
    rec(rec, 0, std::max(max_coeff_degree, 0));
    for (const IndexSet& s : index_subsets(m_, degree))
        for (const Exponents& e : exps) out.push_back({s, e});
    return out;
}

PolyForm EuclideanBackend::basis_form(const FormKey& key, int degree) const {
    PolyForm f(m_, degree);
    f.add_term(key.indices, key.exponents, Rational(1));
    return f;
}

int EuclideanBackend::stratum(const FormKey& key) {
    return std::accumulate(key.exponents.begin(), key.exponents.end(), 0) +
           static_cast<int>(key.indices.size());
}

}  // namespace plectic
