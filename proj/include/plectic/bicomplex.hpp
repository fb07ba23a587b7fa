#pragma once

#include "plectic/cartan.hpp"
#include "plectic/lie_algebra.hpp"

#include <map>
#include <stdexcept>

namespace plectic {

// Element of Lambda^i g* tensor Omega^j: alternating map from i-tuples of
// generators to backend forms of a fixed degree j.
template <CartanBackend B>
struct Bigraded {
    int gdeg = 0;
    int fdeg = 0;
    std::map<IndexSet, typename B::Form> coeff;

    bool is_zero() const {
        for (const auto& [s, f] : coeff)
            if (!f.is_zero()) return false;
        return true;
    }

    typename B::Form value(const B& b, const IndexSet& s) const {
        auto it = coeff.find(s);
        return it == coeff.end() ? b.zero_form(fdeg) : it->second;
    }

    void add_value(const IndexSet& s, const typename B::Form& f) {
        if (f.is_zero()) return;
        auto [it, fresh] = coeff.try_emplace(s, f);
        if (!fresh) {
            it->second += f;
            if (it->second.is_zero()) coeff.erase(it);
        }
    }

    Bigraded& operator+=(const Bigraded& o) {
        if (o.is_zero()) return *this;
        if (is_zero() && coeff.empty()) {
            gdeg = o.gdeg;
            fdeg = o.fdeg;
        }
        if (gdeg != o.gdeg || fdeg != o.fdeg)
            throw std::invalid_argument("Bigraded: adding different bidegrees");
        for (const auto& [s, f] : o.coeff) add_value(s, f);
        return *this;
    }
    Bigraded& operator-=(const Bigraded& o) { return *this += o * Rational(-1); }
    friend Bigraded operator+(Bigraded a, const Bigraded& b) { return a += b; }
    friend Bigraded operator-(Bigraded a, const Bigraded& b) { return a -= b; }
    Bigraded operator*(const Rational& s) const {
        Bigraded out{gdeg, fdeg, {}};
        if (s.is_zero()) return out;
        for (const auto& [k, f] : coeff) out.coeff.emplace(k, f * s);
        return out;
    }
    bool operator==(const Bigraded& o) const { return (*this - o).is_zero(); }
};

// Element of the total complex C^k = sum over i+j=k, keyed by the Lie degree.
template <CartanBackend B>
struct TotalElement {
    int degree = 0;
    std::map<int, Bigraded<B>> comp;

    bool is_zero() const {
        for (const auto& [i, x] : comp)
            if (!x.is_zero()) return false;
        return true;
    }

    const Bigraded<B>* component(int gdeg) const {
        auto it = comp.find(gdeg);
        return it == comp.end() ? nullptr : &it->second;
    }

    void add_component(Bigraded<B> x) {
        if (x.is_zero()) return;
        if (x.gdeg + x.fdeg != degree)
            throw std::invalid_argument("TotalElement: component of wrong total degree");
        auto it = comp.find(x.gdeg);
        if (it == comp.end())
            comp.emplace(x.gdeg, std::move(x));
        else {
            it->second += x;
            if (it->second.is_zero()) comp.erase(it);
        }
    }

    TotalElement& operator+=(const TotalElement& o) {
        if (o.is_zero()) return *this;
        if (is_zero() && comp.empty()) degree = o.degree;
        if (degree != o.degree)
            throw std::invalid_argument("TotalElement: adding different degrees");
        for (const auto& [i, x] : o.comp) add_component(x);
        return *this;
    }
    TotalElement& operator-=(const TotalElement& o) { return *this += o * Rational(-1); }
    friend TotalElement operator+(TotalElement a, const TotalElement& b) { return a += b; }
    friend TotalElement operator-(TotalElement a, const TotalElement& b) { return a -= b; }
    TotalElement operator*(const Rational& s) const {
        TotalElement out;
        out.degree = degree;
        if (s.is_zero()) return out;
        for (const auto& [i, x] : comp) {
            Bigraded<B> sx = x * s;
            if (!sx.is_zero()) out.comp.emplace(i, std::move(sx));
        }
        return out;
    }
};

// (delta tensor id) on a bigraded element.
template <CartanBackend B>
Bigraded<B> ce_delta_bigraded(const LieAlgebra& g, const Bigraded<B>& x) {
    Bigraded<B> out{x.gdeg + 1, x.fdeg, {}};
    out.coeff = ce_delta(g, x.coeff, x.gdeg);
    return out;
}

// (id tensor d) on a bigraded element.
template <CartanBackend B>
Bigraded<B> d_bigraded(const B& b, const Bigraded<B>& x) {
    Bigraded<B> out{x.gdeg, x.fdeg + 1, {}};
    for (const auto& [s, f] : x.coeff) out.add_value(s, b.d(f));
    return out;
}

// Total differential, with the sign that squares to zero:
//   D on Lambda^i tensor Omega^j = (delta tensor id) + (-1)^n (-1)^{i+j} (id tensor d).
template <CartanBackend B>
TotalElement<B> total_differential(const LieAlgebra& g, const B& b, int n,
                                   const TotalElement<B>& x) {
    TotalElement<B> out;
    out.degree = x.degree + 1;
    for (const auto& [i, comp] : x.comp) {
        if (comp.gdeg < g.dim()) out.add_component(ce_delta_bigraded(g, comp));
        if (comp.fdeg < b.top_degree()) {
            int sign = ((n + comp.gdeg + comp.fdeg) % 2 == 0) ? 1 : -1;
            out.add_component(d_bigraded(b, comp) * Rational(sign));
        }
    }
    return out;
}

// Pairing of Lambda^n g* tensor Omega^j with a chain in Lambda^n g.
template <CartanBackend B>
typename B::Form pair_with_chain(const B& b, const Bigraded<B>& x, const CEChain& p) {
    typename B::Form out = b.zero_form(x.fdeg);
    if (p.degree != x.gdeg) throw std::invalid_argument("pair_with_chain: degree mismatch");
    for (const auto& [s, c] : p.coeff) {
        auto it = x.coeff.find(s);
        if (it != x.coeff.end()) out += it->second * c;
    }
    return out;
}

}  // namespace plectic
