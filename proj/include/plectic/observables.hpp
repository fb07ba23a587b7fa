#pragma once

#include "plectic/cartan.hpp"
#include "plectic/combinatorics.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace plectic {

// Homogeneous element of the observable algebra. Degree 0 carries a pair
// (vector field, form of degree n-1) with d(alpha) = -iota_v omega; negative
// degrees carry a single form of degree n-1+degree. Out-of-range degrees are
// only ever inhabited by zero (they appear as bracket targets).
template <CartanBackend B>
struct Observable {
    int degree = 0;
    typename B::VectorField v{};
    typename B::Form alpha{};
};

template <CartanBackend B>
bool is_zero(const Observable<B>& x) {
    return is_zero(x.v) && x.alpha.is_zero();
}

template <CartanBackend B>
class ObservableAlgebra {
public:
    using Form = typename B::Form;
    using VectorField = typename B::VectorField;

    ObservableAlgebra(const B& backend, Form omega)
        : b_(&backend), omega_(std::move(omega)), n_(omega_.degree - 1) {
        if (n_ < 1) throw std::invalid_argument("ObservableAlgebra: omega degree must be >= 2");
        if (!backend.d(omega_).is_zero())
            throw std::invalid_argument("ObservableAlgebra: omega is not closed");
    }

    const B& backend() const { return *b_; }
    const Form& omega() const { return omega_; }
    int n() const { return n_; }

    struct PairCheck {
        bool ok = false;
        Form residual;  // d(alpha) + iota_v omega
    };
    PairCheck check_pair(const VectorField& v, const Form& alpha) const {
        Form res = b_->d(alpha) + b_->contract(v, omega_);
        return {res.is_zero(), std::move(res)};
    }

    Observable<B> observable(const VectorField& v, const Form& alpha) const {
        if (alpha.degree != n_ - 1)
            throw std::invalid_argument("observable: form degree must be n-1");
        PairCheck c = check_pair(v, alpha);
        if (!c.ok) throw std::invalid_argument("observable: d(alpha) != -iota_v omega");
        return {0, v, alpha};
    }

    // Element of negative degree i: a plain form of degree n-1+i.
    Observable<B> element(int degree, const Form& alpha) const {
        if (degree >= 0 || degree < -n_ + 1)
            throw std::invalid_argument("element: degree out of range");
        if (!alpha.is_zero() && alpha.degree != n_ - 1 + degree)
            throw std::invalid_argument("element: form degree inconsistent with element degree");
        return {degree, b_->zero_field(), alpha};
    }

    Observable<B> zero(int degree) const {
        return {degree, b_->zero_field(), b_->zero_form(std::max(n_ - 1 + degree, 0))};
    }

    Observable<B> add(const Observable<B>& x, const Observable<B>& y) const {
        if (is_zero(x)) return y;
        if (is_zero(y)) return x;
        if (x.degree != y.degree)
            throw std::invalid_argument("Observable: adding different degrees");
        return {x.degree, b_->field_add(x.v, y.v), x.alpha + y.alpha};
    }

    Observable<B> scale(const Observable<B>& x, const Rational& s) const {
        return {x.degree, b_->field_scale(x.v, s), x.alpha * s};
    }

    // Unary bracket: d on forms, the degree -1 case lands in the pair space.
    Observable<B> l1(const Observable<B>& x) const {
        if (x.degree == 0) return zero(1);
        if (x.degree == -1) return {0, b_->zero_field(), b_->d(x.alpha)};
        return {x.degree + 1, b_->zero_field(), b_->d(x.alpha)};
    }

    Observable<B> l2(const Observable<B>& x, const Observable<B>& y) const {
        Observable<B> out = l2_raw(x, y);
        PairCheck c = check_pair(out.v, out.alpha);
        if (!c.ok) throw std::logic_error("l2: output violates the pairing condition");
        return out;
    }

    // k-ary bracket for k >= 3 on degree-0 observables:
    // -(-1)^{k(k+1)/2} iota_{v_k}...iota_{v_1} omega, landing in degree 2-k.
    Form lk_form(const std::vector<Observable<B>>& xs) const {
        const int k = static_cast<int>(xs.size());
        if (k < 3 || k > n_ + 1) throw std::invalid_argument("lk: arity out of range");
        Form f = omega_;
        for (const auto& x : xs) {
            if (x.degree != 0) throw std::invalid_argument("lk: arguments must have degree 0");
            f = b_->contract(x.v, f);
        }
        return f * Rational(bracket_sign(k));
    }

    static int bracket_sign(int k) { return ((k * (k + 1) / 2) % 2 == 0) ? -1 : 1; }

    struct ResidualInfo {
        Observable<B> residual;
        bool arity_beyond_range = false;  // arity > n+2: structurally zero
    };

    // Left side of the multibracket identity at the given tuple; zero for an
    // actual L-infinity structure.
    ResidualInfo identity_residual(const std::vector<Observable<B>>& xs) const {
        const int arity = static_cast<int>(xs.size());
        if (arity < 1) throw std::invalid_argument("identity_residual: empty tuple");
        std::vector<int> degrees;
        degrees.reserve(xs.size());
        int degree_sum = 0;
        for (const auto& x : xs) {
            degrees.push_back(x.degree);
            degree_sum += x.degree;
        }
        ResidualInfo out;
        out.residual = zero(degree_sum + 3 - arity);
        if (arity > n_ + 2) {
            out.arity_beyond_range = true;
            return out;
        }
        for (int i = 1; i <= arity; ++i) {
            const int j = arity + 1 - i;
            const int outer = ((i * (j + 1)) % 2 == 0) ? 1 : -1;
            for (const auto& sigma : unshuffles(i, arity - i)) {
                int s = outer * permutation_sign(sigma) * koszul_sign_sources(sigma, degrees);
                std::vector<Observable<B>> head;
                head.reserve(i);
                for (int t = 0; t < i; ++t) head.push_back(xs[sigma[t] - 1]);
                Observable<B> inner = bracket(head);
                if (is_zero(inner)) continue;
                std::vector<Observable<B>> args;
                args.reserve(j);
                args.push_back(std::move(inner));
                for (int t = i; t < arity; ++t) args.push_back(xs[sigma[t] - 1]);
                Observable<B> term = bracket(args);
                if (is_zero(term)) continue;
                out.residual = add(out.residual, scale(term, Rational(s)));
            }
        }
        return out;
    }

    // Dispatch for any arity; mixed-degree tuples of arity > 1 vanish (the
    // algebra is concentrated: higher brackets live on degree 0 only).
    Observable<B> bracket(const std::vector<Observable<B>>& xs) const {
        const int k = static_cast<int>(xs.size());
        if (k == 0) throw std::invalid_argument("bracket: empty tuple");
        if (k == 1) return l1(xs[0]);
        for (const auto& x : xs)
            if (x.degree != 0) return zero(degree_of_bracket(xs, k));
        for (const auto& x : xs)
            if (is_zero(x)) return zero(degree_of_bracket(xs, k));
        if (k == 2) return l2_raw(xs[0], xs[1]);
        if (k > n_ + 1) return zero(2 - k);
        return {2 - k, b_->zero_field(), lk_form(xs)};
    }

private:
    Observable<B> l2_raw(const Observable<B>& x, const Observable<B>& y) const {
        if (x.degree != 0 || y.degree != 0)
            throw std::invalid_argument("l2: both arguments must have degree 0");
        Form a = b_->contract(y.v, b_->contract(x.v, omega_));
        return {0, b_->field_bracket(x.v, y.v), std::move(a)};
    }

    static int degree_of_bracket(const std::vector<Observable<B>>& xs, int k) {
        int sum = 0;
        for (const auto& x : xs) sum += x.degree;
        return sum + 2 - k;
    }

    const B* b_;
    Form omega_;
    int n_;
};

}  // namespace plectic
