#include "plectic/rational.hpp"

#include <ostream>

namespace plectic {

Rational Rational::parse(std::string_view s) {
    auto trim = [](std::string_view v) {
        while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
        while (!v.empty() && (v.back() == ' ' || v.back() == '\t')) v.remove_suffix(1);
        return v;
    };
    s = trim(s);
    if (s.empty()) throw std::invalid_argument("Rational::parse: empty string");
    std::string num, den = "1";
    auto slash = s.find('/');
    if (slash == std::string_view::npos) {
        num = std::string(s);
    } else {
        num = std::string(trim(s.substr(0, slash)));
        den = std::string(trim(s.substr(slash + 1)));
    }
    auto integer_like = [](const std::string& t) {
        if (t.empty()) return false;
        size_t i = (t[0] == '-') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    if (!integer_like(num) || !integer_like(den))
        throw std::invalid_argument("Rational::parse: bad rational literal '" + std::string(s) + "'");
    mpq_class v{mpz_class(num), mpz_class(den)};
    if (v.get_den() == 0) throw std::invalid_argument("Rational::parse: zero denominator");
    v.canonicalize();
    Rational r;
    r.v_ = v;
    return r;
}

std::string Rational::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace plectic
