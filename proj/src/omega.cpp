#include "qtrace/omega.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace qtrace {

OmegaPoly::OmegaPoly(long c) {
    if (c != 0) terms_[0] = c;
}

OmegaPoly::OmegaPoly(Int c) {
    if (c != 0) terms_[0] = std::move(c);
}

OmegaPoly OmegaPoly::term(int k, Int c) {
    OmegaPoly p;
    if (c != 0) p.terms_[k] = std::move(c);
    return p;
}

bool OmegaPoly::is_unit() const {
    if (terms_.size() != 1) return false;
    const Int& c = terms_.begin()->second;
    return c == 1 || c == -1;
}

OmegaPoly OmegaPoly::operator-() const {
    OmegaPoly r;
    for (const auto& [k, c] : terms_) r.terms_[k] = -c;
    return r;
}

OmegaPoly& OmegaPoly::operator+=(const OmegaPoly& o) {
    for (const auto& [k, c] : o.terms_) {
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    return *this;
}

OmegaPoly& OmegaPoly::operator-=(const OmegaPoly& o) { return *this += -o; }

OmegaPoly operator*(const OmegaPoly& a, const OmegaPoly& b) {
    OmegaPoly r;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) {
            Int& c = r.terms_[ka + kb];
            c += ca * cb;
        }
    for (auto it = r.terms_.begin(); it != r.terms_.end();)
        it = (it->second == 0) ? r.terms_.erase(it) : std::next(it);
    return r;
}

OmegaPoly OmegaPoly::pow(unsigned k) const {
    OmegaPoly r(1), base = *this;
    while (k) {
        if (k & 1u) r *= base;
        base *= base;
        k >>= 1u;
    }
    return r;
}

OmegaPoly OmegaPoly::unit_inverse() const {
    if (!is_unit()) throw ComputeError("inexact division: " + str() + " is not a unit");
    auto [k, c] = *terms_.begin();
    return term(-k, c);
}

Int OmegaPoly::at_unity() const {
    Int s = 0;
    for (const auto& [k, c] : terms_) s += c;
    return s;
}

std::complex<double> OmegaPoly::eval(std::complex<double> x) const {
    if (x == std::complex<double>(0.0, 0.0)) throw InputError("cannot evaluate at w = 0");
    std::complex<double> s = 0.0;
    for (const auto& [k, c] : terms_) s += static_cast<double>(c) * std::pow(x, k);
    return s;
}

std::string OmegaPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        Int a = c < 0 ? Int(-c) : c;
        os << a << "*w^" << k;
    }
    return os.str();
}

namespace {

[[noreturn]] void bad_poly(const std::string& text) {
    throw InputError("malformed omega polynomial: '" + text + "'");
}

}  // namespace

OmegaPoly OmegaPoly::parse(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) bad_poly(text);
    if (s == "0") return OmegaPoly();

    OmegaPoly r;
    size_t i = 0;
    bool first = true;
    while (i < s.size()) {
        int sign = 1;
        if (!first) {
            if (s[i] == '+') sign = 1;
            else if (s[i] == '-') sign = -1;
            else bad_poly(text);
            ++i;
        } else if (s[i] == '-') {
            sign = -1;
            ++i;
        }
        first = false;
        size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i) bad_poly(text);
        Int coeff(s.substr(i, j - i));
        i = j;
        if (i + 2 >= s.size() || s.compare(i, 3, "*w^") != 0) bad_poly(text);
        i += 3;
        j = i;
        if (j < s.size() && s[j] == '-') ++j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i) bad_poly(text);
        int k = std::stoi(s.substr(i, j - i));
        i = j;
        r += term(k, sign * coeff);
    }
    return r;
}

}  // namespace qtrace
