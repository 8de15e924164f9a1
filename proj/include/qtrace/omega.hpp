// Exact arithmetic in Z[w, w^-1], the coefficient ring of every other module.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <map>
#include <string>

namespace qtrace {

using Int = boost::multiprecision::cpp_int;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed user input: files, CLI arguments, link/surface validation.
struct InputError : Error {
    using Error::Error;
};

// Broken internal invariant. Reaching one of these is a bug.
struct ComputeError : Error {
    using Error::Error;
};

// Laurent polynomial in the formal unit w with integer coefficients.
// Canonical: no zero coefficients are stored, so operator== is map equality.
class OmegaPoly {
  public:
    OmegaPoly() = default;
    OmegaPoly(long c);
    explicit OmegaPoly(Int c);

    // c * w^k
    static OmegaPoly term(int k, Int c = 1);

    bool is_zero() const { return terms_.empty(); }
    // single term with coefficient +-1 (an invertible element of the ring)
    bool is_unit() const;
    const std::map<int, Int>& terms() const { return terms_; }

    OmegaPoly operator-() const;
    OmegaPoly& operator+=(const OmegaPoly& o);
    OmegaPoly& operator-=(const OmegaPoly& o);
    friend OmegaPoly operator+(OmegaPoly a, const OmegaPoly& b) { return a += b; }
    friend OmegaPoly operator-(OmegaPoly a, const OmegaPoly& b) { return a -= b; }
    friend OmegaPoly operator*(const OmegaPoly& a, const OmegaPoly& b);
    OmegaPoly& operator*=(const OmegaPoly& o) { return *this = *this * o; }
    bool operator==(const OmegaPoly&) const = default;

    OmegaPoly pow(unsigned k) const;
    // multiplicative inverse of a unit; throws ComputeError otherwise
    OmegaPoly unit_inverse() const;

    // evaluation at w = 1 (sum of coefficients)
    Int at_unity() const;
    // numeric evaluation; throws InputError on x == 0
    std::complex<double> eval(std::complex<double> x) const;

    // `c*w^k` terms in ascending exponent joined by ` + ` / ` - `; "0" when zero
    std::string str() const;
    static OmegaPoly parse(const std::string& text);

  private:
    std::map<int, Int> terms_;
};

inline OmegaPoly omega(int k = 1) { return OmegaPoly::term(k); }

// Kauffman bracket constants, all expressed through w:
//   A = w^-2,  alpha = -w^-5,  beta = w^-1.
inline OmegaPoly skein_A() { return OmegaPoly::term(-2); }
inline OmegaPoly skein_A_inv() { return OmegaPoly::term(2); }
inline OmegaPoly skein_alpha() { return OmegaPoly::term(-5, -1); }
inline OmegaPoly skein_beta() { return OmegaPoly::term(-1); }
// -A^2 - A^-2, the factor of a closed loop
inline OmegaPoly loop_factor() { return OmegaPoly::term(-4, -1) + OmegaPoly::term(4, -1); }
// -A^-3 and -A^3, the factors of a positive / negative kink
inline OmegaPoly kink_factor_pos() { return OmegaPoly::term(6, -1); }
inline OmegaPoly kink_factor_neg() { return OmegaPoly::term(-6, -1); }

}  // namespace qtrace
