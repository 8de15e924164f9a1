// Skew Laurent algebras over Z[w,w^-1]: generators Y_i with Y_i Y_j = w^{2 a_ij} Y_j Y_i,
// Weyl quantum ordering, and leading-term extraction.
#pragma once

#include "qtrace/omega.hpp"

#include <map>
#include <memory>
#include <utility>
#include <vector>

namespace qtrace {

class CommutationMatrix {
  public:
    explicit CommutationMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n, 0) {}

    int size() const { return n_; }
    int operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
    void set(int i, int j, int v);
    bool operator==(const CommutationMatrix&) const = default;

  private:
    int n_;
    std::vector<int> a_;
};

using ExpVec = std::vector<int>;

// A single term c * Z_1^{k_1} ... Z_n^{k_n}. The coefficient is relative to the
// normal order (ascending generator index). A zero coefficient encodes the zero term.
struct QTMonomial {
    OmegaPoly coeff;
    ExpVec exps;

    bool is_zero() const { return coeff.is_zero(); }
    int total_degree() const;
};

class QTElement {
  public:
    explicit QTElement(std::shared_ptr<const CommutationMatrix> comm) : comm_(std::move(comm)) {}

    static QTElement zero(std::shared_ptr<const CommutationMatrix> comm) { return QTElement(std::move(comm)); }
    static QTElement one(std::shared_ptr<const CommutationMatrix> comm);
    static QTElement from_monomial(std::shared_ptr<const CommutationMatrix> comm, const QTMonomial& m) {
        QTElement e(std::move(comm));
        e.add_term(m);
        return e;
    }

    const CommutationMatrix& comm() const { return *comm_; }
    std::shared_ptr<const CommutationMatrix> comm_ptr() const { return comm_; }
    const std::map<ExpVec, OmegaPoly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const QTMonomial& m);
    // c * Z^k with c the normal-order coefficient
    void add_term(const ExpVec& exps, const OmegaPoly& c);

    QTElement& operator+=(const QTElement& o);
    friend QTElement operator+(QTElement a, const QTElement& b) { return a += b; }
    friend QTElement operator*(const QTElement& a, const QTElement& b);
    QTElement operator*(const OmegaPoly& s) const;
    bool operator==(const QTElement& o) const;

    // coefficient of the Weyl basis monomial [Z^k]; zero polynomial if absent
    OmegaPoly weyl_coefficient(const ExpVec& k) const;

  private:
    std::shared_ptr<const CommutationMatrix> comm_;
    std::map<ExpVec, OmegaPoly> terms_;
};

// Normal-ordered product of two terms: exponents add, the coefficient picks up
// w^{2 sum_{i>j} x_i y_j a_ij} from commuting the right factor into place.
QTMonomial qt_mul(const QTMonomial& x, const QTMonomial& y, const CommutationMatrix& a);

// Weyl quantum ordering of an ordered factor list (generator, exponent):
// w^{-sum_{i<j} a(Y_i,Y_j)} times the product, expressed in normal order.
// Invariant under permutations of the factors.
QTMonomial weyl_order(const std::vector<std::pair<int, int>>& factors, const CommutationMatrix& a);

// The Weyl basis monomial [Z_1^{k_1} ... Z_n^{k_n}] as a normal-ordered term.
QTMonomial weyl_monomial(const ExpVec& k, const CommutationMatrix& a);

// w = 1: all generators commute, coefficients collapse to integers.
std::map<ExpVec, Int> specialize_commutative(const QTElement& x);

enum class TermOrder { DegreeThenLex, Lex };

// Maximal term of a nonzero element; throws ComputeError on zero input.
QTMonomial leading_term(const QTElement& x, TermOrder order = TermOrder::DegreeThenLex);

}  // namespace qtrace
