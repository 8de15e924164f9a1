#include "qtrace/quantum_torus.hpp"

#include <algorithm>
#include <numeric>

namespace qtrace {

void CommutationMatrix::set(int i, int j, int v) {
    if (i == j) throw ComputeError("commutation matrix: diagonal entries must stay zero");
    a_[static_cast<size_t>(i) * n_ + j] = v;
    a_[static_cast<size_t>(j) * n_ + i] = -v;
}

int QTMonomial::total_degree() const {
    return std::accumulate(exps.begin(), exps.end(), 0);
}

QTElement QTElement::one(std::shared_ptr<const CommutationMatrix> comm) {
    QTElement e(std::move(comm));
    e.add_term(ExpVec(e.comm().size(), 0), OmegaPoly(1));
    return e;
}

void QTElement::add_term(const QTMonomial& m) { add_term(m.exps, m.coeff); }

void QTElement::add_term(const ExpVec& exps, const OmegaPoly& c) {
    if (c.is_zero()) return;
    if (static_cast<int>(exps.size()) != comm_->size())
        throw ComputeError("exponent vector length does not match generator count");
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
        terms_.emplace(exps, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

QTElement& QTElement::operator+=(const QTElement& o) {
    if (!(*comm_ == *o.comm_)) throw ComputeError("adding elements of different quantum tori");
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

QTElement operator*(const QTElement& a, const QTElement& b) {
    if (!(*a.comm_ == *b.comm_)) throw ComputeError("multiplying elements of different quantum tori");
    QTElement r(a.comm_);
    for (const auto& [kx, cx] : a.terms_)
        for (const auto& [ky, cy] : b.terms_) {
            QTMonomial m = qt_mul({cx, kx}, {cy, ky}, *a.comm_);
            r.add_term(m);
        }
    return r;
}

QTElement QTElement::operator*(const OmegaPoly& s) const {
    QTElement r(comm_);
    for (const auto& [k, c] : terms_) r.add_term(k, c * s);
    return r;
}

bool QTElement::operator==(const QTElement& o) const {
    return *comm_ == *o.comm_ && terms_ == o.terms_;
}

OmegaPoly QTElement::weyl_coefficient(const ExpVec& k) const {
    auto it = terms_.find(k);
    if (it == terms_.end()) return OmegaPoly();
    // c * Z^k = c * w^{+s} [Z^k] where [Z^k] = w^{-s} Z^k
    int s = 0;
    const int n = comm_->size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) s += k[i] * k[j] * (*comm_)(i, j);
    return it->second * OmegaPoly::term(s);
}

QTMonomial qt_mul(const QTMonomial& x, const QTMonomial& y, const CommutationMatrix& a) {
    if (x.is_zero() || y.is_zero()) return {OmegaPoly(), ExpVec(a.size(), 0)};
    const int n = a.size();
    long twist = 0;
    for (int i = 0; i < n; ++i) {
        if (x.exps[i] == 0) continue;
        for (int j = 0; j < i; ++j)
            twist += 2L * x.exps[i] * y.exps[j] * a(i, j);
    }
    QTMonomial r;
    r.exps.resize(n);
    for (int i = 0; i < n; ++i) r.exps[i] = x.exps[i] + y.exps[i];
    r.coeff = x.coeff * y.coeff * OmegaPoly::term(static_cast<int>(twist));
    return r;
}

QTMonomial weyl_order(const std::vector<std::pair<int, int>>& factors, const CommutationMatrix& a) {
    const int n = a.size();
    long t = 0;
    for (size_t i = 0; i < factors.size(); ++i)
        for (size_t j = i + 1; j < factors.size(); ++j)
            t -= static_cast<long>(factors[i].second) * factors[j].second *
                 a(factors[i].first, factors[j].first);
    // normal-order the written product, accumulating commutation twists
    ExpVec exps(n, 0);
    for (const auto& [g, e] : factors) {
        for (int h = g + 1; h < n; ++h)
            if (exps[h] != 0) t += 2L * exps[h] * e * a(h, g);
        exps[g] += e;
    }
    return {OmegaPoly::term(static_cast<int>(t)), exps};
}

QTMonomial weyl_monomial(const ExpVec& k, const CommutationMatrix& a) {
    int s = 0;
    const int n = a.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) s += k[i] * k[j] * a(i, j);
    return {OmegaPoly::term(-s), k};
}

std::map<ExpVec, Int> specialize_commutative(const QTElement& x) {
    std::map<ExpVec, Int> r;
    for (const auto& [k, c] : x.terms()) {
        Int v = c.at_unity();
        if (v == 0) continue;
        Int& acc = r[k];
        acc += v;
        if (acc == 0) r.erase(k);
    }
    return r;
}

namespace {

bool order_less(const ExpVec& a, const ExpVec& b, TermOrder order) {
    if (order == TermOrder::DegreeThenLex) {
        int da = std::accumulate(a.begin(), a.end(), 0);
        int db = std::accumulate(b.begin(), b.end(), 0);
        if (da != db) return da < db;
    }
    return a < b;
}

}  // namespace

QTMonomial leading_term(const QTElement& x, TermOrder order) {
    if (x.is_zero()) throw ComputeError("leading term of the zero element");
    const ExpVec* best = nullptr;
    for (const auto& [k, c] : x.terms())
        if (!best || order_less(*best, k, order)) best = &k;
    return {x.terms().at(*best), *best};
}

}  // namespace qtrace
