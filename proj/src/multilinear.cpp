#include "gisoforge/multilinear.hpp"

#include <algorithm>
#include <stdexcept>

namespace gisoforge {

MultilinearPoly MultilinearPoly::constant(const Rational &c) {
    MultilinearPoly p;
    p.add_term({}, c);
    return p;
}

MultilinearPoly MultilinearPoly::indeterminate(int id) {
    MultilinearPoly p;
    p.add_term({id}, Rational(1));
    return p;
}

MultilinearPoly MultilinearPoly::monomial(Monomial ids, const Rational &coeff) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    MultilinearPoly p;
    p.add_term(ids, coeff);
    return p;
}

int MultilinearPoly::degree() const {
    int d = 0;
    for (const auto &[ids, coeff] : terms_) d = std::max(d, static_cast<int>(ids.size()));
    return d;
}

void MultilinearPoly::add_term(const Monomial &ids, const Rational &coeff) {
    if (coeff == 0) return;
    auto it = terms_.find(ids);
    if (it == terms_.end()) {
        terms_.emplace(ids, coeff);
        return;
    }
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
}

MultilinearPoly &MultilinearPoly::operator+=(const MultilinearPoly &other) {
    for (const auto &[ids, coeff] : other.terms_) add_term(ids, coeff);
    return *this;
}

MultilinearPoly &MultilinearPoly::operator-=(const MultilinearPoly &other) {
    for (const auto &[ids, coeff] : other.terms_) add_term(ids, -coeff);
    return *this;
}

MultilinearPoly MultilinearPoly::operator+(const MultilinearPoly &other) const {
    MultilinearPoly out = *this;
    out += other;
    return out;
}

MultilinearPoly MultilinearPoly::operator-(const MultilinearPoly &other) const {
    MultilinearPoly out = *this;
    out -= other;
    return out;
}

MultilinearPoly MultilinearPoly::operator*(const MultilinearPoly &other) const {
    MultilinearPoly out;
    Monomial merged;
    for (const auto &[a_ids, a_coeff] : terms_) {
        for (const auto &[b_ids, b_coeff] : other.terms_) {
            merged.clear();
            std::set_union(a_ids.begin(), a_ids.end(), b_ids.begin(), b_ids.end(),
                           std::back_inserter(merged));
            out.add_term(merged, a_coeff * b_coeff);
        }
    }
    return out;
}

MultilinearPoly MultilinearPoly::operator*(const Rational &scalar) const {
    MultilinearPoly out;
    if (scalar == 0) return out;
    for (const auto &[ids, coeff] : terms_) out.add_term(ids, coeff * scalar);
    return out;
}

Rational MultilinearPoly::evaluate(const std::map<int, int> &point) const {
    Rational total(0);
    for (const auto &[ids, coeff] : terms_) {
        bool live = true;
        for (int id : ids) {
            auto it = point.find(id);
            if (it == point.end())
                throw std::invalid_argument("evaluate: indeterminate outside the point's support");
            if (it->second == 0) {
                live = false;
                break;
            }
        }
        if (live) total += coeff;
    }
    return total;
}

} // namespace gisoforge
