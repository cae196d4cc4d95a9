#ifndef GISOFORGE_MULTILINEAR_HPP
#define GISOFORGE_MULTILINEAR_HPP

#include "gisoforge/rational.hpp"

#include <map>
#include <vector>

namespace gisoforge {

// A monomial is a sorted set of indeterminate ids; multiplication merges
// the sets, which is exactly the reduction A^2 -> A.
using Monomial = std::vector<int>;

class MultilinearPoly {
public:
    MultilinearPoly() = default;

    static MultilinearPoly zero() { return {}; }
    static MultilinearPoly constant(const Rational &c);
    static MultilinearPoly indeterminate(int id);
    static MultilinearPoly monomial(Monomial ids, const Rational &coeff);

    bool is_zero() const { return terms_.empty(); }
    int degree() const;
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Monomial, Rational> &terms() const { return terms_; }

    MultilinearPoly &operator+=(const MultilinearPoly &other);
    MultilinearPoly &operator-=(const MultilinearPoly &other);
    MultilinearPoly operator+(const MultilinearPoly &other) const;
    MultilinearPoly operator-(const MultilinearPoly &other) const;
    MultilinearPoly operator*(const MultilinearPoly &other) const;
    MultilinearPoly operator*(const Rational &scalar) const;

    bool operator==(const MultilinearPoly &other) const { return terms_ == other.terms_; }

    // Evaluation at a 0/1 point given per-id values; ids absent from the
    // map are an error (the polynomial escaped its declared support).
    Rational evaluate(const std::map<int, int> &point) const;

private:
    void add_term(const Monomial &ids, const Rational &coeff);
    std::map<Monomial, Rational> terms_; // zero coefficients are never stored
};

} // namespace gisoforge

#endif // GISOFORGE_MULTILINEAR_HPP
