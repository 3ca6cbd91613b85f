#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hyperperc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Polynomial in p with integer coefficients, coeffs[i] multiplies p^i.
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<BigInt> coeffs);

    const std::vector<BigInt>& coeffs() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    Rational operator()(const Rational& p) const;
    double operator()(double p) const;
    Polynomial derivative() const;
    std::string str() const;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  private:
    void trim();
    std::vector<BigInt> coeffs_;
};

// sum_k counts[k] p^k (1-p)^(n-k), where n = counts.size() - 1. Produced by
// exhaustive enumeration: counts[k] totals the event weight over
// configurations with k open free vertices.
struct BernsteinCounts {
    std::vector<BigInt> counts;

    int free_vertices() const { return static_cast<int>(counts.size()) - 1; }
    Polynomial to_polynomial() const;
    Rational operator()(const Rational& p) const;
    double operator()(double p) const;
};

Rational to_rational(double p);
double to_double(const Rational& r);

}  // namespace hyperperc
