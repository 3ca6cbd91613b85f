#include "hyperperc/polynomial.hpp"

#include <cmath>
#include <sstream>

namespace hyperperc {

Polynomial::Polynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void Polynomial::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::operator()(const Rational& p) const
{
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * p + Rational(*it);
    return acc;
}

double Polynomial::operator()(double p) const
{
    double acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * p + it->convert_to<double>();
    return acc;
}

Polynomial Polynomial::derivative() const
{
    std::vector<BigInt> d;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<unsigned>(i));
    return Polynomial(std::move(d));
}

std::string Polynomial::str() const
{
    if (coeffs_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        BigInt c = coeffs_[i];
        if (!first) out << (c < 0 ? " - " : " + ");
        else if (c < 0) out << "-";
        if (c < 0) c = -c;
        if (c != 1 || i == 0) out << c;
        if (i >= 1) out << (c != 1 ? "*" : "") << "p";
        if (i >= 2) out << "^" << i;
        first = false;
    }
    return out.str();
}

Polynomial operator+(const Polynomial& a, const Polynomial& b)
{
    std::vector<BigInt> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
    return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b)
{
    std::vector<BigInt> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
    return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    if (a.coeffs_.empty() || b.coeffs_.empty()) return {};
    std::vector<BigInt> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(c));
}

Polynomial BernsteinCounts::to_polynomial() const
{
    const int n = free_vertices();
    // (1-p)^m coefficients by the binomial theorem.
    Polynomial result;
    for (int k = 0; k <= n; ++k) {
        if (counts[k] == 0) continue;
        const int m = n - k;
        std::vector<BigInt> c(static_cast<std::size_t>(n) + 1, 0);
        BigInt binom = 1;
        for (int j = 0; j <= m; ++j) {
            c[k + j] = (j % 2 ? -binom : binom) * counts[k];
            binom = binom * (m - j) / (j + 1);
        }
        result = result + Polynomial(std::move(c));
    }
    return result;
}

namespace {

Rational rpow(const Rational& x, int e)
{
    Rational r = 1;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
}

}  // namespace

Rational BernsteinCounts::operator()(const Rational& p) const
{
    const int n = free_vertices();
    Rational q = 1 - p;
    Rational acc = 0;
    for (int k = 0; k <= n; ++k) {
        if (counts[k] == 0) continue;
        acc += Rational(counts[k]) * rpow(p, k) * rpow(q, n - k);
    }
    return acc;
}

double BernsteinCounts::operator()(double p) const
{
    const int n = free_vertices();
    double acc = 0;
    for (int k = 0; k <= n; ++k)
        if (counts[k] != 0) acc += counts[k].convert_to<double>() * std::pow(p, k) * std::pow(1.0 - p, n - k);
    return acc;
}

Rational to_rational(double p)
{
    // Exact binary value of the double.
    int exp = 0;
    double m = std::frexp(p, &exp);
    auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
    exp -= 53;
    Rational r = Rational(mant);
    if (exp >= 0) r *= Rational(BigInt(1) << exp);
    else r /= Rational(BigInt(1) << -exp);
    return r;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace hyperperc
