#include "costcap/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace costcap {

IntPoly IntPoly::monomial(long coef, int degree) {
	IntPoly p;
	if (coef != 0) {
		p.coeffs.assign(size_t(degree) + 1, mpz_class(0));
		p.coeffs[size_t(degree)] = coef;
	}
	return p;
}

void IntPoly::trim() {
	while (!coeffs.empty() && coeffs.back() == 0)
		coeffs.pop_back();
}

const mpz_class& IntPoly::coeff(int k) const {
	static const mpz_class zero(0);
	if (k < 0 || k >= int(coeffs.size()))
		return zero;
	return coeffs[size_t(k)];
}

IntPoly IntPoly::derivative() const {
	IntPoly d;
	if (coeffs.size() <= 1)
		return d;
	d.coeffs.resize(coeffs.size() - 1);
	for (size_t k = 1; k < coeffs.size(); ++k)
		d.coeffs[k - 1] = coeffs[k] * long(k);
	d.trim();
	return d;
}

double IntPoly::eval(double x) const {
	double acc = 0;
	for (size_t k = coeffs.size(); k-- > 0;)
		acc = acc * x + coeffs[k].get_d();
	return acc;
}

std::complex<double> IntPoly::eval(std::complex<double> x) const {
	std::complex<double> acc = 0;
	for (size_t k = coeffs.size(); k-- > 0;)
		acc = acc * x + coeffs[k].get_d();
	return acc;
}

std::string IntPoly::str() const {
	if (coeffs.empty())
		return "0";
	std::ostringstream out;
	bool first = true;
	for (size_t k = 0; k < coeffs.size(); ++k) {
		if (coeffs[k] == 0)
			continue;
		if (!first)
			out << " + ";
		out << coeffs[k].get_str();
		if (k > 0)
			out << "*x^" << k;
		first = false;
	}
	return out.str();
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
	IntPoly r;
	r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), mpz_class(0));
	for (size_t k = 0; k < a.coeffs.size(); ++k)
		r.coeffs[k] += a.coeffs[k];
	for (size_t k = 0; k < b.coeffs.size(); ++k)
		r.coeffs[k] += b.coeffs[k];
	r.trim();
	return r;
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
	IntPoly r;
	r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), mpz_class(0));
	for (size_t k = 0; k < a.coeffs.size(); ++k)
		r.coeffs[k] += a.coeffs[k];
	for (size_t k = 0; k < b.coeffs.size(); ++k)
		r.coeffs[k] -= b.coeffs[k];
	r.trim();
	return r;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
	IntPoly r;
	if (a.is_zero() || b.is_zero())
		return r;
	r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, mpz_class(0));
	for (size_t i = 0; i < a.coeffs.size(); ++i) {
		if (a.coeffs[i] == 0)
			continue;
		for (size_t j = 0; j < b.coeffs.size(); ++j)
			if (b.coeffs[j] != 0)
				r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
	}
	r.trim();
	return r;
}

IntPoly IntPoly::exact_div(const IntPoly& num, const IntPoly& den) {
	if (den.is_zero())
		throw std::invalid_argument("polynomial division by zero");
	IntPoly rem = num, quot;
	if (num.is_zero())
		return quot;
	if (num.degree() < den.degree())
		throw std::invalid_argument("polynomial division is not exact");
	quot.coeffs.assign(size_t(num.degree() - den.degree()) + 1, mpz_class(0));
	const mpz_class& lead = den.coeffs.back();
	for (int k = num.degree() - den.degree(); k >= 0; --k) {
		mpz_class top = rem.coeff(k + den.degree());
		if (top == 0)
			continue;
		mpz_class q, r;
		mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), top.get_mpz_t(), lead.get_mpz_t());
		if (r != 0)
			throw std::invalid_argument("polynomial division is not exact");
		quot.coeffs[size_t(k)] = q;
		// rem -= q * x^k * den
		if (int(rem.coeffs.size()) < k + den.degree() + 1)
			rem.coeffs.resize(size_t(k + den.degree()) + 1, mpz_class(0));
		for (int j = 0; j <= den.degree(); ++j)
			rem.coeffs[size_t(k + j)] -= q * den.coeffs[size_t(j)];
	}
	rem.trim();
	if (!rem.is_zero())
		throw std::invalid_argument("polynomial division is not exact");
	quot.trim();
	return quot;
}

namespace {

IntPoly det_cofactor(const std::vector<std::vector<IntPoly>>& m) {
	size_t n = m.size();
	if (n == 1)
		return m[0][0];
	IntPoly acc;
	std::vector<std::vector<IntPoly>> minor(n - 1, std::vector<IntPoly>(n - 1));
	for (size_t col = 0; col < n; ++col) {
		if (m[0][col].is_zero())
			continue;
		for (size_t i = 1; i < n; ++i) {
			size_t jj = 0;
			for (size_t j = 0; j < n; ++j) {
				if (j == col)
					continue;
				minor[i - 1][jj++] = m[i][j];
			}
		}
		IntPoly term = m[0][col] * det_cofactor(minor);
		acc = (col % 2 == 0) ? acc + term : acc - term;
	}
	return acc;
}

IntPoly det_bareiss(std::vector<std::vector<IntPoly>> m) {
	// Fraction-free elimination: every division is exact in the
	// polynomial ring. Row swaps flip the sign.
	size_t n = m.size();
	IntPoly prev(1);
	int sign = 1;
	for (size_t k = 0; k + 1 < n; ++k) {
		if (m[k][k].is_zero()) {
			size_t p = k + 1;
			while (p < n && m[p][k].is_zero())
				++p;
			if (p == n)
				return IntPoly(); // singular
			std::swap(m[k], m[p]);
			sign = -sign;
		}
		for (size_t i = k + 1; i < n; ++i)
			for (size_t j = k + 1; j < n; ++j)
				m[i][j] = IntPoly::exact_div(m[k][k] * m[i][j] - m[i][k] * m[k][j],
				                             prev);
		prev = m[k][k];
	}
	IntPoly det = m[n - 1][n - 1];
	if (sign < 0)
		det = IntPoly() - det;
	return det;
}

} // namespace

IntPoly poly_matrix_det(const std::vector<std::vector<IntPoly>>& m) {
	if (m.empty())
		return IntPoly(1);
	return m.size() <= 6 ? det_cofactor(m) : det_bareiss(m);
}

} // namespace costcap
