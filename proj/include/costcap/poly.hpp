#pragma once

#include <complex>
#include <gmpxx.h>
#include <string>
#include <vector>

namespace costcap {

// Dense univariate polynomial with exact integer coefficients,
// coeffs[k] = coefficient of x^k. The zero polynomial has empty coeffs.
struct IntPoly {
	std::vector<mpz_class> coeffs;

	IntPoly() = default;
	explicit IntPoly(long c) {
		if (c != 0)
			coeffs.assign(1, mpz_class(c));
	}

	static IntPoly monomial(long coef, int degree);

	int degree() const { return int(coeffs.size()) - 1; } // -1 for zero
	bool is_zero() const { return coeffs.empty(); }
	void trim();

	const mpz_class& coeff(int k) const;

	IntPoly derivative() const;

	double eval(double x) const;                             // Horner
	std::complex<double> eval(std::complex<double> x) const; // Horner

	std::string str() const; // human-readable, for diagnostics

	friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
	friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
	friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
	friend bool operator==(const IntPoly& a, const IntPoly& b) {
		return a.coeffs == b.coeffs;
	}

	// Exact division; throws if the remainder is nonzero. Needed by the
	// fraction-free determinant elimination, where divisions are exact
	// by construction.
	static IntPoly exact_div(const IntPoly& num, const IntPoly& den);
};

// Determinant of a square polynomial matrix (row-major), computed exactly.
// Cofactor expansion for dim <= 6, fraction-free Bareiss elimination above.
IntPoly poly_matrix_det(const std::vector<std::vector<IntPoly>>& m);

} // namespace costcap
