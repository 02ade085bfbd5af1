#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace costcap {

// Small exact rational on 64-bit integers. Values appearing here are tiny
// (numerators bounded by graph costs, denominators divide the graph period),
// so no overflow guarding beyond normalization is needed.
struct Rat {
	long long num = 0;
	long long den = 1;

	Rat() = default;
	Rat(long long n) : num(n), den(1) {}
	Rat(long long n, long long d) : num(n), den(d) { normalize(); }

	void normalize() {
		if (den == 0)
			throw std::invalid_argument("rational with zero denominator");
		if (den < 0) {
			num = -num;
			den = -den;
		}
		long long g = std::gcd(num < 0 ? -num : num, den);
		if (g > 1) {
			num /= g;
			den /= g;
		}
		if (num == 0)
			den = 1;
	}

	friend Rat operator+(const Rat& a, const Rat& b) {
		return Rat(a.num * b.den + b.num * a.den, a.den * b.den);
	}
	friend Rat operator-(const Rat& a, const Rat& b) {
		return Rat(a.num * b.den - b.num * a.den, a.den * b.den);
	}
	friend Rat operator*(const Rat& a, const Rat& b) {
		return Rat(a.num * b.num, a.den * b.den);
	}
	friend Rat operator/(const Rat& a, const Rat& b) {
		if (b.num == 0)
			throw std::invalid_argument("rational division by zero");
		return Rat(a.num * b.den, a.den * b.num);
	}
	Rat operator-() const { return Rat(-num, den); }

	friend bool operator==(const Rat& a, const Rat& b) {
		return a.num == b.num && a.den == b.den;
	}
	friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
	friend bool operator<(const Rat& a, const Rat& b) {
		return a.num * b.den < b.num * a.den;
	}

	bool is_integer() const { return den == 1; }

	// Floor division, correct for negative values.
	long long floor() const {
		long long q = num / den;
		if (num % den != 0 && num < 0)
			--q;
		return q;
	}

	// Representative in [0, m) of this value modulo the positive integer m.
	Rat mod(long long m) const {
		Rat q = *this / Rat(m);
		return *this - Rat(q.floor() * m);
	}

	double to_double() const { return double(num) / double(den); }

	std::string str() const {
		return std::to_string(num) + "/" + std::to_string(den);
	}
};

} // namespace costcap
