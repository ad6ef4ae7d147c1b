#pragma once
// Exact coefficient scalars: arbitrary-precision rationals and prime fields.
//
// Fp carries its modulus at runtime so one binary handles every prime.  A
// modulus of 0 marks an integer literal that has not met a bound value yet
// (Eigen and generic code freely create Scalar(0)/Scalar(1)); any arithmetic
// with a bound operand promotes the literal into that field.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>

// Boost 1.74's byte-container constructor probe hard-errors on Eigen's dense
// types (their const_iterator is void for 2-D shapes, and the probe asks
// iterator_traits<void> for a value_type mid-SFINAE).  State outright that a
// matrix is not a byte container so mixed overload resolution stays legal.
namespace boost {
namespace multiprecision {
namespace detail {
template <class S, int R, int C, int O, int MR, int MC>
struct is_byte_container<Eigen::Matrix<S, R, C, O, MR, MC>>
    : public boost::false_type {};
template <class L, class R, int O>
struct is_byte_container<Eigen::Product<L, R, O>>
    : public boost::false_type {};
template <class Op, class X>
struct is_byte_container<Eigen::CwiseNullaryOp<Op, X>>
    : public boost::false_type {};
template <class Op, class X>
struct is_byte_container<Eigen::CwiseUnaryOp<Op, X>>
    : public boost::false_type {};
template <class Op, class L, class R>
struct is_byte_container<Eigen::CwiseBinaryOp<Op, L, R>>
    : public boost::false_type {};
template <class X, int R, int C, bool P>
struct is_byte_container<Eigen::Block<X, R, C, P>>
    : public boost::false_type {};
template <class X>
struct is_byte_container<Eigen::Transpose<X>> : public boost::false_type {};
}  // namespace detail
}  // namespace multiprecision
}  // namespace boost

namespace ainf {

using Rational = boost::multiprecision::cpp_rational;

struct Fp {
  long long v = 0;
  long long p = 0;  // 0 = unbound integer literal

  Fp() = default;
  Fp(long long x) : v(x) {}
  Fp(int x) : v(x) {}
  Fp(long long x, long long mod) : v(x), p(mod) { reduce(); }

  void reduce() {
    if (p) {
      v %= p;
      if (v < 0) v += p;
    }
  }

  static long long common_mod(const Fp& a, const Fp& b) {
    if (a.p && b.p && a.p != b.p) throw std::logic_error("Fp: mixed moduli");
    return a.p ? a.p : b.p;
  }

  friend Fp operator+(const Fp& a, const Fp& b) {
    return Fp(a.v + b.v, common_mod(a, b));
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    return Fp(a.v - b.v, common_mod(a, b));
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    long long m = common_mod(a, b);
    if (!m) return Fp(a.v * b.v);
    return Fp((a.v % m) * (b.v % m), m);
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }
  Fp operator-() const { return Fp(-v, p); }
  Fp& operator+=(const Fp& b) { return *this = *this + b; }
  Fp& operator-=(const Fp& b) { return *this = *this - b; }
  Fp& operator*=(const Fp& b) { return *this = *this * b; }
  Fp& operator/=(const Fp& b) { return *this = *this / b; }

  Fp inverse() const {
    if (!p) {
      if (v == 1) return Fp(1);
      if (v == -1) return Fp(-1);
      throw std::logic_error("Fp: inverse of unbound literal");
    }
    long long a = v % p;
    if (a < 0) a += p;
    if (a == 0) throw std::domain_error("Fp: division by zero");
    // extended Euclid
    long long r0 = p, r1 = a, s0 = 0, s1 = 1;
    while (r1) {
      long long q = r0 / r1;
      long long r2 = r0 - q * r1;
      long long s2 = s0 - q * s1;
      r0 = r1; r1 = r2; s0 = s1; s1 = s2;
    }
    return Fp(s0, p);
  }

  friend bool operator==(const Fp& a, const Fp& b) {
    long long m = common_mod(a, b);
    if (!m) return a.v == b.v;
    long long x = a.v % m, y = b.v % m;
    if (x < 0) x += m;
    if (y < 0) y += m;
    return x == y;
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const Fp& a) {
    Fp c = a;
    c.reduce();
    return os << c.v;
  }
};

inline Fp abs(const Fp& a) { return a; }  // Eigen occasionally asks for it

// ---------------------------------------------------------------------------
// Uniform helpers the rest of the library uses so that generic code never
// branches on the scalar type.

template <class K>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
  static constexpr long long characteristic = 0;
  static Rational bind(long long num, long long den = 1) {
    return Rational(num, den);
  }
  static Rational rebind(const Rational& x, long long) { return x; }
  static std::string str(const Rational& x) { return x.str(); }
};

template <>
struct ScalarOps<Fp> {
  static Fp bind(long long num, long long den, long long mod) {
    return Fp(num, mod) / Fp(den, mod);
  }
  static Fp rebind(const Fp& x, long long mod) {
    Fp y = x;
    if (!y.p) y.p = mod;
    y.reduce();
    return y;
  }
  static std::string str(const Fp& x) {
    Fp c = x;
    c.reduce();
    return std::to_string(c.v);
  }
};

template <class K>
inline bool is_zero(const K& x) {
  return x == K(0);
}

}  // namespace ainf

namespace Eigen {
template <>
struct NumTraits<ainf::Fp> : GenericNumTraits<ainf::Fp> {
  typedef ainf::Fp Real;
  typedef ainf::Fp NonInteger;
  typedef ainf::Fp Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
  static inline Real epsilon() { return ainf::Fp(0); }
  static inline Real dummy_precision() { return ainf::Fp(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
