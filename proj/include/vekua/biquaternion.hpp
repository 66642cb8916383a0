#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <ostream>

namespace vekua {

using Cplx = std::complex<double>;

/// One element of the complex quaternion algebra H(C):
///     Q = q0 + q1 e1 + q2 e2 + q3 e3,   q_a in C,
/// with e_a e_b + e_b e_a = -2 delta_ab (a,b = 1,2,3), e1 e2 = e3
/// (right-handed convention) and the complex unit i commuting with all e_a.
///
/// Value type; all operations are pure.  There is deliberately no inverse or
/// division: H(C) has zero divisors, e.g. (1 + i e1)(1 - i e1) = 0.
struct Biquaternion {
    Cplx q0{}, q1{}, q2{}, q3{};

    static Biquaternion scalar(Cplx s) { return {s, {}, {}, {}}; }
    static Biquaternion vector(Cplx v1, Cplx v2, Cplx v3) { return {{}, v1, v2, v3}; }

    /// Basis element e_k, k = 0..3 (e_0 = 1).
    static Biquaternion unit(int k) {
        Biquaternion e;
        switch (k) {
        case 0: e.q0 = 1.0; break;
        case 1: e.q1 = 1.0; break;
        case 2: e.q2 = 1.0; break;
        default: e.q3 = 1.0; break;
        }
        return e;
    }

    Cplx operator[](int k) const { return k == 0 ? q0 : (k == 1 ? q1 : (k == 2 ? q2 : q3)); }

    friend Biquaternion operator+(const Biquaternion& a, const Biquaternion& b) {
        return {a.q0 + b.q0, a.q1 + b.q1, a.q2 + b.q2, a.q3 + b.q3};
    }
    friend Biquaternion operator-(const Biquaternion& a, const Biquaternion& b) {
        return {a.q0 - b.q0, a.q1 - b.q1, a.q2 - b.q2, a.q3 - b.q3};
    }
    friend Biquaternion operator-(const Biquaternion& a) { return {-a.q0, -a.q1, -a.q2, -a.q3}; }
    friend Biquaternion operator*(Cplx s, const Biquaternion& a) {
        return {s * a.q0, s * a.q1, s * a.q2, s * a.q3};
    }
    friend Biquaternion operator*(const Biquaternion& a, Cplx s) { return s * a; }

    /// Quaternion product.  Scalar/vector form: Sc = a0 b0 - <a,b>,
    /// Vec = a0 b + b0 a + a x b.
    friend Biquaternion operator*(const Biquaternion& a, const Biquaternion& b) {
        return {a.q0 * b.q0 - a.q1 * b.q1 - a.q2 * b.q2 - a.q3 * b.q3,
                a.q0 * b.q1 + a.q1 * b.q0 + a.q2 * b.q3 - a.q3 * b.q2,
                a.q0 * b.q2 + a.q2 * b.q0 + a.q3 * b.q1 - a.q1 * b.q3,
                a.q0 * b.q3 + a.q3 * b.q0 + a.q1 * b.q2 - a.q2 * b.q1};
    }

    friend std::ostream& operator<<(std::ostream& os, const Biquaternion& q) {
        return os << "(" << q.q0 << ", " << q.q1 << ", " << q.q2 << ", " << q.q3 << ")";
    }
};

inline Cplx sc(const Biquaternion& q) { return q.q0; }
inline Biquaternion vec(const Biquaternion& q) { return {{}, q.q1, q.q2, q.q3}; }

/// Quaternionic conjugation C_H: Q0 + Q -> Q0 - Q.  Anti-automorphism.
inline Biquaternion quat_conj(const Biquaternion& q) { return {q.q0, -q.q1, -q.q2, -q.q3}; }

/// Component-wise complex conjugation (conjugates i, fixes e_k).  Automorphism;
/// commutes with quat_conj.
inline Biquaternion complex_conj(const Biquaternion& q) {
    return {std::conj(q.q0), std::conj(q.q1), std::conj(q.q2), std::conj(q.q3)};
}

/// M^P, the operator of multiplication by P from the right: M^P(Q) = Q P.
struct RightMultiplier {
    Biquaternion p;
    Biquaternion operator()(const Biquaternion& q) const { return q * p; }
};
inline RightMultiplier right_mul(const Biquaternion& p) { return {p}; }

/// Euclidean norm on C^4.
inline double norm(const Biquaternion& q) {
    return std::sqrt(std::norm(q.q0) + std::norm(q.q1) + std::norm(q.q2) + std::norm(q.q3));
}

} // namespace vekua
