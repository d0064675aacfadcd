#pragma once

#include <string>
#include <vector>

#include "lqf/matrix.hpp"
#include "lqf/quaternion.hpp"

namespace lqf {

/// One sandwich term q -> left * q * right.
template <std::floating_point T = double>
struct Term {
    Quaternion<T> left;
    Quaternion<T> right;

    friend constexpr bool operator==(const Term&, const Term&) = default;
};

/// A general linear function as an ordered sum of sandwich terms
/// f(q) = sum_p left_p * q * right_p.
template <std::floating_point T = double>
using TermList = std::vector<Term<T>>;

/// Canonical left form f(q) = a*q + b*q*i + c*q*j + d*q*k.  The four
/// coefficients determine the function uniquely, so equality of forms is
/// equality of functions.
template <std::floating_point T = double>
struct CanonicalForm {
    Quaternion<T> a;
    Quaternion<T> b;
    Quaternion<T> c;
    Quaternion<T> d;

    friend constexpr bool operator==(const CanonicalForm&, const CanonicalForm&) = default;

    static constexpr CanonicalForm zero() { return {}; }
    /// The identity function q -> q.
    static constexpr CanonicalForm identity() { return {Quaternion<T>::one(), {}, {}, {}}; }
};

/// Dual right form f(q) = q*a + i*q*b + j*q*c + k*q*d.
template <std::floating_point T = double>
struct RightForm {
    Quaternion<T> a;
    Quaternion<T> b;
    Quaternion<T> c;
    Quaternion<T> d;

    friend constexpr bool operator==(const RightForm&, const RightForm&) = default;
};

template <std::floating_point T>
constexpr CanonicalForm<T> operator+(const CanonicalForm<T>& f, const CanonicalForm<T>& g) {
    return {f.a + g.a, f.b + g.b, f.c + g.c, f.d + g.d};
}

template <std::floating_point T>
constexpr CanonicalForm<T> operator-(const CanonicalForm<T>& f, const CanonicalForm<T>& g) {
    return {f.a - g.a, f.b - g.b, f.c - g.c, f.d - g.d};
}

template <std::floating_point T>
constexpr CanonicalForm<T> operator-(const CanonicalForm<T>& f) {
    return {-f.a, -f.b, -f.c, -f.d};
}

template <std::floating_point T>
constexpr CanonicalForm<T> operator*(T scalar, const CanonicalForm<T>& f) {
    return {scalar * f.a, scalar * f.b, scalar * f.c, scalar * f.d};
}

template <std::floating_point T>
constexpr CanonicalForm<T> operator*(const CanonicalForm<T>& f, T scalar) {
    return scalar * f;
}

/// Evaluation fixes the association and summation order
/// ((a*q + b*q*i) + c*q*j) + d*q*k so results are reproducible bit for
/// bit.
template <std::floating_point T>
constexpr Quaternion<T> evaluate(const CanonicalForm<T>& f, const Quaternion<T>& q) {
    return f.a * q + f.b * q * Quaternion<T>::unit_i() + f.c * q * Quaternion<T>::unit_j() +
           f.d * q * Quaternion<T>::unit_k();
}

template <std::floating_point T>
constexpr Quaternion<T> evaluate(const RightForm<T>& f, const Quaternion<T>& q) {
    return q * f.a + Quaternion<T>::unit_i() * q * f.b + Quaternion<T>::unit_j() * q * f.c +
           Quaternion<T>::unit_k() * q * f.d;
}

template <std::floating_point T>
Quaternion<T> evaluate(const TermList<T>& terms, const Quaternion<T>& q) {
    Quaternion<T> acc{};
    for (const Term<T>& t : terms) acc += t.left * q * t.right;
    return acc;
}

/// The canonical form written back as the term list
/// [(a, 1), (b, i), (c, j), (d, k)].
template <std::floating_point T>
TermList<T> to_term_list(const CanonicalForm<T>& f) {
    return {{f.a, Quaternion<T>::one()},
            {f.b, Quaternion<T>::unit_i()},
            {f.c, Quaternion<T>::unit_j()},
            {f.d, Quaternion<T>::unit_k()}};
}

/// Matrix of the whole function: the sum of the per-slot products
/// encode_standard(coefficient) * encode_transmuted(unit).  Satisfies
/// operator_matrix(f) * vec(q) = vec(evaluate(f, q)).
template <std::floating_point T>
constexpr Matrix4<T> operator_matrix(const CanonicalForm<T>& f) {
    return encode_standard(f.a) +
           encode_standard(f.b) * encode_transmuted(Quaternion<T>::unit_i()) +
           encode_standard(f.c) * encode_transmuted(Quaternion<T>::unit_j()) +
           encode_standard(f.d) * encode_transmuted(Quaternion<T>::unit_k());
}

/// Inverse of operator_matrix: recovers the canonical coefficients of an
/// arbitrary 4x4 real matrix by averaging the four entries each
/// coefficient occupies.  Every real 4x4 matrix decodes, so the
/// correspondence between linear quaternion functions and real matrices
/// is one to one.
template <std::floating_point T>
constexpr CanonicalForm<T> decode(const Matrix4<T>& mat) {
    const auto r = [&mat](int i, int j) { return mat(i - 1, j - 1); };
    constexpr T quarter = T(1) / T(4);
    CanonicalForm<T> f;
    f.a.w = quarter * (r(1, 1) + r(2, 2) + r(3, 3) + r(4, 4));
    f.a.x = quarter * (r(2, 1) - r(1, 2) + r(4, 3) - r(3, 4));
    f.a.y = quarter * (r(3, 1) - r(1, 3) - r(4, 2) + r(2, 4));
    f.a.z = quarter * (r(4, 1) - r(1, 4) + r(3, 2) - r(2, 3));
    f.b.w = quarter * (r(2, 1) - r(1, 2) - r(4, 3) + r(3, 4));
    f.b.x = quarter * (-r(1, 1) - r(2, 2) + r(3, 3) + r(4, 4));
    f.b.y = quarter * (-r(4, 1) - r(1, 4) - r(3, 2) - r(2, 3));
    f.b.z = quarter * (r(3, 1) + r(1, 3) - r(4, 2) - r(2, 4));
    f.c.w = quarter * (r(3, 1) - r(1, 3) + r(4, 2) - r(2, 4));
    f.c.x = quarter * (r(4, 1) + r(1, 4) - r(3, 2) - r(2, 3));
    f.c.y = quarter * (-r(1, 1) + r(2, 2) - r(3, 3) + r(4, 4));
    f.c.z = quarter * (-r(2, 1) - r(1, 2) - r(4, 3) - r(3, 4));
    f.d.w = quarter * (r(4, 1) - r(1, 4) - r(3, 2) + r(2, 3));
    f.d.x = quarter * (-r(3, 1) - r(1, 3) - r(4, 2) - r(2, 4));
    f.d.y = quarter * (r(2, 1) + r(1, 2) - r(4, 3) - r(3, 4));
    f.d.z = quarter * (-r(1, 1) + r(2, 2) + r(3, 3) - r(4, 4));
    return f;
}

/// Reduction through the matrix representation: accumulate the matrix of
/// each sandwich term, then decode.
template <std::floating_point T>
CanonicalForm<T> reduce_matrix_method(const TermList<T>& terms) {
    Matrix4<T> acc{};
    for (const Term<T>& t : terms) acc += encode_standard(t.left) * encode_transmuted(t.right);
    return decode(acc);
}

/// Reduction through component extraction: split each right factor into
/// real components via the conjugation identities, then fold the pieces
/// into the four slots.  m q n expands to (n0 m) q + (n1 m) q i +
/// (n2 m) q j + (n3 m) q k.
template <std::floating_point T>
CanonicalForm<T> reduce_involution_method(const TermList<T>& terms) {
    CanonicalForm<T> f{};
    for (const Term<T>& t : terms) {
        f.a += component(t.right, Basis::One) * t.left;
        f.b += component(t.right, Basis::I) * t.left;
        f.c += component(t.right, Basis::J) * t.left;
        f.d += component(t.right, Basis::K) * t.left;
    }
    return f;
}

/// Composition outer(inner(q)) in closed form.  The coefficient products
/// follow the quaternion multiplication sign pattern with outer
/// coefficients on the left.
template <std::floating_point T>
constexpr CanonicalForm<T> compose(const CanonicalForm<T>& outer, const CanonicalForm<T>& inner) {
    CanonicalForm<T> f;
    f.a = outer.a * inner.a - outer.b * inner.b - outer.c * inner.c - outer.d * inner.d;
    f.b = outer.a * inner.b + outer.b * inner.a - outer.c * inner.d + outer.d * inner.c;
    f.c = outer.a * inner.c + outer.b * inner.d + outer.c * inner.a - outer.d * inner.b;
    f.d = outer.a * inner.d - outer.b * inner.c + outer.c * inner.b + outer.d * inner.a;
    return f;
}

/// Composition of right forms.  Same slot and sign pattern as the left
/// form composition, with every coefficient product reversed: the inner
/// coefficients multiply from the left because right form coefficients
/// apply on the far side of the argument.
template <std::floating_point T>
constexpr RightForm<T> compose(const RightForm<T>& outer, const RightForm<T>& inner) {
    RightForm<T> f;
    f.a = inner.a * outer.a - inner.b * outer.b - inner.c * outer.c - inner.d * outer.d;
    f.b = inner.a * outer.b + inner.b * outer.a - inner.c * outer.d + inner.d * outer.c;
    f.c = inner.a * outer.c + inner.b * outer.d + inner.c * outer.a - inner.d * outer.b;
    f.d = inner.a * outer.d - inner.b * outer.c + inner.c * outer.b + inner.d * outer.a;
    return f;
}

/// Coefficient transpose: the right form coefficient on unit r collects
/// the r components of the left form coefficients.
template <std::floating_point T>
constexpr RightForm<T> to_right_form(const CanonicalForm<T>& f) {
    return {{f.a.w, f.b.w, f.c.w, f.d.w},
            {f.a.x, f.b.x, f.c.x, f.d.x},
            {f.a.y, f.b.y, f.c.y, f.d.y},
            {f.a.z, f.b.z, f.c.z, f.d.z}};
}

/// Re-reads the right form as the term list [(1, a), (i, b), (j, c),
/// (k, d)] and reduces it.
template <std::floating_point T>
constexpr CanonicalForm<T> from_right_form(const RightForm<T>& g) {
    Matrix4<T> acc{};
    acc += encode_standard(Quaternion<T>::one()) * encode_transmuted(g.a);
    acc += encode_standard(Quaternion<T>::unit_i()) * encode_transmuted(g.b);
    acc += encode_standard(Quaternion<T>::unit_j()) * encode_transmuted(g.c);
    acc += encode_standard(Quaternion<T>::unit_k()) * encode_transmuted(g.d);
    return decode(acc);
}

/// The conjugation map q -> conj(q) as a canonical form:
/// conj(q) = -(q + i*q*i + j*q*j + k*q*k) / 2.
template <std::floating_point T = double>
constexpr CanonicalForm<T> conjugation_form() {
    constexpr T h = T(1) / T(2);
    return {{-h, T(0), T(0), T(0)},
            {T(0), -h, T(0), T(0)},
            {T(0), T(0), -h, T(0)},
            {T(0), T(0), T(0), -h}};
}

/// Forms are equivalent when all four coefficient quaternions agree
/// within tol.
template <std::floating_point T>
constexpr bool equivalent(const CanonicalForm<T>& f, const CanonicalForm<T>& g, T tol = T(1e-12)) {
    return approx_equal(f.a, g.a, tol) && approx_equal(f.b, g.b, tol) &&
           approx_equal(f.c, g.c, tol) && approx_equal(f.d, g.d, tol);
}

template <std::floating_point T>
constexpr bool approx_equal(const RightForm<T>& f, const RightForm<T>& g, T tol = T(1e-12)) {
    return approx_equal(f.a, g.a, tol) && approx_equal(f.b, g.b, tol) &&
           approx_equal(f.c, g.c, tol) && approx_equal(f.d, g.d, tol);
}

/// Tuple rendering "{ (a); (b); (c); (d) }".
template <std::floating_point T>
std::string to_string(const CanonicalForm<T>& f) {
    std::string out = "{ ";
    out += to_string(f.a);
    out += "; ";
    out += to_string(f.b);
    out += "; ";
    out += to_string(f.c);
    out += "; ";
    out += to_string(f.d);
    out += " }";
    return out;
}

template <std::floating_point T>
std::string to_string(const RightForm<T>& f) {
    std::string out = "{ ";
    out += to_string(f.a);
    out += "; ";
    out += to_string(f.b);
    out += "; ";
    out += to_string(f.c);
    out += "; ";
    out += to_string(f.d);
    out += " }";
    return out;
}

namespace detail {

template <std::floating_point T>
std::string json_quaternion(const Quaternion<T>& q) {
    std::string out = "[";
    for (int c = 0; c < 4; ++c) {
        if (c) out += ',';
        out += format_real(static_cast<double>(q[c]));
    }
    out += ']';
    return out;
}

}  // namespace detail

/// JSON rendering: {"A":[w,x,y,z],"B":...,"C":...,"D":...}.
template <std::floating_point T>
std::string to_json(const CanonicalForm<T>& f) {
    std::string out = "{\"A\":";
    out += detail::json_quaternion(f.a);
    out += ",\"B\":";
    out += detail::json_quaternion(f.b);
    out += ",\"C\":";
    out += detail::json_quaternion(f.c);
    out += ",\"D\":";
    out += detail::json_quaternion(f.d);
    out += '}';
    return out;
}

/// JSON rendering of a point value: [w,x,y,z].
template <std::floating_point T>
std::string to_json(const Quaternion<T>& q) {
    return detail::json_quaternion(q);
}

}  // namespace lqf
