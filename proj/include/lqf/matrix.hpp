#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <string>
#include <utility>

#include "lqf/quaternion.hpp"

namespace lqf {

/// Dense 4x4 real matrix, row-major.  operator()(r, c) is 0-based; the
/// element written r_ij in 1-based mathematical notation lives at
/// (i-1, j-1).
template <std::floating_point T = double>
struct Matrix4 {
    std::array<T, 16> m{};

    constexpr T operator()(int r, int c) const { return m[static_cast<std::size_t>(r * 4 + c)]; }
    constexpr T& operator()(int r, int c) { return m[static_cast<std::size_t>(r * 4 + c)]; }

    friend constexpr bool operator==(const Matrix4&, const Matrix4&) = default;

    constexpr Matrix4& operator+=(const Matrix4& rhs) {
        for (std::size_t e = 0; e < 16; ++e) m[e] += rhs.m[e];
        return *this;
    }
    constexpr Matrix4& operator-=(const Matrix4& rhs) {
        for (std::size_t e = 0; e < 16; ++e) m[e] -= rhs.m[e];
        return *this;
    }
    constexpr Matrix4& operator*=(T scalar) {
        for (T& e : m) e *= scalar;
        return *this;
    }

    static constexpr Matrix4 identity() {
        Matrix4 r{};
        r(0, 0) = r(1, 1) = r(2, 2) = r(3, 3) = T(1);
        return r;
    }
};

using Mat4 = Matrix4<double>;

template <std::floating_point T>
constexpr Matrix4<T> operator+(Matrix4<T> lhs, const Matrix4<T>& rhs) {
    return lhs += rhs;
}

template <std::floating_point T>
constexpr Matrix4<T> operator-(Matrix4<T> lhs, const Matrix4<T>& rhs) {
    return lhs -= rhs;
}

template <std::floating_point T>
constexpr Matrix4<T> operator*(T scalar, Matrix4<T> m) {
    return m *= scalar;
}

template <std::floating_point T>
constexpr Matrix4<T> operator*(const Matrix4<T>& a, const Matrix4<T>& b) {
    Matrix4<T> r{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            const T aik = a(i, k);
            for (int j = 0; j < 4; ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

/// Matrix action on a quaternion viewed as the column vector
/// (w, x, y, z)^T.
template <std::floating_point T>
constexpr Quaternion<T> operator*(const Matrix4<T>& m, const Quaternion<T>& q) {
    Quaternion<T> r{};
    for (int i = 0; i < 4; ++i) {
        T acc{};
        for (int j = 0; j < 4; ++j) acc += m(i, j) * q[j];
        r[i] = acc;
    }
    return r;
}

template <std::floating_point T>
constexpr bool approx_equal(const Matrix4<T>& a, const Matrix4<T>& b, T tol = T(1e-12)) {
    for (std::size_t e = 0; e < 16; ++e) {
        const T diff = detail::abs_val(a.m[e] - b.m[e]);
        const T mag = std::max(detail::abs_val(a.m[e]), detail::abs_val(b.m[e]));
        if (diff > tol && diff > tol * mag) return false;
    }
    return true;
}

/// Matrix of left multiplication: encode_standard(p) * vec(q) = vec(p q).
/// Ring homomorphism: encode_standard(p q) = encode_standard(p) *
/// encode_standard(q).
template <std::floating_point T>
constexpr Matrix4<T> encode_standard(const Quaternion<T>& p) {
    Matrix4<T> r{};
    r(0, 0) = p.w;  r(0, 1) = -p.x;  r(0, 2) = -p.y;  r(0, 3) = -p.z;
    r(1, 0) = p.x;  r(1, 1) = p.w;   r(1, 2) = -p.z;  r(1, 3) = p.y;
    r(2, 0) = p.y;  r(2, 1) = p.z;   r(2, 2) = p.w;   r(2, 3) = -p.x;
    r(3, 0) = p.z;  r(3, 1) = -p.y;  r(3, 2) = p.x;   r(3, 3) = p.w;
    return r;
}

/// Matrix of right multiplication: encode_transmuted(q) * vec(p) = vec(p q).
/// Equals encode_standard(q) with the lower-right 3x3 block transposed.
/// Anti-homomorphism: encode_transmuted(p q) = encode_transmuted(q) *
/// encode_transmuted(p).  Left and right encodings always commute.
template <std::floating_point T>
constexpr Matrix4<T> encode_transmuted(const Quaternion<T>& q) {
    Matrix4<T> r{};
    r(0, 0) = q.w;  r(0, 1) = -q.x;  r(0, 2) = -q.y;  r(0, 3) = -q.z;
    r(1, 0) = q.x;  r(1, 1) = q.w;   r(1, 2) = q.z;   r(1, 3) = -q.y;
    r(2, 0) = q.y;  r(2, 1) = -q.z;  r(2, 2) = q.w;   r(2, 3) = q.x;
    r(3, 0) = q.z;  r(3, 1) = q.y;   r(3, 2) = -q.x;  r(3, 3) = q.w;
    return r;
}

/// Signed basis product: returns (sign, basis) with a * b = sign * basis
/// for a, b in {1, i, j, k}.
constexpr std::pair<int, Basis> basis_product(Basis a, Basis b) {
    constexpr int kSign[4][4] = {
        {1, 1, 1, 1},
        {1, -1, 1, -1},
        {1, -1, -1, 1},
        {1, 1, -1, -1},
    };
    constexpr Basis kBasis[4][4] = {
        {Basis::One, Basis::I, Basis::J, Basis::K},
        {Basis::I, Basis::One, Basis::K, Basis::J},
        {Basis::J, Basis::K, Basis::One, Basis::I},
        {Basis::K, Basis::J, Basis::I, Basis::One},
    };
    const int ia = static_cast<int>(a);
    const int ib = static_cast<int>(b);
    return {kSign[ia][ib], kBasis[ia][ib]};
}

/// Signed sandwich operator q -> sign * left * q * right with unit-basis
/// factors.  Composition stays in this family, so the family generated by
/// any starting set is finite.
struct BarOp {
    Basis left = Basis::One;
    Basis right = Basis::One;
    int sign = 1;

    friend constexpr bool operator==(const BarOp&, const BarOp&) = default;
    friend constexpr auto operator<=>(const BarOp&, const BarOp&) = default;
};

/// Composition outer(inner(q)): the left factors multiply in application
/// order outward, the right factors inward, with basis signs folded into
/// the scalar sign.
constexpr BarOp compose(const BarOp& outer, const BarOp& inner) {
    const auto [ls, lb] = basis_product(outer.left, inner.left);
    const auto [rs, rb] = basis_product(inner.right, outer.right);
    return {lb, rb, ls * rs * outer.sign * inner.sign};
}

template <std::floating_point T = double>
constexpr Quaternion<T> apply(const BarOp& op, const Quaternion<T>& q) {
    const Quaternion<T> s =
        basis_quaternion<T>(op.left) * q * basis_quaternion<T>(op.right);
    return T(op.sign) * s;
}

/// Matrix of a bar operator: sign * encode_standard(left) *
/// encode_transmuted(right).
template <std::floating_point T = double>
constexpr Matrix4<T> bar_matrix(const BarOp& op) {
    return T(op.sign) * (encode_standard(basis_quaternion<T>(op.left)) *
                         encode_transmuted(basis_quaternion<T>(op.right)));
}

constexpr char basis_char(Basis b) {
    switch (b) {
        case Basis::One: return '1';
        case Basis::I: return 'i';
        case Basis::J: return 'j';
        default: return 'k';
    }
}

inline std::string to_string(const BarOp& op) {
    std::string out;
    if (op.sign < 0) out += '-';
    out += '(';
    out += basis_char(op.left);
    out += '|';
    out += basis_char(op.right);
    out += ')';
    return out;
}

/// Text rendering: four lines "[a,b,c,d]" joined by newlines, no trailing
/// newline.
template <std::floating_point T>
std::string to_string(const Matrix4<T>& m) {
    std::string out;
    for (int i = 0; i < 4; ++i) {
        out += '[';
        for (int j = 0; j < 4; ++j) {
            if (j) out += ',';
            out += detail::format_real(static_cast<double>(m(i, j)));
        }
        out += ']';
        if (i < 3) out += '\n';
    }
    return out;
}

/// JSON rendering: flat row-major array of 16 numbers.
template <std::floating_point T>
std::string to_json(const Matrix4<T>& m) {
    std::string out = "[";
    for (std::size_t e = 0; e < 16; ++e) {
        if (e) out += ',';
        out += detail::format_real(static_cast<double>(m.m[e]));
    }
    out += ']';
    return out;
}

}  // namespace lqf
