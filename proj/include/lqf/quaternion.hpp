#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <concepts>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace lqf {

/// Quaternion over a real scalar type, stored in Cartesian form
/// w + x*i + y*j + z*k.  All operations are pure; values are freely
/// shareable across threads.
template <std::floating_point T = double>
struct Quaternion {
    T w{};
    T x{};
    T y{};
    T z{};

    constexpr Quaternion() = default;
    constexpr Quaternion(T real) : w(real) {}
    constexpr Quaternion(T w_, T x_, T y_, T z_) : w(w_), x(x_), y(y_), z(z_) {}

    /// Component access by index: 0 -> w, 1 -> x, 2 -> y, 3 -> z.
    constexpr T operator[](int idx) const {
        switch (idx) {
            case 0: return w;
            case 1: return x;
            case 2: return y;
            default: return z;
        }
    }
    constexpr T& operator[](int idx) {
        switch (idx) {
            case 0: return w;
            case 1: return x;
            case 2: return y;
            default: return z;
        }
    }

    friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;

    constexpr Quaternion& operator+=(const Quaternion& rhs) {
        w += rhs.w;
        x += rhs.x;
        y += rhs.y;
        z += rhs.z;
        return *this;
    }
    constexpr Quaternion& operator-=(const Quaternion& rhs) {
        w -= rhs.w;
        x -= rhs.x;
        y -= rhs.y;
        z -= rhs.z;
        return *this;
    }
    constexpr Quaternion& operator*=(T scalar) {
        w *= scalar;
        x *= scalar;
        y *= scalar;
        z *= scalar;
        return *this;
    }

    static constexpr Quaternion zero() { return {}; }
    static constexpr Quaternion one() { return {T(1), T(0), T(0), T(0)}; }
    static constexpr Quaternion unit_i() { return {T(0), T(1), T(0), T(0)}; }
    static constexpr Quaternion unit_j() { return {T(0), T(0), T(1), T(0)}; }
    static constexpr Quaternion unit_k() { return {T(0), T(0), T(0), T(1)}; }
};

using Quat = Quaternion<double>;

/// The three pure imaginary units.
enum class Axis { I, J, K };

/// The four basis elements 1, i, j, k.  Used where the scalar unit takes
/// part (bar operators, component selection).
enum class Basis { One, I, J, K };

constexpr Basis to_basis(Axis a) {
    switch (a) {
        case Axis::I: return Basis::I;
        case Axis::J: return Basis::J;
        default: return Basis::K;
    }
}

template <std::floating_point T = double>
constexpr Quaternion<T> basis_quaternion(Basis b) {
    switch (b) {
        case Basis::One: return Quaternion<T>::one();
        case Basis::I: return Quaternion<T>::unit_i();
        case Basis::J: return Quaternion<T>::unit_j();
        default: return Quaternion<T>::unit_k();
    }
}

template <std::floating_point T>
constexpr Quaternion<T> operator+(Quaternion<T> lhs, const Quaternion<T>& rhs) {
    return lhs += rhs;
}

template <std::floating_point T>
constexpr Quaternion<T> operator-(Quaternion<T> lhs, const Quaternion<T>& rhs) {
    return lhs -= rhs;
}

template <std::floating_point T>
constexpr Quaternion<T> operator-(const Quaternion<T>& q) {
    return {-q.w, -q.x, -q.y, -q.z};
}

/// Hamilton product.  Non-commutative; associative and distributive.
template <std::floating_point T>
constexpr Quaternion<T> operator*(const Quaternion<T>& p, const Quaternion<T>& q) {
    return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.x * q.w + p.w * q.x - p.z * q.y + p.y * q.z,
            p.y * q.w + p.w * q.y + p.z * q.x - p.x * q.z,
            p.z * q.w + p.w * q.z - p.y * q.x + p.x * q.y};
}

template <std::floating_point T>
constexpr Quaternion<T> operator*(T scalar, Quaternion<T> q) {
    return q *= scalar;
}

template <std::floating_point T>
constexpr Quaternion<T> operator*(Quaternion<T> q, T scalar) {
    return q *= scalar;
}

/// Standard conjugate: negates the non-real part.
template <std::floating_point T>
constexpr Quaternion<T> conjugate(const Quaternion<T>& q) {
    return {q.w, -q.x, -q.y, -q.z};
}

/// Generalized conjugate along eps: q -> -eps * conjugate(q) * eps.
/// Negates exactly the eps component and fixes the other three.  For each
/// axis this map is an involution: self-inverse, additive, and
/// anti-homomorphic (f(pq) = f(q) f(p)).
template <std::floating_point T>
constexpr Quaternion<T> generalized_conjugate(const Quaternion<T>& q, Axis eps) {
    switch (eps) {
        case Axis::I: return {q.w, -q.x, q.y, q.z};
        case Axis::J: return {q.w, q.x, -q.y, q.z};
        default: return {q.w, q.x, q.y, -q.z};
    }
}

/// Conjugate of the generalized conjugate: q -> -eps * q * eps.  Keeps the
/// real and eps components, negates the other two imaginary components.
/// Self-inverse, additive, and homomorphic (f(pq) = f(p) f(q)).
template <std::floating_point T>
constexpr Quaternion<T> anti_involution(const Quaternion<T>& q, Axis eps) {
    switch (eps) {
        case Axis::I: return {q.w, q.x, -q.y, -q.z};
        case Axis::J: return {q.w, -q.x, q.y, -q.z};
        default: return {q.w, -q.x, -q.y, q.z};
    }
}

/// Extracts one real component through conjugation identities rather than
/// field access:
///
///   q0 = (q + conj(q)) / 2
///   q1 = ((gc_i(q) - q) * i) / 2
///   q2 = ((gc_j(q) - q) * j) / 2
///   q3 = ((gc_k(q) - q) * k) / 2
///
/// where gc_e is the generalized conjugate along e.  Each intermediate is
/// purely real; the real part is returned.
template <std::floating_point T>
constexpr T component(const Quaternion<T>& q, Basis which) {
    constexpr T half = T(1) / T(2);
    switch (which) {
        case Basis::One:
            return (half * (q + conjugate(q))).w;
        case Basis::I:
            return (half * ((generalized_conjugate(q, Axis::I) - q) * Quaternion<T>::unit_i())).w;
        case Basis::J:
            return (half * ((generalized_conjugate(q, Axis::J) - q) * Quaternion<T>::unit_j())).w;
        default:
            return (half * ((generalized_conjugate(q, Axis::K) - q) * Quaternion<T>::unit_k())).w;
    }
}

namespace detail {

template <std::floating_point T>
constexpr T abs_val(T v) {
    return v < T(0) ? -v : v;
}

}  // namespace detail

/// Componentwise comparison passing when the difference is within tol
/// absolutely or relative to the larger magnitude.
template <std::floating_point T>
constexpr bool approx_equal(const Quaternion<T>& p, const Quaternion<T>& q, T tol = T(1e-12)) {
    for (int c = 0; c < 4; ++c) {
        const T diff = detail::abs_val(p[c] - q[c]);
        const T mag = std::max(detail::abs_val(p[c]), detail::abs_val(q[c]));
        if (diff > tol && diff > tol * mag) return false;
    }
    return true;
}

namespace detail {

/// Renders a real with up to 12 significant digits; integers print without
/// a decimal point and negative zero is normalized.
inline std::string format_real(double v) {
    if (v == 0.0) v = 0.0;
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline void skip_ws(std::string_view s, std::size_t& pos) {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
}

inline bool parse_real(std::string_view s, std::size_t& pos, double& out) {
    skip_ws(s, pos);
    double sign = 1.0;
    std::size_t p = pos;
    if (p < s.size() && (s[p] == '+' || s[p] == '-')) {
        if (s[p] == '-') sign = -1.0;
        ++p;
        skip_ws(s, p);
    }
    const char* first = s.data() + p;
    const char* last = s.data() + s.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr == first) return false;
    pos = static_cast<std::size_t>(ptr - s.data());
    out = sign * value;
    return true;
}

}  // namespace detail

/// Tuple rendering "(a,b,c,d)" with up to 12 significant digits.
template <std::floating_point T>
std::string to_string(const Quaternion<T>& q) {
    std::string out = "(";
    out += detail::format_real(static_cast<double>(q.w));
    out += ',';
    out += detail::format_real(static_cast<double>(q.x));
    out += ',';
    out += detail::format_real(static_cast<double>(q.y));
    out += ',';
    out += detail::format_real(static_cast<double>(q.z));
    out += ')';
    return out;
}

/// Parses a quaternion literal: tuple form "(a,b,c,d)" or Cartesian form
/// "a+bi+cj+dk" with optional components and free signs, e.g. "-1+2i",
/// "i", "2.5k", "(1, 0, 0, 0)".  Returns nothing if the text is not a
/// single literal.
template <std::floating_point T = double>
std::optional<Quaternion<T>> parse_quaternion(std::string_view text) {
    std::size_t pos = 0;
    detail::skip_ws(text, pos);
    Quaternion<T> result{};

    if (pos < text.size() && text[pos] == '(') {
        ++pos;
        for (int c = 0; c < 4; ++c) {
            double value = 0.0;
            if (!detail::parse_real(text, pos, value)) return std::nullopt;
            result[c] = static_cast<T>(value);
            detail::skip_ws(text, pos);
            if (c < 3) {
                if (pos >= text.size() || text[pos] != ',') return std::nullopt;
                ++pos;
            }
        }
        if (pos >= text.size() || text[pos] != ')') return std::nullopt;
        ++pos;
        detail::skip_ws(text, pos);
        if (pos != text.size()) return std::nullopt;
        return result;
    }

    bool any = false;
    while (true) {
        detail::skip_ws(text, pos);
        if (pos == text.size()) break;
        double sign = 1.0;
        if (text[pos] == '+' || text[pos] == '-') {
            if (text[pos] == '-') sign = -1.0;
            ++pos;
            detail::skip_ws(text, pos);
        } else if (any) {
            return std::nullopt;  // components after the first need a sign
        }
        double magnitude = 1.0;
        bool have_number = false;
        {
            std::size_t probe = pos;
            double value = 0.0;
            if (probe < text.size() && text[probe] != '+' && text[probe] != '-' &&
                detail::parse_real(text, probe, value)) {
                magnitude = value;
                pos = probe;
                have_number = true;
            }
        }
        int slot = 0;
        if (pos < text.size() && (text[pos] == 'i' || text[pos] == 'j' || text[pos] == 'k')) {
            slot = text[pos] == 'i' ? 1 : text[pos] == 'j' ? 2 : 3;
            ++pos;
        } else if (!have_number) {
            return std::nullopt;
        }
        result[slot] += static_cast<T>(sign * magnitude);
        any = true;
    }
    if (!any) return std::nullopt;
    return result;
}

}  // namespace lqf
