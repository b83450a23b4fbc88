#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dsq {

using Complex = std::complex<double>;

/// Thrown when a caller breaks a precondition (dimension mismatch, bad flag, a = 0, ...).
class ContractViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an iterative routine cannot establish its result within its caps.
class NumericFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnsupportedDomain : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw ContractViolation(what);
}

// ---------------------------------------------------------------------------
// Point
// ---------------------------------------------------------------------------

/// A point of C^n. Coordinates are always finite.
class Point {
public:
    Point() = default;
    explicit Point(std::vector<Complex> coords) : coords_(std::move(coords)) { validate(); }
    Point(std::initializer_list<Complex> coords) : coords_(coords) { validate(); }

    static Point zero(std::size_t n) { return Point(std::vector<Complex>(n, Complex{})); }

    /// Real-coordinate convenience constructor.
    static Point real(std::initializer_list<double> xs) {
        std::vector<Complex> c;
        for (double x : xs) c.emplace_back(x, 0.0);
        return Point(std::move(c));
    }

    [[nodiscard]] std::size_t dim() const { return coords_.size(); }
    [[nodiscard]] const Complex& operator[](std::size_t i) const { return coords_[i]; }
    [[nodiscard]] const std::vector<Complex>& coords() const { return coords_; }
    [[nodiscard]] std::span<const Complex> span() const { return coords_; }

    [[nodiscard]] bool is_zero() const {
        return std::all_of(coords_.begin(), coords_.end(), [](const Complex& c) { return c == Complex{}; });
    }

    [[nodiscard]] double norm() const {
        double s = 0.0;
        for (const auto& c : coords_) s += std::norm(c);
        return std::sqrt(s);
    }

    [[nodiscard]] Point slice(std::size_t offset, std::size_t count) const {
        return Point(std::vector<Complex>(coords_.begin() + static_cast<std::ptrdiff_t>(offset),
                                          coords_.begin() + static_cast<std::ptrdiff_t>(offset + count)));
    }

    friend bool operator==(const Point&, const Point&) = default;

private:
    void validate() const {
        for (const auto& c : coords_) {
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
                throw ContractViolation("Point: non-finite coordinate");
        }
    }

    std::vector<Complex> coords_;
};

inline Point concat(const std::vector<Point>& parts) {
    std::vector<Complex> c;
    for (const auto& p : parts) c.insert(c.end(), p.coords().begin(), p.coords().end());
    return Point(std::move(c));
}

inline double distance(const Point& a, const Point& b) {
    require(a.dim() == b.dim(), "distance: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += std::norm(a[i] - b[i]);
    return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// MultiIndex
// ---------------------------------------------------------------------------

/// Weight vector d = (d_1, ..., d_n) of positive integers, with cached max (L) and min.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> d) : d_(std::move(d)) {
        require(!d_.empty(), "MultiIndex: empty");
        for (int v : d_) require(v >= 1, "MultiIndex: entries must be >= 1");
        max_ = *std::max_element(d_.begin(), d_.end());
        min_ = *std::min_element(d_.begin(), d_.end());
    }
    MultiIndex(std::initializer_list<int> d) : MultiIndex(std::vector<int>(d)) {}

    static MultiIndex ones(std::size_t n) { return MultiIndex(std::vector<int>(n, 1)); }

    [[nodiscard]] std::size_t size() const { return d_.size(); }
    [[nodiscard]] int operator[](std::size_t i) const { return d_[i]; }
    [[nodiscard]] const std::vector<int>& values() const { return d_; }
    [[nodiscard]] int L() const { return max_; }
    [[nodiscard]] int Lmin() const { return min_; }
    [[nodiscard]] bool is_constant() const { return max_ == min_; }

    [[nodiscard]] MultiIndex slice(std::size_t offset, std::size_t count) const {
        return MultiIndex(std::vector<int>(d_.begin() + static_cast<std::ptrdiff_t>(offset),
                                           d_.begin() + static_cast<std::ptrdiff_t>(offset + count)));
    }

    [[nodiscard]] std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < d_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(d_[i]);
        }
        return s;
    }

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.d_ == b.d_; }

private:
    std::vector<int> d_;
    int max_ = 0;
    int min_ = 0;
};

inline MultiIndex concat(const std::vector<MultiIndex>& parts) {
    std::vector<int> d;
    for (const auto& m : parts) d.insert(d.end(), m.values().begin(), m.values().end());
    return MultiIndex(std::move(d));
}

/// The weighted action (t^{d_1} z_1, ..., t^{d_n} z_n) for real t.
inline Point weighted_scale(const Point& z, const MultiIndex& d, double t) {
    require(z.dim() == d.size(), "weighted_scale: dimension mismatch");
    std::vector<Complex> c(z.dim());
    for (std::size_t i = 0; i < z.dim(); ++i) c[i] = z[i] * std::pow(t, d[i]);
    return Point(std::move(c));
}

/// The weighted action for complex lambda.
inline Point weighted_scale(const Point& z, const MultiIndex& d, Complex lambda) {
    require(z.dim() == d.size(), "weighted_scale: dimension mismatch");
    std::vector<Complex> c(z.dim());
    for (std::size_t i = 0; i < z.dim(); ++i) c[i] = z[i] * std::pow(lambda, d[i]);
    return Point(std::move(c));
}

// ---------------------------------------------------------------------------
// Bracket
// ---------------------------------------------------------------------------

/// A scalar known to lie in [lo, hi].
struct BracketedValue {
    double lo = 0.0;
    double hi = 0.0;

    [[nodiscard]] double mid() const { return 0.5 * (lo + hi); }
    [[nodiscard]] double width() const { return hi - lo; }
    [[nodiscard]] bool contains(double x, double slack = 0.0) const { return x >= lo - slack && x <= hi + slack; }

    /// Gap between two brackets; zero when they overlap.
    [[nodiscard]] double gap(const BracketedValue& o) const { return std::max({0.0, lo - o.hi, o.lo - hi}); }
};

// ---------------------------------------------------------------------------
// Random numbers
// ---------------------------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derive an independent stream seed from a parent seed and a label.
inline std::uint64_t derive_seed(std::uint64_t parent, std::string_view label) {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
    for (unsigned char ch : label) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return splitmix64(parent ^ splitmix64(h));
}

inline std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) {
    return splitmix64(parent ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

/// xoshiro256** generator with portable uniform/normal draws, so a seed yields
/// the same stream on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& s : s_) {
            x = splitmix64(x);
            s = x;
        }
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    double normal() {
        // Box-Muller; u1 in (0, 1].
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Uniform point of the closed unit disk.
    Complex unit_disk() {
        const double r = std::sqrt(uniform());
        const double th = uniform(0.0, 2.0 * std::numbers::pi);
        return std::polar(r, th);
    }

    /// Uniform direction on the unit sphere of C^n = R^{2n}.
    Point sphere(std::size_t n) {
        std::vector<Complex> c(n);
        double s = 0.0;
        do {
            s = 0.0;
            for (auto& v : c) {
                v = Complex(normal(), normal());
                s += std::norm(v);
            }
        } while (s == 0.0);
        s = std::sqrt(s);
        for (auto& v : c) v /= s;
        return Point(std::move(c));
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4]{};
};

}  // namespace dsq
