#pragma once

#include <memory>
#include <variant>

#include "dsq/metrics.hpp"

namespace dsq {

class HoloMap;
using HoloMapPtr = std::shared_ptr<const HoloMap>;

// Primitive injective holomorphic maps. Each has an exact inverse.

/// w -> w + b
struct Translate {
    std::vector<Complex> b;
};

/// w -> c (.) w, every c_j nonzero
struct DiagScale {
    std::vector<Complex> c;
};

/// w_j -> (w_j - a_j) / (1 - conj(a_j) w_j), |a_j| < 1; injective off the poles 1/conj(a_j).
struct MoebiusPerCoord {
    std::vector<Complex> a;
};

/// w -> (r^{d_1} w_1, ..., r^{d_n} w_n), r in (0, 1]
struct DPower {
    double r = 1.0;
    MultiIndex d;
};

/// w_j -> (w_j - shift_j) / (2 (1 + k)^{d_j}); recentres an image at a new base point and
/// shrinks it back into the target.
struct ShiftShrink {
    std::vector<Complex> shift;
    double k = 0.0;
    MultiIndex d;
};

/// Applied first to last.
struct Compose {
    std::vector<HoloMapPtr> steps;
};

struct InverseOf {
    HoloMapPtr inner;
};

/// (w_1, ..., w_k) -> (f_1(w_1), ..., f_k(w_k)) on consecutive coordinate blocks.
struct ProductMap {
    std::vector<HoloMapPtr> factors;
};

/// Composition tree of primitive maps. Immutable; copies share subtrees.
class HoloMap {
public:
    using Node = std::variant<Translate, DiagScale, MoebiusPerCoord, DPower, ShiftShrink, Compose, InverseOf, ProductMap>;

    HoloMap(Node node) : node_(std::move(node)) { validate(); }  // NOLINT(google-explicit-constructor)

    static HoloMap translate(std::vector<Complex> b) { return HoloMap(Translate{std::move(b)}); }
    static HoloMap diag_scale(std::vector<Complex> c) { return HoloMap(DiagScale{std::move(c)}); }
    static HoloMap moebius(std::vector<Complex> a) { return HoloMap(MoebiusPerCoord{std::move(a)}); }
    static HoloMap dpower(double r, MultiIndex d) { return HoloMap(DPower{r, std::move(d)}); }
    static HoloMap shift_shrink(std::vector<Complex> shift, double k, MultiIndex d) {
        return HoloMap(ShiftShrink{std::move(shift), k, std::move(d)});
    }
    static HoloMap compose(std::vector<HoloMap> steps) {
        Compose c;
        for (auto& s : steps) c.steps.push_back(std::make_shared<const HoloMap>(std::move(s)));
        return HoloMap(std::move(c));
    }
    static HoloMap product(std::vector<HoloMap> factors) {
        ProductMap p;
        for (auto& f : factors) p.factors.push_back(std::make_shared<const HoloMap>(std::move(f)));
        return HoloMap(std::move(p));
    }
    [[nodiscard]] HoloMap inverse() const { return HoloMap(InverseOf{std::make_shared<const HoloMap>(*this)}); }

    [[nodiscard]] const Node& node() const { return node_; }

    [[nodiscard]] std::size_t dim() const {
        return std::visit(
            [](const auto& n) -> std::size_t {
                using N = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<N, Translate>) return n.b.size();
                else if constexpr (std::is_same_v<N, DiagScale>) return n.c.size();
                else if constexpr (std::is_same_v<N, MoebiusPerCoord>) return n.a.size();
                else if constexpr (std::is_same_v<N, DPower>) return n.d.size();
                else if constexpr (std::is_same_v<N, ShiftShrink>) return n.shift.size();
                else if constexpr (std::is_same_v<N, Compose>) return n.steps.front()->dim();
                else if constexpr (std::is_same_v<N, InverseOf>) return n.inner->dim();
                else {
                    std::size_t s = 0;
                    for (const auto& f : n.factors) s += f->dim();
                    return s;
                }
            },
            node_);
    }

    /// Forward evaluation on raw coordinates. The result may be non-finite at a pole.
    [[nodiscard]] std::vector<Complex> apply(std::span<const Complex> w) const {
        require(w.size() == dim(), "HoloMap::apply: dimension mismatch");
        std::vector<Complex> out(w.begin(), w.end());
        forward(out);
        return out;
    }

    [[nodiscard]] std::vector<Complex> apply_inverse(std::span<const Complex> w) const {
        require(w.size() == dim(), "HoloMap::apply_inverse: dimension mismatch");
        std::vector<Complex> out(w.begin(), w.end());
        backward(out);
        return out;
    }

    /// Forward evaluation on a point; throws NumericFailure at a pole.
    [[nodiscard]] Point operator()(const Point& w) const { return finite_point(apply(w.span())); }
    [[nodiscard]] Point inverse_at(const Point& w) const { return finite_point(apply_inverse(w.span())); }

    void forward(std::span<Complex> w) const {
        std::visit([&](const auto& n) { fwd(n, w); }, node_);
    }
    void backward(std::span<Complex> w) const {
        std::visit([&](const auto& n) { bwd(n, w); }, node_);
    }

private:
    static Point finite_point(std::vector<Complex> v) {
        for (const auto& c : v)
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw NumericFailure("HoloMap: evaluated at a pole");
        return Point(std::move(v));
    }

    void validate() const {
        std::visit(
            [](const auto& n) {
                using N = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<N, DiagScale>) {
                    for (const auto& c : n.c) require(c != Complex{}, "DiagScale: zero factor");
                } else if constexpr (std::is_same_v<N, MoebiusPerCoord>) {
                    for (const auto& a : n.a) require(std::norm(a) < 1.0, "MoebiusPerCoord: parameter outside disk");
                } else if constexpr (std::is_same_v<N, DPower>) {
                    require(n.r > 0.0 && n.r <= 1.0, "DPower: r must lie in (0, 1]");
                } else if constexpr (std::is_same_v<N, ShiftShrink>) {
                    require(n.k >= 0.0 && n.shift.size() == n.d.size(), "ShiftShrink: bad parameters");
                } else if constexpr (std::is_same_v<N, Compose>) {
                    require(!n.steps.empty(), "Compose: empty");
                    for (const auto& s : n.steps) require(s->dim() == n.steps.front()->dim(), "Compose: dimension mismatch");
                } else if constexpr (std::is_same_v<N, ProductMap>) {
                    require(!n.factors.empty(), "ProductMap: empty");
                } else if constexpr (std::is_same_v<N, InverseOf>) {
                    require(n.inner != nullptr, "InverseOf: null");
                }
            },
            node_);
    }

    static void fwd(const Translate& n, std::span<Complex> w) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] += n.b[i];
    }
    static void bwd(const Translate& n, std::span<Complex> w) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] -= n.b[i];
    }
    static void fwd(const DiagScale& n, std::span<Complex> w) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] *= n.c[i];
    }
    static void bwd(const DiagScale& n, std::span<Complex> w) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] /= n.c[i];
    }
    static void fwd(const MoebiusPerCoord& n, std::span<Complex> w) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = dsq::moebius(n.a[i], w[i]);
    }
    static void bwd(const MoebiusPerCoord& n, std::span<Complex> w) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = dsq::moebius(-n.a[i], w[i]);
    }
    static void fwd(const DPower& n, std::span<Complex> w) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] *= std::pow(n.r, n.d[i]);
    }
    static void bwd(const DPower& n, std::span<Complex> w) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] /= std::pow(n.r, n.d[i]);
    }
    static void fwd(const ShiftShrink& n, std::span<Complex> w) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = (w[i] - n.shift[i]) / (2.0 * std::pow(1.0 + n.k, n.d[i]));
    }
    static void bwd(const ShiftShrink& n, std::span<Complex> w) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = 2.0 * std::pow(1.0 + n.k, n.d[i]) * w[i] + n.shift[i];
    }
    static void fwd(const Compose& n, std::span<Complex> w) {
        for (const auto& s : n.steps) s->forward(w);
    }
    static void bwd(const Compose& n, std::span<Complex> w) {
        for (auto it = n.steps.rbegin(); it != n.steps.rend(); ++it) (*it)->backward(w);
    }
    static void fwd(const InverseOf& n, std::span<Complex> w) { n.inner->backward(w); }
    static void bwd(const InverseOf& n, std::span<Complex> w) { n.inner->forward(w); }
    static void fwd(const ProductMap& n, std::span<Complex> w) {
        std::size_t off = 0;
        for (const auto& f : n.factors) {
            f->forward(w.subspan(off, f->dim()));
            off += f->dim();
        }
    }
    static void bwd(const ProductMap& n, std::span<Complex> w) {
        std::size_t off = 0;
        for (const auto& f : n.factors) {
            f->backward(w.subspan(off, f->dim()));
            off += f->dim();
        }
    }

    Node node_;
};

}  // namespace dsq
