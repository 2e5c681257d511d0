#pragma once

#include "quiverforge/algebra.hpp"
#include "quiverforge/quiver.hpp"

namespace qft {

using namespace quiverforge;

inline Quiver a2_quiver() { return Quiver({"1", "2"}, {{"a", "1", "2"}}); }

inline Quiver kronecker_quiver() {
    return Quiver({"1", "2"}, {{"a", "1", "2"}, {"b", "1", "2"}});
}

inline Quiver a3_quiver() {
    return Quiver({"1", "2", "3"}, {{"alpha", "1", "2"}, {"beta", "2", "3"}});
}

inline Quiver loop_quiver() { return Quiver({"v"}, {{"x", "v", "v"}}); }

inline Quiver two_loop_quiver() { return Quiver({"v"}, {{"x", "v", "v"}, {"y", "v", "v"}}); }

inline Quiver loop_arrow_quiver() {
    return Quiver({"1", "2"}, {{"x", "1", "1"}, {"a", "1", "2"}});
}

inline BoundQuiverPresentation a2_presentation() {
    return BoundQuiverPresentation(a2_quiver(), {}, 2);
}

inline BoundQuiverPresentation kronecker_presentation() {
    return BoundQuiverPresentation(kronecker_quiver(), {}, 2);
}

/// A3 with the length-two path set to zero (alpha then beta).
inline BoundQuiverPresentation a3_rel_presentation() {
    Quiver q = a3_quiver();
    Relation rel{{{Rational(1), Path{0, {q.arrow_index("alpha"), q.arrow_index("beta")}}}}};
    return BoundQuiverPresentation(q, {rel}, 2);
}

inline BoundQuiverPresentation a3_presentation() {
    return BoundQuiverPresentation(a3_quiver(), {}, 3);
}

/// k[x]/(x^2) as the one-loop quiver with the relation x.x = 0.
inline BoundQuiverPresentation jordan_presentation() {
    Quiver q = loop_quiver();
    Relation rel{{{Rational(1), Path{0, {0, 0}}}}};
    return BoundQuiverPresentation(q, {rel}, 2);
}

/// Commutative square: a,b and c,d parallel length-two paths identified.
inline BoundQuiverPresentation square_presentation() {
    Quiver q({"1", "2", "3", "4"},
             {{"a", "1", "2"}, {"b", "2", "4"}, {"c", "1", "3"}, {"d", "3", "4"}});
    Relation rel{{{Rational(1), Path{0, {q.arrow_index("a"), q.arrow_index("b")}}},
                  {Rational(-1), Path{0, {q.arrow_index("c"), q.arrow_index("d")}}}}};
    return BoundQuiverPresentation(q, {rel}, 3);
}

inline bool same_span(const std::vector<Element>& xs, const std::vector<Element>& ys,
                      std::size_t ambient) {
    RowSpace a(ambient, xs), b(ambient, ys);
    if (a.dim() != b.dim()) return false;
    for (const auto& y : ys)
        if (!a.contains(y)) return false;
    return true;
}

}  // namespace qft
