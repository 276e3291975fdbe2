#pragma once

#include <complex>
#include <random>
#include <vector>

#include "sinkwalk/graph.hpp"
#include "sinkwalk/operators.hpp"

namespace sinkwalk::testing {

// 4-cycle u1..u4 with self-loops at u1 and u3, a sink hanging off u2 and
// another off u4. Ambient arc ids: edges (0,1),(1,2),(2,3),(3,0),(1,4),(3,5)
// give arcs 0..11 (forward before reverse), then loops 12 (at u1) and
// 13 (at u3). Internal arc order: a1,~a1,a2,~a2,a3,~a3,a4,~a4,b1,b2.
inline SymmetricDigraph looped_square() {
    return SymmetricDigraph::build(
        6, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {1, 4}, {3, 5}}, {0, 2});
}

inline std::vector<VertexId> looped_square_sinks() { return {4, 5}; }

inline constexpr ArcId kLoopedSquareB1 = 12;  // ambient id of the loop at u1
inline constexpr ArcId kLoopedSquareB1Internal = 8;
inline constexpr ArcId kLoopedSquareB2Internal = 9;

// deterministic complex state with full support
inline ArcVector random_state(ArcDomain domain, ArcId arc_count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    ArcVector psi{domain, ComplexVector(arc_count)};
    for (ArcId a = 0; a < arc_count; ++a) {
        psi.values[a] = Complex(unit(rng), unit(rng));
    }
    if (arc_count > 0) psi.values /= psi.values.norm();
    return psi;
}

}  // namespace sinkwalk::testing
