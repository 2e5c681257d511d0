#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "quiverforge/gpa.hpp"
#include "quiverforge/reps.hpp"

using namespace quiverforge;
using namespace qft;

namespace {

std::shared_ptr<const PseudoModulation> a2_modulation() {
    auto g = std::make_shared<GPAlgebra>(
        gpa_build(a2_quiver(), {VertexAlgebra::field(), VertexAlgebra::field()}));
    return std::make_shared<const PseudoModulation>(premodulation_of(*g));
}

std::shared_ptr<const PseudoModulation> kronecker_modulation() {
    auto g = std::make_shared<GPAlgebra>(
        gpa_build(kronecker_quiver(), {VertexAlgebra::field(), VertexAlgebra::field()}));
    return std::make_shared<const PseudoModulation>(premodulation_of(*g));
}

std::shared_ptr<const PseudoModulation> m2_vertex_modulation() {
    auto g = std::make_shared<GPAlgebra>(
        gpa_build(a2_quiver(), {VertexAlgebra::matrix(2), VertexAlgebra::field()}));
    return std::make_shared<const PseudoModulation>(premodulation_of(*g));
}

ModulationRep simple_a2_rep(std::shared_ptr<const PseudoModulation> mod) {
    // V = (Q, Q) with phi = identity
    std::vector<std::vector<ExactMatrix>> act{{ExactMatrix::identity(1)},
                                              {ExactMatrix::identity(1)}};
    ExactMatrix phi(1, 1);
    phi(0, 0) = 1;
    std::map<std::pair<std::size_t, std::size_t>, ExactMatrix> maps;
    maps.insert({{0, 1}, phi});
    return ModulationRep(std::move(mod), {1, 1}, std::move(act), std::move(maps));
}

}  // namespace

TEST_CASE("functor F on the basic A2 representation") {
    auto mod = a2_modulation();
    ModulationRep rep = simple_a2_rep(mod);
    RightTModule module = functor_F(rep);
    CHECK(module.dim() == 2);
    // the arrow acts by the 1x1 identity block mapping V_1 into V_2
    const ExactMatrix& act = module.m_action(0, 1)[0];
    CHECK(act(1, 0) == 1);
    CHECK(act(0, 0) == 0);
    CHECK(roundtrip_check(rep));
}

TEST_CASE("functor F with a zero component") {
    auto mod = a2_modulation();
    std::vector<std::vector<ExactMatrix>> act{{ExactMatrix::identity(1)}, {ExactMatrix(0, 0)}};
    std::map<std::pair<std::size_t, std::size_t>, ExactMatrix> maps;
    maps.insert({{0, 1}, ExactMatrix(0, 1)});
    ModulationRep rep(mod, {1, 0}, std::move(act), std::move(maps));
    RightTModule module = functor_F(rep);
    CHECK(module.dim() == 1);
    CHECK(module.m_action(0, 1)[0].is_zero());
    CHECK(roundtrip_check(rep));
}

TEST_CASE("functor F over the Kronecker modulation") {
    auto mod = kronecker_modulation();
    std::vector<std::vector<ExactMatrix>> act{{ExactMatrix::identity(1)},
                                              {ExactMatrix::identity(2)}};
    // phi: V_1 (x) M -> V_2 sends 1 (x) a and 1 (x) b to the two basis vectors
    ExactMatrix phi(2, 2);
    phi(0, 0) = 1;
    phi(1, 1) = 1;
    std::map<std::pair<std::size_t, std::size_t>, ExactMatrix> maps;
    maps.insert({{0, 1}, phi});
    ModulationRep rep(mod, {1, 2}, std::move(act), std::move(maps));
    RightTModule module = functor_F(rep);
    CHECK(module.dim() == 3);
    CHECK(module.m_action(0, 1)[0](1, 0) == 1);
    CHECK(module.m_action(0, 1)[1](2, 0) == 1);
    CHECK(roundtrip_check(rep));
}

TEST_CASE("functor G recovers projective data from the regular module") {
    auto mod = a2_modulation();
    // the path algebra kA2 as a right module over itself
    RealizedAlgebra a2 = realize_bound_quiver(a2_presentation());
    const auto& alg = a2.carrier();
    auto right_mult = [&](std::size_t b) { return alg.right_mult_matrix(alg.basis_element(b)); };
    // carrier basis order: e_1, e_2, a
    std::vector<std::vector<ExactMatrix>> a0{{right_mult(0)}, {right_mult(1)}};
    std::map<std::pair<std::size_t, std::size_t>, std::vector<ExactMatrix>> m_action;
    m_action.insert({{0, 1}, {right_mult(2)}});
    RightTModule module(mod, 3, std::move(a0), std::move(m_action));
    ModulationRep rep = functor_G(module);
    CHECK(rep.dim(0) == 1);  // V e_1 spanned by e_1
    CHECK(rep.dim(1) == 2);  // V e_2 spanned by e_2 and the arrow
    CHECK(!rep.edge_map(0, 1).is_zero());
    // G then F reproduces the module up to the basis chosen by G
    CHECK(roundtrip_check(rep));
}

TEST_CASE("zero module gives the zero representation") {
    auto mod = a2_modulation();
    std::vector<std::vector<ExactMatrix>> a0{{ExactMatrix(0, 0)}, {ExactMatrix(0, 0)}};
    std::map<std::pair<std::size_t, std::size_t>, std::vector<ExactMatrix>> m_action;
    m_action.insert({{0, 1}, {ExactMatrix(0, 0)}});
    RightTModule module(mod, 0, std::move(a0), std::move(m_action));
    ModulationRep rep = functor_G(module);
    CHECK(rep.dim(0) == 0);
    CHECK(rep.dim(1) == 0);
}

TEST_CASE("module constructor rejects malformed actions") {
    auto mod = a2_modulation();
    // degree-one action pointing the wrong way: acts on V e_2 into V e_1
    std::vector<std::vector<ExactMatrix>> a0(2);
    ExactMatrix p1(2, 2), p2(2, 2);
    p1(0, 0) = 1;
    p2(1, 1) = 1;
    a0[0] = {p1};
    a0[1] = {p2};
    ExactMatrix bad(2, 2);
    bad(0, 1) = 1;  // sends V e_2 to V e_1
    std::map<std::pair<std::size_t, std::size_t>, std::vector<ExactMatrix>> m_action;
    m_action.insert({{0, 1}, {bad}});
    CHECK_THROWS_AS(RightTModule(mod, 2, std::move(a0), std::move(m_action)),
                    std::invalid_argument);
}

TEST_CASE("morphism checker") {
    auto mod = a2_modulation();
    ModulationRep rep = simple_a2_rep(mod);
    std::vector<ExactMatrix> id{ExactMatrix::identity(1), ExactMatrix::identity(1)};
    CHECK(check_rep_morphism(id, rep, rep));
    std::vector<ExactMatrix> zero{ExactMatrix(1, 1), ExactMatrix(1, 1)};
    CHECK(check_rep_morphism(zero, rep, rep));
    // scaling only the target space breaks the square by a factor of two
    std::vector<ExactMatrix> skew{ExactMatrix::identity(1), ExactMatrix(1, 1)};
    skew[1](0, 0) = 2;
    CHECK(!check_rep_morphism(skew, rep, rep));
}

TEST_CASE("random representations round-trip exactly") {
    std::uint64_t seed = 100;
    for (const auto& mod : {a2_modulation(), kronecker_modulation(), m2_vertex_modulation()}) {
        for (int trial = 0; trial < 6; ++trial) {
            Rng rng(seed++);
            ModulationRep rep = random_rep(mod, rng);
            CHECK(roundtrip_check(rep));
            std::size_t total = 0;
            for (std::size_t v = 0; v < mod->num_vertices(); ++v) total += rep.dim(v);
            CHECK(functor_F(rep).dim() == total);
        }
    }
}

TEST_CASE("representations over a matrix-block vertex round-trip") {
    auto mod = m2_vertex_modulation();
    // V_1 = the simple right M_2-module (dimension 2), V_2 = Q
    const auto& A1 = mod->concrete_algebra(0);
    std::vector<ExactMatrix> act1(4, ExactMatrix(2, 2));
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) act1[A1.unit_index(0, r, c)](c, r) = 1;
    std::vector<std::vector<ExactMatrix>> act{act1, {ExactMatrix::identity(1)}};
    // a valid phi: solve for one and use a canonical member from random_rep
    Rng rng(7);
    ModulationRep sample = random_rep(mod, rng);
    // direct construction with the known module structure also passes checks
    ModulationRep rep(mod, {2, 1}, act,
                      {{{0, 1}, ExactMatrix(1, 2 * mod->concrete_bimodule(0, 1)->dim())}});
    CHECK(roundtrip_check(rep));
    CHECK(roundtrip_check(sample));
}

TEST_CASE("morphism spaces compose through F") {
    std::uint64_t seed = 500;
    auto mod = kronecker_modulation();
    for (int trial = 0; trial < 10; ++trial) {
        Rng rng(seed++);
        ModulationRep r1 = random_rep(mod, rng);
        ModulationRep r2 = random_rep(mod, rng);
        ModulationRep r3 = random_rep(mod, rng);
        auto alpha = random_morphism(r1, r2, rng);
        auto beta = random_morphism(r2, r3, rng);
        CHECK(check_rep_morphism(alpha, r1, r2));
        CHECK(check_rep_morphism(beta, r2, r3));
        auto composed = compose_morphisms(beta, alpha);
        CHECK(check_rep_morphism(composed, r1, r3));
        ExactMatrix lhs = functor_F_morphism(composed, r1, r3);
        ExactMatrix rhs = functor_F_morphism(beta, r2, r3) * functor_F_morphism(alpha, r1, r2);
        CHECK(lhs == rhs);
    }
}
