#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "quiverforge/matrix.hpp"
#include "quiverforge/modulation.hpp"

namespace quiverforge {

// Representations of a concrete pseudo-modulation and right modules over its
// tensor algebra. Right actions are stored with the column convention
// v.a = M_a v, so v.(ab) = M_b M_a v.

/// Representation (V_i, phi): a right A_i-module per vertex and, per stored
/// bimodule, an A_j-linear map phi: V_i (x)_{A_i} M -> V_j presented as a
/// matrix on V_i (x)_k M (columns indexed v * dim M + m) that balances the
/// middle action. All conditions are machine-checked at construction.
class ModulationRep {
public:
    ModulationRep(std::shared_ptr<const PseudoModulation> mod, std::vector<std::size_t> dims,
                  std::vector<std::vector<ExactMatrix>> vertex_action,
                  std::map<std::pair<std::size_t, std::size_t>, ExactMatrix> edge_maps)
        : mod_(std::move(mod)),
          dims_(std::move(dims)),
          vertex_action_(std::move(vertex_action)),
          edge_maps_(std::move(edge_maps)) {
        if (!mod_->is_concrete())
            throw std::invalid_argument("representations need a concrete modulation");
        if (dims_.size() != mod_->num_vertices() ||
            vertex_action_.size() != mod_->num_vertices())
            throw std::invalid_argument("one module per vertex required");
        for (std::size_t v = 0; v < dims_.size(); ++v) verify_vertex_module(v);
        for (const auto& [key, bim] : mod_->bimodules()) {
            if (!edge_maps_.count(key))
                throw std::invalid_argument("missing edge map for a stored bimodule");
            verify_edge_map(key.first, key.second);
        }
        if (edge_maps_.size() != mod_->bimodules().size())
            throw std::invalid_argument("edge map without a stored bimodule");
    }

    const PseudoModulation& modulation() const { return *mod_; }
    const std::shared_ptr<const PseudoModulation>& modulation_ptr() const { return mod_; }
    std::size_t dim(std::size_t v) const { return dims_.at(v); }
    const std::vector<std::size_t>& dims() const { return dims_; }
    const std::vector<ExactMatrix>& vertex_action(std::size_t v) const {
        return vertex_action_.at(v);
    }
    const ExactMatrix& edge_map(std::size_t i, std::size_t j) const {
        return edge_maps_.at({i, j});
    }
    const std::map<std::pair<std::size_t, std::size_t>, ExactMatrix>& edge_maps() const {
        return edge_maps_;
    }

    friend bool operator==(const ModulationRep& x, const ModulationRep& y) {
        return x.mod_ == y.mod_ && x.dims_ == y.dims_ &&
               x.vertex_action_ == y.vertex_action_ && x.edge_maps_ == y.edge_maps_;
    }

private:
    void verify_vertex_module(std::size_t v) {
        const auto& A = mod_->concrete_algebra(v);
        const auto& act = vertex_action_[v];
        if (act.size() != A.dim())
            throw std::invalid_argument("one action matrix per algebra basis element");
        std::size_t d = dims_[v];
        for (const auto& m : act)
            if (m.rows() != d || m.cols() != d)
                throw std::invalid_argument("vertex action shape mismatch");
        if (d == 0) return;
        ExactMatrix unit_act(d, d);
        const Element& u = A.alg.unit();
        for (std::size_t a = 0; a < A.dim(); ++a)
            if (u[a] != 0) unit_act = unit_act + u[a] * act[a];
        if (!(unit_act == ExactMatrix::identity(d)))
            throw std::invalid_argument("vertex module is not unital");
        for (std::size_t a = 0; a < A.dim(); ++a)
            for (std::size_t b = 0; b < A.dim(); ++b) {
                ExactMatrix expected(d, d);
                for (const auto& term : A.alg.basis_product(a, b))
                    expected = expected + term.coef * act[term.idx];
                if (!(expected == act[b] * act[a]))
                    throw std::invalid_argument("vertex action is not a right module");
            }
    }

    void verify_edge_map(std::size_t i, std::size_t j) {
        const ConcreteBimodule& M = *mod_->concrete_bimodule(i, j);
        const auto& Ai = mod_->concrete_algebra(i);
        const auto& Aj = mod_->concrete_algebra(j);
        const ExactMatrix& phi = edge_maps_.at({i, j});
        std::size_t di = dims_[i], dj = dims_[j], dm = M.dim();
        if (phi.rows() != dj || phi.cols() != di * dm)
            throw std::invalid_argument("edge map shape mismatch");
        ExactMatrix idm = ExactMatrix::identity(dm);
        ExactMatrix idv = ExactMatrix::identity(di);
        for (std::size_t a = 0; a < Ai.dim(); ++a) {
            // phi(v.a (x) m) = phi(v (x) a.m)
            ExactMatrix lhs = phi * kronecker(vertex_action_[i][a], idm);
            ExactMatrix rhs = phi * kronecker(idv, M.left_action(a));
            if (!(lhs == rhs))
                throw std::invalid_argument("edge map does not balance the middle action");
        }
        for (std::size_t b = 0; b < Aj.dim(); ++b) {
            // phi(v (x) m.b) = phi(v (x) m).b
            ExactMatrix lhs = phi * kronecker(idv, M.right_action(b));
            ExactMatrix rhs = vertex_action_[j][b] * phi;
            if (!(lhs == rhs))
                throw std::invalid_argument("edge map is not right-linear over the target");
        }
    }

    std::shared_ptr<const PseudoModulation> mod_;
    std::vector<std::size_t> dims_;
    std::vector<std::vector<ExactMatrix>> vertex_action_;
    std::map<std::pair<std::size_t, std::size_t>, ExactMatrix> edge_maps_;
};

/// Right module over the tensor algebra of the modulation: actions of the
/// degree-zero algebra basis (per vertex) and of every bimodule basis
/// element; higher degrees act by composition, so the generators determine
/// everything. Construction checks the tensor-algebra relations.
class RightTModule {
public:
    RightTModule(std::shared_ptr<const PseudoModulation> mod, std::size_t dim,
                 std::vector<std::vector<ExactMatrix>> a0_action,
                 std::map<std::pair<std::size_t, std::size_t>, std::vector<ExactMatrix>>
                     m_action)
        : mod_(std::move(mod)),
          dim_(dim),
          a0_action_(std::move(a0_action)),
          m_action_(std::move(m_action)) {
        if (!mod_->is_concrete())
            throw std::invalid_argument("modules need a concrete modulation");
        verify();
    }

    const PseudoModulation& modulation() const { return *mod_; }
    const std::shared_ptr<const PseudoModulation>& modulation_ptr() const { return mod_; }
    std::size_t dim() const { return dim_; }
    const std::vector<ExactMatrix>& a0_action(std::size_t v) const { return a0_action_.at(v); }
    const std::vector<ExactMatrix>& m_action(std::size_t i, std::size_t j) const {
        return m_action_.at({i, j});
    }

    /// Projector onto V e_v (action of the unit of the vertex algebra).
    ExactMatrix vertex_projector(std::size_t v) const {
        ExactMatrix p(dim_, dim_);
        const Element& u = mod_->concrete_algebra(v).alg.unit();
        for (std::size_t a = 0; a < u.size(); ++a)
            if (u[a] != 0) p = p + u[a] * a0_action_[v][a];
        return p;
    }

    friend bool operator==(const RightTModule& x, const RightTModule& y) {
        return x.mod_ == y.mod_ && x.dim_ == y.dim_ && x.a0_action_ == y.a0_action_ &&
               x.m_action_ == y.m_action_;
    }

private:
    void verify() {
        if (a0_action_.size() != mod_->num_vertices())
            throw std::invalid_argument("one action family per vertex required");
        for (std::size_t v = 0; v < mod_->num_vertices(); ++v) {
            const auto& A = mod_->concrete_algebra(v);
            if (a0_action_[v].size() != A.dim())
                throw std::invalid_argument("one action matrix per algebra basis element");
            for (const auto& m : a0_action_[v])
                if (m.rows() != dim_ || m.cols() != dim_)
                    throw std::invalid_argument("action matrix shape mismatch");
        }
        if (dim_ == 0) return;
        // 1 = sum of vertex units acts as the identity
        ExactMatrix one(dim_, dim_);
        for (std::size_t v = 0; v < mod_->num_vertices(); ++v)
            one = one + vertex_projector(v);
        if (!(one == ExactMatrix::identity(dim_)))
            throw std::invalid_argument("unit does not act as the identity");
        // right-module relations inside and across vertex algebras
        for (std::size_t v = 0; v < mod_->num_vertices(); ++v) {
            const auto& A = mod_->concrete_algebra(v);
            for (std::size_t a = 0; a < A.dim(); ++a)
                for (std::size_t b = 0; b < A.dim(); ++b) {
                    ExactMatrix expected(dim_, dim_);
                    for (const auto& term : A.alg.basis_product(a, b))
                        expected = expected + term.coef * a0_action_[v][term.idx];
                    if (!(expected == a0_action_[v][b] * a0_action_[v][a]))
                        throw std::invalid_argument("degree-zero action is not a module");
                }
            for (std::size_t w = 0; w < mod_->num_vertices(); ++w) {
                if (v == w) continue;
                const auto& B = mod_->concrete_algebra(w);
                for (std::size_t a = 0; a < A.dim(); ++a)
                    for (std::size_t b = 0; b < B.dim(); ++b)
                        if (!(a0_action_[w][b] * a0_action_[v][a]).is_zero())
                            throw std::invalid_argument(
                                "cross-vertex products must act as zero");
            }
        }
        // bimodule compatibilities: (a m b) acts as R_b act(m) R_a
        for (const auto& [key, bim] : mod_->bimodules()) {
            auto [i, j] = key;
            const auto& M = std::get<ConcreteBimodule>(bim);
            auto it = m_action_.find(key);
            if (it == m_action_.end())
                throw std::invalid_argument("missing action for a stored bimodule");
            const auto& act = it->second;
            if (act.size() != M.dim())
                throw std::invalid_argument("one action matrix per bimodule basis element");
            for (const auto& m : act)
                if (m.rows() != dim_ || m.cols() != dim_)
                    throw std::invalid_argument("action matrix shape mismatch");
            const auto& Ai = mod_->concrete_algebra(i);
            const auto& Aj = mod_->concrete_algebra(j);
            for (std::size_t t = 0; t < M.dim(); ++t) {
                for (std::size_t a = 0; a < Ai.dim(); ++a) {
                    ExactMatrix lhs(dim_, dim_);
                    for (std::size_t u = 0; u < M.dim(); ++u)
                        if (M.left_action(a)(u, t) != 0)
                            lhs = lhs + M.left_action(a)(u, t) * act[u];
                    if (!(lhs == act[t] * a0_action_[i][a]))
                        throw std::invalid_argument(
                            "bimodule action incompatible with the left structure");
                }
                for (std::size_t b = 0; b < Aj.dim(); ++b) {
                    ExactMatrix lhs(dim_, dim_);
                    for (std::size_t u = 0; u < M.dim(); ++u)
                        if (M.right_action(b)(u, t) != 0)
                            lhs = lhs + M.right_action(b)(u, t) * act[u];
                    if (!(lhs == a0_action_[j][b] * act[t]))
                        throw std::invalid_argument(
                            "bimodule action incompatible with the right structure");
                }
            }
        }
        if (m_action_.size() != mod_->bimodules().size())
            throw std::invalid_argument("action for a bimodule that is not stored");
    }

    std::shared_ptr<const PseudoModulation> mod_;
    std::size_t dim_;
    std::vector<std::vector<ExactMatrix>> a0_action_;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<ExactMatrix>> m_action_;
};

/// V = (+) V_i with A_0 acting through the projections and the degree-one
/// action read off the edge maps.
inline RightTModule functor_F(const ModulationRep& rep) {
    const PseudoModulation& mod = rep.modulation();
    std::size_t nv = mod.num_vertices();
    std::vector<std::size_t> offset(nv + 1, 0);
    for (std::size_t v = 0; v < nv; ++v) offset[v + 1] = offset[v] + rep.dim(v);
    std::size_t dim = offset[nv];

    std::vector<std::vector<ExactMatrix>> a0(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        for (std::size_t a = 0; a < mod.concrete_algebra(v).dim(); ++a) {
            ExactMatrix m(dim, dim);
            const ExactMatrix& block = rep.vertex_action(v)[a];
            for (std::size_t r = 0; r < rep.dim(v); ++r)
                for (std::size_t c = 0; c < rep.dim(v); ++c)
                    m(offset[v] + r, offset[v] + c) = block(r, c);
            a0[v].push_back(std::move(m));
        }
    }

    std::map<std::pair<std::size_t, std::size_t>, std::vector<ExactMatrix>> m_action;
    for (const auto& [key, bim] : mod.bimodules()) {
        auto [i, j] = key;
        const auto& M = std::get<ConcreteBimodule>(bim);
        const ExactMatrix& phi = rep.edge_map(i, j);
        std::vector<ExactMatrix> acts;
        for (std::size_t t = 0; t < M.dim(); ++t) {
            ExactMatrix m(dim, dim);
            for (std::size_t c = 0; c < rep.dim(i); ++c)
                for (std::size_t r = 0; r < rep.dim(j); ++r)
                    m(offset[j] + r, offset[i] + c) = phi(r, c * M.dim() + t);
            acts.push_back(std::move(m));
        }
        m_action.insert({key, std::move(acts)});
    }
    return RightTModule(rep.modulation_ptr(), dim, std::move(a0), std::move(m_action));
}

/// V_i = V e_i with the edge maps induced by the degree-one action. Rejects
/// modules whose action leaks outside V_j.
inline ModulationRep functor_G(const RightTModule& mod) {
    const PseudoModulation& m = mod.modulation();
    std::size_t nv = m.num_vertices();
    std::vector<std::vector<Vec>> vertex_basis(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        ExactMatrix p = mod.vertex_projector(v);
        RowSpace span(mod.dim());
        for (std::size_t c = 0; c < mod.dim(); ++c) span.insert(p.col(c));
        vertex_basis[v] = span.rows();
    }

    std::vector<std::size_t> dims(nv);
    std::vector<std::vector<ExactMatrix>> vertex_action(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        dims[v] = vertex_basis[v].size();
        for (std::size_t a = 0; a < m.concrete_algebra(v).dim(); ++a) {
            ExactMatrix act(dims[v], dims[v]);
            for (std::size_t k = 0; k < dims[v]; ++k) {
                Vec image = mod.a0_action(v)[a].apply(vertex_basis[v][k]);
                auto c = coords_in_span(vertex_basis[v], image);
                if (!c) throw std::invalid_argument("malformed module: V e_i not invariant");
                for (std::size_t r = 0; r < dims[v]; ++r) act(r, k) = (*c)[r];
            }
            vertex_action[v].push_back(std::move(act));
        }
    }

    std::map<std::pair<std::size_t, std::size_t>, ExactMatrix> edge_maps;
    for (const auto& [key, bim] : m.bimodules()) {
        auto [i, j] = key;
        const auto& M = std::get<ConcreteBimodule>(bim);
        ExactMatrix phi(dims[j], dims[i] * M.dim());
        for (std::size_t k = 0; k < dims[i]; ++k)
            for (std::size_t t = 0; t < M.dim(); ++t) {
                Vec image = mod.m_action(i, j)[t].apply(vertex_basis[i][k]);
                auto c = coords_in_span(vertex_basis[j], image);
                if (!c)
                    throw std::invalid_argument(
                        "malformed module: V_i . M escapes V_j");
                for (std::size_t r = 0; r < dims[j]; ++r) phi(r, k * M.dim() + t) = (*c)[r];
            }
        edge_maps.insert({key, std::move(phi)});
    }
    return ModulationRep(mod.modulation_ptr(), std::move(dims), std::move(vertex_action),
                         std::move(edge_maps));
}

/// Morphism data: one matrix per vertex. Checks A_i-linearity and the
/// commuting squares against the edge maps.
inline bool check_rep_morphism(const std::vector<ExactMatrix>& alpha,
                               const ModulationRep& from, const ModulationRep& to) {
    const PseudoModulation& m = from.modulation();
    if (&m != &to.modulation() && from.modulation_ptr() != to.modulation_ptr())
        throw std::invalid_argument("morphism between different modulations");
    if (alpha.size() != m.num_vertices()) return false;
    for (std::size_t v = 0; v < m.num_vertices(); ++v) {
        if (alpha[v].rows() != to.dim(v) || alpha[v].cols() != from.dim(v)) return false;
        for (std::size_t a = 0; a < m.concrete_algebra(v).dim(); ++a)
            if (!(alpha[v] * from.vertex_action(v)[a] == to.vertex_action(v)[a] * alpha[v]))
                return false;
    }
    for (const auto& [key, bim] : m.bimodules()) {
        auto [i, j] = key;
        const auto& M = std::get<ConcreteBimodule>(bim);
        ExactMatrix lhs = alpha[j] * from.edge_map(i, j);
        ExactMatrix rhs = to.edge_map(i, j) * kronecker(alpha[i], ExactMatrix::identity(M.dim()));
        if (!(lhs == rhs)) return false;
    }
    return true;
}

/// F on morphisms: the block-diagonal matrix on (+) V_i.
inline ExactMatrix functor_F_morphism(const std::vector<ExactMatrix>& alpha,
                                      const ModulationRep& from, const ModulationRep& to) {
    std::size_t nv = from.modulation().num_vertices();
    std::vector<std::size_t> foff(nv + 1, 0), toff(nv + 1, 0);
    for (std::size_t v = 0; v < nv; ++v) {
        foff[v + 1] = foff[v] + from.dim(v);
        toff[v + 1] = toff[v] + to.dim(v);
    }
    ExactMatrix out(toff[nv], foff[nv]);
    for (std::size_t v = 0; v < nv; ++v)
        for (std::size_t r = 0; r < to.dim(v); ++r)
            for (std::size_t c = 0; c < from.dim(v); ++c)
                out(toff[v] + r, foff[v] + c) = alpha[v](r, c);
    return out;
}

/// Exact data round trip: G(F(rep)) == rep and F(G(F(rep))) == F(rep).
inline bool roundtrip_check(const ModulationRep& rep) {
    RightTModule module = functor_F(rep);
    ModulationRep back = functor_G(module);
    if (!(back == rep)) return false;
    return functor_F(back) == module;
}

/// Basis of the morphism space Hom(from, to): solves the linearity and
/// square constraints; each solution is flattened per vertex in order.
inline std::vector<std::vector<ExactMatrix>> morphism_space(const ModulationRep& from,
                                                            const ModulationRep& to) {
    const PseudoModulation& m = from.modulation();
    std::size_t nv = m.num_vertices();
    std::vector<std::size_t> var_offset(nv + 1, 0);
    for (std::size_t v = 0; v < nv; ++v)
        var_offset[v + 1] = var_offset[v] + to.dim(v) * from.dim(v);
    std::size_t unknowns = var_offset[nv];
    if (unknowns == 0) return {};
    std::vector<Vec> eqs;
    auto var = [&](std::size_t v, std::size_t r, std::size_t c) {
        return var_offset[v] + r * from.dim(v) + c;
    };
    for (std::size_t v = 0; v < nv; ++v)
        for (std::size_t a = 0; a < m.concrete_algebra(v).dim(); ++a) {
            const ExactMatrix& F = from.vertex_action(v)[a];
            const ExactMatrix& T = to.vertex_action(v)[a];
            for (std::size_t r = 0; r < to.dim(v); ++r)
                for (std::size_t c = 0; c < from.dim(v); ++c) {
                    Vec eq(unknowns, Rational(0));
                    for (std::size_t k = 0; k < from.dim(v); ++k)
                        eq[var(v, r, k)] += F(k, c);
                    for (std::size_t k = 0; k < to.dim(v); ++k)
                        eq[var(v, k, c)] -= T(r, k);
                    if (!is_zero_vec(eq)) eqs.push_back(std::move(eq));
                }
        }
    for (const auto& [key, bim] : m.bimodules()) {
        auto [i, j] = key;
        const auto& M = std::get<ConcreteBimodule>(bim);
        const ExactMatrix& pf = from.edge_map(i, j);
        const ExactMatrix& pt = to.edge_map(i, j);
        for (std::size_t r = 0; r < to.dim(j); ++r)
            for (std::size_t c = 0; c < from.dim(i); ++c)
                for (std::size_t t = 0; t < M.dim(); ++t) {
                    Vec eq(unknowns, Rational(0));
                    // (alpha_j . pf)(r, c*dm+t) = sum_k alpha_j(r,k) pf(k, c dm + t)
                    for (std::size_t k = 0; k < from.dim(j); ++k)
                        eq[var(j, r, k)] += pf(k, c * M.dim() + t);
                    // (pt . (alpha_i (x) id))(r, c dm + t)
                    //   = sum_k pt(r, k dm + t) alpha_i(k, c)
                    for (std::size_t k = 0; k < to.dim(i); ++k)
                        eq[var(i, k, c)] -= pt(r, k * M.dim() + t);
                    if (!is_zero_vec(eq)) eqs.push_back(std::move(eq));
                }
    }
    std::vector<Vec> flat =
        eqs.empty() ? [&] {
            std::vector<Vec> all;
            for (std::size_t k = 0; k < unknowns; ++k) all.push_back(unit_vec(unknowns, k));
            return all;
        }()
                    : nullspace(ExactMatrix::from_row_vectors(eqs, unknowns));
    std::vector<std::vector<ExactMatrix>> out;
    for (const auto& sol : flat) {
        std::vector<ExactMatrix> alpha;
        for (std::size_t v = 0; v < nv; ++v) {
            ExactMatrix a(to.dim(v), from.dim(v));
            for (std::size_t r = 0; r < to.dim(v); ++r)
                for (std::size_t c = 0; c < from.dim(v); ++c)
                    a(r, c) = sol[var(v, r, c)];
            alpha.push_back(std::move(a));
        }
        out.push_back(std::move(alpha));
    }
    return out;
}

inline std::vector<ExactMatrix> compose_morphisms(const std::vector<ExactMatrix>& beta,
                                                  const std::vector<ExactMatrix>& alpha) {
    std::vector<ExactMatrix> out;
    for (std::size_t v = 0; v < alpha.size(); ++v) out.push_back(beta[v] * alpha[v]);
    return out;
}

/// Seeded random representation: per vertex a random-basis copy of a small
/// semisimple right module, then a random valid family of edge maps.
inline ModulationRep random_rep(std::shared_ptr<const PseudoModulation> mod, Rng& rng,
                                std::size_t max_vertex_dim = 3) {
    const PseudoModulation& m = *mod;
    std::size_t nv = m.num_vertices();
    std::vector<std::size_t> dims(nv, 0);
    std::vector<std::vector<ExactMatrix>> vertex_action(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        const auto& A = m.concrete_algebra(v);
        if (!A.split())
            throw std::invalid_argument("random representations need split vertex algebras");
        // choose block multiplicities with total dim <= max_vertex_dim
        std::vector<std::size_t> mu(A.split_blocks.size(), 0);
        std::size_t budget = max_vertex_dim;
        for (std::size_t b = 0; b < mu.size(); ++b) {
            std::size_t cap = budget / A.split_blocks[b];
            mu[b] = static_cast<std::size_t>(rng.range(0, static_cast<std::int64_t>(cap)));
            budget -= mu[b] * A.split_blocks[b];
        }
        std::size_t d = 0;
        for (std::size_t b = 0; b < mu.size(); ++b) d += mu[b] * A.split_blocks[b];
        dims[v] = d;
        // standard action: mu_b copies of the simple right module of block b
        std::vector<ExactMatrix> act(A.dim(), ExactMatrix(d, d));
        std::size_t off = 0;
        for (std::size_t b = 0; b < mu.size(); ++b) {
            std::size_t n = A.split_blocks[b];
            for (std::size_t copy = 0; copy < mu[b]; ++copy) {
                for (std::size_t r = 0; r < n; ++r)
                    for (std::size_t c = 0; c < n; ++c)
                        act[A.unit_index(b, r, c)](off + c, off + r) = 1;  // e_r . E_rc = e_c
                off += n;
            }
        }
        if (d > 0) {
            // twist by a random change of basis
            ExactMatrix p(d, d);
            std::optional<ExactMatrix> pinv;
            do {
                for (std::size_t r = 0; r < d; ++r)
                    for (std::size_t c = 0; c < d; ++c)
                        p(r, c) = Rational(rng.range(-2, 2));
                pinv = inverse(p);
            } while (!pinv);
            for (auto& a : act) a = *pinv * a * p;
        }
        vertex_action[v] = std::move(act);
    }

    // random valid edge maps: solve the constraint system and take a random
    // combination of its basis
    std::map<std::pair<std::size_t, std::size_t>, ExactMatrix> edge_maps;
    for (const auto& [key, bim] : m.bimodules()) {
        auto [i, j] = key;
        const auto& M = std::get<ConcreteBimodule>(bim);
        std::size_t di = dims[i], dj = dims[j], dm = M.dim();
        std::size_t unknowns = dj * di * dm;
        ExactMatrix phi(dj, di * dm);
        if (unknowns > 0) {
            std::vector<Vec> eqs;
            auto var = [&](std::size_t r, std::size_t c) { return r * (di * dm) + c; };
            ExactMatrix idm = ExactMatrix::identity(dm);
            ExactMatrix idv = ExactMatrix::identity(di);
            auto add_pre_constraints = [&](const ExactMatrix& pre_l, const ExactMatrix& pre_r) {
                // phi * pre_l == phi * pre_r
                for (std::size_t r = 0; r < dj; ++r)
                    for (std::size_t c = 0; c < di * dm; ++c) {
                        Vec eq(unknowns, Rational(0));
                        for (std::size_t k = 0; k < di * dm; ++k) {
                            if (pre_l(k, c) != 0) eq[var(r, k)] += pre_l(k, c);
                            if (pre_r(k, c) != 0) eq[var(r, k)] -= pre_r(k, c);
                        }
                        if (!is_zero_vec(eq)) eqs.push_back(std::move(eq));
                    }
            };
            for (std::size_t a = 0; a < m.concrete_algebra(i).dim(); ++a)
                add_pre_constraints(kronecker(vertex_action[i][a], idm),
                                    kronecker(idv, M.left_action(a)));
            for (std::size_t b = 0; b < m.concrete_algebra(j).dim(); ++b) {
                // phi * (id (x) R_b) == N_b * phi
                const ExactMatrix pre = kronecker(idv, M.right_action(b));
                const ExactMatrix& post = vertex_action[j][b];
                for (std::size_t r = 0; r < dj; ++r)
                    for (std::size_t c = 0; c < di * dm; ++c) {
                        Vec eq(unknowns, Rational(0));
                        for (std::size_t k = 0; k < di * dm; ++k)
                            if (pre(k, c) != 0) eq[var(r, k)] += pre(k, c);
                        for (std::size_t k = 0; k < dj; ++k)
                            if (post(r, k) != 0) eq[var(k, c)] -= post(r, k);
                        if (!is_zero_vec(eq)) eqs.push_back(std::move(eq));
                    }
            }
            std::vector<Vec> basis =
                eqs.empty() ? [&] {
                    std::vector<Vec> all;
                    for (std::size_t k = 0; k < unknowns; ++k)
                        all.push_back(unit_vec(unknowns, k));
                    return all;
                }()
                            : nullspace(ExactMatrix::from_row_vectors(eqs, unknowns));
            Vec sol(unknowns, Rational(0));
            for (const auto& b : basis) axpy(sol, rng.small_rational(2, 1), b);
            for (std::size_t r = 0; r < dj; ++r)
                for (std::size_t c = 0; c < di * dm; ++c) phi(r, c) = sol[var(r, c)];
        }
        edge_maps.insert({key, std::move(phi)});
    }
    return ModulationRep(mod, std::move(dims), std::move(vertex_action),
                         std::move(edge_maps));
}

/// Random element of the morphism space.
inline std::vector<ExactMatrix> random_morphism(const ModulationRep& from,
                                                const ModulationRep& to, Rng& rng) {
    auto basis = morphism_space(from, to);
    std::size_t nv = from.modulation().num_vertices();
    std::vector<ExactMatrix> out;
    for (std::size_t v = 0; v < nv; ++v) out.push_back(ExactMatrix(to.dim(v), from.dim(v)));
    for (const auto& alpha : basis) {
        Rational c = rng.small_rational(2, 1);
        for (std::size_t v = 0; v < nv; ++v) out[v] = out[v] + c * alpha[v];
    }
    return out;
}

}  // namespace quiverforge
