#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "quiverforge/algebra.hpp"
#include "quiverforge/matrix.hpp"
#include "quiverforge/modulation.hpp"
#include "quiverforge/quiver.hpp"

namespace quiverforge {

/// Basis word of a generalized path algebra: alternating vertex-algebra basis
/// elements and arrows, b0 a1 b1 ... an bn. Degree = arrow count; degree zero
/// is a single vertex-algebra basis element.
struct APath {
    std::size_t start = 0;
    std::vector<std::size_t> arrows;
    std::vector<std::size_t> elems;  // arrows.size() + 1 basis indices

    friend auto operator<=>(const APath&, const APath&) = default;
};

class GPAlgebra;

/// Formal linear combination of A-paths; keys are (degree, index in the
/// graded basis). The truncated flag is sticky: it marks that some product
/// term fell beyond the truncation window and was dropped. Elements refer to
/// their parent algebra by pointer; the algebra must outlive them.
struct GPAElement {
    const GPAlgebra* parent = nullptr;
    std::map<std::pair<std::size_t, std::size_t>, Rational> terms;
    bool truncated = false;

    bool is_zero() const { return terms.empty(); }

    void add_term(std::pair<std::size_t, std::size_t> key, const Rational& c) {
        if (c == 0) return;
        auto [it, fresh] = terms.try_emplace(key, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }
};

class GPAlgebra {
public:
    GPAlgebra(Quiver quiver, std::vector<std::shared_ptr<const VertexAlgebra>> algebras,
              std::optional<std::size_t> truncation = std::nullopt)
        : quiver_(std::move(quiver)), algebras_(std::move(algebras)) {
        if (algebras_.size() != quiver_.num_vertices())
            throw std::invalid_argument("one vertex algebra per vertex required");
        if (truncation) {
            degree_bound_ = *truncation;
            truncation_given_ = true;
        } else {
            if (!quiver_.is_acyclic())
                throw std::invalid_argument(
                    "cyclic quiver requires an explicit truncation degree");
            degree_bound_ = quiver_.longest_path_length();
            truncation_given_ = false;
        }
        build_basis();
    }

    const Quiver& quiver() const { return quiver_; }
    const VertexAlgebra& vertex_algebra(std::size_t v) const { return *algebras_.at(v); }
    const std::shared_ptr<const VertexAlgebra>& vertex_algebra_ptr(std::size_t v) const {
        return algebras_.at(v);
    }
    std::size_t truncation() const { return degree_bound_; }
    bool truncation_given() const { return truncation_given_; }

    std::size_t num_degrees() const { return basis_.size(); }
    const std::vector<APath>& degree_basis(std::size_t n) const { return basis_.at(n); }
    std::size_t degree_dim(std::size_t n) const {
        return n < basis_.size() ? basis_[n].size() : 0;
    }
    std::size_t total_dim() const {
        std::size_t d = 0;
        for (const auto& level : basis_) d += level.size();
        return d;
    }

    std::size_t path_end(const APath& p) const {
        return p.arrows.empty() ? p.start : quiver_.arrow(p.arrows.back()).tgt;
    }

    std::optional<std::pair<std::size_t, std::size_t>> lookup(const APath& p) const {
        auto it = index_.find(p);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    std::string element_label(std::size_t vertex, std::size_t b) const {
        return quiver_.vertex_name(vertex) + "." + algebras_[vertex]->alg.label(b);
    }

    std::string basis_label(std::size_t deg, std::size_t idx) const {
        const APath& p = basis_.at(deg).at(idx);
        std::string s = "(" + element_label(p.start, p.elems[0]) + ")";
        std::size_t v = p.start;
        for (std::size_t k = 0; k < p.arrows.size(); ++k) {
            const Arrow& a = quiver_.arrow(p.arrows[k]);
            v = a.tgt;
            s += a.name + "(" + element_label(v, p.elems[k + 1]) + ")";
        }
        return s;
    }

    GPAElement zero() const { return GPAElement{this, {}, false}; }

    GPAElement basis_element(std::size_t deg, std::size_t idx) const {
        GPAElement e = zero();
        e.add_term({deg, idx}, Rational(1));
        return e;
    }

    /// Unit of the vertex algebra at v as a degree-zero element.
    GPAElement vertex_unit(std::size_t v) const {
        GPAElement e = zero();
        const Element& u = algebras_.at(v)->alg.unit();
        for (std::size_t b = 0; b < u.size(); ++b)
            if (u[b] != 0) e.add_term(*lookup(APath{v, {}, {b}}), u[b]);
        return e;
    }

    GPAElement one() const {
        GPAElement e = zero();
        for (std::size_t v = 0; v < quiver_.num_vertices(); ++v) {
            GPAElement u = vertex_unit(v);
            for (const auto& [key, c] : u.terms) e.add_term(key, c);
        }
        return e;
    }

    /// Degree-zero element from vertex-algebra coordinates.
    GPAElement embed(std::size_t v, const Element& x) const {
        GPAElement e = zero();
        for (std::size_t b = 0; b < x.size(); ++b)
            if (x[b] != 0) e.add_term(*lookup(APath{v, {}, {b}}), x[b]);
        return e;
    }

    std::string element_str(const GPAElement& e) const {
        if (e.terms.empty()) return "0";
        std::string s;
        for (const auto& [key, c] : e.terms) {
            if (!s.empty()) s += " + ";
            s += rational_str(c) + "*" + basis_label(key.first, key.second);
        }
        if (e.truncated) s += "  [truncated]";
        return s;
    }

    /// Degree-one basis positions for the pair (i, j), in basis order.
    std::vector<std::size_t> bimodule_positions(std::size_t i, std::size_t j) const {
        std::vector<std::size_t> out;
        if (basis_.size() < 2) return out;
        for (std::size_t idx = 0; idx < basis_[1].size(); ++idx) {
            const APath& p = basis_[1][idx];
            if (p.start == i && path_end(p) == j) out.push_back(idx);
        }
        return out;
    }

private:
    void build_basis() {
        basis_.clear();
        std::vector<APath> level;
        for (std::size_t v = 0; v < quiver_.num_vertices(); ++v)
            for (std::size_t b = 0; b < algebras_[v]->dim(); ++b)
                level.push_back(APath{v, {}, {b}});
        basis_.push_back(level);
        for (std::size_t deg = 1; deg <= degree_bound_; ++deg) {
            std::vector<APath> next;
            for (const APath& p : basis_.back()) {
                std::size_t end = path_end(p);
                for (std::size_t a = 0; a < quiver_.num_arrows(); ++a) {
                    if (quiver_.arrow(a).src != end) continue;
                    std::size_t tgt = quiver_.arrow(a).tgt;
                    for (std::size_t b = 0; b < algebras_[tgt]->dim(); ++b) {
                        APath ext = p;
                        ext.arrows.push_back(a);
                        ext.elems.push_back(b);
                        next.push_back(std::move(ext));
                    }
                }
            }
            if (next.empty()) break;
            basis_.push_back(std::move(next));
        }
        for (std::size_t deg = 0; deg < basis_.size(); ++deg)
            for (std::size_t idx = 0; idx < basis_[deg].size(); ++idx)
                index_[basis_[deg][idx]] = {deg, idx};
    }

    Quiver quiver_;
    std::vector<std::shared_ptr<const VertexAlgebra>> algebras_;
    std::size_t degree_bound_ = 0;
    bool truncation_given_ = false;
    std::vector<std::vector<APath>> basis_;
    std::map<APath, std::pair<std::size_t, std::size_t>> index_;
};

inline GPAlgebra gpa_build(Quiver quiver,
                           std::vector<std::shared_ptr<const VertexAlgebra>> algebras,
                           std::optional<std::size_t> truncation = std::nullopt) {
    return GPAlgebra(std::move(quiver), std::move(algebras), truncation);
}

inline GPAElement operator+(const GPAElement& x, const GPAElement& y) {
    if (x.parent != y.parent) throw std::invalid_argument("elements of different algebras");
    GPAElement out = x;
    out.truncated = x.truncated || y.truncated;
    for (const auto& [key, c] : y.terms) out.add_term(key, c);
    return out;
}

inline GPAElement operator*(const Rational& c, const GPAElement& x) {
    GPAElement out{x.parent, {}, x.truncated};
    if (c == 0) return out;
    for (const auto& [key, v] : x.terms) out.add_term(key, c * v);
    return out;
}

inline GPAElement operator-(const GPAElement& x, const GPAElement& y) {
    return x + Rational(-1) * y;
}

inline bool operator==(const GPAElement& x, const GPAElement& y) {
    return x.parent == y.parent && x.terms == y.terms;
}

/// Concatenation with the junction elements multiplied inside the vertex
/// algebra; incomposable junctions vanish, products beyond the truncation
/// window are dropped with the sticky flag set.
inline GPAElement gpa_multiply(const GPAElement& x, const GPAElement& y) {
    if (x.parent == nullptr || x.parent != y.parent)
        throw std::invalid_argument("elements of different algebras");
    const GPAlgebra& g = *x.parent;
    GPAElement out = g.zero();
    out.truncated = x.truncated || y.truncated;
    for (const auto& [kx, cx] : x.terms) {
        const APath& p = g.degree_basis(kx.first)[kx.second];
        std::size_t p_end = g.path_end(p);
        for (const auto& [ky, cy] : y.terms) {
            const APath& q = g.degree_basis(ky.first)[ky.second];
            if (q.start != p_end) continue;
            std::size_t deg = kx.first + ky.first;
            if (deg > g.truncation()) {
                out.truncated = true;
                continue;
            }
            const auto& junction = g.vertex_algebra(p_end).alg.basis_product(
                p.elems.back(), q.elems.front());
            Rational c = cx * cy;
            for (const auto& term : junction) {
                APath merged;
                merged.start = p.start;
                merged.arrows = p.arrows;
                merged.arrows.insert(merged.arrows.end(), q.arrows.begin(), q.arrows.end());
                merged.elems.assign(p.elems.begin(), p.elems.end() - 1);
                merged.elems.push_back(term.idx);
                merged.elems.insert(merged.elems.end(), q.elems.begin() + 1, q.elems.end());
                out.add_term(*g.lookup(merged), c * term.coef);
            }
        }
    }
    return out;
}

inline GPAElement operator*(const GPAElement& x, const GPAElement& y) {
    return gpa_multiply(x, y);
}

/// Valued quiver induced by the free bimodules A_i Omega(i,j) A_j, with the
/// dimension witness: one edge per pair with arrows, valued
/// (|Omega| dim A_i, |Omega| dim A_j), epsilon_i = dim A_i.
inline ValuedQuiver induced_valued_quiver(const GPAlgebra& g) {
    const Quiver& q = g.quiver();
    std::vector<ValuedEdge> edges;
    for (std::size_t i = 0; i < q.num_vertices(); ++i)
        for (std::size_t j = 0; j < q.num_vertices(); ++j) {
            std::size_t t = q.omega(i, j).size();
            if (t == 0) continue;
            edges.push_back(ValuedEdge{
                i, j, static_cast<std::int64_t>(t * g.vertex_algebra(i).dim()),
                static_cast<std::int64_t>(t * g.vertex_algebra(j).dim())});
        }
    PseudoValuedQuiver pvq(q.vertices(), edges);
    std::vector<Integer> witness;
    for (std::size_t v = 0; v < q.num_vertices(); ++v)
        witness.push_back(Integer(static_cast<long>(g.vertex_algebra(v).dim())));
    for (const auto& e : pvq.edges())
        if (Integer(e.dij) * witness[e.tgt] != Integer(e.dji) * witness[e.src])
            throw std::logic_error("dimension witness fails the valued-graph identity");
    return ValuedQuiver{std::move(pvq), std::move(witness)};
}

/// The corresponding pre-modulation: same vertex algebras, bimodules the
/// materialized degree-one components (free on Omega(i, j) by construction).
inline PseudoModulation premodulation_of(const GPAlgebra& g) {
    const Quiver& q = g.quiver();
    std::map<std::pair<std::size_t, std::size_t>, BimoduleData> bims;
    for (std::size_t i = 0; i < q.num_vertices(); ++i)
        for (std::size_t j = 0; j < q.num_vertices(); ++j) {
            std::size_t t = q.omega(i, j).size();
            if (t == 0) continue;
            auto positions = g.bimodule_positions(i, j);
            std::size_t dim = positions.size();
            std::map<std::size_t, std::size_t> local;  // global degree-1 idx -> local
            for (std::size_t k = 0; k < positions.size(); ++k) local[positions[k]] = k;
            const auto& Ai = g.vertex_algebra(i);
            const auto& Aj = g.vertex_algebra(j);
            std::vector<ExactMatrix> la(Ai.dim(), ExactMatrix(dim, dim));
            std::vector<ExactMatrix> ra(Aj.dim(), ExactMatrix(dim, dim));
            for (std::size_t k = 0; k < positions.size(); ++k) {
                const APath& p = g.degree_basis(1)[positions[k]];
                for (std::size_t a = 0; a < Ai.dim(); ++a) {
                    for (const auto& term : Ai.alg.basis_product(a, p.elems[0])) {
                        APath moved = p;
                        moved.elems[0] = term.idx;
                        la[a](local.at(g.lookup(moved)->second), k) += term.coef;
                    }
                }
                for (std::size_t b = 0; b < Aj.dim(); ++b) {
                    for (const auto& term : Aj.alg.basis_product(p.elems[1], b)) {
                        APath moved = p;
                        moved.elems[1] = term.idx;
                        ra[b](local.at(g.lookup(moved)->second), k) += term.coef;
                    }
                }
            }
            bims.insert({{i, j}, ConcreteBimodule(g.vertex_algebra_ptr(i),
                                                  g.vertex_algebra_ptr(j), dim, std::move(la),
                                                  std::move(ra),
                                                  static_cast<std::int64_t>(t))});
        }
    std::vector<VertexAlgebraData> algebras;
    for (std::size_t v = 0; v < q.num_vertices(); ++v)
        algebras.push_back(g.vertex_algebra_ptr(v));
    return PseudoModulation(q.vertices(), std::move(algebras), std::move(bims));
}

/// Inverse construction: a quiver with one arrow per free generator.
inline GPAlgebra gpa_from_premodulation(const PseudoModulation& m,
                                        std::optional<std::size_t> truncation = std::nullopt) {
    if (!m.is_concrete())
        throw std::invalid_argument("construction requires concrete bimodules");
    std::vector<std::shared_ptr<const VertexAlgebra>> algebras;
    for (std::size_t v = 0; v < m.num_vertices(); ++v) {
        auto a = m.concrete_algebra_ptr(v);
        if (!a->split())
            throw std::invalid_argument("construction requires split semisimple vertex algebras");
        algebras.push_back(a);
    }
    std::vector<std::tuple<std::string, std::string, std::string>> arrows;
    for (const auto& [key, bim] : m.bimodules()) {
        auto [i, j] = key;
        const auto& conc = std::get<ConcreteBimodule>(bim);
        if (!is_free_bimodule(conc))
            throw std::invalid_argument("bimodule " + m.vertices()[i] + "->" + m.vertices()[j] +
                                        " is not free");
        std::int64_t t = bimodule_ranks(conc).t;
        for (std::int64_t k = 0; k < t; ++k)
            arrows.push_back({"m_" + m.vertices()[i] + "_" + m.vertices()[j] + "_" +
                                  std::to_string(k),
                              m.vertices()[i], m.vertices()[j]});
    }
    Quiver q(m.vertices(), arrows);
    return GPAlgebra(std::move(q), std::move(algebras), truncation);
}

struct LiteralValuationEdge {
    std::size_t src = 0;
    std::size_t tgt = 0;
    std::int64_t dij = 0;
    std::int64_t dji = 0;
    bool anomalous = false;  // a zero on an existing edge
};

struct LoopElimination {
    Quiver breve;
    std::vector<std::shared_ptr<const VertexAlgebra>> algebras;
    std::vector<LiteralValuationEdge> literal_valuation;
    ValuedQuiver rank_valuation;  // dimension-based, at the chosen truncation
    std::size_t truncation = 0;
    std::shared_ptr<GPAlgebra> gpa;
};

/// Removes the loops of Gamma and installs truncated loop-path algebras at
/// their vertices. Reports the literal valuation formula
/// d_ij = |Omega(i,j)| |Phi_i|, which can hit zero on loop-free targets; the
/// zero is flagged, never corrected, and the dimension-based valuation is
/// reported alongside.
inline LoopElimination loop_eliminate(const Quiver& gamma, std::size_t truncation) {
    if (truncation < 1) throw std::invalid_argument("truncation must be at least 1");
    std::vector<std::tuple<std::string, std::string, std::string>> arrows;
    for (const auto& a : gamma.arrows())
        if (a.src != a.tgt)
            arrows.push_back({a.name, gamma.vertex_name(a.src), gamma.vertex_name(a.tgt)});
    Quiver breve(gamma.vertices(), arrows);

    LoopElimination out{std::move(breve), {}, {}, {}, truncation, nullptr};
    std::vector<std::size_t> loop_counts;
    for (std::size_t v = 0; v < gamma.num_vertices(); ++v) {
        std::vector<std::string> letters;
        for (std::size_t a : gamma.loops_at(v)) letters.push_back(gamma.arrow(a).name);
        loop_counts.push_back(letters.size());
        out.algebras.push_back(letters.empty()
                                   ? VertexAlgebra::field()
                                   : VertexAlgebra::truncated_paths(letters, truncation));
    }

    for (std::size_t i = 0; i < out.breve.num_vertices(); ++i)
        for (std::size_t j = 0; j < out.breve.num_vertices(); ++j) {
            std::size_t t = out.breve.omega(i, j).size();
            if (t == 0) continue;
            LiteralValuationEdge e;
            e.src = i;
            e.tgt = j;
            e.dij = static_cast<std::int64_t>(t * loop_counts[i]);
            e.dji = static_cast<std::int64_t>(t * loop_counts[j]);
            e.anomalous = (e.dij == 0 || e.dji == 0);
            out.literal_valuation.push_back(e);
        }

    std::optional<std::size_t> deg_bound;
    if (!out.breve.is_acyclic()) deg_bound = truncation;
    out.gpa = std::make_shared<GPAlgebra>(out.breve, out.algebras, deg_bound);
    out.rank_valuation = induced_valued_quiver(*out.gpa);
    return out;
}

/// Counts paths of Gamma with at most max_arrows arrows against A-path basis
/// elements of the loop-eliminated algebra with the same total arrow count
/// (degree plus the word lengths of the junction elements).
inline bool dimension_match_check(const Quiver& gamma, std::size_t max_arrows) {
    std::size_t lhs = enumerate_paths(gamma, max_arrows).size();
    LoopElimination le = loop_eliminate(gamma, std::max<std::size_t>(max_arrows, 1));
    std::size_t rhs = 0;
    const GPAlgebra& g = *le.gpa;
    for (std::size_t deg = 0; deg < g.num_degrees(); ++deg)
        for (const APath& p : g.degree_basis(deg)) {
            std::size_t total = deg;
            std::size_t v = p.start;
            for (std::size_t k = 0; k < p.elems.size(); ++k) {
                if (k > 0) v = g.quiver().arrow(p.arrows[k - 1]).tgt;
                total += g.vertex_algebra(v).weight(p.elems[k]);
            }
            if (total <= max_arrows) ++rhs;
        }
    return lhs == rhs;
}

struct GpaIsoDecision {
    enum class Status { Found, Absent, Refused };
    Status status = Status::Refused;
    std::optional<std::vector<std::size_t>> theta;
    std::string message;
};

/// Isomorphism of normal generalized path algebras over finite acyclic
/// quivers, decided through the corresponding pre-modulations. Anything
/// outside those hypotheses is refused: with semisimple non-simple vertex
/// algebras the criterion is genuinely false (a one-vertex algebra k x k and
/// two plain points have isomorphic algebras but non-isomorphic modulations).
inline GpaIsoDecision gpa_iso_check(const GPAlgebra& g1, const GPAlgebra& g2,
                                    std::size_t max_vertices = 10) {
    GpaIsoDecision out;
    for (const GPAlgebra* g : {&g1, &g2}) {
        for (std::size_t v = 0; v < g->quiver().num_vertices(); ++v) {
            const auto& a = g->vertex_algebra(v);
            if (!a.split() || a.split_blocks.size() != 1) {
                out.status = GpaIsoDecision::Status::Refused;
                out.message =
                    "theorem hypotheses not met; refusing: vertex algebra at " +
                    g->quiver().vertex_name(v) +
                    " is not simple (for k x k at one vertex versus two plain vertices the "
                    "algebras are isomorphic while the pre-modulations are not)";
                return out;
            }
        }
        if (!g->quiver().is_acyclic()) {
            out.status = GpaIsoDecision::Status::Refused;
            out.message = "theorem hypotheses not met; refusing: quiver has oriented cycles";
            return out;
        }
    }
    auto theta = modulation_iso(premodulation_of(g1), premodulation_of(g2), max_vertices);
    if (theta) {
        out.status = GpaIsoDecision::Status::Found;
        out.theta = theta;
    } else {
        out.status = GpaIsoDecision::Status::Absent;
    }
    return out;
}

struct TensorAlgebraSummary {
    std::vector<std::size_t> degree_dims;
    // per degree, dimension of e_i X e_j per ordered vertex pair
    std::vector<std::map<std::pair<std::size_t, std::size_t>, std::size_t>> block_dims;
};

/// Graded components M^{(x)_{A0} n} of the tensor algebra of a concrete
/// pseudo-modulation, through degree D, via explicit balanced tensor
/// quotients (x a (x) m - x (x) a m).
inline TensorAlgebraSummary tensor_algebra_of_modulation(const PseudoModulation& m,
                                                         std::size_t max_degree) {
    if (!m.is_concrete())
        throw std::invalid_argument("tensor algebra requires concrete bimodules");
    std::size_t nv = m.num_vertices();

    // A0 = product of the vertex algebras
    std::vector<std::pair<std::size_t, std::size_t>> a0_basis;  // (vertex, elem)
    for (std::size_t v = 0; v < nv; ++v)
        for (std::size_t b = 0; b < m.concrete_algebra(v).dim(); ++b)
            a0_basis.push_back({v, b});
    std::size_t a0_dim = a0_basis.size();

    // M = direct sum of bimodules, with start/end bookkeeping
    struct Slot {
        std::size_t i, j, offset, dim;
        const ConcreteBimodule* bim;
    };
    std::vector<Slot> slots;
    std::size_t m_dim = 0;
    for (const auto& [key, bim] : m.bimodules()) {
        const auto& conc = std::get<ConcreteBimodule>(bim);
        slots.push_back({key.first, key.second, m_dim, conc.dim(), &conc});
        m_dim += conc.dim();
    }

    auto m_left = [&](std::size_t a0_idx) {
        ExactMatrix out(m_dim, m_dim);
        auto [v, b] = a0_basis[a0_idx];
        for (const auto& s : slots) {
            if (s.i != v) continue;
            const ExactMatrix& act = s.bim->left_action(b);
            for (std::size_t r = 0; r < s.dim; ++r)
                for (std::size_t c = 0; c < s.dim; ++c)
                    out(s.offset + r, s.offset + c) = act(r, c);
        }
        return out;
    };
    auto m_right = [&](std::size_t a0_idx) {
        ExactMatrix out(m_dim, m_dim);
        auto [v, b] = a0_basis[a0_idx];
        for (const auto& s : slots) {
            if (s.j != v) continue;
            const ExactMatrix& act = s.bim->right_action(b);
            for (std::size_t r = 0; r < s.dim; ++r)
                for (std::size_t c = 0; c < s.dim; ++c)
                    out(s.offset + r, s.offset + c) = act(r, c);
        }
        return out;
    };

    std::vector<ExactMatrix> m_left_all, m_right_all;
    for (std::size_t a = 0; a < a0_dim; ++a) {
        m_left_all.push_back(m_left(a));
        m_right_all.push_back(m_right(a));
    }
    auto unit_of_vertex = [&](std::size_t v) {
        Vec coords(a0_dim, Rational(0));
        const Element& u = m.concrete_algebra(v).alg.unit();
        for (std::size_t a = 0; a < a0_dim; ++a)
            if (a0_basis[a].first == v) coords[a] = u[a0_basis[a].second];
        return coords;
    };

    TensorAlgebraSummary out;
    // degree 0: A0 itself
    out.degree_dims.push_back(a0_dim);
    out.block_dims.push_back({});
    for (std::size_t v = 0; v < nv; ++v)
        if (m.concrete_algebra(v).dim() > 0)
            out.block_dims[0][{v, v}] = m.concrete_algebra(v).dim();

    // current graded piece: dimension + left/right action of every A0 basis
    // element on its chosen basis
    std::size_t cur_dim = m_dim;
    std::vector<ExactMatrix> cur_left = m_left_all;
    std::vector<ExactMatrix> cur_right = m_right_all;

    auto record = [&](std::size_t dim, const std::vector<ExactMatrix>& left,
                      const std::vector<ExactMatrix>& right) {
        out.degree_dims.push_back(dim);
        std::map<std::pair<std::size_t, std::size_t>, std::size_t> blocks;
        for (std::size_t i = 0; i < nv; ++i)
            for (std::size_t j = 0; j < nv; ++j) {
                ExactMatrix li(dim, dim), rj(dim, dim);
                Vec ui = unit_of_vertex(i), uj = unit_of_vertex(j);
                for (std::size_t a = 0; a < a0_dim; ++a) {
                    if (ui[a] != 0) li = li + ui[a] * left[a];
                    if (uj[a] != 0) rj = rj + uj[a] * right[a];
                }
                std::size_t d = rank(li * rj);
                if (d > 0) blocks[{i, j}] = d;
            }
        out.block_dims.push_back(std::move(blocks));
    };

    if (max_degree >= 1) record(cur_dim, cur_left, cur_right);

    for (std::size_t deg = 2; deg <= max_degree; ++deg) {
        // ambient X (x)_k M, quotient by xa (x) m - x (x) am
        std::size_t amb = cur_dim * m_dim;
        RowSpace rel(amb);
        for (std::size_t x = 0; x < cur_dim; ++x)
            for (std::size_t a = 0; a < a0_dim; ++a) {
                Vec xa(cur_dim);
                for (std::size_t r = 0; r < cur_dim; ++r) xa[r] = cur_right[a](r, x);
                Vec am(m_dim);
                for (std::size_t mm = 0; mm < m_dim; ++mm) {
                    Vec g(amb, Rational(0));
                    for (std::size_t r = 0; r < cur_dim; ++r)
                        if (xa[r] != 0) g[r * m_dim + mm] += xa[r];
                    for (std::size_t r = 0; r < m_dim; ++r)
                        if (m_left_all[a](r, mm) != 0)
                            g[x * m_dim + r] -= m_left_all[a](r, mm);
                    rel.insert(g);
                }
            }
        QuotientSpace quot(rel);
        std::size_t new_dim = quot.dim();

        std::vector<ExactMatrix> new_left(a0_dim, ExactMatrix(new_dim, new_dim));
        std::vector<ExactMatrix> new_right(a0_dim, ExactMatrix(new_dim, new_dim));
        for (std::size_t a = 0; a < a0_dim; ++a) {
            for (std::size_t k = 0; k < new_dim; ++k) {
                Vec baslift = quot.lift(unit_vec(new_dim, k));
                Vec limg(amb, Rational(0)), rimg(amb, Rational(0));
                for (std::size_t x = 0; x < cur_dim; ++x)
                    for (std::size_t mm = 0; mm < m_dim; ++mm) {
                        const Rational& c = baslift[x * m_dim + mm];
                        if (c == 0) continue;
                        // left: (a x) (x) m
                        for (std::size_t r = 0; r < cur_dim; ++r)
                            if (cur_left[a](r, x) != 0)
                                limg[r * m_dim + mm] += c * cur_left[a](r, x);
                        // right: x (x) (m b)
                        for (std::size_t r = 0; r < m_dim; ++r)
                            if (m_right_all[a](r, mm) != 0)
                                rimg[x * m_dim + r] += c * m_right_all[a](r, mm);
                    }
                Vec lc = quot.coords(limg), rc = quot.coords(rimg);
                for (std::size_t r = 0; r < new_dim; ++r) {
                    new_left[a](r, k) = lc[r];
                    new_right[a](r, k) = rc[r];
                }
            }
        }
        cur_dim = new_dim;
        cur_left = std::move(new_left);
        cur_right = std::move(new_right);
        record(cur_dim, cur_left, cur_right);
    }
    return out;
}

struct DifferentialReport {
    bool grading_ok = true;
    std::string grading_violation;
    bool leibniz_ok = true;
    std::string leibniz_violation;
    bool dsquare_ok = true;
    std::string dsquare_violation;
    bool pass() const { return grading_ok && leibniz_ok && dsquare_ok; }
};

namespace detail {

inline Vec gpa_element_to_vec(const GPAElement& e,
                              const std::vector<std::pair<std::size_t, std::size_t>>& layout,
                              const std::map<std::pair<std::size_t, std::size_t>,
                                             std::size_t>& layout_index) {
    Vec v(layout.size(), Rational(0));
    for (const auto& [key, c] : e.terms) v[layout_index.at(key)] = c;
    return v;
}

}  // namespace detail

/// Flattened basis layout used for differential matrices: degrees in order,
/// within a degree the construction order of the graded basis.
inline std::vector<std::pair<std::size_t, std::size_t>> gpa_basis_layout(const GPAlgebra& g) {
    std::vector<std::pair<std::size_t, std::size_t>> layout;
    for (std::size_t deg = 0; deg < g.num_degrees(); ++deg)
        for (std::size_t idx = 0; idx < g.degree_dim(deg); ++idx) layout.push_back({deg, idx});
    return layout;
}

/// Checks the three differential axioms on the truncated graded basis:
/// degree shift +1, the signed Leibniz rule, and square zero.
inline DifferentialReport differential_check(const GPAlgebra& g, const ExactMatrix& delta) {
    auto layout = gpa_basis_layout(g);
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> layout_index;
    for (std::size_t k = 0; k < layout.size(); ++k) layout_index[layout[k]] = k;
    std::size_t n = layout.size();
    if (delta.rows() != n || delta.cols() != n)
        throw std::invalid_argument("differential matrix must be " + std::to_string(n) + "x" +
                                    std::to_string(n) + " over the truncated basis");

    DifferentialReport report;

    auto apply = [&](const GPAElement& e) {
        Vec v = detail::gpa_element_to_vec(e, layout, layout_index);
        Vec w = delta.apply(v);
        GPAElement out = g.zero();
        out.truncated = e.truncated;
        for (std::size_t k = 0; k < n; ++k)
            if (w[k] != 0) out.add_term(layout[k], w[k]);
        return out;
    };

    for (std::size_t col = 0; col < n && report.grading_ok; ++col) {
        std::size_t deg = layout[col].first;
        for (std::size_t row = 0; row < n; ++row) {
            if (delta(row, col) == 0) continue;
            if (layout[row].first != deg + 1) {
                report.grading_ok = false;
                report.grading_violation =
                    "delta(" + g.basis_label(deg, layout[col].second) + ") has a degree-" +
                    std::to_string(layout[row].first) + " term " +
                    g.basis_label(layout[row].first, layout[row].second);
                break;
            }
        }
    }

    std::size_t D = g.truncation();
    for (std::size_t ca = 0; ca < n && report.leibniz_ok; ++ca) {
        auto [da, ia] = layout[ca];
        for (std::size_t cb = 0; cb < n; ++cb) {
            auto [db, ib] = layout[cb];
            if (da + db + 1 > D) continue;
            GPAElement a = g.basis_element(da, ia);
            GPAElement b = g.basis_element(db, ib);
            GPAElement lhs = apply(a * b);
            Rational sign = (da % 2 == 0) ? Rational(1) : Rational(-1);
            GPAElement rhs = apply(a) * b + sign * (a * apply(b));
            if (!(lhs == rhs)) {
                report.leibniz_ok = false;
                report.leibniz_violation = "Leibniz fails on (" + g.basis_label(da, ia) +
                                           ", " + g.basis_label(db, ib) + ")";
                break;
            }
        }
    }

    for (std::size_t c = 0; c < n && report.dsquare_ok; ++c) {
        auto [deg, idx] = layout[c];
        if (deg + 2 > D) continue;
        GPAElement dd = apply(apply(g.basis_element(deg, idx)));
        if (!dd.is_zero()) {
            report.dsquare_ok = false;
            report.dsquare_violation = "delta^2 nonzero on " + g.basis_label(deg, idx);
        }
    }
    return report;
}

/// Element literal parser: `coef * (vertex.elem) arrow (vertex.elem) ...`,
/// terms joined by + or -.
inline GPAElement parse_gpa_element(const GPAlgebra& g, const std::string& text) {
    GPAElement out = g.zero();
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto parse_term = [&](Rational sign) {
        skip_ws();
        Rational coef = sign;
        if (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])))) {
            std::size_t start = pos;
            while (pos < text.size() &&
                   (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/'))
                ++pos;
            coef = sign * parse_rational(text.substr(start, pos - start));
            skip_ws();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                skip_ws();
            }
        }
        if (pos >= text.size() || text[pos] != '(')
            throw std::invalid_argument("expected '(' at position " + std::to_string(pos) +
                                        " in element literal");
        APath path;
        bool first = true;
        std::size_t current_vertex = 0;
        while (true) {
            ++pos;  // consume '('
            std::size_t close = text.find(')', pos);
            if (close == std::string::npos)
                throw std::invalid_argument("unterminated '(' in element literal");
            std::string qualified = text.substr(pos, close - pos);
            pos = close + 1;
            auto dot = qualified.find('.');
            if (dot == std::string::npos)
                throw std::invalid_argument("element label must be vertex.basis: " + qualified);
            std::string vname = qualified.substr(0, dot);
            std::string elabel = qualified.substr(dot + 1);
            std::size_t v = g.quiver().vertex_index(vname);
            if (first) {
                path.start = v;
                current_vertex = v;
                first = false;
            } else if (v != current_vertex) {
                throw std::invalid_argument("element " + qualified +
                                            " is not at the arrow target");
            }
            const auto& labels = g.vertex_algebra(v).alg.labels();
            auto it = std::find(labels.begin(), labels.end(), elabel);
            if (it == labels.end())
                throw std::invalid_argument("unknown basis element: " + qualified);
            path.elems.push_back(static_cast<std::size_t>(it - labels.begin()));
            skip_ws();
            if (pos >= text.size() || text[pos] == '+' || text[pos] == '-') break;
            // arrow name up to '('
            std::size_t open = text.find('(', pos);
            if (open == std::string::npos)
                throw std::invalid_argument("arrow must be followed by a '(...)' element");
            std::string aname = text.substr(pos, open - pos);
            while (!aname.empty() && std::isspace(static_cast<unsigned char>(aname.back())))
                aname.pop_back();
            std::size_t a = g.quiver().arrow_index(aname);
            if (g.quiver().arrow(a).src != current_vertex)
                throw std::invalid_argument("arrow " + aname + " does not start at vertex " +
                                            g.quiver().vertex_name(current_vertex));
            path.arrows.push_back(a);
            current_vertex = g.quiver().arrow(a).tgt;
            pos = open;
        }
        auto key = g.lookup(path);
        if (!key)
            throw std::invalid_argument("A-path outside the truncation window");
        out.add_term(*key, coef);
    };
    skip_ws();
    Rational sign(1);
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
        sign = text[pos] == '-' ? Rational(-1) : Rational(1);
        ++pos;
    }
    parse_term(sign);
    skip_ws();
    while (pos < text.size()) {
        Rational s(1);
        if (text[pos] == '+')
            s = 1;
        else if (text[pos] == '-')
            s = -1;
        else
            throw std::invalid_argument("expected + or - at position " + std::to_string(pos));
        ++pos;
        parse_term(s);
        skip_ws();
    }
    return out;
}

}  // namespace quiverforge
