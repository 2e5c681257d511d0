#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "quiverforge/algebra.hpp"
#include "quiverforge/matrix.hpp"
#include "quiverforge/quiver.hpp"

namespace quiverforge {

/// Bimodule over two vertex algebras, given by one action matrix per algebra
/// basis element (column convention). Construction checks unitality,
/// compatibility with the algebra products, and that the two actions commute.
class ConcreteBimodule {
public:
    ConcreteBimodule(std::shared_ptr<const VertexAlgebra> left_alg,
                     std::shared_ptr<const VertexAlgebra> right_alg, std::size_t dim,
                     std::vector<ExactMatrix> left_action, std::vector<ExactMatrix> right_action,
                     std::optional<std::int64_t> known_free_rank = std::nullopt)
        : left_(std::move(left_alg)),
          right_(std::move(right_alg)),
          dim_(dim),
          left_action_(std::move(left_action)),
          right_action_(std::move(right_action)),
          known_free_rank_(known_free_rank) {
        if (left_action_.size() != left_->dim() || right_action_.size() != right_->dim())
            throw std::invalid_argument("one action matrix per algebra basis element required");
        for (const auto& m : left_action_)
            if (m.rows() != dim_ || m.cols() != dim_)
                throw std::invalid_argument("action matrix shape mismatch");
        for (const auto& m : right_action_)
            if (m.rows() != dim_ || m.cols() != dim_)
                throw std::invalid_argument("action matrix shape mismatch");
        verify();
    }

    const VertexAlgebra& left_algebra() const { return *left_; }
    const VertexAlgebra& right_algebra() const { return *right_; }
    const std::shared_ptr<const VertexAlgebra>& left_algebra_ptr() const { return left_; }
    const std::shared_ptr<const VertexAlgebra>& right_algebra_ptr() const { return right_; }
    std::size_t dim() const { return dim_; }
    std::optional<std::int64_t> known_free_rank() const { return known_free_rank_; }

    const ExactMatrix& left_action(std::size_t a) const { return left_action_.at(a); }
    const ExactMatrix& right_action(std::size_t b) const { return right_action_.at(b); }

    ExactMatrix left_action_of(const Element& x) const {
        ExactMatrix m(dim_, dim_);
        for (std::size_t a = 0; a < left_action_.size(); ++a)
            if (x[a] != 0) m = m + x[a] * left_action_[a];
        return m;
    }

    ExactMatrix right_action_of(const Element& x) const {
        ExactMatrix m(dim_, dim_);
        for (std::size_t b = 0; b < right_action_.size(); ++b)
            if (x[b] != 0) m = m + x[b] * right_action_[b];
        return m;
    }

    /// Free bimodule (A_i (x) A_j^op)^t on t generators: basis (a, g, b).
    static ConcreteBimodule free(std::shared_ptr<const VertexAlgebra> left,
                                 std::shared_ptr<const VertexAlgebra> right, std::size_t t) {
        std::size_t da = left->dim(), db = right->dim();
        std::size_t dim = da * t * db;
        auto idx = [da, db](std::size_t a, std::size_t g, std::size_t b) {
            return (g * da + a) * db + b;
        };
        std::vector<ExactMatrix> la(da, ExactMatrix(dim, dim));
        std::vector<ExactMatrix> ra(db, ExactMatrix(dim, dim));
        for (std::size_t x = 0; x < da; ++x)
            for (std::size_t g = 0; g < t; ++g)
                for (std::size_t a = 0; a < da; ++a) {
                    Element prod = densify(left->alg.basis_product(x, a), da);
                    for (std::size_t b = 0; b < db; ++b)
                        for (std::size_t p = 0; p < da; ++p)
                            if (prod[p] != 0) la[x](idx(p, g, b), idx(a, g, b)) += prod[p];
                }
        for (std::size_t y = 0; y < db; ++y)
            for (std::size_t g = 0; g < t; ++g)
                for (std::size_t b = 0; b < db; ++b) {
                    Element prod = densify(right->alg.basis_product(b, y), db);
                    for (std::size_t a = 0; a < da; ++a)
                        for (std::size_t p = 0; p < db; ++p)
                            if (prod[p] != 0) ra[y](idx(a, g, p), idx(a, g, b)) += prod[p];
                }
        return ConcreteBimodule(std::move(left), std::move(right), dim, std::move(la),
                                std::move(ra), static_cast<std::int64_t>(t));
    }

    /// Rectangular matrix space M_{p x q} with left M_p and right M_q action.
    static ConcreteBimodule matrix_simple(std::size_t p, std::size_t q) {
        auto left = VertexAlgebra::matrix(p);
        auto right = VertexAlgebra::matrix(q);
        std::size_t dim = p * q;
        auto idx = [q](std::size_t r, std::size_t c) { return r * q + c; };
        std::vector<ExactMatrix> la(p * p, ExactMatrix(dim, dim));
        std::vector<ExactMatrix> ra(q * q, ExactMatrix(dim, dim));
        for (std::size_t a = 0; a < p; ++a)
            for (std::size_t b = 0; b < p; ++b)
                for (std::size_t c = 0; c < q; ++c)
                    la[a * p + b](idx(a, c), idx(b, c)) = 1;  // E_ab . e_bc = e_ac
        for (std::size_t a = 0; a < q; ++a)
            for (std::size_t b = 0; b < q; ++b)
                for (std::size_t r = 0; r < p; ++r)
                    ra[a * q + b](idx(r, b), idx(r, a)) = 1;  // e_ra . E_ab = e_rb
        return ConcreteBimodule(std::move(left), std::move(right), dim, std::move(la),
                                std::move(ra));
    }

    /// Plain vector space over field-field blocks.
    static ConcreteBimodule vector_space(std::size_t dim) {
        auto k = VertexAlgebra::field();
        std::vector<ExactMatrix> la{ExactMatrix::identity(dim)};
        std::vector<ExactMatrix> ra{ExactMatrix::identity(dim)};
        return ConcreteBimodule(k, k, dim, std::move(la), std::move(ra));
    }

    static ConcreteBimodule direct_sum(const ConcreteBimodule& x, const ConcreteBimodule& y) {
        if (x.left_ != y.left_ || x.right_ != y.right_)
            throw std::invalid_argument("direct sum requires identical vertex algebras");
        std::size_t dim = x.dim_ + y.dim_;
        auto embed = [&](const ExactMatrix& a, const ExactMatrix& b) {
            ExactMatrix m(dim, dim);
            for (std::size_t i = 0; i < a.rows(); ++i)
                for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
            for (std::size_t i = 0; i < b.rows(); ++i)
                for (std::size_t j = 0; j < b.cols(); ++j)
                    m(x.dim_ + i, x.dim_ + j) = b(i, j);
            return m;
        };
        std::vector<ExactMatrix> la, ra;
        for (std::size_t a = 0; a < x.left_->dim(); ++a)
            la.push_back(embed(x.left_action_[a], y.left_action_[a]));
        for (std::size_t b = 0; b < x.right_->dim(); ++b)
            ra.push_back(embed(x.right_action_[b], y.right_action_[b]));
        return ConcreteBimodule(x.left_, x.right_, dim, std::move(la), std::move(ra));
    }

private:
    void verify() const {
        if (dim_ == 0) return;
        ExactMatrix id = ExactMatrix::identity(dim_);
        if (!(left_action_of(left_->alg.unit()) == id))
            throw std::invalid_argument("left action is not unital");
        if (!(right_action_of(right_->alg.unit()) == id))
            throw std::invalid_argument("right action is not unital");
        for (std::size_t a = 0; a < left_->dim(); ++a)
            for (std::size_t b = 0; b < left_->dim(); ++b) {
                Element prod = densify(left_->alg.basis_product(a, b), left_->dim());
                if (!(left_action_of(prod) == left_action_[a] * left_action_[b]))
                    throw std::invalid_argument("left action incompatible with the product");
            }
        for (std::size_t a = 0; a < right_->dim(); ++a)
            for (std::size_t b = 0; b < right_->dim(); ++b) {
                // m.(ab) = (m.a).b
                Element prod = densify(right_->alg.basis_product(a, b), right_->dim());
                if (!(right_action_of(prod) == right_action_[b] * right_action_[a]))
                    throw std::invalid_argument("right action incompatible with the product");
            }
        for (std::size_t a = 0; a < left_->dim(); ++a)
            for (std::size_t b = 0; b < right_->dim(); ++b)
                if (!(left_action_[a] * right_action_[b] == right_action_[b] * left_action_[a]))
                    throw std::invalid_argument("left and right actions do not commute");
    }

    std::shared_ptr<const VertexAlgebra> left_;
    std::shared_ptr<const VertexAlgebra> right_;
    std::size_t dim_;
    std::vector<ExactMatrix> left_action_;
    std::vector<ExactMatrix> right_action_;
    std::optional<std::int64_t> known_free_rank_;
};

namespace detail {

inline void require_split(const VertexAlgebra& a, const char* what) {
    if (!a.split())
        throw std::runtime_error(std::string(what) + " requires semisimple blocks");
}

/// Multiplicity of each simple block of B inside a module realized by
/// projector matrices cut = action of the block idempotent.
inline std::size_t block_multiplicity(const ExactMatrix& cut, std::size_t simple_dim) {
    std::size_t d = rank(cut);
    if (d % simple_dim != 0)
        throw std::logic_error("block dimension not divisible by simple dimension");
    return d / simple_dim;
}

}  // namespace detail

struct BimoduleRanks {
    std::int64_t dij = 0;  // rank as right module
    std::int64_t dji = 0;  // rank as left module
    std::int64_t t = 0;    // rank as bimodule
};

/// Per-block multiplicities of the carrier as a right module over the split
/// right algebra.
inline std::vector<std::size_t> right_multiplicities(const ConcreteBimodule& m) {
    detail::require_split(m.right_algebra(), "rank computation");
    const auto& B = m.right_algebra();
    std::vector<std::size_t> mu;
    for (std::size_t b = 0; b < B.split_blocks.size(); ++b)
        mu.push_back(detail::block_multiplicity(m.right_action_of(B.block_idempotent(b)),
                                                B.split_blocks[b]));
    return mu;
}

inline std::vector<std::size_t> left_multiplicities(const ConcreteBimodule& m) {
    detail::require_split(m.left_algebra(), "rank computation");
    const auto& A = m.left_algebra();
    std::vector<std::size_t> mu;
    for (std::size_t b = 0; b < A.split_blocks.size(); ++b)
        mu.push_back(detail::block_multiplicity(m.left_action_of(A.block_idempotent(b)),
                                                A.split_blocks[b]));
    return mu;
}

/// Multiplicity matrix over the blocks of A_i (x) A_j^op.
inline std::vector<std::vector<std::size_t>> pair_multiplicities(const ConcreteBimodule& m) {
    detail::require_split(m.left_algebra(), "rank computation");
    detail::require_split(m.right_algebra(), "rank computation");
    const auto& A = m.left_algebra();
    const auto& B = m.right_algebra();
    std::vector<std::vector<std::size_t>> mu(A.split_blocks.size(),
                                             std::vector<std::size_t>(B.split_blocks.size()));
    for (std::size_t a = 0; a < A.split_blocks.size(); ++a)
        for (std::size_t b = 0; b < B.split_blocks.size(); ++b) {
            ExactMatrix cut =
                m.left_action_of(A.block_idempotent(a)) * m.right_action_of(B.block_idempotent(b));
            mu[a][b] =
                detail::block_multiplicity(cut, A.split_blocks[a] * B.split_blocks[b]);
        }
    return mu;
}

inline std::int64_t rank_from_multiplicities(const std::vector<std::size_t>& mu,
                                             const std::vector<std::size_t>& block_sizes) {
    std::int64_t r = 0;
    for (std::size_t b = 0; b < mu.size(); ++b) {
        std::int64_t g = (static_cast<std::int64_t>(mu[b]) + block_sizes[b] - 1) /
                         static_cast<std::int64_t>(block_sizes[b]);
        r = std::max(r, g);
    }
    return r;
}

/// Minimal generator counts: as right module, left module, bimodule. Only
/// defined over split semisimple blocks (minimal generators of S_b^mu over a
/// product of matrix blocks M_k is max over blocks of ceil(mu / k)).
inline BimoduleRanks bimodule_ranks(const ConcreteBimodule& m) {
    BimoduleRanks r;
    if (m.dim() == 0) return r;
    const auto& A = m.left_algebra();
    const auto& B = m.right_algebra();
    r.dij = rank_from_multiplicities(right_multiplicities(m), B.split_blocks);
    r.dji = rank_from_multiplicities(left_multiplicities(m), A.split_blocks);
    auto mu = pair_multiplicities(m);
    std::int64_t t = 0;
    for (std::size_t a = 0; a < mu.size(); ++a)
        for (std::size_t b = 0; b < mu[a].size(); ++b) {
            std::int64_t k =
                static_cast<std::int64_t>(A.split_blocks[a] * B.split_blocks[b]);
            t = std::max(t, (static_cast<std::int64_t>(mu[a][b]) + k - 1) / k);
        }
    r.t = t;
    return r;
}

/// True iff the carrier is isomorphic to (A_i (x) A_j^op)^t for some t >= 0.
inline bool is_free_bimodule(const ConcreteBimodule& m) {
    if (m.dim() == 0) return true;
    const auto& A = m.left_algebra();
    const auto& B = m.right_algebra();
    auto mu = pair_multiplicities(m);
    std::optional<std::size_t> t;
    for (std::size_t a = 0; a < mu.size(); ++a)
        for (std::size_t b = 0; b < mu[a].size(); ++b) {
            std::size_t k = A.split_blocks[a] * B.split_blocks[b];
            if (mu[a][b] % k != 0) return false;
            std::size_t quo = mu[a][b] / k;
            if (t && *t != quo) return false;
            t = quo;
        }
    return true;
}

struct HomDualDims {
    std::size_t dim_left_dual = 0;   // dim Hom_{A_i}(M, A_i)
    std::size_t dim_right_dual = 0;  // dim Hom_{A_j}(M, A_j)
    bool iso = false;
};

namespace detail {

/// Basis of {F : F * pre[k] = post[k] * F for all k}, F of shape rows x cols,
/// flattened row-major.
inline std::vector<Vec> intertwiner_space(std::size_t rows, std::size_t cols,
                                          const std::vector<ExactMatrix>& pre,
                                          const std::vector<ExactMatrix>& post) {
    std::size_t unknowns = rows * cols;
    std::vector<Vec> eqs;
    for (std::size_t k = 0; k < pre.size(); ++k) {
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                Vec row(unknowns, Rational(0));
                // (F * pre[k])_{ij} = sum_l F_{il} pre[k]_{lj}
                for (std::size_t l = 0; l < cols; ++l) row[i * cols + l] += pre[k](l, j);
                // (post[k] * F)_{ij} = sum_l post[k]_{il} F_{lj}
                for (std::size_t l = 0; l < rows; ++l) row[l * cols + j] -= post[k](i, l);
                if (!is_zero_vec(row)) eqs.push_back(std::move(row));
            }
    }
    if (eqs.empty()) {
        std::vector<Vec> all;
        for (std::size_t i = 0; i < unknowns; ++i) all.push_back(unit_vec(unknowns, i));
        return all;
    }
    return nullspace(ExactMatrix::from_row_vectors(eqs, unknowns));
}

/// Block multiplicities of an abstract module given by commuting left/right
/// projector-compatible action maps expressed on a chosen basis.
inline std::vector<std::vector<std::size_t>> abstract_pair_multiplicities(
    const std::vector<Vec>& basis, const VertexAlgebra& L, const VertexAlgebra& R,
    const std::function<Vec(const Element&, const Vec&)>& act_left,
    const std::function<Vec(const Element&, const Vec&)>& act_right) {
    std::size_t h = basis.size();
    std::vector<std::vector<std::size_t>> mu(L.split_blocks.size(),
                                             std::vector<std::size_t>(R.split_blocks.size(), 0));
    if (h == 0) return mu;
    for (std::size_t a = 0; a < L.split_blocks.size(); ++a)
        for (std::size_t b = 0; b < R.split_blocks.size(); ++b) {
            ExactMatrix cut(h, h);
            for (std::size_t k = 0; k < h; ++k) {
                Vec image = act_right(R.block_idempotent(b),
                                      act_left(L.block_idempotent(a), basis[k]));
                auto c = coords_in_span(basis, image);
                if (!c) throw std::logic_error("module not closed under idempotent action");
                for (std::size_t i = 0; i < h; ++i) cut(i, k) = (*c)[i];
            }
            mu[a][b] = block_multiplicity(cut, L.split_blocks[a] * R.split_blocks[b]);
        }
    return mu;
}

}  // namespace detail

/// Dimensions of both dual Hom spaces plus whether they are isomorphic as
/// A_j-A_i-bimodules (block multiplicity comparison, valid over split
/// semisimple blocks).
inline HomDualDims hom_dual_dims(const ConcreteBimodule& m) {
    detail::require_split(m.left_algebra(), "Hom-duality check");
    detail::require_split(m.right_algebra(), "Hom-duality check");
    const auto& A = m.left_algebra();
    const auto& B = m.right_algebra();
    HomDualDims out;

    // Hom_{A_i}(M, A_i): F with F . L^M_a = L^{A_i}_a . F
    std::vector<ExactMatrix> preL, postL;
    for (std::size_t a = 0; a < A.dim(); ++a) {
        preL.push_back(m.left_action(a));
        postL.push_back(A.alg.left_mult_matrix(A.alg.basis_element(a)));
    }
    auto left_basis = detail::intertwiner_space(A.dim(), m.dim(), preL, postL);
    out.dim_left_dual = left_basis.size();

    // Hom_{A_j}(M, A_j): F with F . R^M_b = R^{A_j}_b . F
    std::vector<ExactMatrix> preR, postR;
    for (std::size_t b = 0; b < B.dim(); ++b) {
        preR.push_back(m.right_action(b));
        postR.push_back(B.alg.right_mult_matrix(B.alg.basis_element(b)));
    }
    auto right_basis = detail::intertwiner_space(B.dim(), m.dim(), preR, postR);
    out.dim_right_dual = right_basis.size();

    // bimodule structures: on Hom_{A_i}(M, A_i): (b psi a)(x) = psi(x b) a
    auto act_left_on_L = [&](const Element& b, const Vec& f) {
        ExactMatrix F(A.dim(), m.dim());
        for (std::size_t i = 0; i < A.dim(); ++i)
            for (std::size_t j = 0; j < m.dim(); ++j) F(i, j) = f[i * m.dim() + j];
        ExactMatrix G = F * m.right_action_of(b);
        Vec out_v(A.dim() * m.dim());
        for (std::size_t i = 0; i < A.dim(); ++i)
            for (std::size_t j = 0; j < m.dim(); ++j) out_v[i * m.dim() + j] = G(i, j);
        return out_v;
    };
    auto act_right_on_L = [&](const Element& a, const Vec& f) {
        ExactMatrix F(A.dim(), m.dim());
        for (std::size_t i = 0; i < A.dim(); ++i)
            for (std::size_t j = 0; j < m.dim(); ++j) F(i, j) = f[i * m.dim() + j];
        ExactMatrix G = A.alg.right_mult_matrix(a) * F;
        Vec out_v(A.dim() * m.dim());
        for (std::size_t i = 0; i < A.dim(); ++i)
            for (std::size_t j = 0; j < m.dim(); ++j) out_v[i * m.dim() + j] = G(i, j);
        return out_v;
    };
    // on Hom_{A_j}(M, A_j): (b psi a)(x) = b psi(a x)
    auto act_left_on_R = [&](const Element& b, const Vec& f) {
        ExactMatrix F(B.dim(), m.dim());
        for (std::size_t i = 0; i < B.dim(); ++i)
            for (std::size_t j = 0; j < m.dim(); ++j) F(i, j) = f[i * m.dim() + j];
        ExactMatrix G = B.alg.left_mult_matrix(b) * F;
        Vec out_v(B.dim() * m.dim());
        for (std::size_t i = 0; i < B.dim(); ++i)
            for (std::size_t j = 0; j < m.dim(); ++j) out_v[i * m.dim() + j] = G(i, j);
        return out_v;
    };
    auto act_right_on_R = [&](const Element& a, const Vec& f) {
        ExactMatrix F(B.dim(), m.dim());
        for (std::size_t i = 0; i < B.dim(); ++i)
            for (std::size_t j = 0; j < m.dim(); ++j) F(i, j) = f[i * m.dim() + j];
        ExactMatrix G = F * m.left_action_of(a);
        Vec out_v(B.dim() * m.dim());
        for (std::size_t i = 0; i < B.dim(); ++i)
            for (std::size_t j = 0; j < m.dim(); ++j) out_v[i * m.dim() + j] = G(i, j);
        return out_v;
    };

    auto muL = detail::abstract_pair_multiplicities(left_basis, B, A, act_left_on_L,
                                                    act_right_on_L);
    auto muR = detail::abstract_pair_multiplicities(right_basis, B, A, act_left_on_R,
                                                    act_right_on_R);
    out.iso = (muL == muR);
    return out;
}

struct SymbolicBlock {
    std::int64_t n = 1;    // matrix size
    std::int64_t eps = 1;  // k-dimension of the division algebra
    friend bool operator==(const SymbolicBlock&, const SymbolicBlock&) = default;
    friend auto operator<=>(const SymbolicBlock&, const SymbolicBlock&) = default;
};

struct SymbolicAlgebra {
    std::vector<SymbolicBlock> blocks;
    std::int64_t dim() const {
        std::int64_t d = 0;
        for (const auto& b : blocks) d += b.n * b.n * b.eps;
        return d;
    }
};

struct SymbolicBimodule {
    std::int64_t dij = 1;
    std::int64_t dji = 1;
    bool free_flag = false;
    bool duality_declared = false;  // Hom-duality supplied with the data
};

using VertexAlgebraData =
    std::variant<std::shared_ptr<const VertexAlgebra>, SymbolicAlgebra>;
using BimoduleData = std::variant<ConcreteBimodule, SymbolicBimodule>;

enum class GeneralizedMode { NotEstablished, Verified, RuleDerived, Declared };

struct Classification {
    bool pseudo = true;
    bool pre = false;
    bool generalized = false;
    bool regular = false;
    bool normal = false;
    bool seminormal = false;
    bool valued_graph = false;
    GeneralizedMode generalized_mode = GeneralizedMode::NotEstablished;
    std::vector<std::pair<std::string, std::string>> asymmetric_pairs;
};

/// Vertex algebras plus one bimodule per oriented pair where it is nonzero.
/// Concrete and symbolic data never mix on a single modulation's bimodule
/// rank computations, but symbolic algebras and concrete ones may coexist
/// across different modulations.
class PseudoModulation {
public:
    PseudoModulation(std::vector<std::string> vertices,
                     std::vector<VertexAlgebraData> algebras,
                     std::map<std::pair<std::size_t, std::size_t>, BimoduleData> bimodules,
                     bool algebraically_closed_regime = false)
        : vertices_(std::move(vertices)),
          algebras_(std::move(algebras)),
          bimodules_(std::move(bimodules)),
          algebraically_closed_(algebraically_closed_regime) {
        if (algebras_.size() != vertices_.size())
            throw std::invalid_argument("one vertex algebra per vertex required");
        for (const auto& [key, bim] : bimodules_) {
            auto [i, j] = key;
            if (i >= vertices_.size() || j >= vertices_.size())
                throw std::invalid_argument("bimodule endpoints out of range");
            if (const auto* conc = std::get_if<ConcreteBimodule>(&bim)) {
                const auto* li = std::get_if<std::shared_ptr<const VertexAlgebra>>(&algebras_[i]);
                const auto* rj = std::get_if<std::shared_ptr<const VertexAlgebra>>(&algebras_[j]);
                if (!li || !rj)
                    throw std::invalid_argument("concrete bimodule over symbolic vertex algebra");
                if (conc->left_algebra_ptr() != *li || conc->right_algebra_ptr() != *rj)
                    throw std::invalid_argument("bimodule algebras do not match the vertices");
                if (conc->dim() == 0)
                    throw std::invalid_argument("zero bimodules are omitted, not stored");
                if (!conc->known_free_rank() &&
                    (!conc->left_algebra().split() || !conc->right_algebra().split()))
                    throw std::invalid_argument(
                        "bimodule over non-semisimple blocks needs a declared free rank");
            } else {
                const auto& sym = std::get<SymbolicBimodule>(bim);
                if (sym.dij <= 0 || sym.dji <= 0)
                    throw std::invalid_argument("symbolic bimodule ranks must be positive");
            }
        }
    }

    std::size_t num_vertices() const { return vertices_.size(); }
    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<VertexAlgebraData>& algebras() const { return algebras_; }
    const std::map<std::pair<std::size_t, std::size_t>, BimoduleData>& bimodules() const {
        return bimodules_;
    }
    bool algebraically_closed_regime() const { return algebraically_closed_; }

    bool is_concrete() const {
        for (const auto& a : algebras_)
            if (!std::holds_alternative<std::shared_ptr<const VertexAlgebra>>(a)) return false;
        for (const auto& [key, bim] : bimodules_)
            if (!std::holds_alternative<ConcreteBimodule>(bim)) return false;
        return true;
    }

    const VertexAlgebra& concrete_algebra(std::size_t v) const {
        return *std::get<std::shared_ptr<const VertexAlgebra>>(algebras_.at(v));
    }

    std::shared_ptr<const VertexAlgebra> concrete_algebra_ptr(std::size_t v) const {
        return std::get<std::shared_ptr<const VertexAlgebra>>(algebras_.at(v));
    }

    const ConcreteBimodule* concrete_bimodule(std::size_t i, std::size_t j) const {
        auto it = bimodules_.find({i, j});
        if (it == bimodules_.end()) return nullptr;
        return std::get_if<ConcreteBimodule>(&it->second);
    }

    std::int64_t algebra_dim(std::size_t v) const {
        if (const auto* conc = std::get_if<std::shared_ptr<const VertexAlgebra>>(&algebras_[v]))
            return static_cast<std::int64_t>((*conc)->dim());
        return std::get<SymbolicAlgebra>(algebras_[v]).dim();
    }

    /// Sorted block signature used for isomorphism matching.
    std::vector<SymbolicBlock> block_signature(std::size_t v) const {
        std::vector<SymbolicBlock> sig;
        if (const auto* conc = std::get_if<std::shared_ptr<const VertexAlgebra>>(&algebras_[v])) {
            if (!(*conc)->split()) throw std::runtime_error("non-semisimple vertex algebra");
            for (std::size_t n : (*conc)->split_blocks)
                sig.push_back({static_cast<std::int64_t>(n), 1});
        } else {
            sig = std::get<SymbolicAlgebra>(algebras_[v]).blocks;
        }
        std::sort(sig.begin(), sig.end());
        return sig;
    }

private:
    std::vector<std::string> vertices_;
    std::vector<VertexAlgebraData> algebras_;
    std::map<std::pair<std::size_t, std::size_t>, BimoduleData> bimodules_;
    bool algebraically_closed_;
};

/// Valuations (d_ij, d_ji) of the stored bimodules: minimal generator counts
/// for concrete split data, free-module counts when a free rank is declared,
/// declared values for symbolic data.
inline PseudoValuedQuiver pseudo_valued_quiver_of(const PseudoModulation& m) {
    std::vector<ValuedEdge> edges;
    for (const auto& [key, bim] : m.bimodules()) {
        auto [i, j] = key;
        ValuedEdge e{i, j, 0, 0};
        if (const auto* conc = std::get_if<ConcreteBimodule>(&bim)) {
            if (conc->left_algebra().split() && conc->right_algebra().split()) {
                BimoduleRanks r = bimodule_ranks(*conc);
                e.dij = r.dij;
                e.dji = r.dji;
            } else {
                std::int64_t t = conc->known_free_rank().value();
                e.dij = t * static_cast<std::int64_t>(conc->left_algebra().dim());
                e.dji = t * static_cast<std::int64_t>(conc->right_algebra().dim());
            }
        } else {
            const auto& sym = std::get<SymbolicBimodule>(bim);
            e.dij = sym.dij;
            e.dji = sym.dji;
        }
        edges.push_back(e);
    }
    return PseudoValuedQuiver(m.vertices(), edges);
}

inline Classification classify(const PseudoModulation& m) {
    Classification c;
    bool all_free = true;
    bool all_dual = true;         // concrete: verified; meaningless if any symbolic
    bool any_concrete_pair = false;
    bool all_declared_dual = true;
    bool any_symbolic = false;
    for (const auto& [key, bim] : m.bimodules()) {
        if (const auto* conc = std::get_if<ConcreteBimodule>(&bim)) {
            any_concrete_pair = true;
            if (conc->known_free_rank())
                ;  // free by construction
            else if (!is_free_bimodule(*conc))
                all_free = false;
            if (conc->left_algebra().split() && conc->right_algebra().split()) {
                if (!hom_dual_dims(*conc).iso) all_dual = false;
            } else {
                all_dual = false;  // cannot verify over non-semisimple blocks
            }
            all_declared_dual = false;
        } else {
            any_symbolic = true;
            const auto& sym = std::get<SymbolicBimodule>(bim);
            if (!sym.free_flag) all_free = false;
            if (!sym.duality_declared) all_declared_dual = false;
        }
    }
    c.pre = all_free;

    bool all_semisimple = true;
    bool all_simple = true;
    for (std::size_t v = 0; v < m.num_vertices(); ++v) {
        if (const auto* conc =
                std::get_if<std::shared_ptr<const VertexAlgebra>>(&m.algebras()[v])) {
            if (!(*conc)->split()) all_semisimple = false;
            if ((*conc)->split_blocks.size() != 1) all_simple = false;
        } else {
            if (std::get<SymbolicAlgebra>(m.algebras()[v]).blocks.size() != 1)
                all_simple = false;
        }
    }
    c.normal = all_simple && all_semisimple;
    c.seminormal = all_semisimple;

    if (!any_symbolic && any_concrete_pair && all_dual) {
        c.generalized = true;
        c.generalized_mode = GeneralizedMode::Verified;
    } else if (m.bimodules().empty()) {
        c.generalized = true;
        c.generalized_mode = GeneralizedMode::Verified;  // vacuous
    } else if (all_semisimple && m.algebraically_closed_regime()) {
        c.generalized = true;
        c.generalized_mode = GeneralizedMode::RuleDerived;
    } else if (any_symbolic && all_declared_dual) {
        c.generalized = true;
        c.generalized_mode = GeneralizedMode::Declared;
    }

    c.regular = c.generalized && c.pre;
    c.valued_graph = valuation_witness(pseudo_valued_quiver_of(m)).has_value();

    for (const auto& [key, bim] : m.bimodules()) {
        auto [i, j] = key;
        if (!m.bimodules().count({j, i}) && i != j)
            c.asymmetric_pairs.push_back({m.vertices()[i], m.vertices()[j]});
    }
    return c;
}

/// Modulation isomorphism: pseudo-valued-quiver isomorphism with matching
/// vertex algebra block data and matching bimodule multiplicity data.
inline std::optional<std::vector<std::size_t>> modulation_iso(const PseudoModulation& m1,
                                                              const PseudoModulation& m2,
                                                              std::size_t max_vertices = 10) {
    if (m1.num_vertices() != m2.num_vertices()) return std::nullopt;
    if (m1.bimodules().size() != m2.bimodules().size()) return std::nullopt;
    std::size_t n = m1.num_vertices();
    if (n > max_vertices)
        throw std::invalid_argument("isomorphism search capped at " +
                                    std::to_string(max_vertices) + " vertices");

    bool c1 = m1.is_concrete(), c2 = m2.is_concrete();
    if (c1 != c2) return std::nullopt;

    // block signatures per vertex
    std::vector<std::vector<SymbolicBlock>> sig1(n), sig2(n);
    for (std::size_t v = 0; v < n; ++v) {
        sig1[v] = m1.block_signature(v);
        sig2[v] = m2.block_signature(v);
    }

    auto bimodule_matches = [&](std::size_t i, std::size_t j, std::size_t ti, std::size_t tj) {
        auto it1 = m1.bimodules().find({i, j});
        auto it2 = m2.bimodules().find({ti, tj});
        if ((it1 == m1.bimodules().end()) != (it2 == m2.bimodules().end())) return false;
        if (it1 == m1.bimodules().end()) return true;
        if (c1) {
            const auto& b1 = std::get<ConcreteBimodule>(it1->second);
            const auto& b2 = std::get<ConcreteBimodule>(it2->second);
            if (b1.dim() != b2.dim()) return false;
            auto mu1 = pair_multiplicities(b1);
            auto mu2 = pair_multiplicities(b2);
            if (mu1.size() != mu2.size()) return false;
            // sorted multiplicity comparison is exact when equal-size blocks
            // are interchangeable; corpus vertex algebras have at most two
            // blocks, all interchangeable only when sizes repeat
            auto canon = [](std::vector<std::vector<std::size_t>> mu,
                            const std::vector<SymbolicBlock>& rows,
                            const std::vector<SymbolicBlock>& cols) {
                // stable canonical form: sort rows/cols by (block size, mults)
                std::vector<std::pair<std::pair<std::int64_t, std::vector<std::size_t>>,
                                      std::size_t>>
                    rkey;
                for (std::size_t r = 0; r < mu.size(); ++r)
                    rkey.push_back({{rows[r].n, mu[r]}, r});
                std::sort(rkey.begin(), rkey.end());
                std::vector<std::vector<std::size_t>> out;
                for (auto& [k, r] : rkey) out.push_back(mu[r]);
                // columns
                std::size_t ncols = out.empty() ? 0 : out[0].size();
                std::vector<std::pair<std::pair<std::int64_t, std::vector<std::size_t>>,
                                      std::size_t>>
                    ckey;
                for (std::size_t cidx = 0; cidx < ncols; ++cidx) {
                    std::vector<std::size_t> colv;
                    for (const auto& row : out) colv.push_back(row[cidx]);
                    ckey.push_back({{cols[cidx].n, colv}, cidx});
                }
                std::sort(ckey.begin(), ckey.end());
                std::vector<std::vector<std::size_t>> final_(out.size());
                for (std::size_t r = 0; r < out.size(); ++r)
                    for (auto& [k, cidx] : ckey) final_[r].push_back(out[r][cidx]);
                return final_;
            };
            std::vector<SymbolicBlock> r1, r2, col1, col2;
            for (std::size_t b : b1.left_algebra().split_blocks)
                r1.push_back({static_cast<std::int64_t>(b), 1});
            for (std::size_t b : b2.left_algebra().split_blocks)
                r2.push_back({static_cast<std::int64_t>(b), 1});
            for (std::size_t b : b1.right_algebra().split_blocks)
                col1.push_back({static_cast<std::int64_t>(b), 1});
            for (std::size_t b : b2.right_algebra().split_blocks)
                col2.push_back({static_cast<std::int64_t>(b), 1});
            return canon(mu1, r1, col1) == canon(mu2, r2, col2);
        }
        const auto& s1 = std::get<SymbolicBimodule>(it1->second);
        const auto& s2 = std::get<SymbolicBimodule>(it2->second);
        return s1.dij == s2.dij && s1.dji == s2.dji && s1.free_flag == s2.free_flag;
    };

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (std::size_t v = 0; v < n && ok; ++v) ok = (sig1[v] == sig2[perm[v]]);
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = 0; j < n && ok; ++j)
                ok = bimodule_matches(i, j, perm[i], perm[j]);
        if (ok) return perm;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

/// Wedderburn block data of the rational group algebra of a cyclic group:
/// one block per divisor d of n, of dimension phi(d).
inline std::vector<SymbolicBlock> cyclic_group_blocks(std::int64_t order) {
    if (order <= 0) throw std::invalid_argument("group order must be positive");
    std::vector<SymbolicBlock> blocks;
    for (std::int64_t d = 1; d <= order; ++d) {
        if (order % d != 0) continue;
        std::int64_t phi = 0;
        for (std::int64_t k = 1; k <= d; ++k)
            if (std::gcd(k, d) == 1) ++phi;
        blocks.push_back({1, phi});
    }
    return blocks;
}

struct GroupData {
    std::int64_t order = 1;
    std::vector<SymbolicBlock> blocks;  // Wedderburn blocks of the group algebra
};

struct GroupSpeciesEdge {
    std::size_t i = 0;
    std::size_t j = 0;
    std::int64_t dij = 1;
    std::int64_t dji = 1;
    bool free_flag = false;
};

struct GroupSpeciesSpec {
    std::vector<std::string> vertices;
    std::vector<GroupData> groups;
    std::vector<GroupSpeciesEdge> bimodules;
    bool algebraically_closed = false;
};

/// Symbolic pseudo-modulation of a group species: vertex algebras are the
/// declared group-algebra blocks, edges carry the declared bimodule ranks.
inline PseudoModulation from_group_species(const GroupSpeciesSpec& g) {
    if (g.groups.size() != g.vertices.size())
        throw std::invalid_argument("one group per vertex required");
    std::vector<VertexAlgebraData> algebras;
    for (const auto& grp : g.groups) {
        std::int64_t total = 0;
        for (const auto& b : grp.blocks) total += b.n * b.n * b.eps;
        if (total != grp.order)
            throw std::invalid_argument("group blocks inconsistent with group order");
        algebras.push_back(SymbolicAlgebra{grp.blocks});
    }
    std::map<std::pair<std::size_t, std::size_t>, BimoduleData> bims;
    for (const auto& e : g.bimodules)
        bims.insert({{e.i, e.j}, SymbolicBimodule{e.dij, e.dji, e.free_flag, false}});
    return PseudoModulation(g.vertices, std::move(algebras), std::move(bims),
                            g.algebraically_closed);
}

/// Every block dimension is a perfect square n_i^2 with pairwise coprime n_i.
inline bool coprime_split_check(const SemisimpleSpec& spec) {
    std::vector<std::int64_t> roots;
    for (const auto& [n_block, eps] : spec.blocks) {
        std::int64_t r = 0;
        while (r * r < eps) ++r;
        if (r * r != eps) return false;
        roots.push_back(r);
    }
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            if (std::gcd(roots[i], roots[j]) != 1) return false;
    return true;
}

}  // namespace quiverforge
