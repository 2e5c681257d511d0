#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "quiverforge/matrix.hpp"
#include "quiverforge/quiver.hpp"
#include "quiverforge/rational.hpp"

namespace quiverforge {

using Element = Vec;  // coordinates in the algebra basis

struct SparseTerm {
    std::size_t idx;
    Rational coef;
};
using SparseVec = std::vector<SparseTerm>;

inline Element densify(const SparseVec& s, std::size_t dim) {
    Element e(dim, Rational(0));
    for (const auto& t : s) e[t.idx] += t.coef;
    return e;
}

/// Finite-dimensional unital algebra given by structure constants.
/// Associativity and the unit laws are checked at construction.
class StructureConstAlgebra {
public:
    StructureConstAlgebra() = default;

    StructureConstAlgebra(std::vector<std::string> labels,
                          std::vector<std::vector<SparseVec>> table, Element unit)
        : dim_(labels.size()),
          labels_(std::move(labels)),
          table_(std::move(table)),
          unit_(std::move(unit)) {
        if (table_.size() != dim_ || unit_.size() != dim_)
            throw std::invalid_argument("structure constant table shape mismatch");
        for (const auto& row : table_)
            if (row.size() != dim_)
                throw std::invalid_argument("structure constant table shape mismatch");
        verify_unit();
        verify_associativity();
    }

    std::size_t dim() const { return dim_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    const Element& unit() const { return unit_; }
    const SparseVec& basis_product(std::size_t a, std::size_t b) const {
        return table_.at(a).at(b);
    }

    Element basis_element(std::size_t i) const { return unit_vec(dim_, i); }

    Element multiply(const Element& x, const Element& y) const {
        if (x.size() != dim_ || y.size() != dim_)
            throw std::invalid_argument("element dimension mismatch");
        Element out(dim_, Rational(0));
        for (std::size_t a = 0; a < dim_; ++a) {
            if (x[a] == 0) continue;
            for (std::size_t b = 0; b < dim_; ++b) {
                if (y[b] == 0) continue;
                Rational c = x[a] * y[b];
                for (const auto& t : table_[a][b]) out[t.idx] += c * t.coef;
            }
        }
        return out;
    }

    /// Matrix of right multiplication rho_x : y -> y * x (column convention).
    ExactMatrix right_mult_matrix(const Element& x) const {
        ExactMatrix m(dim_, dim_);
        for (std::size_t b = 0; b < dim_; ++b) {
            Element col = multiply(basis_element(b), x);
            for (std::size_t i = 0; i < dim_; ++i) m(i, b) = col[i];
        }
        return m;
    }

    ExactMatrix left_mult_matrix(const Element& x) const {
        ExactMatrix m(dim_, dim_);
        for (std::size_t b = 0; b < dim_; ++b) {
            Element col = multiply(x, basis_element(b));
            for (std::size_t i = 0; i < dim_; ++i) m(i, b) = col[i];
        }
        return m;
    }

    /// Trace character of the right regular representation.
    Rational regular_trace(const Element& x) const {
        if (x.size() != dim_) throw std::invalid_argument("element dimension mismatch");
        Rational t(0);
        for (std::size_t b = 0; b < dim_; ++b) {
            for (std::size_t a = 0; a < dim_; ++a) {
                if (x[a] == 0) continue;
                for (const auto& term : table_[b][a])
                    if (term.idx == b) t += x[a] * term.coef;
            }
        }
        return t;
    }

    std::string element_str(const Element& x) const {
        std::string s;
        for (std::size_t i = 0; i < dim_; ++i) {
            if (x[i] == 0) continue;
            if (!s.empty()) s += " + ";
            s += rational_str(x[i]) + "*" + labels_[i];
        }
        return s.empty() ? "0" : s;
    }

    /// Full matrix algebra over the rationals; basis E_{rc} row-major.
    static StructureConstAlgebra matrix_algebra(std::size_t n, const std::string& prefix = "") {
        std::vector<std::string> labels;
        for (std::size_t r = 1; r <= n; ++r)
            for (std::size_t c = 1; c <= n; ++c)
                labels.push_back(n == 1 ? prefix + "e"
                                        : prefix + "E" + std::to_string(r) + std::to_string(c));
        std::size_t d = n * n;
        std::vector<std::vector<SparseVec>> table(d, std::vector<SparseVec>(d));
        auto idx = [n](std::size_t r, std::size_t c) { return r * n + c; };
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t r2 = 0; r2 < n; ++r2)
                    for (std::size_t c2 = 0; c2 < n; ++c2)
                        if (c == r2)
                            table[idx(r, c)][idx(r2, c2)] = {{idx(r, c2), Rational(1)}};
        Element unit(d, Rational(0));
        for (std::size_t r = 0; r < n; ++r) unit[idx(r, r)] = 1;
        return StructureConstAlgebra(std::move(labels), std::move(table), std::move(unit));
    }

private:
    void verify_unit() const {
        for (std::size_t b = 0; b < dim_; ++b) {
            if (multiply(unit_, basis_element(b)) != basis_element(b) ||
                multiply(basis_element(b), unit_) != basis_element(b))
                throw std::invalid_argument("unit law fails on basis element " + labels_[b]);
        }
    }

    void verify_associativity() const {
        for (std::size_t a = 0; a < dim_; ++a)
            for (std::size_t b = 0; b < dim_; ++b) {
                Element ab = densify(table_[a][b], dim_);
                for (std::size_t c = 0; c < dim_; ++c) {
                    Element lhs = multiply(ab, basis_element(c));
                    Element rhs = multiply(basis_element(a), densify(table_[b][c], dim_));
                    if (lhs != rhs)
                        throw std::invalid_argument("associativity fails on basis triple (" +
                                                    labels_[a] + ", " + labels_[b] + ", " +
                                                    labels_[c] + ")");
                }
            }
    }

    std::size_t dim_ = 0;
    std::vector<std::string> labels_;
    std::vector<std::vector<SparseVec>> table_;
    Element unit_;
};

/// Vertex algebra for generalized path algebras and modulations: a structure
/// constant algebra plus, when it is a product of rational matrix blocks, the
/// block layout (basis ordered block-major, matrix units row-major).
struct VertexAlgebra {
    StructureConstAlgebra alg;
    std::vector<std::size_t> split_blocks;  // empty when not split semisimple
    std::vector<std::size_t> basis_weight;  // underlying arrow count per basis
                                            // element; empty means all zero

    bool split() const { return !split_blocks.empty(); }
    std::size_t dim() const { return alg.dim(); }

    std::size_t weight(std::size_t b) const {
        return basis_weight.empty() ? 0 : basis_weight.at(b);
    }

    std::size_t block_offset(std::size_t b) const {
        std::size_t off = 0;
        for (std::size_t k = 0; k < b; ++k) off += split_blocks[k] * split_blocks[k];
        return off;
    }

    /// Basis index of the matrix unit E_{rc} of block b (0-based r, c).
    std::size_t unit_index(std::size_t b, std::size_t r, std::size_t c) const {
        return block_offset(b) + r * split_blocks[b] + c;
    }

    Element block_idempotent(std::size_t b) const {
        Element e(dim(), Rational(0));
        for (std::size_t r = 0; r < split_blocks[b]; ++r) e[unit_index(b, r, r)] = 1;
        return e;
    }

    static std::shared_ptr<const VertexAlgebra> field() {
        return std::make_shared<VertexAlgebra>(
            VertexAlgebra{StructureConstAlgebra::matrix_algebra(1), {1}, {}});
    }

    static std::shared_ptr<const VertexAlgebra> matrix(std::size_t n) {
        return std::make_shared<VertexAlgebra>(
            VertexAlgebra{StructureConstAlgebra::matrix_algebra(n), {n}, {}});
    }

    /// Product of matrix blocks M_{n_0} x M_{n_1} x ...
    static std::shared_ptr<const VertexAlgebra> blocks(const std::vector<std::size_t>& ns) {
        if (ns.empty()) throw std::invalid_argument("empty block list");
        if (ns.size() == 1) return ns[0] == 1 ? field() : matrix(ns[0]);
        std::vector<std::string> labels;
        std::size_t dim = 0;
        for (std::size_t n : ns) dim += n * n;
        std::vector<std::vector<SparseVec>> table(dim, std::vector<SparseVec>(dim));
        Element unit(dim, Rational(0));
        std::size_t off = 0;
        for (std::size_t k = 0; k < ns.size(); ++k) {
            std::size_t n = ns[k];
            std::string prefix = "b" + std::to_string(k) + ".";
            for (std::size_t r = 1; r <= n; ++r)
                for (std::size_t c = 1; c <= n; ++c)
                    labels.push_back(n == 1 ? prefix + "e"
                                            : prefix + "E" + std::to_string(r) +
                                                  std::to_string(c));
            auto idx = [&](std::size_t r, std::size_t c) { return off + r * n + c; };
            for (std::size_t r = 0; r < n; ++r) {
                unit[idx(r, r)] = 1;
                for (std::size_t c = 0; c < n; ++c)
                    for (std::size_t c2 = 0; c2 < n; ++c2)
                        table[idx(r, c)][idx(c, c2)] = {{idx(r, c2), Rational(1)}};
            }
            off += n * n;
        }
        return std::make_shared<VertexAlgebra>(VertexAlgebra{
            StructureConstAlgebra(std::move(labels), std::move(table), std::move(unit)),
            ns,
            {}});
    }

    /// Free algebra on the given letters, truncated: words longer than
    /// max_len multiply to zero. Not semisimple once letters are present.
    static std::shared_ptr<const VertexAlgebra> truncated_paths(
        const std::vector<std::string>& letters, std::size_t max_len) {
        std::vector<std::vector<std::size_t>> words{{}};
        std::vector<std::vector<std::size_t>> frontier{{}};
        for (std::size_t len = 1; len <= max_len && !letters.empty(); ++len) {
            std::vector<std::vector<std::size_t>> next;
            for (const auto& w : frontier)
                for (std::size_t l = 0; l < letters.size(); ++l) {
                    auto ext = w;
                    ext.push_back(l);
                    next.push_back(ext);
                }
            words.insert(words.end(), next.begin(), next.end());
            frontier = std::move(next);
        }
        std::map<std::vector<std::size_t>, std::size_t> index;
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < words.size(); ++i) {
            index[words[i]] = i;
            if (words[i].empty()) {
                labels.push_back("e");
            } else {
                std::string s;
                for (std::size_t l : words[i]) {
                    if (!s.empty()) s += "*";
                    s += letters[l];
                }
                labels.push_back(s);
            }
        }
        std::size_t dim = words.size();
        std::vector<std::vector<SparseVec>> table(dim, std::vector<SparseVec>(dim));
        for (std::size_t a = 0; a < dim; ++a)
            for (std::size_t b = 0; b < dim; ++b) {
                if (words[a].size() + words[b].size() > max_len) continue;
                auto cat = words[a];
                cat.insert(cat.end(), words[b].begin(), words[b].end());
                table[a][b] = {{index.at(cat), Rational(1)}};
            }
        Element unit(dim, Rational(0));
        unit[index.at({})] = 1;
        std::vector<std::size_t> weights;
        for (const auto& w : words) weights.push_back(w.size());
        return std::make_shared<VertexAlgebra>(VertexAlgebra{
            StructureConstAlgebra(std::move(labels), std::move(table), std::move(unit)),
            {},
            std::move(weights)});
    }
};

/// Radical via the trace form: {x : t(x y) = 0 for all y}. Over a field of
/// characteristic zero this is the Jacobson radical.
inline std::vector<Element> radical_traceform(const StructureConstAlgebra& a) {
    std::size_t n = a.dim();
    ExactMatrix gram(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            gram(i, j) = a.regular_trace(a.multiply(a.basis_element(i), a.basis_element(j)));
    return nullspace(gram);
}

struct TraceNondegeneracyReport {
    std::size_t trials = 0;
    std::size_t failures = 0;
    std::string first_failure;
    bool pass() const { return failures == 0; }
};

/// For random nonzero a in M_n(Q), some basis y must have t(a y) != 0.
inline TraceNondegeneracyReport check_trace_nondegeneracy(std::size_t n, std::size_t trials,
                                          std::uint64_t seed) {
    StructureConstAlgebra mn = StructureConstAlgebra::matrix_algebra(n);
    Rng rng(seed);
    TraceNondegeneracyReport report;
    report.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
        Element a(mn.dim(), Rational(0));
        while (is_zero_vec(a))
            for (std::size_t i = 0; i < mn.dim(); ++i) a[i] = rng.range(-5, 5);
        bool hit = false;
        for (std::size_t y = 0; y < mn.dim() && !hit; ++y)
            hit = mn.regular_trace(mn.multiply(a, mn.basis_element(y))) != 0;
        if (!hit) {
            ++report.failures;
            if (report.first_failure.empty()) report.first_failure = mn.element_str(a);
        }
    }
    return report;
}

/// Relation: linear combination of parallel paths. The presentation checks
/// parallelism and nonzero length; verify_admissible reports on terms of
/// length one (not inside the arrow-ideal square).
struct Relation {
    std::vector<std::pair<Rational, Path>> terms;
};

class BoundQuiverPresentation {
public:
    BoundQuiverPresentation(Quiver quiver, std::vector<Relation> relations,
                            std::size_t nilpotency_bound)
        : quiver_(std::move(quiver)),
          relations_(std::move(relations)),
          bound_(nilpotency_bound) {
        if (bound_ < 1) throw std::invalid_argument("nilpotency bound must be >= 1");
        for (const auto& rel : relations_) {
            if (rel.terms.empty()) throw std::invalid_argument("empty relation");
            std::size_t src = rel.terms.front().second.start;
            std::size_t tgt = path_target(quiver_, rel.terms.front().second);
            for (const auto& [coef, path] : rel.terms) {
                if (path.length() < 1)
                    throw std::invalid_argument("relation term of length zero");
                if (path.start != src || path_target(quiver_, path) != tgt)
                    throw std::invalid_argument("relation terms are not parallel");
            }
        }
    }

    const Quiver& quiver() const { return quiver_; }
    const std::vector<Relation>& relations() const { return relations_; }
    std::size_t bound() const { return bound_; }

private:
    Quiver quiver_;
    std::vector<Relation> relations_;
    std::size_t bound_;
};

struct BoundQuiverProvenance {
    std::shared_ptr<const BoundQuiverPresentation> presentation;
    std::vector<Path> basis_paths;                 // aligned with carrier basis
    std::vector<std::size_t> vertex_idempotents;   // basis index of e_i per vertex
};

class RealizedAlgebra;

struct BlowUpTriple {
    std::size_t path;  // base basis index
    std::size_t row;   // 1..n_src
    std::size_t col;   // 1..n_tgt
};

struct BlowUpProvenance {
    std::shared_ptr<const RealizedAlgebra> base;
    std::vector<std::size_t> multiplicities;  // per base vertex
    std::vector<BlowUpTriple> triples;        // aligned with carrier basis
};

struct RawProvenance {};

/// Simple block of A/r: size n (matrix block M_n over a division algebra of
/// k-dimension eps), with idempotents lifted into A.
struct BlockData {
    std::size_t n = 1;
    std::size_t eps = 1;
    Element block_idempotent;              // unit of the block, lifted
    Element primitive_idempotent;          // u_i, lifted
    std::vector<Element> block_basis;      // lifted matrix units, row-major (split case)
    std::string name;
};

struct SemisimpleSpec {
    // per block: (n_i, eps_i)
    std::vector<std::pair<std::int64_t, std::int64_t>> blocks;
};

class RealizedAlgebra {
public:
    using Provenance = std::variant<BoundQuiverProvenance, BlowUpProvenance, RawProvenance>;

    RealizedAlgebra(StructureConstAlgebra carrier, Provenance provenance,
                    std::vector<Element> radical, std::vector<BlockData> blocks)
        : carrier_(std::move(carrier)),
          provenance_(std::move(provenance)),
          radical_(std::move(radical)),
          blocks_(std::move(blocks)) {
        check_radical_ideal();
        compute_radical_square();
        check_block_consistency();
    }

    const StructureConstAlgebra& carrier() const { return carrier_; }
    const Provenance& provenance() const { return provenance_; }
    const std::vector<Element>& radical_basis() const { return radical_; }
    const std::vector<Element>& radical_square_basis() const { return radical_sq_; }
    const std::vector<BlockData>& blocks() const { return blocks_; }
    bool has_blocks() const { return !blocks_.empty(); }

    bool is_bound_quiver() const {
        return std::holds_alternative<BoundQuiverProvenance>(provenance_);
    }
    bool is_blow_up() const { return std::holds_alternative<BlowUpProvenance>(provenance_); }

    const BoundQuiverProvenance& bound_quiver_provenance() const {
        return std::get<BoundQuiverProvenance>(provenance_);
    }
    const BlowUpProvenance& blow_up_provenance() const {
        return std::get<BlowUpProvenance>(provenance_);
    }

    bool is_basic() const {
        for (const auto& b : blocks_)
            if (b.n != 1) return false;
        return true;
    }

    SemisimpleSpec semisimple_spec() const {
        SemisimpleSpec s;
        for (const auto& b : blocks_)
            s.blocks.push_back({static_cast<std::int64_t>(b.n),
                                static_cast<std::int64_t>(b.eps)});
        return s;
    }

private:
    void check_radical_ideal() {
        RowSpace span(carrier_.dim(), radical_);
        for (std::size_t a = 0; a < carrier_.dim(); ++a)
            for (const auto& y : radical_) {
                if (!span.contains(carrier_.multiply(carrier_.basis_element(a), y)) ||
                    !span.contains(carrier_.multiply(y, carrier_.basis_element(a))))
                    throw std::invalid_argument("radical basis does not span a two-sided ideal");
            }
        std::vector<Element> power = radical_;
        for (std::size_t step = 0; !power.empty(); ++step) {
            if (step > carrier_.dim())
                throw std::invalid_argument("radical is not nilpotent");
            RowSpace next(carrier_.dim());
            for (const auto& x : power)
                for (const auto& y : radical_) next.insert(carrier_.multiply(x, y));
            power = next.rows();
        }
    }

    void compute_radical_square() {
        RowSpace span(carrier_.dim());
        for (const auto& x : radical_)
            for (const auto& y : radical_) span.insert(carrier_.multiply(x, y));
        radical_sq_ = span.rows();
    }

    void check_block_consistency() const {
        if (blocks_.empty()) return;
        std::size_t expected = 0;
        for (const auto& b : blocks_) expected += b.n * b.n * b.eps;
        if (expected + radical_.size() != carrier_.dim())
            throw std::invalid_argument("block dimensions inconsistent with radical");
        Element sum = zero_vec(carrier_.dim());
        for (const auto& b : blocks_)
            for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += b.block_idempotent[i];
        if (sum != carrier_.unit())
            throw std::invalid_argument("block idempotents do not sum to the unit");
        for (const auto& b : blocks_)
            for (const auto& c : blocks_) {
                Element prod = carrier_.multiply(b.block_idempotent, c.block_idempotent);
                Element expect = (&b == &c) ? b.block_idempotent : zero_vec(carrier_.dim());
                if (prod != expect)
                    throw std::invalid_argument("block idempotents are not orthogonal");
            }
    }

    StructureConstAlgebra carrier_;
    Provenance provenance_;
    std::vector<Element> radical_;
    std::vector<Element> radical_sq_;
    std::vector<BlockData> blocks_;
};

struct AdmissibilityReport {
    bool relations_in_j2 = true;
    std::string first_shallow_relation;
    bool bound_kills_paths = true;  // every length-s path reduces to zero
    std::string first_surviving_path;
    bool pass() const { return relations_in_j2 && bound_kills_paths; }
};

namespace detail {

/// Shared reduction machinery for kQ/I truncated at the declared bound:
/// spans of u * rel * v over paths of total length <= level.
struct PathReduction {
    std::vector<Path> paths;                      // all paths of length <= level
    std::map<Path, std::size_t> index;
    RowSpace ideal;                               // span of truncated u rel v

    PathReduction(const BoundQuiverPresentation& pres, std::size_t level)
        : ideal(0) {
        const Quiver& q = pres.quiver();
        paths = enumerate_paths(q, level);
        for (std::size_t i = 0; i < paths.size(); ++i) index[paths[i]] = i;
        ideal = RowSpace(paths.size());
        std::vector<Path> all = paths;
        for (const auto& rel : pres.relations()) {
            std::size_t min_len = level + 1;
            for (const auto& [coef, p] : rel.terms) min_len = std::min(min_len, p.length());
            std::size_t rel_src = rel.terms.front().second.start;
            std::size_t rel_tgt = path_target(q, rel.terms.front().second);
            for (const auto& u : all) {
                if (path_target(q, u) != rel_src) continue;
                for (const auto& v : all) {
                    if (v.start != rel_tgt) continue;
                    if (u.length() + min_len + v.length() > level) continue;
                    Vec g = zero_vec(paths.size());
                    bool nonzero = false;
                    for (const auto& [coef, p] : rel.terms) {
                        if (u.length() + p.length() + v.length() > level) continue;
                        Path w = path_concat(q, path_concat(q, u, p), v);
                        g[index.at(w)] += coef;
                        nonzero = true;
                    }
                    if (nonzero) ideal.insert(g);
                }
            }
        }
    }
};

}  // namespace detail

/// Report on the admissibility witness: relations inside the arrow-ideal
/// square, and the declared power of the arrow ideal vanishing.
inline AdmissibilityReport verify_admissible(const BoundQuiverPresentation& pres) {
    AdmissibilityReport report;
    const Quiver& q = pres.quiver();
    for (const auto& rel : pres.relations())
        for (const auto& [coef, p] : rel.terms)
            if (p.length() < 2) {
                report.relations_in_j2 = false;
                if (report.first_shallow_relation.empty())
                    report.first_shallow_relation = path_str(q, p);
            }
    std::size_t s = pres.bound();
    detail::PathReduction red(pres, s);
    for (std::size_t i = 0; i < red.paths.size(); ++i) {
        if (red.paths[i].length() != s) continue;
        if (!red.ideal.contains(unit_vec(red.paths.size(), i))) {
            report.bound_kills_paths = false;
            if (report.first_surviving_path.empty())
                report.first_surviving_path = path_str(q, red.paths[i]);
            break;
        }
    }
    return report;
}

/// Same report, but with the arrow-ideal power checked inside the realized
/// multiplication table: images of all length-s paths must vanish, and the
/// relations themselves must evaluate to zero.
inline AdmissibilityReport verify_admissible(const BoundQuiverPresentation& pres,
                                             const RealizedAlgebra& realized) {
    AdmissibilityReport report = verify_admissible(pres);
    if (!realized.is_bound_quiver())
        throw std::invalid_argument("realization does not carry bound-quiver provenance");
    const auto& prov = realized.bound_quiver_provenance();
    const Quiver& q = pres.quiver();
    const auto& alg = realized.carrier();

    auto image_of_path = [&](const Path& p) {
        Element out = unit_vec(alg.dim(), prov.vertex_idempotents[p.start]);
        for (std::size_t a : p.arrows) {
            auto it = std::find(prov.basis_paths.begin(), prov.basis_paths.end(),
                                Path{q.arrow(a).src, {a}});
            if (it == prov.basis_paths.end())
                return zero_vec(alg.dim());  // arrow died in the quotient
            out = alg.multiply(
                out, unit_vec(alg.dim(),
                              static_cast<std::size_t>(it - prov.basis_paths.begin())));
        }
        return out;
    };

    for (const auto& p : enumerate_paths(q, pres.bound())) {
        if (p.length() != pres.bound()) continue;
        if (!is_zero_vec(image_of_path(p))) {
            report.bound_kills_paths = false;
            if (report.first_surviving_path.empty())
                report.first_surviving_path = path_str(q, p);
        }
    }
    for (const auto& rel : pres.relations()) {
        Element value = zero_vec(alg.dim());
        for (const auto& [coef, p] : rel.terms) axpy(value, coef, image_of_path(p));
        if (!is_zero_vec(value)) {
            report.bound_kills_paths = false;
            if (report.first_surviving_path.empty())
                report.first_surviving_path = "relation with nonzero image";
        }
    }
    return report;
}

/// kQ/I with the user-declared nilpotency witness: basis is the set of paths
/// of length < s surviving reduction modulo the relation ideal.
inline RealizedAlgebra realize_bound_quiver(const BoundQuiverPresentation& presentation) {
    auto pres = std::make_shared<const BoundQuiverPresentation>(presentation);
    const Quiver& q = pres->quiver();
    for (const auto& rel : pres->relations())
        for (const auto& [coef, p] : rel.terms)
            if (p.length() < 2)
                throw std::invalid_argument("relation not inside the arrow-ideal square: " +
                                            path_str(q, p));
    std::size_t s = pres->bound();
    {
        detail::PathReduction check(*pres, s);
        for (std::size_t i = 0; i < check.paths.size(); ++i) {
            if (check.paths[i].length() != s) continue;
            if (!check.ideal.contains(unit_vec(check.paths.size(), i)))
                throw std::invalid_argument(
                    "not admissible / not finite-dimensional at bound " + std::to_string(s) +
                    ": path " + path_str(q, check.paths[i]) + " survives");
        }
    }

    detail::PathReduction red(*pres, s > 0 ? s - 1 : 0);
    // quotient basis: non-pivot paths of length < s
    std::vector<std::size_t> basis_cols;
    for (std::size_t i = 0; i < red.paths.size(); ++i)
        if (!red.ideal.is_pivot(i)) basis_cols.push_back(i);
    std::map<std::size_t, std::size_t> col_to_basis;
    for (std::size_t k = 0; k < basis_cols.size(); ++k) col_to_basis[basis_cols[k]] = k;

    auto reduce_path = [&](const Path& p) -> Element {
        Element out(basis_cols.size(), Rational(0));
        if (p.length() >= s) return out;
        Vec r = red.ideal.reduce(unit_vec(red.paths.size(), red.index.at(p)));
        for (std::size_t k = 0; k < basis_cols.size(); ++k) out[k] = r[basis_cols[k]];
        return out;
    };

    std::size_t dim = basis_cols.size();
    std::vector<std::string> labels;
    std::vector<Path> basis_paths;
    for (std::size_t col : basis_cols) {
        basis_paths.push_back(red.paths[col]);
        labels.push_back(path_str(q, red.paths[col]));
    }

    std::vector<std::vector<SparseVec>> table(dim, std::vector<SparseVec>(dim));
    for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = 0; b < dim; ++b) {
            const Path& pa = basis_paths[a];
            const Path& pb = basis_paths[b];
            if (!path_composable(q, pa, pb)) continue;
            if (pa.length() + pb.length() >= s) continue;
            Element e = reduce_path(path_concat(q, pa, pb));
            SparseVec sv;
            for (std::size_t i = 0; i < dim; ++i)
                if (e[i] != 0) sv.push_back({i, e[i]});
            table[a][b] = std::move(sv);
        }

    Element unit(dim, Rational(0));
    std::vector<std::size_t> vertex_idems(q.num_vertices());
    for (std::size_t v = 0; v < q.num_vertices(); ++v) {
        std::size_t idx = col_to_basis.at(red.index.at(Path{v, {}}));
        vertex_idems[v] = idx;
        unit[idx] = 1;
    }

    StructureConstAlgebra carrier(std::move(labels), std::move(table), std::move(unit));

    std::vector<Element> radical;
    for (std::size_t i = 0; i < dim; ++i)
        if (basis_paths[i].length() >= 1) radical.push_back(unit_vec(dim, i));

    std::vector<BlockData> blocks;
    for (std::size_t v = 0; v < q.num_vertices(); ++v) {
        BlockData b;
        b.n = 1;
        b.eps = 1;
        b.block_idempotent = unit_vec(dim, vertex_idems[v]);
        b.primitive_idempotent = b.block_idempotent;
        b.block_basis = {b.block_idempotent};
        b.name = q.vertex_name(v);
        blocks.push_back(std::move(b));
    }

    return RealizedAlgebra(std::move(carrier),
                           BoundQuiverProvenance{pres, std::move(basis_paths),
                                                 std::move(vertex_idems)},
                           std::move(radical), std::move(blocks));
}

/// Morita enlargement: vertex i of the base is replaced by an n_i x n_i
/// matrix block; basis triples (p, r, c) with p a base basis path.
inline RealizedAlgebra blow_up(std::shared_ptr<const RealizedAlgebra> base,
                               const std::vector<std::size_t>& multiplicities) {
    if (!base->is_bound_quiver())
        throw std::invalid_argument("blow-up requires a bound-quiver base");
    const auto& prov = base->bound_quiver_provenance();
    const Quiver& q = prov.presentation->quiver();
    if (multiplicities.size() != q.num_vertices())
        throw std::invalid_argument("one multiplicity per vertex required");
    for (std::size_t n : multiplicities)
        if (n == 0) throw std::invalid_argument("multiplicities must be positive");

    std::vector<BlowUpTriple> triples;
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> index;
    const auto& paths = prov.basis_paths;
    for (std::size_t p = 0; p < paths.size(); ++p) {
        std::size_t ns = multiplicities[paths[p].start];
        std::size_t nt = multiplicities[path_target(q, paths[p])];
        for (std::size_t r = 1; r <= ns; ++r)
            for (std::size_t c = 1; c <= nt; ++c) {
                index[{p, r, c}] = triples.size();
                triples.push_back(BlowUpTriple{p, r, c});
            }
    }

    std::size_t dim = triples.size();
    std::vector<std::string> labels;
    for (const auto& t : triples)
        labels.push_back("(" + base->carrier().label(t.path) + "," + std::to_string(t.row) +
                         "," + std::to_string(t.col) + ")");

    std::vector<std::vector<SparseVec>> table(dim, std::vector<SparseVec>(dim));
    for (std::size_t a = 0; a < dim; ++a) {
        const auto& ta = triples[a];
        for (std::size_t b = 0; b < dim; ++b) {
            const auto& tb = triples[b];
            if (ta.col != tb.row) continue;
            if (path_target(q, paths[ta.path]) != paths[tb.path].start) continue;
            SparseVec sv;
            for (const auto& term : base->carrier().basis_product(ta.path, tb.path))
                sv.push_back({index.at({term.idx, ta.row, tb.col}), term.coef});
            table[a][b] = std::move(sv);
        }
    }

    Element unit(dim, Rational(0));
    for (std::size_t v = 0; v < q.num_vertices(); ++v)
        for (std::size_t r = 1; r <= multiplicities[v]; ++r)
            unit[index.at({prov.vertex_idempotents[v], r, r})] = 1;

    StructureConstAlgebra carrier(std::move(labels), std::move(table), std::move(unit));

    std::vector<Element> radical;
    for (std::size_t i = 0; i < dim; ++i)
        if (paths[triples[i].path].length() >= 1) radical.push_back(unit_vec(dim, i));

    std::vector<BlockData> blocks;
    for (std::size_t v = 0; v < q.num_vertices(); ++v) {
        BlockData b;
        b.n = multiplicities[v];
        b.eps = 1;
        b.block_idempotent = zero_vec(dim);
        for (std::size_t r = 1; r <= b.n; ++r)
            b.block_idempotent[index.at({prov.vertex_idempotents[v], r, r})] = 1;
        b.primitive_idempotent = unit_vec(dim, index.at({prov.vertex_idempotents[v], 1, 1}));
        for (std::size_t r = 1; r <= b.n; ++r)
            for (std::size_t c = 1; c <= b.n; ++c)
                b.block_basis.push_back(
                    unit_vec(dim, index.at({prov.vertex_idempotents[v], r, c})));
        b.name = q.vertex_name(v);
        blocks.push_back(std::move(b));
    }

    return RealizedAlgebra(std::move(carrier),
                           BlowUpProvenance{std::move(base), multiplicities, std::move(triples)},
                           std::move(radical), std::move(blocks));
}

inline RealizedAlgebra blow_up(const RealizedAlgebra& base,
                               const std::vector<std::size_t>& multiplicities) {
    return blow_up(std::make_shared<const RealizedAlgebra>(base), multiplicities);
}

struct RadicalFiltration {
    std::vector<Element> radical;
    std::vector<Element> radical_square;
    std::size_t nilpotency_degree = 1;  // smallest s with r^s = 0
};

inline RadicalFiltration radical_filtration(const RealizedAlgebra& a) {
    RadicalFiltration f;
    f.radical = a.radical_basis();
    f.radical_square = a.radical_square_basis();
    std::vector<Element> power = f.radical;
    std::size_t s = 1;
    while (!power.empty()) {
        ++s;
        RowSpace next(a.carrier().dim());
        for (const auto& x : power)
            for (const auto& y : f.radical) next.insert(a.carrier().multiply(x, y));
        power = next.rows();
    }
    f.nilpotency_degree = s;
    return f;
}

}  // namespace quiverforge
