#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "quiverforge/matrix.hpp"
#include "quiverforge/rational.hpp"

namespace quiverforge {

// Orientation convention used across the whole project: Omega(i, j) is the
// set of arrows with source i and target j, and paths compose left to right
// (p: i->j followed by q: j->l is written p q).

struct Arrow {
    std::string name;
    std::size_t src = 0;
    std::size_t tgt = 0;
};

class Quiver {
public:
    Quiver() = default;

    Quiver(std::vector<std::string> vertices,
           std::vector<std::tuple<std::string, std::string, std::string>> arrows) {
        for (auto& v : vertices) {
            if (vertex_index_.count(v)) throw std::invalid_argument("duplicate vertex: " + v);
            vertex_index_[v] = vertices_.size();
            vertices_.push_back(v);
        }
        for (auto& [name, src, tgt] : arrows) {
            if (arrow_index_.count(name)) throw std::invalid_argument("duplicate arrow: " + name);
            arrow_index_[name] = arrows_.size();
            arrows_.push_back(Arrow{name, vertex_index(src), vertex_index(tgt)});
        }
    }

    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_arrows() const { return arrows_.size(); }
    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    const Arrow& arrow(std::size_t a) const { return arrows_.at(a); }
    const std::string& vertex_name(std::size_t i) const { return vertices_.at(i); }

    std::size_t vertex_index(const std::string& name) const {
        auto it = vertex_index_.find(name);
        if (it == vertex_index_.end()) throw std::invalid_argument("unknown vertex: " + name);
        return it->second;
    }

    std::size_t arrow_index(const std::string& name) const {
        auto it = arrow_index_.find(name);
        if (it == arrow_index_.end()) throw std::invalid_argument("unknown arrow: " + name);
        return it->second;
    }

    bool has_vertex(const std::string& name) const { return vertex_index_.count(name) != 0; }

    /// Arrows from i to j.
    std::vector<std::size_t> omega(std::size_t i, std::size_t j) const {
        check_vertex(i);
        check_vertex(j);
        std::vector<std::size_t> out;
        for (std::size_t a = 0; a < arrows_.size(); ++a)
            if (arrows_[a].src == i && arrows_[a].tgt == j) out.push_back(a);
        return out;
    }

    std::vector<std::size_t> loops_at(std::size_t i) const { return omega(i, i); }

    bool has_loops() const {
        for (const auto& a : arrows_)
            if (a.src == a.tgt) return true;
        return false;
    }

    /// C with C(i, j) = |Omega(i, j)|; paths of length L from i to j are
    /// counted by (C^L)(i, j).
    ExactMatrix arrow_count_matrix() const {
        ExactMatrix c(num_vertices(), num_vertices());
        for (const auto& a : arrows_) c(a.src, a.tgt) += 1;
        return c;
    }

    bool is_acyclic() const {
        // Kahn's algorithm on the vertex set.
        std::vector<std::size_t> indeg(num_vertices(), 0);
        for (const auto& a : arrows_) ++indeg[a.tgt];
        std::vector<std::size_t> queue;
        for (std::size_t v = 0; v < num_vertices(); ++v)
            if (indeg[v] == 0) queue.push_back(v);
        std::size_t seen = 0;
        while (!queue.empty()) {
            std::size_t v = queue.back();
            queue.pop_back();
            ++seen;
            for (const auto& a : arrows_)
                if (a.src == v && --indeg[a.tgt] == 0) queue.push_back(a.tgt);
        }
        return seen == num_vertices();
    }

    /// Longest path length (arrow count); requires acyclicity.
    std::size_t longest_path_length() const {
        if (!is_acyclic()) throw std::invalid_argument("longest path undefined on cyclic quiver");
        std::vector<std::size_t> best(num_vertices(), 0);
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& a : arrows_)
                if (best[a.src] + 1 > best[a.tgt]) {
                    best[a.tgt] = best[a.src] + 1;
                    changed = true;
                }
        }
        return best.empty() ? 0 : *std::max_element(best.begin(), best.end());
    }

private:
    void check_vertex(std::size_t i) const {
        if (i >= vertices_.size()) throw std::invalid_argument("vertex index out of range");
    }

    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
    std::map<std::string, std::size_t> vertex_index_;
    std::map<std::string, std::size_t> arrow_index_;
};

/// A path is its start vertex plus a composable arrow sequence; length 0 is
/// the trivial path at the start vertex.
struct Path {
    std::size_t start = 0;
    std::vector<std::size_t> arrows;

    std::size_t length() const { return arrows.size(); }

    friend bool operator==(const Path& a, const Path& b) {
        return a.start == b.start && a.arrows == b.arrows;
    }
    friend bool operator<(const Path& a, const Path& b) {
        if (a.arrows.size() != b.arrows.size()) return a.arrows.size() < b.arrows.size();
        if (a.start != b.start) return a.start < b.start;
        return a.arrows < b.arrows;
    }
};

inline std::size_t path_target(const Quiver& q, const Path& p) {
    return p.arrows.empty() ? p.start : q.arrow(p.arrows.back()).tgt;
}

inline bool path_composable(const Quiver& q, const Path& a, const Path& b) {
    return path_target(q, a) == b.start;
}

inline Path path_concat(const Quiver& q, const Path& a, const Path& b) {
    if (!path_composable(q, a, b)) throw std::invalid_argument("paths not composable");
    Path c = a;
    c.arrows.insert(c.arrows.end(), b.arrows.begin(), b.arrows.end());
    return c;
}

inline std::string path_str(const Quiver& q, const Path& p) {
    if (p.arrows.empty()) return "e_" + q.vertex_name(p.start);
    std::string s;
    for (std::size_t a : p.arrows) {
        if (!s.empty()) s += ".";
        s += q.arrow(a).name;
    }
    return s;
}

/// All paths of length <= max_len, ordered by length then lexicographically
/// by construction (start vertex, then arrow indices).
inline std::vector<Path> enumerate_paths(const Quiver& q, std::size_t max_len) {
    std::vector<Path> result;
    std::vector<Path> frontier;
    for (std::size_t v = 0; v < q.num_vertices(); ++v) frontier.push_back(Path{v, {}});
    result = frontier;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<Path> next;
        for (const auto& p : frontier) {
            std::size_t end = path_target(q, p);
            for (std::size_t a = 0; a < q.num_arrows(); ++a) {
                if (q.arrow(a).src != end) continue;
                Path ext = p;
                ext.arrows.push_back(a);
                next.push_back(std::move(ext));
            }
        }
        result.insert(result.end(), next.begin(), next.end());
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    return result;
}

/// Oriented edge i -> j carrying the pair (d_ij, d_ji); both entries positive.
struct ValuedEdge {
    std::size_t src = 0;
    std::size_t tgt = 0;
    std::int64_t dij = 1;
    std::int64_t dji = 1;
};

class PseudoValuedQuiver {
public:
    PseudoValuedQuiver() = default;

    PseudoValuedQuiver(std::vector<std::string> vertices, std::vector<ValuedEdge> edges)
        : vertices_(std::move(vertices)), edges_(std::move(edges)) {
        std::set<std::pair<std::size_t, std::size_t>> seen;
        for (const auto& e : edges_) {
            if (e.src >= vertices_.size() || e.tgt >= vertices_.size())
                throw std::invalid_argument("edge endpoint out of range");
            if (e.dij <= 0 || e.dji <= 0)
                throw std::invalid_argument("edge valuations must both be nonzero");
            if (e.src == e.tgt && e.dij != e.dji)
                throw std::invalid_argument("loop valuation must satisfy d_ii = d_ii");
            if (!seen.insert({e.src, e.tgt}).second)
                throw std::invalid_argument("duplicate oriented edge");
        }
    }

    std::size_t num_vertices() const { return vertices_.size(); }
    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::string& vertex_name(std::size_t i) const { return vertices_.at(i); }
    const std::vector<ValuedEdge>& edges() const { return edges_; }

    const ValuedEdge* edge(std::size_t i, std::size_t j) const {
        for (const auto& e : edges_)
            if (e.src == i && e.tgt == j) return &e;
        return nullptr;
    }

private:
    std::vector<std::string> vertices_;
    std::vector<ValuedEdge> edges_;
};

struct ValuedQuiver {
    PseudoValuedQuiver pvq;
    std::vector<Integer> witness;  // positive integers with d_ij e_j = d_ji e_i
};

/// Positive integer witness for the valued-graph identity, minimal per
/// connected component (componentwise gcd 1); nullopt when none exists.
/// Ratio propagation over a spanning forest, consistency on the rest.
inline std::optional<std::vector<Integer>> valuation_witness(const PseudoValuedQuiver& pvq) {
    std::size_t n = pvq.num_vertices();
    std::vector<Rational> ratio(n, Rational(0));  // epsilon_v as multiple of component root
    std::vector<long> comp(n, -1);
    // undirected adjacency: for edge i->j the constraint is e_j/e_i = d_ji/d_ij
    for (std::size_t root = 0; root < n; ++root) {
        if (comp[root] >= 0) continue;
        comp[root] = static_cast<long>(root);
        ratio[root] = 1;
        std::vector<std::size_t> stack{root};
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            for (const auto& e : pvq.edges()) {
                std::size_t other;
                Rational r;  // ratio[other] = r * ratio[v]
                if (e.src == v)
                    other = e.tgt, r = Rational(e.dji, e.dij);
                else if (e.tgt == v)
                    other = e.src, r = Rational(e.dij, e.dji);
                else
                    continue;
                r.canonicalize();
                if (comp[other] < 0) {
                    comp[other] = static_cast<long>(root);
                    ratio[other] = r * ratio[v];
                    stack.push_back(other);
                }
            }
        }
    }
    for (const auto& e : pvq.edges()) {
        if (Rational(e.dij) * ratio[e.tgt] != Rational(e.dji) * ratio[e.src])
            return std::nullopt;
    }
    // clear denominators and reduce per component
    std::vector<Integer> eps(n, 1);
    for (std::size_t root = 0; root < n; ++root) {
        if (comp[root] != static_cast<long>(root)) continue;
        Integer lcm_den = 1;
        for (std::size_t v = 0; v < n; ++v)
            if (comp[v] == static_cast<long>(root)) {
                Integer den = ratio[v].get_den();
                Integer g;
                mpz_gcd(g.get_mpz_t(), lcm_den.get_mpz_t(), den.get_mpz_t());
                lcm_den = lcm_den / g * den;
            }
        Integer gcd_all = 0;
        std::vector<std::pair<std::size_t, Integer>> vals;
        for (std::size_t v = 0; v < n; ++v)
            if (comp[v] == static_cast<long>(root)) {
                Rational scaled = ratio[v] * Rational(lcm_den);
                scaled.canonicalize();
                Integer val = scaled.get_num();  // denominator is 1 now
                vals.push_back({v, val});
                mpz_gcd(gcd_all.get_mpz_t(), gcd_all.get_mpz_t(), val.get_mpz_t());
            }
        for (auto& [v, val] : vals) eps[v] = val / gcd_all;
    }
    return eps;
}

/// Sinks have no outgoing oriented edge, sources no incoming one; a loop
/// disqualifies its vertex from both sets.
inline std::pair<std::set<std::size_t>, std::set<std::size_t>> sinks_and_sources(
    const PseudoValuedQuiver& pvq) {
    std::set<std::size_t> sinks, sources;
    for (std::size_t v = 0; v < pvq.num_vertices(); ++v) {
        sinks.insert(v);
        sources.insert(v);
    }
    for (const auto& e : pvq.edges()) {
        sinks.erase(e.src);
        sources.erase(e.tgt);
    }
    return {sinks, sources};
}

inline std::pair<std::set<std::size_t>, std::set<std::size_t>> sinks_and_sources(
    const ValuedQuiver& vq) {
    return sinks_and_sources(vq.pvq);
}

namespace detail {

inline bool next_permutation_of(std::vector<std::size_t>& perm) {
    return std::next_permutation(perm.begin(), perm.end());
}

template <typename MatchPred>
inline std::optional<std::vector<std::size_t>> brute_force_bijection(
    std::size_t n, const std::vector<std::string>* labels_x,
    const std::vector<std::string>* labels_y, std::size_t max_vertices, MatchPred matches) {
    if (n > max_vertices)
        throw std::invalid_argument("isomorphism search capped at " +
                                    std::to_string(max_vertices) + " vertices");
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        if (labels_x && labels_y) {
            for (std::size_t v = 0; v < n && ok; ++v)
                ok = (*labels_x)[v] == (*labels_y)[perm[v]];
        }
        if (ok && matches(perm)) return perm;
    } while (next_permutation_of(perm));
    return std::nullopt;
}

}  // namespace detail

/// Brute-force quiver isomorphism (arrow multiplicities must match under the
/// vertex bijection); optional per-vertex labels constrain matching.
inline std::optional<std::vector<std::size_t>> labeled_iso(
    const Quiver& x, const Quiver& y,
    const std::vector<std::string>* labels_x = nullptr,
    const std::vector<std::string>* labels_y = nullptr, std::size_t max_vertices = 10) {
    if (x.num_vertices() != y.num_vertices() || x.num_arrows() != y.num_arrows())
        return std::nullopt;
    ExactMatrix cx = x.arrow_count_matrix();
    ExactMatrix cy = y.arrow_count_matrix();
    return detail::brute_force_bijection(
        x.num_vertices(), labels_x, labels_y, max_vertices,
        [&](const std::vector<std::size_t>& perm) {
            for (std::size_t i = 0; i < x.num_vertices(); ++i)
                for (std::size_t j = 0; j < x.num_vertices(); ++j)
                    if (cx(i, j) != cy(perm[i], perm[j])) return false;
            return true;
        });
}

/// Pseudo-valued-quiver isomorphism: edges correspond with d_ij = c_{t(i)t(j)}
/// and d_ji = c_{t(j)t(i)}.
inline std::optional<std::vector<std::size_t>> labeled_iso(
    const PseudoValuedQuiver& x, const PseudoValuedQuiver& y,
    const std::vector<std::string>* labels_x = nullptr,
    const std::vector<std::string>* labels_y = nullptr, std::size_t max_vertices = 10) {
    if (x.num_vertices() != y.num_vertices() || x.edges().size() != y.edges().size())
        return std::nullopt;
    return detail::brute_force_bijection(
        x.num_vertices(), labels_x, labels_y, max_vertices,
        [&](const std::vector<std::size_t>& perm) {
            for (const auto& e : x.edges()) {
                const ValuedEdge* f = y.edge(perm[e.src], perm[e.tgt]);
                if (!f || f->dij != e.dij || f->dji != e.dji) return false;
            }
            return true;
        });
}

inline std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

inline std::string to_dot(const Quiver& q) {
    std::ostringstream os;
    os << "digraph quiver {\n";
    for (const auto& v : q.vertices()) os << "  \"" << dot_escape(v) << "\";\n";
    for (const auto& a : q.arrows())
        os << "  \"" << dot_escape(q.vertex_name(a.src)) << "\" -> \""
           << dot_escape(q.vertex_name(a.tgt)) << "\" [label=\"" << dot_escape(a.name)
           << "\"];\n";
    os << "}\n";
    return os.str();
}

inline std::string to_dot(const PseudoValuedQuiver& pvq) {
    std::ostringstream os;
    os << "digraph valued_quiver {\n";
    for (const auto& v : pvq.vertices()) os << "  \"" << dot_escape(v) << "\";\n";
    for (const auto& e : pvq.edges())
        os << "  \"" << dot_escape(pvq.vertex_name(e.src)) << "\" -> \""
           << dot_escape(pvq.vertex_name(e.tgt)) << "\" [label=\"(" << e.dij << "," << e.dji
           << ")\"];\n";
    os << "}\n";
    return os.str();
}

inline std::string to_dot(const ValuedQuiver& vq) {
    std::ostringstream os;
    os << "digraph valued_quiver {\n";
    for (std::size_t v = 0; v < vq.pvq.num_vertices(); ++v)
        os << "  \"" << dot_escape(vq.pvq.vertex_name(v)) << "\" [label=\""
           << dot_escape(vq.pvq.vertex_name(v)) << " (eps=" << vq.witness.at(v).get_str()
           << ")\"];\n";
    for (const auto& e : vq.pvq.edges())
        os << "  \"" << dot_escape(vq.pvq.vertex_name(e.src)) << "\" -> \""
           << dot_escape(vq.pvq.vertex_name(e.tgt)) << "\" [label=\"(" << e.dij << "," << e.dji
           << ")\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace quiverforge
