#pragma once

#include <fstream>
#include <functional>
#include <json.hpp>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "quiverforge/algebra.hpp"
#include "quiverforge/gpa.hpp"
#include "quiverforge/modulation.hpp"
#include "quiverforge/quiver.hpp"
#include "quiverforge/reps.hpp"

namespace quiverforge {

using Json = nlohmann::ordered_json;

/// Input documents: JSON with a "kind" tag. Scalars are integer-pair strings
/// "p/q" (plain integers are accepted and canonicalized). Paths are arrays of
/// arrow names composing left to right.

struct RepresentationDoc {
    std::shared_ptr<const PseudoModulation> modulation;
    std::shared_ptr<const ModulationRep> rep;  // absent spaces -> null
};

struct DifferentialDoc {
    std::shared_ptr<GPAlgebra> gpa;
    ExactMatrix delta;
};

struct ModulationDoc {
    std::shared_ptr<const PseudoModulation> modulation;
    bool group_species = false;
};

struct InputDocument {
    std::string kind;
    Json canonical;
    std::variant<Quiver, std::shared_ptr<const RealizedAlgebra>, std::shared_ptr<GPAlgebra>,
                 ModulationDoc, RepresentationDoc, DifferentialDoc>
        payload;
};

namespace io_detail {

inline Rational scalar_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw std::invalid_argument("scalar must be an integer or a \"p/q\" string");
}

inline ExactMatrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols,
                                    const std::string& what) {
    if (!j.is_array()) throw std::invalid_argument(what + ": matrix must be an array of rows");
    if (j.size() != rows)
        throw std::invalid_argument(what + ": expected " + std::to_string(rows) + " rows, got " +
                                    std::to_string(j.size()));
    ExactMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const Json& row = j.at(r);
        if (!row.is_array() || row.size() != cols)
            throw std::invalid_argument(what + ": row " + std::to_string(r) + " must have " +
                                        std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = scalar_from_json(row.at(c));
    }
    return m;
}

inline Json matrix_to_json(const ExactMatrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(rational_canonical(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Quiver quiver_from_json(const Json& j) {
    if (!j.contains("vertices") || !j.at("vertices").is_array())
        throw std::invalid_argument("quiver needs a \"vertices\" array");
    std::vector<std::string> vertices;
    for (const auto& v : j.at("vertices")) vertices.push_back(v.get<std::string>());
    std::vector<std::tuple<std::string, std::string, std::string>> arrows;
    if (j.contains("arrows"))
        for (const auto& a : j.at("arrows"))
            arrows.push_back({a.at("name").get<std::string>(), a.at("from").get<std::string>(),
                              a.at("to").get<std::string>()});
    return Quiver(std::move(vertices), std::move(arrows));
}

inline Json quiver_to_json(const Quiver& q) {
    Json j;
    j["kind"] = "quiver";
    j["vertices"] = q.vertices();
    Json arrows = Json::array();
    for (const auto& a : q.arrows()) {
        Json ja;
        ja["name"] = a.name;
        ja["from"] = q.vertex_name(a.src);
        ja["to"] = q.vertex_name(a.tgt);
        arrows.push_back(std::move(ja));
    }
    j["arrows"] = std::move(arrows);
    return j;
}

inline Path path_from_json(const Quiver& q, const Json& j) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument("path must be a nonempty array of arrow names");
    Path p;
    bool first = true;
    for (const auto& name : j) {
        std::size_t a = q.arrow_index(name.get<std::string>());
        if (first) {
            p.start = q.arrow(a).src;
            first = false;
        } else if (q.arrow(a).src != path_target(q, p)) {
            throw std::invalid_argument("path arrows do not compose: " +
                                        name.get<std::string>());
        }
        p.arrows.push_back(a);
    }
    return p;
}

inline BoundQuiverPresentation presentation_from_json(const Json& j) {
    Quiver q = quiver_from_json(j.at("quiver"));
    std::vector<Relation> relations;
    if (j.contains("relations")) {
        for (const auto& jrel : j.at("relations")) {
            Relation rel;
            for (const auto& jterm : jrel)
                rel.terms.push_back({scalar_from_json(jterm.at("coef")),
                                     path_from_json(q, jterm.at("path"))});
            relations.push_back(std::move(rel));
        }
    }
    std::size_t bound = j.at("nilpotency_bound").get<std::size_t>();
    return BoundQuiverPresentation(std::move(q), std::move(relations), bound);
}

inline Json presentation_to_json(const BoundQuiverPresentation& pres) {
    Json j;
    j["kind"] = "bound-quiver-algebra";
    j["quiver"] = quiver_to_json(pres.quiver());
    j["quiver"].erase("kind");
    Json rels = Json::array();
    for (const auto& rel : pres.relations()) {
        Json jrel = Json::array();
        for (const auto& [coef, path] : rel.terms) {
            Json jterm;
            jterm["coef"] = rational_canonical(coef);
            Json jp = Json::array();
            for (std::size_t a : path.arrows) jp.push_back(pres.quiver().arrow(a).name);
            jterm["path"] = std::move(jp);
            jrel.push_back(std::move(jterm));
        }
        rels.push_back(std::move(jrel));
    }
    j["relations"] = std::move(rels);
    j["nilpotency_bound"] = pres.bound();
    return j;
}

inline std::shared_ptr<const VertexAlgebra> vertex_algebra_from_json(const Json& j) {
    if (!j.contains("blocks"))
        throw std::invalid_argument("vertex algebra needs a \"blocks\" array of matrix sizes");
    std::vector<std::size_t> blocks;
    for (const auto& b : j.at("blocks")) blocks.push_back(b.get<std::size_t>());
    return VertexAlgebra::blocks(blocks);
}

inline std::shared_ptr<GPAlgebra> gpa_from_json(const Json& j) {
    Quiver q = quiver_from_json(j.at("quiver"));
    std::vector<std::shared_ptr<const VertexAlgebra>> algebras;
    const Json& valg = j.at("vertex_algebras");
    for (const auto& name : q.vertices()) {
        if (!valg.contains(name))
            throw std::invalid_argument("missing vertex algebra for vertex " + name);
        algebras.push_back(vertex_algebra_from_json(valg.at(name)));
    }
    std::optional<std::size_t> truncate;
    if (j.contains("truncate")) truncate = j.at("truncate").get<std::size_t>();
    return std::make_shared<GPAlgebra>(std::move(q), std::move(algebras), truncate);
}

inline Json gpa_to_json(const GPAlgebra& g) {
    Json j;
    j["kind"] = "gpa";
    j["quiver"] = quiver_to_json(g.quiver());
    j["quiver"].erase("kind");
    Json valg;
    for (std::size_t v = 0; v < g.quiver().num_vertices(); ++v) {
        Json a;
        const auto& alg = g.vertex_algebra(v);
        if (!alg.split())
            throw std::invalid_argument("only split vertex algebras serialize");
        a["blocks"] = alg.split_blocks;
        valg[g.quiver().vertex_name(v)] = std::move(a);
    }
    j["vertex_algebras"] = std::move(valg);
    if (g.truncation_given()) j["truncate"] = g.truncation();
    return j;
}

inline std::shared_ptr<const RealizedAlgebra> algebra_from_json(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "bound-quiver-algebra")
        return std::make_shared<const RealizedAlgebra>(
            realize_bound_quiver(presentation_from_json(j)));
    if (kind == "blow-up") {
        auto base = algebra_from_json(j.at("base"));
        if (!base->is_bound_quiver())
            throw std::invalid_argument("blow-up base must be a bound-quiver-algebra");
        const Quiver& q = base->bound_quiver_provenance().presentation->quiver();
        const Json& jm = j.at("multiplicities");
        std::vector<std::size_t> mult;
        for (const auto& name : q.vertices()) {
            if (!jm.contains(name))
                throw std::invalid_argument("missing multiplicity for vertex " + name);
            mult.push_back(jm.at(name).get<std::size_t>());
        }
        return std::make_shared<const RealizedAlgebra>(blow_up(base, mult));
    }
    throw std::invalid_argument("not an algebra document: " + kind);
}

inline Json algebra_to_json(const RealizedAlgebra& a) {
    if (a.is_bound_quiver())
        return presentation_to_json(*a.bound_quiver_provenance().presentation);
    if (a.is_blow_up()) {
        const auto& prov = a.blow_up_provenance();
        Json j;
        j["kind"] = "blow-up";
        j["base"] = algebra_to_json(*prov.base);
        const Quiver& q = prov.base->bound_quiver_provenance().presentation->quiver();
        Json jm;
        for (std::size_t v = 0; v < q.num_vertices(); ++v)
            jm[q.vertex_name(v)] = prov.multiplicities[v];
        j["multiplicities"] = std::move(jm);
        return j;
    }
    throw std::invalid_argument("raw algebras do not serialize");
}

inline ModulationDoc modulation_from_json(const Json& j) {
    ModulationDoc doc;
    if (j.contains("gpa")) {
        auto g = gpa_from_json(j.at("gpa"));
        doc.modulation = std::make_shared<const PseudoModulation>(premodulation_of(*g));
        return doc;
    }
    std::vector<std::string> vertices;
    for (const auto& v : j.at("vertices")) vertices.push_back(v.get<std::string>());
    std::map<std::string, std::size_t> vindex;
    for (std::size_t i = 0; i < vertices.size(); ++i) vindex[vertices[i]] = i;
    std::vector<VertexAlgebraData> algebras;
    const Json& jalg = j.at("algebras");
    for (const auto& name : vertices) {
        const Json& a = jalg.at(name);
        if (a.contains("symbolic_blocks")) {
            SymbolicAlgebra sym;
            for (const auto& b : a.at("symbolic_blocks"))
                sym.blocks.push_back(
                    {b.at(0).get<std::int64_t>(), b.at(1).get<std::int64_t>()});
            algebras.push_back(std::move(sym));
        } else {
            algebras.push_back(vertex_algebra_from_json(a));
        }
    }
    std::map<std::pair<std::size_t, std::size_t>, BimoduleData> bims;
    if (j.contains("bimodules")) {
        for (const auto& jb : j.at("bimodules")) {
            std::size_t i = vindex.at(jb.at("from").get<std::string>());
            std::size_t jj = vindex.at(jb.at("to").get<std::string>());
            if (jb.contains("d_ij")) {
                SymbolicBimodule sym;
                sym.dij = jb.at("d_ij").get<std::int64_t>();
                sym.dji = jb.at("d_ji").get<std::int64_t>();
                sym.free_flag = jb.value("free", false);
                sym.duality_declared = jb.value("dual", false);
                bims.insert({{i, jj}, sym});
            } else {
                const auto* li =
                    std::get_if<std::shared_ptr<const VertexAlgebra>>(&algebras[i]);
                const auto* rj =
                    std::get_if<std::shared_ptr<const VertexAlgebra>>(&algebras[jj]);
                if (!li || !rj)
                    throw std::invalid_argument(
                        "concrete bimodule requires concrete vertex algebras");
                std::size_t dim = jb.at("dim").get<std::size_t>();
                std::vector<ExactMatrix> la, ra;
                const Json& jla = jb.at("left_action");
                const Json& jra = jb.at("right_action");
                if (jla.size() != (*li)->dim() || jra.size() != (*rj)->dim())
                    throw std::invalid_argument("one action matrix per algebra basis element");
                for (const auto& m : jla)
                    la.push_back(matrix_from_json(m, dim, dim, "left_action"));
                for (const auto& m : jra)
                    ra.push_back(matrix_from_json(m, dim, dim, "right_action"));
                bims.insert({{i, jj}, ConcreteBimodule(*li, *rj, dim, std::move(la),
                                                       std::move(ra))});
            }
        }
    }
    doc.modulation = std::make_shared<const PseudoModulation>(
        std::move(vertices), std::move(algebras), std::move(bims),
        j.value("algebraically_closed", false));
    return doc;
}

inline ModulationDoc group_species_from_json(const Json& j) {
    GroupSpeciesSpec spec;
    for (const auto& v : j.at("vertices")) spec.vertices.push_back(v.get<std::string>());
    std::map<std::string, std::size_t> vindex;
    for (std::size_t i = 0; i < spec.vertices.size(); ++i) vindex[spec.vertices[i]] = i;
    const Json& jg = j.at("groups");
    for (const auto& name : spec.vertices) {
        const Json& g = jg.at(name);
        GroupData data;
        if (g.contains("cyclic")) {
            data.order = g.at("cyclic").get<std::int64_t>();
            data.blocks = cyclic_group_blocks(data.order);
        } else {
            data.order = g.at("order").get<std::int64_t>();
            for (const auto& b : g.at("blocks"))
                data.blocks.push_back(
                    {b.at(0).get<std::int64_t>(), b.at(1).get<std::int64_t>()});
        }
        spec.groups.push_back(std::move(data));
    }
    if (j.contains("bimodules"))
        for (const auto& jb : j.at("bimodules"))
            spec.bimodules.push_back(GroupSpeciesEdge{
                vindex.at(jb.at("from").get<std::string>()),
                vindex.at(jb.at("to").get<std::string>()), jb.at("d_ij").get<std::int64_t>(),
                jb.at("d_ji").get<std::int64_t>(), jb.value("free", false)});
    spec.algebraically_closed = j.value("algebraically_closed", false);
    ModulationDoc doc;
    doc.modulation = std::make_shared<const PseudoModulation>(from_group_species(spec));
    doc.group_species = true;
    return doc;
}

inline RepresentationDoc representation_from_json(const Json& j) {
    RepresentationDoc doc;
    ModulationDoc mdoc = modulation_from_json(j.at("modulation"));
    doc.modulation = mdoc.modulation;
    const PseudoModulation& m = *doc.modulation;
    if (!m.is_concrete())
        throw std::invalid_argument("representations need a concrete modulation");
    if (!j.contains("spaces")) return doc;
    std::vector<std::size_t> dims(m.num_vertices(), 0);
    std::vector<std::vector<ExactMatrix>> actions(m.num_vertices());
    const Json& js = j.at("spaces");
    for (std::size_t v = 0; v < m.num_vertices(); ++v) {
        const std::string& name = m.vertices()[v];
        if (!js.contains(name)) throw std::invalid_argument("missing space for vertex " + name);
        const Json& sp = js.at(name);
        dims[v] = sp.at("dim").get<std::size_t>();
        const Json& ja = sp.at("action");
        if (ja.size() != m.concrete_algebra(v).dim())
            throw std::invalid_argument("one action matrix per algebra basis element");
        for (const auto& mat : ja)
            actions[v].push_back(matrix_from_json(mat, dims[v], dims[v], "vertex action"));
    }
    std::map<std::pair<std::size_t, std::size_t>, ExactMatrix> maps;
    std::map<std::string, std::size_t> vindex;
    for (std::size_t i = 0; i < m.num_vertices(); ++i) vindex[m.vertices()[i]] = i;
    if (j.contains("maps"))
        for (const auto& jm : j.at("maps")) {
            std::size_t i = vindex.at(jm.at("from").get<std::string>());
            std::size_t jj = vindex.at(jm.at("to").get<std::string>());
            const ConcreteBimodule* bim = m.concrete_bimodule(i, jj);
            if (!bim) throw std::invalid_argument("map over a missing bimodule");
            maps.insert({{i, jj}, matrix_from_json(jm.at("matrix"), dims[jj],
                                                   dims[i] * bim->dim(), "edge map")});
        }
    doc.rep = std::make_shared<const ModulationRep>(doc.modulation, std::move(dims),
                                                    std::move(actions), std::move(maps));
    return doc;
}

inline DifferentialDoc differential_from_json(const Json& j) {
    DifferentialDoc doc;
    doc.gpa = gpa_from_json(j.at("gpa"));
    std::size_t n = doc.gpa->total_dim();
    doc.delta = matrix_from_json(j.at("delta"), n, n, "delta");
    return doc;
}

}  // namespace io_detail

/// Canonical serialization: fixed key order, scalars always "p/q".
inline Json canonicalize_document(const Json& j);

inline InputDocument parse_document(const Json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw std::invalid_argument("document needs a \"kind\" tag");
    InputDocument doc;
    doc.kind = j.at("kind").get<std::string>();
    if (doc.kind == "quiver") {
        doc.payload = io_detail::quiver_from_json(j);
    } else if (doc.kind == "bound-quiver-algebra" || doc.kind == "blow-up") {
        doc.payload = io_detail::algebra_from_json(j);
    } else if (doc.kind == "gpa") {
        doc.payload = io_detail::gpa_from_json(j);
    } else if (doc.kind == "modulation") {
        doc.payload = io_detail::modulation_from_json(j);
    } else if (doc.kind == "group-species") {
        doc.payload = io_detail::group_species_from_json(j);
    } else if (doc.kind == "representation") {
        doc.payload = io_detail::representation_from_json(j);
    } else if (doc.kind == "differential") {
        doc.payload = io_detail::differential_from_json(j);
    } else {
        throw std::invalid_argument("unknown document kind: " + doc.kind);
    }
    doc.canonical = canonicalize_document(j);
    return doc;
}

inline Json canonicalize_document(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    Json out;
    out["kind"] = kind;
    auto copy_canonical_scalar = [](const Json& s) {
        return Json(rational_canonical(io_detail::scalar_from_json(s)));
    };
    auto canonical_matrix = [&](const Json& m) {
        Json rows = Json::array();
        for (const auto& row : m) {
            Json r = Json::array();
            for (const auto& e : row) r.push_back(copy_canonical_scalar(e));
            rows.push_back(std::move(r));
        }
        return rows;
    };
    auto canonical_quiver_body = [](const Json& q) {
        Json out_q;
        out_q["vertices"] = q.at("vertices");
        Json arrows = Json::array();
        if (q.contains("arrows"))
            for (const auto& a : q.at("arrows")) {
                Json ja;
                ja["name"] = a.at("name");
                ja["from"] = a.at("from");
                ja["to"] = a.at("to");
                arrows.push_back(std::move(ja));
            }
        out_q["arrows"] = std::move(arrows);
        return out_q;
    };
    std::function<Json(const Json&)> canonical_algebra = [&](const Json& a) -> Json {
        Json out_a;
        out_a["kind"] = a.at("kind");
        if (a.at("kind") == "blow-up") {
            out_a["base"] = canonical_algebra(a.at("base"));
            out_a["multiplicities"] = a.at("multiplicities");
            return out_a;
        }
        out_a["quiver"] = canonical_quiver_body(a.at("quiver"));
        Json rels = Json::array();
        if (a.contains("relations"))
            for (const auto& rel : a.at("relations")) {
                Json jrel = Json::array();
                for (const auto& term : rel) {
                    Json jterm;
                    jterm["coef"] = copy_canonical_scalar(term.at("coef"));
                    jterm["path"] = term.at("path");
                    jrel.push_back(std::move(jterm));
                }
                rels.push_back(std::move(jrel));
            }
        out_a["relations"] = std::move(rels);
        out_a["nilpotency_bound"] = a.at("nilpotency_bound");
        return out_a;
    };
    auto canonical_gpa = [&](const Json& g) {
        Json out_g;
        out_g["quiver"] = canonical_quiver_body(g.at("quiver"));
        Json valg;
        for (const auto& v : g.at("quiver").at("vertices")) {
            const std::string name = v.get<std::string>();
            Json a;
            a["blocks"] = g.at("vertex_algebras").at(name).at("blocks");
            valg[name] = std::move(a);
        }
        out_g["vertex_algebras"] = std::move(valg);
        if (g.contains("truncate")) out_g["truncate"] = g.at("truncate");
        return out_g;
    };
    auto canonical_modulation = [&](const Json& m) {
        Json out_m;
        out_m["kind"] = "modulation";
        if (m.contains("gpa")) {
            out_m["gpa"] = canonical_gpa(m.at("gpa"));
            return out_m;
        }
        out_m["vertices"] = m.at("vertices");
        Json algebras;
        for (const auto& v : m.at("vertices")) {
            const std::string name = v.get<std::string>();
            algebras[name] = m.at("algebras").at(name);
        }
        out_m["algebras"] = std::move(algebras);
        Json bims = Json::array();
        if (m.contains("bimodules"))
            for (const auto& b : m.at("bimodules")) {
                Json jb;
                jb["from"] = b.at("from");
                jb["to"] = b.at("to");
                if (b.contains("d_ij")) {
                    jb["d_ij"] = b.at("d_ij");
                    jb["d_ji"] = b.at("d_ji");
                    jb["free"] = b.value("free", false);
                    jb["dual"] = b.value("dual", false);
                } else {
                    jb["dim"] = b.at("dim");
                    Json la = Json::array(), ra = Json::array();
                    for (const auto& mm : b.at("left_action"))
                        la.push_back(canonical_matrix(mm));
                    for (const auto& mm : b.at("right_action"))
                        ra.push_back(canonical_matrix(mm));
                    jb["left_action"] = std::move(la);
                    jb["right_action"] = std::move(ra);
                }
                bims.push_back(std::move(jb));
            }
        out_m["bimodules"] = std::move(bims);
        out_m["algebraically_closed"] = m.value("algebraically_closed", false);
        return out_m;
    };

    if (kind == "quiver") {
        Json q = canonical_quiver_body(j);
        out["vertices"] = std::move(q.at("vertices"));
        out["arrows"] = std::move(q.at("arrows"));
    } else if (kind == "bound-quiver-algebra" || kind == "blow-up") {
        out = canonical_algebra(j);
    } else if (kind == "gpa") {
        Json g = canonical_gpa(j);
        for (auto& [key, value] : g.items()) out[key] = std::move(value);
    } else if (kind == "modulation") {
        out = canonical_modulation(j);
    } else if (kind == "group-species") {
        out["vertices"] = j.at("vertices");
        Json groups;
        for (const auto& v : j.at("vertices")) {
            const std::string name = v.get<std::string>();
            const Json& g = j.at("groups").at(name);
            Json jg;
            if (g.contains("cyclic")) {
                jg["order"] = g.at("cyclic");
                Json blocks = Json::array();
                for (const auto& b : cyclic_group_blocks(g.at("cyclic").get<std::int64_t>())) {
                    blocks.push_back(Json::array({b.n, b.eps}));
                }
                jg["blocks"] = std::move(blocks);
            } else {
                jg["order"] = g.at("order");
                jg["blocks"] = g.at("blocks");
            }
            groups[name] = std::move(jg);
        }
        out["groups"] = std::move(groups);
        Json bims = Json::array();
        if (j.contains("bimodules"))
            for (const auto& b : j.at("bimodules")) {
                Json jb;
                jb["from"] = b.at("from");
                jb["to"] = b.at("to");
                jb["d_ij"] = b.at("d_ij");
                jb["d_ji"] = b.at("d_ji");
                jb["free"] = b.value("free", false);
                bims.push_back(std::move(jb));
            }
        out["bimodules"] = std::move(bims);
        out["algebraically_closed"] = j.value("algebraically_closed", false);
    } else if (kind == "representation") {
        out["modulation"] = canonical_modulation(j.at("modulation"));
        out["modulation"].erase("kind");
        if (j.contains("spaces")) {
            Json spaces;
            for (auto& [name, sp] : j.at("spaces").items()) {
                Json jsp;
                jsp["dim"] = sp.at("dim");
                Json acts = Json::array();
                for (const auto& m : sp.at("action")) acts.push_back(canonical_matrix(m));
                jsp["action"] = std::move(acts);
                spaces[name] = std::move(jsp);
            }
            out["spaces"] = std::move(spaces);
            Json maps = Json::array();
            if (j.contains("maps"))
                for (const auto& m : j.at("maps")) {
                    Json jm;
                    jm["from"] = m.at("from");
                    jm["to"] = m.at("to");
                    jm["matrix"] = canonical_matrix(m.at("matrix"));
                    maps.push_back(std::move(jm));
                }
            out["maps"] = std::move(maps);
        }
    } else if (kind == "differential") {
        out["gpa"] = canonical_gpa(j.at("gpa"));
        out["delta"] = canonical_matrix(j.at("delta"));
    }
    return out;
}

inline InputDocument load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("parse error in " + path + ": " + e.what());
    }
    try {
        return parse_document(j);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("schema error in " + path + ": " + e.what());
    }
}

inline std::string serialize_document(const InputDocument& doc) {
    return doc.canonical.dump(2) + "\n";
}

}  // namespace quiverforge
