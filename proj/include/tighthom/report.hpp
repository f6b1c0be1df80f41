#pragma once

// JSON serialization for every result type the command layer emits.
//
// Conventions (chosen so certificates are exactly reproducible and
// diff-able):
//   * rationals are canonical GMP strings ("0", "2", "-3/2") — never floats;
//   * scalar field values are arrays of [radicand, re, im] term triples with
//     string components, so sqrt-bearing entries stay exact;
//   * matrices are row-major entry arrays with explicit dimensions;
//   * documents use insertion-ordered objects and are byte-deterministic
//     for a fixed library version.

#include <string>

#include <json.hpp>

#include "tighthom/algebra.hpp"
#include "tighthom/branching.hpp"
#include "tighthom/diagrams.hpp"
#include "tighthom/homomorphism.hpp"
#include "tighthom/hull.hpp"
#include "tighthom/matrix.hpp"
#include "tighthom/scalars.hpp"
#include "tighthom/shapes.hpp"
#include "tighthom/tightness.hpp"
#include "tighthom/version.hpp"

namespace tighthom {

using Json = nlohmann::ordered_json;

inline Json json_rational(const Rational& r) { return r.get_str(); }

/// One [radicand, re, im] triple per term; [] is zero, a pure Gaussian
/// rational is a single radicand-1 triple.
inline Json json_surd(const Surd& s) {
    Json terms = Json::array();
    for (const auto& t : s.terms())
        terms.push_back(Json::array({t.first, t.second.re.get_str(), t.second.im.get_str()}));
    return terms;
}

inline Json json_matrix(const Mat& m) {
    Json entries = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) entries.push_back(json_surd(m.at(r, c)));
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["entries"] = entries;
    return j;
}

inline const char* family_name(Family f) {
    switch (f) {
        case Family::SU: return "SU";
        case Family::SP: return "SP";
        case Family::SOSTAR: return "SOSTAR";
        case Family::SO2N: return "SO2N";
    }
    throw std::logic_error("family_name: bad family");
}

inline Json json_factor(const SimpleFactor& f) {
    Json j;
    j["str"] = f.str();
    j["family"] = family_name(f.family);
    if (f.family == Family::SU) {
        j["p"] = f.p;
        j["q"] = f.q;
    } else {
        j["n"] = f.n;
    }
    j["rank"] = f.rank();
    j["matrix_size"] = f.matrix_size();
    return j;
}

inline Json json_descriptor(const AlgebraDescriptor& a) {
    Json j;
    j["str"] = a.str();
    j["rank"] = a.rank();
    j["matrix_size"] = a.matrix_size();
    Json factors = Json::array();
    for (const auto& f : a.factors) factors.push_back(json_factor(f));
    j["factors"] = factors;
    return j;
}

inline Json json_homomorphism(const Homomorphism& rho, bool include_images) {
    Json j;
    j["label"] = rho.label;
    j["source"] = json_descriptor(rho.source);
    j["target"] = json_descriptor(rho.target);
    if (include_images) {
        Json images = Json::array();
        for (const auto& im : rho.images) images.push_back(json_matrix(im.mat));
        j["images"] = images;
    }
    return j;
}

inline Json json_certificate(const TightnessCertificate& c) {
    Json j;
    Json per = Json::array();
    for (const auto& [factor, alpha] : c.per_factor) {
        Json p;
        p["factor"] = factor.str();
        p["alpha"] = json_rational(alpha);
        p["rank"] = factor.rank();
        per.push_back(p);
    }
    j["per_factor"] = per;
    j["weighted_sum"] = json_rational(c.weighted_sum);
    j["target_rank"] = c.target_rank;
    j["tight"] = c.tight;
    j["positive"] = c.positive;
    j["aligned"] = c.aligned;
    j["holomorphic"] = c.holomorphic;
    j["alignment_residual"] = json_rational(c.alignment_residual);
    j["holomorphy_residual"] = json_rational(c.holomorphy_residual);
    return j;
}

inline const char* theorem1_status_name(Theorem1Status s) {
    switch (s) {
        case Theorem1Status::APPLIES: return "applies";
        case Theorem1Status::NOT_TIGHT_POSITIVE: return "not_tight_positive";
        case Theorem1Status::SU11_SOURCE: return "su11_source";
    }
    throw std::logic_error("theorem1_status_name: bad status");
}

inline const char* residual_kind_name(ResidualKind k) {
    switch (k) {
        case ResidualKind::COMPLETE: return "complete";
        case ResidualKind::ISOTROPIC_OBSTRUCTION: return "isotropic_obstruction";
    }
    throw std::logic_error("residual_kind_name: bad kind");
}

inline Json json_decomposition(const DecompositionReport& d, bool include_bases) {
    Json j;
    j["residual"] = residual_kind_name(d.residual_kind);
    j["commutant_dimension"] = d.commutant_dimension;
    Json blocks = Json::array();
    for (const auto& b : d.blocks) {
        Json bj;
        bj["dimension"] = b.basis.cols();
        bj["positive"] = b.positive;
        bj["negative"] = b.negative;
        bj["irreducible"] = b.irreducible;
        bj["quaternionic"] = b.quaternionic;
        bj["anti_isomorphic_pair"] = b.anti_isomorphic_pair;
        if (include_bases) bj["basis"] = json_matrix(b.basis);
        blocks.push_back(bj);
    }
    j["blocks"] = blocks;
    if (d.obstruction) {
        Json o;
        o["hyperbolic_rank"] = d.obstruction->hyperbolic_rank;
        o["detail"] = d.obstruction->detail;
        if (include_bases) {
            o["module_a"] = json_matrix(d.obstruction->module_a);
            o["module_b"] = json_matrix(d.obstruction->module_b);
        }
        j["obstruction"] = o;
    }
    return j;
}

inline Json json_hull(const HullResult& h, bool include_images) {
    Json j;
    j["hull"] = json_descriptor(h.hull);
    Json pieces = Json::array();
    for (const auto& p : h.pieces) {
        Json pj;
        pj["source_factor"] = p.source_factor;
        pj["m"] = p.m;
        pj["multiplicity"] = p.multiplicity;
        pieces.push_back(pj);
    }
    j["pieces"] = pieces;
    j["embedding"] = json_homomorphism(h.embedding, include_images);
    j["holomorphic_tight_into_target"] = h.holomorphic_tight_into_target;
    return j;
}

inline Json json_shape_entry(const ShapeEntry& e) {
    Json j;
    j["kind"] = shape_kind_name(e.kind);
    j["a"] = e.a;
    if (e.kind == ShapeKind::SU_PQ) j["b"] = e.b;
    j["multiplicity"] = e.multiplicity;
    j["str"] = e.str();
    return j;
}

inline Json json_shape(const ShapeRecord& s) {
    Json j;
    j["str"] = s.str();
    j["target"] = json_descriptor(s.target);
    Json entries = Json::array();
    for (const auto& e : s.entries) entries.push_back(json_shape_entry(e));
    j["entries"] = entries;
    j["capacity_used"] = s.capacity_used;
    j["constraint"] = s.constraint;
    j["source"] = s.source().str();
    j["symbolic_hull"] = s.symbolic_hull().str();
    j["regular_subalgebra"] = s.regular_subalgebra().str();
    return j;
}

inline const char* diagram_id_name(DiagramId id) {
    switch (id) {
        case DiagramId::SO2P: return "so2p";
        case DiagramId::E6: return "e6";
        case DiagramId::E7: return "e7";
    }
    throw std::logic_error("diagram_id_name: bad id");
}

inline Json json_diagram(const DiagramCatalog& c) {
    Json j;
    j["id"] = diagram_id_name(c.id);
    j["title"] = c.title;
    j["nodes"] = c.nodes;
    Json edges = Json::array();
    for (const auto& e : c.edges) {
        Json ej;
        ej["from"] = e.from;
        ej["to"] = e.to;
        ej["label"] = e.label;
        ej["commutes"] = e.commutes;
        edges.push_back(ej);
    }
    j["edges"] = edges;
    j["completeness_caveat"] = c.completeness_caveat;
    j["note"] = c.note;
    return j;
}

/// Common envelope: command echo, input echo, version, exactness flag.
/// Command handlers append their payload keys to the returned object.
inline Json report_document(const std::string& command, const std::string& input) {
    Json j;
    j["command"] = command;
    j["input"] = input;
    j["library_version"] = library_version;
    j["exact_arithmetic"] = true;
    return j;
}

}  // namespace tighthom
