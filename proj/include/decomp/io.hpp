#ifndef DECOMP_IO_HPP
#define DECOMP_IO_HPP

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "complex.hpp"
#include "decomposability.hpp"
#include "diameter.hpp"
#include "error.hpp"
#include "obstruction.hpp"
#include "transportation.hpp"

namespace decomp::io {

using Json = nlohmann::ordered_json;

inline Json face_json(Face f)
{
    Json arr = Json::array();
    f.for_each([&](VertexId v) { arr.push_back(v); });
    return arr;
}

inline Json face_labels_json(Face f, const SimplicialComplex& cx)
{
    Json arr = Json::array();
    f.for_each([&](VertexId v) { arr.push_back(cx.label(v)); });
    return arr;
}

// --- complexes -------------------------------------------------------------

/// {"vertex_count": n, "vertex_labels": [...], "facets": [[...], ...]}, facets
/// ascending inside and lexicographic across.
inline Json complex_to_json(const SimplicialComplex& cx)
{
    Json j;
    j["vertex_count"] = cx.vertex_count();
    if (cx.has_labels()) j["vertex_labels"] = cx.labels();
    Json facets = Json::array();
    for (Face f : cx.facets()) facets.push_back(face_json(f));
    j["facets"] = std::move(facets);
    return j;
}

inline SimplicialComplex complex_from_json(const Json& j)
{
    try {
        require_input(j.is_object(), "complex JSON must be an object");
        const int n = j.at("vertex_count").get<int>();
        std::vector<std::vector<VertexId>> facets = j.at("facets").get<std::vector<std::vector<VertexId>>>();
        SimplicialComplex cx = make_complex(facets, n);
        if (j.contains("vertex_labels")) cx.set_labels(j.at("vertex_labels").get<std::vector<std::string>>());
        return cx;
    } catch (const Json::exception& e) {
        throw InputError(std::string("complex JSON: ") + e.what());
    }
}

/// Resolves a face given as ids or as labels of `cx`.
inline Face face_from_json(const Json& j, const SimplicialComplex& cx)
{
    require_input(j.is_array(), "face must be an array");
    Face f;
    for (const auto& item : j) {
        if (item.is_number_integer()) {
            int v = item.get<int>();
            require_input(v >= 0 && v < cx.vertex_count(), "face vertex id out of range");
            f.insert(v);
        } else if (item.is_string()) {
            const auto& labels = cx.labels();
            auto it = std::find(labels.begin(), labels.end(), item.get<std::string>());
            require_input(it != labels.end(), "unknown vertex label '" + item.get<std::string>() + "'");
            f.insert(static_cast<VertexId>(it - labels.begin()));
        } else {
            throw InputError("face entries must be integers or labels");
        }
    }
    return f;
}

// --- sequences -------------------------------------------------------------

inline std::vector<Face> sequence_from_json(const Json& j, const SimplicialComplex& cx)
{
    require_input(j.is_object() && j.contains("faces"), "sequence JSON needs a \"faces\" array");
    std::vector<Face> out;
    for (const auto& f : j.at("faces")) out.push_back(face_from_json(f, cx));
    return out;
}

inline Json sequence_to_json(const std::vector<Face>& seq, const SimplicialComplex& cx)
{
    Json faces = Json::array();
    for (Face f : seq) faces.push_back(face_labels_json(f, cx));
    return Json{{"faces", faces}};
}

// --- certificates ------------------------------------------------------------

inline Json certificate_to_json(const SheddingCertificate& c)
{
    Json j;
    j["mode"] = to_string(c.mode);
    j["k"] = c.k;
    Json steps = Json::array();
    for (const auto& s : c.steps) {
        Json step;
        step["face"] = face_json(s.face);
        if (s.facets_after) step["facets_after"] = *s.facets_after;
        steps.push_back(std::move(step));
    }
    j["steps"] = std::move(steps);
    if (c.mode == Mode::strong) {
        Json links = Json::array();
        for (const auto& l : c.links) links.push_back(certificate_to_json(l));
        j["links"] = std::move(links);
    }
    j["terminal"] = face_json(c.terminal);
    return j;
}

inline SheddingCertificate certificate_from_json(const Json& j)
{
    try {
        SheddingCertificate c;
        const std::string mode = j.at("mode").get<std::string>();
        require_input(mode == "weak" || mode == "strong", "certificate mode must be weak or strong");
        c.mode = mode == "weak" ? Mode::weak : Mode::strong;
        c.k = j.at("k").get<int>();
        for (const auto& s : j.at("steps")) {
            ShedStep step;
            step.face = Face::from_ids(s.at("face").get<std::vector<VertexId>>());
            if (s.contains("facets_after")) step.facets_after = s.at("facets_after").get<std::size_t>();
            c.steps.push_back(step);
        }
        if (j.contains("links"))
            for (const auto& l : j.at("links")) c.links.push_back(certificate_from_json(l));
        if (j.contains("terminal")) c.terminal = Face::from_ids(j.at("terminal").get<std::vector<VertexId>>());
        return c;
    } catch (const Json::exception& e) {
        throw InputError(std::string("certificate JSON: ") + e.what());
    }
}

inline Json verdict_to_json(const SearchVerdict& v, Mode mode, int k)
{
    Json j;
    j["mode"] = to_string(mode);
    j["k"] = k;
    j["outcome"] = to_string(v.outcome);
    j["states_explored"] = v.states_explored;
    j["memo_hits"] = v.memo_hits;
    if (v.certificate) j["certificate"] = certificate_to_json(*v.certificate);
    return j;
}

// --- margins and vertices ----------------------------------------------------

/// Accepts rational strings ("3/2") and plain integers.
inline Margins margins_from_json(const Json& j)
{
    auto read = [](const Json& arr) {
        require_input(arr.is_array(), "margins must be arrays");
        std::vector<Rational> out;
        for (const auto& x : arr) {
            if (x.is_number_integer()) out.emplace_back(x.get<std::int64_t>());
            else if (x.is_string()) out.push_back(parse_rational(x.get<std::string>()));
            else throw InputError("margin entries must be rational strings or integers");
        }
        return out;
    };
    require_input(j.is_object() && j.contains("row") && j.contains("col"), "margins JSON needs row and col");
    Margins mg{read(j.at("row")), read(j.at("col"))};
    check_margins(mg);
    return mg;
}

inline Json margins_to_json(const Margins& mg)
{
    Json row = Json::array(), col = Json::array();
    for (const auto& r : mg.row) row.push_back(format_rational(r));
    for (const auto& c : mg.col) col.push_back(format_rational(c));
    return Json{{"row", row}, {"col", col}};
}

inline Json vertices_to_json(const std::vector<TransportVertex>& verts)
{
    Json out = Json::array();
    for (const auto& v : verts) {
        Json mat = Json::array();
        for (const auto& row : v.matrix) {
            Json r = Json::array();
            for (const auto& x : row) r.push_back(format_rational(x));
            mat.push_back(std::move(r));
        }
        Json sup = Json::array();
        for (Cell c : v.support) sup.push_back(Json::array({c.row + 1, c.col + 1}));
        out.push_back(Json{{"matrix", mat}, {"support", sup}});
    }
    return out;
}

// --- reports -----------------------------------------------------------------

inline Json bound_to_json(const BoundReport& r)
{
    return Json{{"kind", to_string(r.kind)},
                {"diameter", r.diameter},
                {"bound", r.bound_value},
                {"satisfied", r.satisfied}};
}

inline std::string side_name(FaceSide s)
{
    switch (s) {
    case FaceSide::u: return "U";
    case FaceSide::v: return "V";
    case FaceSide::mixed: return "mixed";
    }
    return "?";
}

inline Json witness_to_json(const TheoremWitness& w, const SimplicialComplex& cx, int k, int cap)
{
    Json ys = Json::array();
    for (Face f : w.subcollection_Y) ys.push_back(face_labels_json(f, cx));
    Json xs = Json::array();
    for (Face f : w.collection_X) xs.push_back(face_labels_json(f, cx));
    Json fs = Json::array();
    for (VertexId v : w.f_witnesses) fs.push_back(cx.label(v));
    Json j;
    j["fail_step"] = w.fail_step;
    j["side"] = side_name(w.side);
    j["original_S"] = face_labels_json(w.original_S, cx);
    j["original_phi"] = w.original_phi;
    j["collection_X"] = xs;
    j["subcollection_Y"] = ys;
    j["f_witnesses"] = fs;
    j["subject_S"] = face_labels_json(w.subject_S, cx);
    j["subject_phi"] = w.subject_phi;
    j["complement_T"] = face_labels_json(w.complement_T, cx);
    j["complement_T_phi"] = w.complement_T_phi;
    j["face_A"] = face_labels_json(w.face_A, cx);
    j["A_in_complex"] = w.a_in_complex;
    j["A_extends_to_facet"] = w.a_extends;
    j["checks_pass"] = w.replay_checks_pass(k, cap);
    return j;
}

inline Json theorem_audit_to_json(const TheoremAudit& a, const DeltaComplex& delta, int k)
{
    const auto& cx = delta.complex;
    Json j;
    j["steps_replayed"] = a.steps_replayed;
    j["first_illegal_step"] = a.first_illegal_step ? Json(*a.first_illegal_step) : Json(nullptr);
    if (a.first_illegal_step) j["illegal_reason"] = a.illegal_reason;
    if (a.witness) {
        const int cap = a.witness->side == FaceSide::u ? delta.labeling.b : delta.labeling.a;
        j["result"] = "witness";
        j["witness"] = witness_to_json(*a.witness, cx, k, cap);
    } else {
        j["result"] = "valid-so-far";
        j["terminal_simplex"] = a.terminal_simplex;
        Json fr = Json::array();
        for (const auto& [s, v] : a.frontier) fr.push_back(Json{{"S", face_labels_json(s, cx)}, {"phi", v}});
        j["frontier"] = fr;
    }
    return j;
}

inline Json phi_audit_to_json(const PhiAuditReport& r, const SimplicialComplex& cx)
{
    Json j;
    j["steps_audited"] = r.steps_audited;
    j["sets_checked"] = r.sets_checked;
    j["illegal_step"] = r.illegal_step ? Json(*r.illegal_step) : Json(nullptr);
    if (r.illegal_step) j["illegal_reason"] = r.illegal_reason;
    j["terminal_simplex"] = r.terminal_simplex;
    if (r.property2_witness) j["property2_witness"] = face_labels_json(*r.property2_witness, cx);
    Json v = Json::array();
    for (const auto& x : r.violations)
        v.push_back(Json{{"property", x.property}, {"step", x.step}, {"S", face_labels_json(x.subject, cx)}, {"detail", x.detail}});
    j["violations"] = v;
    j["ok"] = r.ok();
    return j;
}

inline Json extraction_to_json(const Extraction& ex, int k)
{
    Json j;
    j["k"] = k;
    j["indices"] = ex.indices;
    j["subcollection"] = ex.subcollection;
    j["witnesses"] = ex.witnesses;
    j["union_size"] = ex.union_size;
    j["chain_bound"] = ex.chain_bound;
    j["square_bound"] = std::to_string((k + 3) * (k + 3)) + "/4";
    return j;
}

// --- files -------------------------------------------------------------------

inline Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    require_input(in.good(), "cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

inline Json parse_json_text(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        throw InputError(std::string("JSON: ") + e.what());
    }
}

inline void write_json_file(const std::string& path, const Json& j)
{
    std::ofstream out(path);
    require_input(out.good(), "cannot write " + path);
    out << j.dump(2) << "\n";
}

} // namespace decomp::io

#endif // DECOMP_IO_HPP
