#pragma once

#include <json.hpp>

#include "lpsym/actions.hpp"
#include "lpsym/classify.hpp"
#include "lpsym/verify.hpp"

namespace lpsym {

using Json = nlohmann::json;

inline Json to_json(const MatD& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json to_json(const ResidualReport& r) {
    Json j;
    j["kind"] = r.kind;
    j["subject"] = r.subject;
    j["field"] = r.field;
    if (!r.p.empty()) j["p"] = r.p;
    j["n"] = r.n;
    j["tolerance"] = r.tolerance;
    j["refute_threshold"] = r.refute_threshold;
    j["max_abs_residual"] = r.max_abs;
    j["mean_abs_residual"] = r.mean_abs;
    j["evaluated"] = r.evaluated;
    j["skipped"] = r.skipped;
    j["skip_fraction"] = r.skip_fraction;
    j["verdict"] = r.verdict;
    j["seed"] = r.seed;
    j["samples"] = r.samples;
    j["radius"] = r.radius;
    if (!r.notes.empty()) {
        Json notes;
        for (auto& [k, v] : r.notes) notes[k] = v;
        j["notes"] = std::move(notes);
    }
    return j;
}

inline Json to_json(const LieAlgebraBasis& b) {
    Json j;
    j["n"] = b.n;
    j["p"] = rat_str(b.p);
    j["ansatz_degree"] = b.ansatz_degree;
    j["dimension"] = b.dimension;
    j["system"] = Json{{"rows", b.system_rows}, {"cols", b.system_cols}, {"rank", b.system_rank}};
    Json gens = Json::array();
    for (size_t i = 0; i < b.generators.size(); ++i) {
        const auto& g = b.generators[i];
        Json gj;
        gj["field"] = g.str();
        Json xi = Json::array();
        for (auto& c : g.xi) xi.push_back(c.str());
        gj["xi"] = std::move(xi);
        gj["phi"] = g.phi.str();
        gj["family"] = family_name(b.tags[i]);
        gens.push_back(std::move(gj));
    }
    j["generators"] = std::move(gens);
    return j;
}

inline Json to_json(const std::vector<ScanRow>& rows) {
    Json arr = Json::array();
    for (auto& r : rows)
        arr.push_back(Json{{"p", rat_str(r.p)}, {"dimension", r.dimension}, {"special", r.special}});
    return arr;
}

inline Json to_json(const SLDecomposition& d) {
    Json j;
    j["P"] = to_json(d.P);
    j["lambda"] = d.lambda;
    j["Q"] = to_json(d.Q);
    return j;
}

inline Json to_json(const BodyTransform& t) {
    Json j;
    j["kind"] = t.kind_name();
    switch (t.kind) {
        case BodyTransform::Kind::Rotation:
        case BodyTransform::Kind::CentroAffine: j["matrix"] = to_json(t.M); break;
        case BodyTransform::Kind::Scaling: j["factors"] = t.k; break;
        case BodyTransform::Kind::Translation: j["offset"] = t.b; break;
    }
    return j;
}

}  // namespace lpsym
