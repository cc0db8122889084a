#pragma once

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <limits>

#include "cswitch/boundedness.hpp"
#include "cswitch/deadbeat.hpp"
#include "cswitch/irreducibility.hpp"
#include "cswitch/system.hpp"

namespace cswitch::report {

/// Reports keep insertion order so equal results print identically.
using Json = nlohmann::ordered_json;

template <Field T>
Json scalar(const T& x) {
    if constexpr (is_exact_v<T>) {
        if (boost::multiprecision::denominator(x) == 1) {
            const Integer& p = boost::multiprecision::numerator(x);
            if (p >= std::numeric_limits<std::int64_t>::min() && p <= std::numeric_limits<std::int64_t>::max())
                return p.template convert_to<std::int64_t>();
        }
        return format_rational(x);
    } else {
        return x;
    }
}

/// Finite doubles as numbers, infinities and NaN as null.
inline Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

template <Field T>
Json matrix(const Matrix<T>& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json edge(const Edge& e) { return Json::array({e.source, e.destination, e.mode.label}); }

inline Json path(const Path& p) {
    Json edges = Json::array();
    for (const auto& e : p.edges()) edges.push_back(edge(e));
    return edges;
}

inline Json node_set(const graph::NodeSet& s) {
    Json a = Json::array();
    for (NodeId v : s) a.push_back(v);
    return a;
}

inline Json tolerances(const Tolerances& t) {
    return {{"membership", t.membership}, {"psd", t.psd}, {"rank_factor", t.rank_factor}};
}

template <Field T>
Json system_summary(const SwitchedSystem<T>& sys) {
    Json j;
    j["name"] = sys.name() ? Json(*sys.name()) : Json(nullptr);
    j["scalar"] = std::string(field_traits<T>::name);
    j["n"] = sys.n();
    j["nodes"] = sys.node_count();
    j["edges"] = sys.graph().edge_count();
    j["modes"] = sys.matrices().size();
    j["strongly_connected"] = sys.strongly_connected();
    return j;
}

inline Json to_json(const ValidationReport& r) {
    Json j;
    j["valid"] = true;
    j["scalar"] = r.scalar;
    j["n"] = r.n;
    j["node_count"] = r.node_count;
    j["edge_count"] = r.edge_count;
    j["mode_count"] = r.mode_count;
    j["dimensions_consistent"] = r.dimensions_consistent;
    j["labels_covered"] = r.labels_covered;
    j["unused_labels"] = r.unused_labels;
    j["duplicate_edges"] = 0;
    j["strongly_connected"] = r.strongly_connected;
    j["warnings"] = r.warnings;
    return j;
}

template <Field T>
Json to_json(const deadbeat::DeadbeatVerdict<T>& v, const SwitchedSystem<T>& sys) {
    Json j;
    j["is_deadbeat"] = v.is_deadbeat;
    j["horizon_bound"] = v.horizon_bound;
    j["minimal_horizon"] = v.minimal_horizon ? Json(*v.minimal_horizon) : Json(nullptr);
    j["steps_run"] = v.steps_run;
    j["exact"] = v.exact;
    j["psd_tolerance"] = v.psd_tolerance ? Json(*v.psd_tolerance) : Json(nullptr);
    if (v.witness) {
        j["witness"] = {{"length", v.witness->length()}, {"edges", path(*v.witness)}, {"product", matrix(path_product(sys, *v.witness))}};
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

template <Field T>
Json subspace(const linalg::Subspace<T>& s) {
    return {{"dim", s.dim()}, {"ambient_dim", s.ambient_dim()}, {"basis", matrix(s.basis())}};
}

template <Field T>
Json to_json(const IrreducibilityVerdict<T>& v) {
    Json j;
    j["status"] = std::string(to_string(v.status));
    j["method"] = std::string(to_string(v.method));
    j["n"] = v.n;
    j["algebra_dim"] = v.algebra_dim;
    if (v.witness) {
        Json w = subspace(*v.witness);
        w["exact"] = is_exact_v<T>;
        j["witness"] = std::move(w);
    } else if (v.numeric_witness) {
        Json w = subspace(*v.numeric_witness);
        w["exact"] = false;
        j["witness"] = std::move(w);
    } else {
        j["witness"] = nullptr;
    }
    j["tolerance"] = v.tolerance ? Json(*v.tolerance) : Json(nullptr);
    j["achieved_minimum"] = v.achieved_minimum ? Json(*v.achieved_minimum) : Json(nullptr);
    return j;
}

inline Json to_json(const boundedness::CjsrBounds& b) {
    Json j;
    j["lower"] = number(b.lower);
    j["upper"] = number(b.upper);
    j["depth"] = b.depth;
    j["products"] = b.paths;
    j["lower_cycle_length"] = b.lower_length;
    j["upper_length"] = b.upper_length;
    Json per = Json::array();
    for (double u : b.upper_by_length) per.push_back(number(u));
    j["upper_by_length"] = std::move(per);
    return j;
}

template <Field T>
Json to_json(const boundedness::StructureReport<T>& r) {
    Json j;
    j["conditions"] = std::string(to_string(r.conditions));
    j["conditions_hold"] = r.conditions_hold;
    j["linearly_connected"] = r.linearly_connected;
    j["failing_pair"] = r.failing_pair ? Json::array({r.failing_pair->first, r.failing_pair->second}) : Json(nullptr);
    j["irreducible_nodes"] = node_set(r.irreducible_nodes);
    j["unknown_nodes"] = node_set(r.unknown_nodes);
    j["unavoidable"] = r.unavoidable;
    j["all_nodes_irreducible"] = r.all_nodes_irreducible;
    j["claims"] = r.claims;
    Json nodes = Json::array();
    for (std::size_t v = 0; v < r.node_verdicts.size(); ++v) {
        Json nv = to_json(r.node_verdicts[v]);
        nv["node"] = v;
        nodes.push_back(std::move(nv));
    }
    j["node_verdicts"] = std::move(nodes);
    j["cjsr"] = r.cjsr ? to_json(*r.cjsr) : Json(nullptr);
    j["cjsr_error"] = r.cjsr_error ? Json(*r.cjsr_error) : Json(nullptr);
    return j;
}

}  // namespace cswitch::report
