#pragma once

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

#include "cswitch/system.hpp"

namespace cswitch::io {

using Json = nlohmann::json;

namespace detail {

inline Error schema(const std::string& what) { return Error(ErrorKind::schema, what); }

inline SyntaxError syntax_at(std::string_view text, std::size_t byte, const std::string& msg) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return SyntaxError(line, col, msg);
}

inline std::size_t to_index(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) throw schema(where + " must be an integer");
    if (j.is_number_unsigned()) return j.get<std::size_t>();
    const auto v = j.get<std::int64_t>();
    if (v < 0) throw schema(where + " must be non-negative");
    return static_cast<std::size_t>(v);
}

template <Field T>
T parse_entry(const Json& j, const std::string& where);

template <>
inline Rational parse_entry<Rational>(const Json& j, const std::string& where) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_unsigned()) return Rational(Integer(j.get<std::uint64_t>()));
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_number_float())
        throw Error(ErrorKind::malformed_rational, where + ": rational entries are integers or \"p/q\" strings, got " + j.dump());
    throw schema(where + " must be an integer or a \"p/q\" string");
}

template <>
inline double parse_entry<double>(const Json& j, const std::string& where) {
    if (!j.is_number()) throw schema(where + " must be a number");
    return j.get<double>();
}

template <Field T>
SwitchedSystem<T> build(const Json& doc) {
    const std::size_t n = to_index(doc.at("n"), "\"n\"");
    if (n == 0) throw Error(ErrorKind::dimension_mismatch, "\"n\" must be positive");

    const Json& mats = doc.at("matrices");
    if (!mats.is_array() || mats.empty()) throw schema("\"matrices\" must be a nonempty array");
    std::vector<Matrix<T>> ms;
    for (std::size_t k = 0; k < mats.size(); ++k) {
        const Json& rows = mats[k];
        const std::string name = "A_" + std::to_string(k + 1);
        if (!rows.is_array()) throw schema(name + " must be an array of rows");
        if (rows.size() != n) throw Error(ErrorKind::dimension_mismatch, name + " has " + std::to_string(rows.size()) + " rows, n = " + std::to_string(n));
        Matrix<T> m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            if (!rows[i].is_array()) throw schema(name + " row " + std::to_string(i) + " must be an array");
            if (rows[i].size() != n)
                throw Error(ErrorKind::dimension_mismatch, name + " row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) + " entries, n = " + std::to_string(n));
            for (std::size_t c = 0; c < n; ++c) m(i, c) = parse_entry<T>(rows[i][c], name + "(" + std::to_string(i) + "," + std::to_string(c) + ")");
        }
        ms.push_back(std::move(m));
    }

    const Json& edges = doc.at("edges");
    if (!edges.is_array()) throw schema("\"edges\" must be an array");
    if (edges.empty()) throw Error(ErrorKind::empty_graph, "\"edges\" is empty");
    std::vector<Edge> es;
    std::size_t max_node = 0;
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const Json& e = edges[k];
        const std::string where = "edge " + std::to_string(k);
        if (!e.is_array() || e.size() != 3) throw schema(where + " must be [source, destination, label]");
        Edge edge{to_index(e[0], where + " source"), to_index(e[1], where + " destination"), Mode{to_index(e[2], where + " label")}};
        if (edge.mode.label == 0 || edge.mode.label > ms.size())
            throw Error(ErrorKind::unknown_label, where + " has label " + std::to_string(edge.mode.label) + ", matrices cover 1.." + std::to_string(ms.size()));
        max_node = std::max({max_node, edge.source, edge.destination});
        es.push_back(edge);
    }

    std::size_t node_count = max_node + 1;
    std::vector<std::string> names;
    if (doc.contains("nodes")) {
        const Json& nodes = doc["nodes"];
        if (!nodes.is_array()) throw schema("\"nodes\" must be an array of strings");
        for (const auto& s : nodes) {
            if (!s.is_string()) throw schema("\"nodes\" must be an array of strings");
            names.push_back(s.get<std::string>());
        }
        if (names.size() < node_count)
            throw Error(ErrorKind::invalid_node, "edges reference node " + std::to_string(max_node) + " but only " + std::to_string(names.size()) + " nodes are listed");
        node_count = names.size();
        if (std::all_of(names.begin(), names.end(), [](const std::string& s) { return s.empty(); })) names.clear();
    }

    std::optional<std::string> name;
    if (doc.contains("name") && !doc["name"].is_null()) {
        if (!doc["name"].is_string()) throw schema("\"name\" must be a string");
        name = doc["name"].get<std::string>();
    }
    return SwitchedSystem<T>(LabeledGraph(node_count, std::move(es)), MatrixSet<T>(n, std::move(ms)), std::move(name), std::move(names));
}

template <Field T>
std::string entry_text(const T& x) {
    if constexpr (is_exact_v<T>) {
        if (boost::multiprecision::denominator(x) == 1) {
            const Integer& p = boost::multiprecision::numerator(x);
            if (p >= std::numeric_limits<std::int64_t>::min() && p <= std::numeric_limits<std::int64_t>::max()) return p.str();
        }
        return Json(format_rational(x)).dump();
    } else {
        return Json(x).dump();
    }
}

}  // namespace detail

/// Reads a system document. The "scalar" field picks the alternative.
inline AnySystem parse_system(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw detail::syntax_at(text, e.byte, e.what());
    }
    try {
        if (!doc.is_object()) throw detail::schema("document must be a JSON object");
        static const std::set<std::string> known{"name", "n", "scalar", "matrices", "edges", "nodes"};
        for (const auto& [key, value] : doc.items())
            if (!known.count(key)) throw detail::schema("unknown key \"" + key + "\"");
        const Json& scalar = doc.at("scalar");
        if (scalar == "rational") return detail::build<Rational>(doc);
        if (scalar == "float") return detail::build<double>(doc);
        throw detail::schema("\"scalar\" must be \"rational\" or \"float\"");
    } catch (const Json::exception& e) {
        throw detail::schema(e.what());
    }
}

/// Reads a document and converts it to field T (float to rational is exact).
template <Field T>
SwitchedSystem<T> parse_system_as(std::string_view text) {
    return std::visit([](const auto& s) { return s.template as<T>(); }, parse_system(text));
}

/// Canonical text: fixed key order, one matrix row per line, edges in
/// canonical order, rationals in lowest terms. Equal systems give equal text.
template <Field T>
std::string serialize_system(const SwitchedSystem<T>& sys) {
    std::ostringstream out;
    out << "{\n";
    if (sys.name()) out << "  \"name\": " << Json(*sys.name()).dump() << ",\n";
    out << "  \"n\": " << sys.n() << ",\n";
    out << "  \"scalar\": \"" << field_traits<T>::name << "\",\n";
    out << "  \"matrices\": [\n";
    for (std::size_t k = 0; k < sys.matrices().size(); ++k) {
        const auto& m = sys.matrices()[k];
        out << "    [\n";
        for (std::size_t i = 0; i < m.rows(); ++i) {
            out << "      [";
            for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? ", " : "") << detail::entry_text(m(i, j));
            out << "]" << (i + 1 < m.rows() ? "," : "") << "\n";
        }
        out << "    ]" << (k + 1 < sys.matrices().size() ? "," : "") << "\n";
    }
    out << "  ],\n";
    out << "  \"edges\": [\n";
    const auto& edges = sys.graph().edges();
    for (std::size_t k = 0; k < edges.size(); ++k)
        out << "    [" << edges[k].source << ", " << edges[k].destination << ", " << edges[k].mode.label << "]"
            << (k + 1 < edges.size() ? "," : "") << "\n";
    out << "  ]";
    bool isolated = false;
    {
        std::vector<bool> touched(sys.node_count(), false);
        for (const auto& e : edges) touched[e.source] = touched[e.destination] = true;
        isolated = std::find(touched.begin(), touched.end(), false) != touched.end();
    }
    if (!sys.node_names().empty() || isolated) {
        out << ",\n  \"nodes\": [";
        for (std::size_t v = 0; v < sys.node_count(); ++v)
            out << (v ? ", " : "") << Json(sys.node_names().empty() ? std::string() : sys.node_names()[v]).dump();
        out << "]";
    }
    out << "\n}\n";
    return out.str();
}

inline std::string serialize_system(const AnySystem& sys) {
    return std::visit([](const auto& s) { return serialize_system(s); }, sys);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::invalid_argument, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline AnySystem load_system(const std::string& path) { return parse_system(read_file(path)); }

}  // namespace cswitch::io
