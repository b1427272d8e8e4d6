#include "coarsesep/graph_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "coarsesep/error.hpp"

namespace coarsesep {

namespace {

using nlohmann::json;

VertexGroup parse_group(const json& j) {
    if (!j.is_object() || j.size() != 1) throw Error("malformed group: expected one of cyclic/table/abstract");
    if (j.contains("cyclic")) {
        const auto& k = j.at("cyclic");
        if (!k.is_number_integer()) throw Error("malformed group: cyclic order must be an integer");
        return VertexGroup::cyclic(k.get<int>());
    }
    if (j.contains("table")) {
        const auto& t = j.at("table");
        if (!t.is_array()) throw Error("malformed group: table must be an array of rows");
        std::vector<std::vector<int>> rows;
        for (const auto& row : t) {
            if (!row.is_array()) throw Error("malformed group: table rows must be arrays");
            std::vector<int> r;
            for (const auto& x : row) {
                if (!x.is_number_integer()) throw Error("malformed group: table entries must be integers");
                r.push_back(x.get<int>());
            }
            rows.push_back(std::move(r));
        }
        return VertexGroup::from_table(std::move(rows));
    }
    if (j.contains("abstract")) {
        const auto& a = j.at("abstract");
        if (!a.is_object()) throw Error("malformed group: abstract must be an object");
        VertexGroup::AbstractInfo info;
        if (!a.contains("order")) throw Error("malformed group: abstract group needs an order");
        const auto& o = a.at("order");
        if (o.is_string() && o.get<std::string>() == "infinite") {
            info.order = std::nullopt;
        } else if (o.is_number_integer()) {
            info.order = o.get<int>();
        } else {
            throw Error("malformed group: order must be an integer or \"infinite\"");
        }
        auto flag = [&](const char* key) {
            if (!a.contains(key)) return Tri::unknown;
            const auto& f = a.at(key);
            if (f.is_boolean()) return f.get<bool>() ? Tri::yes : Tri::no;
            if (!f.is_string()) throw Error(std::string("malformed group: flag ") + key + " must be a string");
            return parse_tri(f.get<std::string>());
        };
        info.hyperbolic = flag("hyperbolic");
        info.virtually_infinite_cyclic = flag("virtually_infinite_cyclic");
        info.virtual_surface = flag("virtual_surface");
        for (const auto& [key, _] : a.items()) {
            if (key != "order" && key != "hyperbolic" && key != "virtually_infinite_cyclic" && key != "virtual_surface") {
                throw Error("malformed group: unknown abstract field '" + key + "'");
            }
        }
        return VertexGroup::abstract(info);
    }
    throw Error("malformed group: expected one of cyclic/table/abstract");
}

}  // namespace

LabeledGraph parse_graph(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(std::string("malformed document: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("vertices") || !doc.at("vertices").is_array()) {
        throw Error("malformed document: missing \"vertices\" array");
    }
    const auto& verts = doc.at("vertices");
    const std::size_t n = verts.size();
    std::vector<std::optional<VertexGroup>> slots(n);
    for (const auto& v : verts) {
        if (!v.is_object() || !v.contains("id") || !v.at("id").is_number_integer() || !v.contains("group")) {
            throw Error("malformed document: each vertex needs an integer \"id\" and a \"group\"");
        }
        const auto id = v.at("id").get<long long>();
        if (id < 0 || static_cast<std::size_t>(id) >= n) {
            throw Error("malformed document: vertex ids must be 0.." + std::to_string(n - 1));
        }
        auto& slot = slots[static_cast<std::size_t>(id)];
        if (slot) throw Error("malformed document: duplicate vertex id " + std::to_string(id));
        slot = parse_group(v.at("group"));
    }
    std::vector<VertexGroup> labels;
    labels.reserve(n);
    for (auto& s : slots) labels.push_back(std::move(*s));

    std::vector<std::pair<int, int>> edges;
    if (doc.contains("edges")) {
        const auto& es = doc.at("edges");
        if (!es.is_array()) throw Error("malformed document: \"edges\" must be an array");
        for (const auto& e : es) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
                throw Error("malformed document: edges must be pairs of vertex ids");
            }
            edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
    }
    return {std::move(labels), std::move(edges)};
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

LabeledGraph load_graph(const std::filesystem::path& path) { return parse_graph(read_text_file(path)); }

}  // namespace coarsesep
