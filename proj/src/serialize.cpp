#include "itlab/serialize.hpp"

#include <algorithm>
#include <fstream>

#include "itlab/error.hpp"

namespace itlab {
namespace {

Json ids(const std::vector<Vertex>& vs) {
    Json out = Json::array();
    for (Vertex v : vs) out.push_back(v + 1);
    return out;
}

Vertex vertex_of(const Json& j) {
    if (!j.is_number_integer() || j.get<long long>() < 1) throw ParseError(0, "expected a positive vertex id, got " + j.dump());
    return static_cast<Vertex>(j.get<long long>() - 1);
}

std::vector<Vertex> ids_of(const Json& j) {
    if (!j.is_array()) throw ParseError(0, "expected an array of vertex ids");
    std::vector<Vertex> out;
    for (const auto& x : j) out.push_back(vertex_of(x));
    return out;
}

const Json& field(const Json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) throw ParseError(0, std::string("missing field \"") + name + "\"");
    return j.at(name);
}

std::size_t count_of(const Json& j) {
    if (!j.is_number_integer() || j.get<long long>() < 0) throw ParseError(0, "expected a nonnegative integer, got " + j.dump());
    return static_cast<std::size_t>(j.get<long long>());
}

Json edge_json(const Edge& e) { return Json::array({e.u + 1, e.v + 1}); }

Edge edge_of(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw ParseError(0, "expected an edge [u, v]");
    Vertex u = vertex_of(j[0]), v = vertex_of(j[1]);
    if (u == v) throw ParseError(0, "edge is a self-loop");
    return Edge::make(u, v);
}

} // namespace

Json certificate_to_json(const NoItCertificate& cert) {
    Json j;
    if (cert.kind == NoItCertificate::Kind::Leaf) {
        j["kind"] = "leaf";
        j["a"] = cert.a;
        j["b"] = cert.b;
        j["blocks"] = Json::array({ids(cert.a_side), ids(cert.b_side)});
        return j;
    }
    j["kind"] = "join";
    j["left"] = certificate_to_json(*cert.left);
    j["right"] = certificate_to_json(*cert.right);
    j["absorbed"] = cert.absorbed + 1;
    Json dist = Json::array();
    for (auto [v, b] : cert.distribution) dist.push_back(Json::array({v + 1, b + 1}));
    j["distribution"] = std::move(dist);
    return j;
}

CertificatePtr certificate_from_json(const Json& j) {
    auto node = std::make_shared<NoItCertificate>();
    const auto& kind = field(j, "kind");
    if (kind == "leaf") {
        node->kind = NoItCertificate::Kind::Leaf;
        node->a = count_of(field(j, "a"));
        node->b = count_of(field(j, "b"));
        const auto& blocks = field(j, "blocks");
        if (!blocks.is_array() || blocks.size() != 2) throw ParseError(0, "leaf needs exactly two blocks");
        node->a_side = ids_of(blocks[0]);
        node->b_side = ids_of(blocks[1]);
    } else if (kind == "join") {
        node->kind = NoItCertificate::Kind::Join;
        node->left = certificate_from_json(field(j, "left"));
        node->right = certificate_from_json(field(j, "right"));
        node->absorbed = static_cast<BlockId>(count_of(field(j, "absorbed"))) - 1;
        const auto& dist = field(j, "distribution");
        if (!dist.is_array()) throw ParseError(0, "distribution must be an array");
        for (const auto& pair : dist) {
            if (!pair.is_array() || pair.size() != 2) throw ParseError(0, "distribution entries are [vertex, block]");
            node->distribution.emplace_back(vertex_of(pair[0]), static_cast<BlockId>(count_of(pair[1])) - 1);
        }
    } else {
        throw ParseError(0, "unknown certificate kind " + kind.dump());
    }
    return node;
}

Json trace_to_json(const ResolvedTrace& trace) {
    Json j;
    j["rule"] = std::string(rule_name(trace.rule));
    if (trace.value.is_infinite()) j["value"] = "inf";
    else j["value"] = trace.value.finite();
    if (trace.edge) j["edge"] = edge_json(*trace.edge);
    Json children = Json::array();
    for (const auto& c : trace.children) children.push_back(trace_to_json(c));
    j["children"] = std::move(children);
    return j;
}

Json basic_partition_to_json(const BasicPartition& bp) {
    Json j;
    j["k"] = bp.k();
    Json triples = Json::array();
    for (const auto& t : bp.triples) {
        Json tj;
        tj["x"] = ids(t.x);
        tj["y"] = ids(t.y);
        tj["z"] = ids(t.z);
        tj["x_witness"] = t.x_witness + 1;
        tj["y_witness"] = t.y_witness + 1;
        triples.push_back(std::move(tj));
    }
    j["triples"] = std::move(triples);
    j["unassigned"] = ids(bp.unassigned);
    Json schedule = Json::array();
    for (const auto& s : bp.schedule) {
        Json sj;
        sj["op"] = s.op == ScheduleStep::Op::Delete ? "delete" : "explode";
        sj["edge"] = edge_json(s.edge);
        schedule.push_back(std::move(sj));
    }
    j["schedule"] = std::move(schedule);
    return j;
}

BasicPartition basic_partition_from_json(const Json& j) {
    BasicPartition bp;
    const auto& triples = field(j, "triples");
    if (!triples.is_array()) throw ParseError(0, "triples must be an array");
    for (const auto& tj : triples) {
        Triple t;
        t.x = ids_of(field(tj, "x"));
        t.y = ids_of(field(tj, "y"));
        t.z = ids_of(field(tj, "z"));
        for (auto* s : {&t.x, &t.y, &t.z}) std::sort(s->begin(), s->end());
        t.x_witness = vertex_of(field(tj, "x_witness"));
        t.y_witness = vertex_of(field(tj, "y_witness"));
        bp.triples.push_back(std::move(t));
    }
    if (j.contains("k") && count_of(j.at("k")) != bp.triples.size()) throw ParseError(0, "k does not match the number of triples");
    if (j.contains("unassigned")) {
        bp.unassigned = ids_of(j.at("unassigned"));
        std::sort(bp.unassigned.begin(), bp.unassigned.end());
    }
    if (j.contains("schedule")) {
        for (const auto& sj : j.at("schedule")) {
            ScheduleStep step;
            const auto& op = field(sj, "op");
            if (op == "delete") step.op = ScheduleStep::Op::Delete;
            else if (op == "explode") step.op = ScheduleStep::Op::Explode;
            else throw ParseError(0, "unknown schedule op " + op.dump());
            step.edge = edge_of(field(sj, "edge"));
            bp.schedule.push_back(step);
        }
    }
    return bp;
}

Json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(0, path.string() + ": " + e.what());
    }
}

void save_json(const std::filesystem::path& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

} // namespace itlab
