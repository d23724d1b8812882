#include "wstab/io.hpp"

#include "wstab/errors.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace wstab {

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& why) {
    throw ParseError(path + ": " + why);
}

const Json& member(const Json& obj, const char* key, const std::string& path) {
    if (!obj.is_object()) schema_error(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) schema_error(path, std::string("missing key \"") + key + "\"");
    return *it;
}

Rational rational_at(const Json& v, const std::string& path) {
    if (v.is_string()) {
        try {
            return parse_rational(v.get<std::string>());
        } catch (const ParseError& e) {
            schema_error(path, e.what());
        }
    }
    if (v.is_number_integer()) return Rational(Integer(v.dump()));
    schema_error(path, "expected an exact rational string such as \"-3/2\"");
}

int int_at(const Json& v, const std::string& path) {
    if (!v.is_number_integer()) schema_error(path, "expected an integer");
    return v.get<int>();
}

std::string string_at(const Json& v, const std::string& path) {
    if (!v.is_string()) schema_error(path, "expected a string");
    return v.get<std::string>();
}

const Json& array_at(const Json& v, const std::string& path) {
    if (!v.is_array()) schema_error(path, "expected an array");
    return v;
}

WeightPolynomial poly_at(const Json& v, const std::string& path, std::size_t arity) {
    std::string text = string_at(v, path);
    try {
        return parse_polynomial(text, arity);
    } catch (const ParseError& e) {
        schema_error(path, e.what());
    }
}

WeightVector weights_at(const Json& v, const std::string& path) {
    WeightVector I;
    I.s = rational_at(member(v, "s", path), path + ".s");
    if (v.contains("a")) {
        const Json& a = array_at(v["a"], path + ".a");
        for (std::size_t k = 0; k < a.size(); ++k) I.a.push_back(rational_at(a[k], path + ".a[" + std::to_string(k) + "]"));
    }
    return I;
}

WeierstrassConfig weierstrass_at(const Json& v, const std::string& path) {
    WeierstrassConfig W;
    W.N = int_at(member(v, "N", path), path + ".N");
    W.g = v.contains("genus") ? int_at(v["genus"], path + ".genus") : 0;
    const char* key = v.contains("marks") ? "marks" : "types";
    if (v.contains(key)) {
        const Json& marks = array_at(v[key], path + "." + key);
        for (std::size_t k = 0; k < marks.size(); ++k) {
            std::string p = path + "." + key + "[" + std::to_string(k) + "]";
            try {
                W.fiber_types.push_back(parse_kodaira(string_at(marks[k], p)));
            } catch (const ParseError& e) {
                schema_error(p, e.what());
            }
        }
    }
    return W;
}

std::string poly_text(const WeightPolynomial& p) { return p.to_string(); }

}  // namespace

DegenerationGraph graph_from_json(const Json& j) {
    DegenerationGraph G;
    G.genus = int_at(member(j, "genus", "$"), "$.genus");
    if (j.contains("j_degree")) G.j_degree = int_at(j["j_degree"], "$.j_degree");
    G.weights = weights_at(member(j, "weights", "$"), "$.weights");
    G.weights.g = G.genus;
    G.weights.d = G.j_degree;
    const std::size_t n = G.arity();

    const Json& comps = array_at(member(j, "components", "$"), "$.components");
    for (std::size_t k = 0; k < comps.size(); ++k) {
        std::string p = "$.components[" + std::to_string(k) + "]";
        const Json& cj = comps[k];
        Component c;
        c.id = int_at(member(cj, "id", p), p + ".id");
        std::string kind = string_at(member(cj, "kind", p), p + ".kind");
        if (kind == "elliptic") {
            c.kind = ComponentKind::Elliptic;
            const Json& s = member(cj, "section", p);
            c.genus = s.contains("genus") ? int_at(s["genus"], p + ".section.genus") : 0;
            c.K_dot_C = rational_at(member(s, "K_dot_C", p + ".section"), p + ".section.K_dot_C");
            c.S_dot_C = rational_at(member(s, "S_dot_C", p + ".section"), p + ".section.S_dot_C");
        } else if (kind == "pseudoelliptic") {
            c.kind = ComponentKind::Pseudoelliptic;
        } else {
            schema_error(p + ".kind", "expected \"elliptic\" or \"pseudoelliptic\"");
        }
        if (cj.contains("intermediate_fibers")) {
            const Json& fs = array_at(cj["intermediate_fibers"], p + ".intermediate_fibers");
            for (std::size_t i = 0; i < fs.size(); ++i) {
                std::string fp = p + ".intermediate_fibers[" + std::to_string(i) + "]";
                IntermediateFiber f;
                f.a_squared = rational_at(member(fs[i], "A_squared", fp), fp + ".A_squared");
                if (fs[i].contains("edge") && !fs[i]["edge"].is_null()) f.edge = int_at(fs[i]["edge"], fp + ".edge");
                c.intermediate_fibers.push_back(f);
            }
        }
        if (cj.contains("L_squared")) c.L_squared = poly_at(cj["L_squared"], p + ".L_squared", n);
        if (cj.contains("contraction_degree")) {
            c.contraction_degree = poly_at(cj["contraction_degree"], p + ".contraction_degree", n);
        }
        G.components.push_back(std::move(c));
    }

    if (j.contains("edges")) {
        const Json& edges = array_at(j["edges"], "$.edges");
        for (std::size_t k = 0; k < edges.size(); ++k) {
            std::string p = "$.edges[" + std::to_string(k) + "]";
            Edge e;
            e.id = int_at(member(edges[k], "id", p), p + ".id");
            e.from = int_at(member(edges[k], "from", p), p + ".from");
            e.to = int_at(member(edges[k], "to", p), p + ".to");
            std::string kind = edges[k].contains("kind") ? string_at(edges[k]["kind"], p + ".kind") : "twisted_fiber";
            if (kind == "twisted_fiber") {
                e.kind = EdgeKind::TwistedFiber;
            } else if (kind == "twisted_component") {
                e.kind = EdgeKind::TwistedComponent;
            } else {
                schema_error(p + ".kind", "expected \"twisted_fiber\" or \"twisted_component\"");
            }
            G.edges.push_back(e);
        }
    }

    if (j.contains("marks")) {
        const Json& marks = array_at(j["marks"], "$.marks");
        for (std::size_t k = 0; k < marks.size(); ++k) {
            std::string p = "$.marks[" + std::to_string(k) + "]";
            MarkedFiber m;
            m.index = int_at(member(marks[k], "index", p), p + ".index");
            m.host = int_at(member(marks[k], "host", p), p + ".host");
            try {
                m.type = parse_kodaira(string_at(member(marks[k], "type", p), p + ".type"));
            } catch (const ParseError& e) {
                schema_error(p + ".type", e.what());
            }
            m.incidence = marks[k].contains("incidence") ? int_at(marks[k]["incidence"], p + ".incidence") : 1;
            G.marks.push_back(m);
        }
    }
    return G;
}

InputDocument parse_input(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::string msg = e.what();
        auto pos = msg.find("parse error");
        throw ParseError("malformed JSON, " + (pos == std::string::npos ? msg : msg.substr(pos)));
    }
    if (!j.is_object()) schema_error("$", "expected a JSON object");
    InputDocument doc;
    if (j.contains("weierstrass")) {
        doc.weierstrass = weierstrass_at(j["weierstrass"], "$.weierstrass");
        doc.weights = weights_at(member(j, "weights", "$"), "$.weights");
        doc.weights.g = doc.weierstrass->g;
        return doc;
    }
    doc.graph = graph_from_json(j);
    doc.weights = doc.graph->weights;
    return doc;
}

DegenerationGraph parse_graph(const std::string& text) {
    InputDocument doc = parse_input(text);
    if (!doc.graph) throw ParseError("expected a degeneration graph, found a Weierstrass configuration");
    return *doc.graph;
}

Json weights_to_json(const WeightVector& I) {
    Json a = Json::array();
    for (const auto& x : I.a) a.push_back(x.get_str());
    return Json{{"s", I.s.get_str()}, {"a", a}};
}

Json graph_to_json(const DegenerationGraph& G) {
    Json j;
    j["genus"] = G.genus;
    j["j_degree"] = G.j_degree;
    j["weights"] = weights_to_json(G.weights);
    Json comps = Json::array();
    for (const auto& c : G.components) {
        Json cj;
        cj["id"] = c.id;
        cj["kind"] = to_string(c.kind);
        if (c.elliptic()) {
            cj["section"] = Json{{"genus", c.genus}, {"K_dot_C", c.K_dot_C.get_str()}, {"S_dot_C", c.S_dot_C.get_str()}};
        }
        if (!c.intermediate_fibers.empty()) {
            Json fs = Json::array();
            for (const auto& f : c.intermediate_fibers) {
                Json fj{{"A_squared", f.a_squared.get_str()}};
                if (f.edge) fj["edge"] = *f.edge;
                fs.push_back(fj);
            }
            cj["intermediate_fibers"] = fs;
        }
        if (c.L_squared) cj["L_squared"] = poly_text(*c.L_squared);
        if (c.contraction_degree) cj["contraction_degree"] = poly_text(*c.contraction_degree);
        comps.push_back(cj);
    }
    j["components"] = comps;
    Json edges = Json::array();
    for (const auto& e : G.edges) edges.push_back({{"id", e.id}, {"from", e.from}, {"to", e.to}, {"kind", to_string(e.kind)}});
    j["edges"] = edges;
    Json marks = Json::array();
    for (const auto& m : G.marks) {
        Json mj{{"index", m.index}, {"host", m.host}, {"type", m.type.to_string()}, {"incidence", m.incidence}};
        if (m.auxiliary) mj["auxiliary"] = true;
        marks.push_back(mj);
    }
    j["marks"] = marks;
    return j;
}

Json weierstrass_to_json(const WeierstrassConfig& W, const WeightVector& I) {
    Json types = Json::array();
    for (const auto& t : W.fiber_types) types.push_back(t.to_string());
    return Json{{"weierstrass", {{"N", W.N}, {"genus", W.g}, {"marks", types}}}, {"weights", weights_to_json(I)}};
}

Json input_to_json(const InputDocument& doc) {
    if (doc.weierstrass) return weierstrass_to_json(*doc.weierstrass, doc.weights);
    return graph_to_json(canonicalize(*doc.graph));
}

std::string graph_to_string(const DegenerationGraph& G) { return graph_to_json(G).dump(2); }

Json rnd_to_json(const RefinedNumericalData& rnd) {
    Json j;
    j["genus"] = rnd.genus;
    j["arity"] = rnd.arity;
    Json comps = Json::array();
    for (const auto& c : rnd.components) {
        Json cj;
        cj["id"] = c.id;
        cj["kind"] = to_string(c.kind);
        if (c.kind == ComponentKind::Elliptic) {
            cj["genus"] = c.genus;
            cj["K_dot_C"] = c.K_dot_C.get_str();
            cj["S_dot_C"] = c.S_dot_C.get_str();
            Json inc = Json::array();
            for (const auto& [index, value] : c.incidences) inc.push_back(Json::array({index, value}));
            cj["incidences"] = inc;
        }
        cj["L_squared"] = c.L_squared.to_string();
        if (c.contraction_degree) cj["contraction_degree"] = c.contraction_degree->to_string();
        if (!c.intermediate_fibers.empty()) {
            Json fs = Json::array();
            for (const auto& [a2, other] : c.intermediate_fibers) {
                Json fj{{"A_squared", a2.get_str()}};
                if (other) fj["attached_to"] = *other;
                fs.push_back(fj);
            }
            cj["intermediate_fibers"] = fs;
        }
        comps.push_back(cj);
    }
    j["components"] = comps;
    Json edges = Json::array();
    for (const auto& e : rnd.edges) edges.push_back(Json::array({e.a, e.b, to_string(e.kind)}));
    j["edges"] = edges;
    return j;
}

std::string rnd_key(const DegenerationGraph& G) { return rnd_to_json(refine(G)).dump(); }

Json move_to_json(const Move& m) {
    Json j;
    j["kind"] = to_string(m.kind);
    j["component"] = m.component;
    if (m.neighbor >= 0) j["neighbor"] = m.neighbor;
    j["trigger"] = to_string(m.trigger);
    if (m.t) j["t"] = m.t->to_string();
    Json point = Json::array();
    for (const auto& x : m.firing_point) point.push_back(x.to_string());
    j["firing_weights"] = point;
    if (!m.parts.empty()) {
        Json parts = Json::array();
        for (const auto& p : m.parts) parts.push_back(move_to_json(p));
        j["parts"] = parts;
    }
    return j;
}

Json trace_to_json(const ReductionTrace& trace, const Json& header) {
    Json h = header.is_object() ? header : Json::object();
    h["start"] = weights_to_json(trace.start);
    h["target"] = weights_to_json(trace.target);
    h["move_count"] = trace.steps.size();
    Json moves = Json::array();
    for (std::size_t k = 0; k < trace.steps.size(); ++k) {
        Json mj = move_to_json(trace.steps[k].move);
        mj["step"] = k + 1;
        mj["rnd"] = rnd_to_json(refine(trace.steps[k].after));
        moves.push_back(mj);
    }
    Json j;
    j["header"] = h;
    j["moves"] = moves;
    j["warnings"] = trace.warnings;
    return j;
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

std::string dot_graph(const DegenerationGraph& G, const std::string& name) {
    std::ostringstream os;
    os << "graph " << name << " {\n";
    for (const auto& c : G.components) {
        if (c.elliptic()) {
            os << "  c" << c.id << " [shape=ellipse, label=\"C" << c.id << "\\ng=" << c.genus
               << " K.C=" << c.K_dot_C.get_str() << " S.C=" << c.S_dot_C.get_str() << "\"];\n";
        } else {
            os << "  c" << c.id << " [shape=box, label=\"P" << c.id << "\\nL^2=" << dot_escape(L_squared(G, c.id).to_string())
               << "\"];\n";
        }
    }
    for (const auto& e : G.edges) {
        os << "  c" << e.from << " -- c" << e.to << " [label=\"e" << e.id << "\""
           << (e.kind == EdgeKind::TwistedComponent ? ", style=dashed" : "") << "];\n";
    }
    for (std::size_t k = 0; k < G.marks.size(); ++k) {
        const auto& m = G.marks[k];
        std::string weight = static_cast<std::size_t>(m.index) <= G.arity() && m.index >= 1
                                 ? G.weights.a[static_cast<std::size_t>(m.index - 1)].get_str()
                                 : "?";
        os << "  m" << k + 1 << " [shape=point];\n";
        os << "  c" << m.host << " -- m" << k + 1 << " [label=\"a" << m.index << "=" << weight;
        if (m.incidence != 1) os << " x" << m.incidence;
        os << " " << m.type.to_string() << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

std::string dot_filmstrip(const DegenerationGraph& start, const ReductionTrace& trace) {
    std::string out = dot_graph(start, "frame_0");
    for (std::size_t k = 0; k < trace.steps.size(); ++k) out += dot_graph(trace.steps[k].after, "frame_" + std::to_string(k + 1));
    return out;
}

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw InvariantError("SHA-256 computation failed");
    }
    std::ostringstream os;
    for (unsigned int k = 0; k < len; ++k) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[k]);
    return os.str();
}

std::string input_digest(const InputDocument& doc) { return sha256_hex(input_to_json(doc).dump()); }

}  // namespace wstab
