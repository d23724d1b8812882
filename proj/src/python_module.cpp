#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wstab/cli.hpp"
#include "wstab/errors.hpp"
#include "wstab/io.hpp"
#include "wstab/reduction.hpp"
#include "wstab/walls.hpp"

#include <sstream>

namespace py = pybind11;
using namespace wstab;

namespace {

// Everything crosses the boundary as JSON text or rational strings; the
// Python package decodes it.

InputDocument load(const std::string& text) { return parse_input(text); }

DegenerationGraph graph_of(const InputDocument& doc) {
    if (doc.graph) return *doc.graph;
    return weierstrass_graph(*doc.weierstrass, doc.weights);
}

WeightVector weights_or(const std::optional<std::string>& text, const WeightVector& fallback) {
    if (!text) return fallback;
    auto p = parse_rational_list(*text);
    if (p.size() != fallback.a.size() + 1) {
        throw PreconditionError("expected " + std::to_string(fallback.a.size() + 1) + " weights, got " +
                                std::to_string(p.size()));
    }
    return WeightVector::from_point(p, fallback.g, fallback.d);
}

Json witnesses(const std::vector<Witness>& ws) {
    Json a = Json::array();
    for (const auto& w : ws) a.push_back({{"kind", w.kind}, {"id", w.id}, {"value", w.value.get_str()}});
    return a;
}

std::string py_validate(const std::string& text) {
    auto doc = load(text);
    Json out = Json::array();
    if (doc.graph) {
        for (const auto& v : validate(*doc.graph)) out.push_back({{"where", v.where}, {"message", v.message}});
    }
    return out.dump();
}

std::string py_stability(const std::string& text, const std::optional<std::string>& weights) {
    auto doc = load(text);
    WeightVector I = weights_or(weights, doc.weights);
    StabilityReport r;
    if (doc.graph) {
        DegenerationGraph G = *doc.graph;
        G.weights = I;
        require_valid(G);
        r = is_stable(G, I);
    } else {
        r = weierstrass_stability(*doc.weierstrass, I);
    }
    Json j{{"verdict", to_string(r.verdict)}, {"values", witnesses(r.values)}, {"failing", witnesses(r.failing)}};
    return j.dump();
}

std::string py_reduce(const std::string& text, const std::optional<std::string>& from,
                      const std::optional<std::string>& to) {
    auto doc = load(text);
    DegenerationGraph G = graph_of(doc);
    WeightVector target = weights_or(to, doc.weights);
    ReductionResult res;
    if (from) {
        WeightVector start = weights_or(from, doc.weights);
        G.weights = start;
        res = reduce_weights(G, start, target);
    } else {
        res = stable_reduce(G, target);
    }
    Json j = trace_to_json(res.trace, Json::object());
    j["final"] = graph_to_json(res.graph);
    return j.dump();
}

std::string py_walls(const std::string& text) {
    auto doc = load(text);
    auto atlas = explore(graph_of(doc));
    Json walls = Json::array();
    for (const auto& w : atlas.walls) {
        Json src = Json::array();
        for (const auto& s : w.provenance) {
            src.push_back({{"state", s.state}, {"kind", to_string(s.kind)}, {"component", s.component}});
        }
        walls.push_back({{"equation", w.poly.to_string()}, {"realized", w.realized}, {"provenance", src}});
    }
    return Json{{"states", atlas.states.size()}, {"walls", walls}}.dump();
}

std::optional<std::string> py_threshold(const std::string& text, const std::optional<std::string>& weights) {
    auto doc = load(text);
    auto atlas = explore(graph_of(doc));
    auto t = q_cartier_threshold(weights_or(weights, doc.weights), atlas);
    if (!t) return std::nullopt;
    return t->to_string();
}

std::string py_no_pseudo(const std::string& text, const std::optional<std::string>& fiber_weights) {
    auto doc = load(text);
    auto a = fiber_weights ? parse_rational_list(*fiber_weights) : doc.weights.a;
    return min_section_weight_no_pseudoelliptic(graph_of(doc), a).get_str();
}

std::string py_eval(const std::string& poly, std::size_t arity, const std::string& point) {
    auto p = parse_polynomial(poly, arity);
    return p.eval(parse_rational_list(point)).get_str();
}

py::tuple py_run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact weighted stable reduction of elliptic surface degenerations";

    auto base = py::register_exception<Error>(m, "WstabError");
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
    py::register_exception<InvariantError>(m, "InvariantError", base.ptr());

    m.def("validate", &py_validate, py::arg("text"));
    m.def("stability", &py_stability, py::arg("text"), py::arg("weights") = py::none());
    m.def("reduce", &py_reduce, py::arg("text"), py::arg("from_weights") = py::none(), py::arg("to_weights") = py::none());
    m.def("walls", &py_walls, py::arg("text"));
    m.def("threshold", &py_threshold, py::arg("text"), py::arg("weights") = py::none());
    m.def("no_pseudo", &py_no_pseudo, py::arg("text"), py::arg("fiber_weights") = py::none());
    m.def("eval_polynomial", &py_eval, py::arg("poly"), py::arg("arity"), py::arg("point"));
    m.def("run_cli", &py_run_cli, py::arg("args"));
}
