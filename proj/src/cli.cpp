#include "wstab/cli.hpp"

#include "wstab/degeneration.hpp"
#include "wstab/errors.hpp"
#include "wstab/io.hpp"
#include "wstab/reduction.hpp"
#include "wstab/walls.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

namespace wstab {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << text;
}

WeightVector parse_weights(const std::string& text, const WeightVector& like) {
    auto values = parse_rational_list(text);
    if (values.empty()) throw ParseError("empty weight list");
    WeightVector I = WeightVector::from_point(values, like.g, like.d);
    if (I.arity() != like.arity()) {
        throw PreconditionError("expected " + std::to_string(like.arity() + 1) + " weights (s and " +
                                std::to_string(like.arity()) + " fiber weights), got " + std::to_string(values.size()));
    }
    return I;
}

std::vector<std::pair<int, Rational>> parse_slice(const std::string& text, std::size_t arity) {
    std::vector<std::pair<int, Rational>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw ParseError("slice entry '" + item + "' is not of the form var=value");
        std::string name = item.substr(0, eq);
        int v = -1;
        if (name == "s") {
            v = 0;
        } else if (name.size() > 1 && name[0] == 'a' && name.find_first_not_of("0123456789", 1) == std::string::npos) {
            v = std::stoi(name.substr(1));
        }
        if (v < 0 || static_cast<std::size_t>(v) > arity) throw ParseError("unknown slice variable '" + name + "'");
        out.emplace_back(v, parse_rational(item.substr(eq + 1)));
    }
    return out;
}

struct Context {
    std::string command;
    std::string file;
    bool json = false;
    InputDocument doc;
    std::string digest;

    void load() {
        doc = parse_input(read_file(file));
        digest = input_digest(doc);
    }

    const DegenerationGraph& graph() const {
        if (!doc.graph) throw PreconditionError("this command needs a degeneration graph, not a Weierstrass configuration");
        return *doc.graph;
    }

    Json header() const { return Json{{"command", command}, {"input_digest", "sha256:" + digest}}; }

    void text_header(std::ostream& out) const {
        out << "command: " << command << "\n";
        out << "input: sha256:" << digest << "\n";
    }
};

Json report_json(const StabilityReport& r) {
    auto witnesses = [](const std::vector<Witness>& ws) {
        Json a = Json::array();
        for (const auto& w : ws) a.push_back({{"kind", w.kind}, {"id", w.id}, {"value", w.value.get_str()}});
        return a;
    };
    return Json{{"verdict", to_string(r.verdict)}, {"values", witnesses(r.values)}, {"failing", witnesses(r.failing)}};
}

void print_report(std::ostream& out, const StabilityReport& r) {
    out << "verdict: " << to_string(r.verdict) << "\n";
    for (const auto& w : r.values) {
        bool bad = std::any_of(r.failing.begin(), r.failing.end(),
                               [&](const Witness& f) { return f.kind == w.kind && f.id == w.id; });
        out << "  " << w.kind << "[" << w.id << "] = " << w.value.get_str() << (bad ? "  <-- fails" : "") << "\n";
    }
    for (const auto& w : r.failing) {
        if (w.kind == "weight_cap") out << "  weight_cap[a" << w.id << "] = " << w.value.get_str() << "  <-- exceeds cap\n";
    }
}

int cmd_validate(Context& ctx, std::ostream& out) {
    ctx.load();
    std::vector<Violation> violations;
    if (ctx.doc.graph) {
        violations = validate(*ctx.doc.graph);
    } else {
        const auto& W = *ctx.doc.weierstrass;
        violations = check_weights(ctx.doc.weights);
        if (W.N < 0) violations.push_back({"weierstrass", "N is negative"});
        if (W.g < 0) violations.push_back({"weierstrass", "genus is negative"});
        if (ctx.doc.weights.arity() != W.fiber_types.size()) {
            violations.push_back({"weights", "number of fiber weights does not match the marks"});
        } else {
            for (std::size_t j = 0; j < W.fiber_types.size(); ++j) {
                WeightCap cap = lc_weight_cap(W.fiber_types[j]);
                if (!cap.admits(ctx.doc.weights.a[j])) {
                    violations.push_back({"mark " + std::to_string(j + 1), "weight " + ctx.doc.weights.a[j].get_str() +
                                                                                 " exceeds the " + W.fiber_types[j].to_string() +
                                                                                 " cap " + cap.bound.get_str()});
                }
            }
        }
    }
    if (ctx.json) {
        Json v = Json::array();
        for (const auto& x : violations) v.push_back({{"where", x.where}, {"message", x.message}});
        Json j = ctx.header();
        j["valid"] = violations.empty();
        j["violations"] = v;
        out << j.dump(2) << "\n";
    } else {
        ctx.text_header(out);
        if (violations.empty()) {
            out << "valid\n";
        } else {
            out << violations.size() << " violation" << (violations.size() == 1 ? "" : "s") << ":\n";
            for (const auto& x : violations) out << "  " << x.where << ": " << x.message << "\n";
        }
    }
    return violations.empty() ? 0 : static_cast<int>(ExitCode::verdict);
}

int cmd_stability(Context& ctx, const std::string& weights, std::ostream& out) {
    ctx.load();
    WeightVector I = weights.empty() ? ctx.doc.weights : parse_weights(weights, ctx.doc.weights);
    StabilityReport r;
    if (ctx.doc.graph) {
        DegenerationGraph G = *ctx.doc.graph;
        G.weights = I;
        require_valid(G);
        r = is_stable(G, I);
    } else {
        r = weierstrass_stability(*ctx.doc.weierstrass, I);
    }
    if (ctx.json) {
        Json j = ctx.header();
        j["weights"] = weights_to_json(I);
        j["stability"] = report_json(r);
        out << j.dump(2) << "\n";
    } else {
        ctx.text_header(out);
        out << "weights: " << I.to_string() << "\n";
        print_report(out, r);
    }
    return r.verdict == Verdict::Stable ? 0 : static_cast<int>(ExitCode::verdict);
}

void print_rnd_summary(std::ostream& out, const DegenerationGraph& G) {
    for (const auto& c : G.components) {
        if (c.elliptic()) {
            out << "  C" << c.id << ": elliptic, genus " << c.genus << ", K.C = " << c.K_dot_C.get_str()
                << ", S.C = " << c.S_dot_C.get_str() << ", L^2 = " << L_squared(G, c.id).to_string() << "\n";
        } else {
            out << "  P" << c.id << ": pseudoelliptic, L^2 = " << L_squared(G, c.id).to_string();
            if (c.contraction_degree) out << ", contraction degree = " << c.contraction_degree->to_string();
            out << "\n";
        }
    }
    for (const auto& e : G.edges) out << "  edge " << e.from << " -- " << e.to << " (" << to_string(e.kind) << ")\n";
}

int cmd_reduce(Context& ctx, const std::string& from, const std::string& to, const std::string& trace_path,
               const std::string& dot_path, std::ostream& out) {
    ctx.load();
    const DegenerationGraph& G = ctx.graph();
    WeightVector target = to.empty() ? ctx.doc.weights : parse_weights(to, ctx.doc.weights);
    ReductionResult result;
    DegenerationGraph start = G;
    if (from.empty()) {
        start.weights = target;
        result = stable_reduce(G, target);
    } else {
        WeightVector I2 = parse_weights(from, ctx.doc.weights);
        start.weights = I2;
        result = reduce_weights(G, I2, target);
    }
    Json trace = trace_to_json(result.trace, ctx.header());
    if (!trace_path.empty()) write_file(trace_path, trace.dump(2) + "\n");
    if (!dot_path.empty()) write_file(dot_path, dot_filmstrip(canonicalize(start), result.trace));
    if (ctx.json) {
        Json j = ctx.header();
        j["trace"] = trace;
        j["final"] = rnd_to_json(refine(result.graph));
        out << j.dump(2) << "\n";
    } else {
        ctx.text_header(out);
        out << "from: " << result.trace.start.to_string() << "\n";
        out << "to: " << result.trace.target.to_string() << "\n";
        out << "moves: " << result.trace.steps.size() << "\n";
        for (std::size_t k = 0; k < result.trace.steps.size(); ++k) {
            const Move& m = result.trace.steps[k].move;
            out << "  " << k + 1 << ". " << describe(m) << "  [weights " << firing_weights_string(m) << "]\n";
        }
        for (const auto& w : result.trace.warnings) out << "warning: " << w << "\n";
        out << "final:\n";
        print_rnd_summary(out, result.graph);
    }
    return 0;
}

std::string source_text(const WallSource& s) {
    return "state " + std::to_string(s.state) + " " + to_string(s.kind) + "[" + std::to_string(s.component) + "]";
}

int cmd_walls(Context& ctx, const std::string& slice, std::ostream& out) {
    ctx.load();
    ChamberAtlas atlas = explore(ctx.graph());
    auto fixed = slice.empty() ? std::vector<std::pair<int, Rational>>{} : parse_slice(slice, atlas.arity);
    Json walls = Json::array();
    std::vector<std::string> lines;
    for (const auto& w : atlas.walls) {
        WeightPolynomial p = w.poly;
        for (const auto& [v, x] : fixed) p = p.substitute(v, x);
        std::optional<WeightPolynomial> shown = fixed.empty() ? std::optional<WeightPolynomial>(p) : normalize_wall(p);
        if (!shown) continue;
        Json prov = Json::array();
        std::string prov_text;
        for (const auto& s : w.provenance) {
            prov.push_back({{"state", s.state}, {"kind", to_string(s.kind)}, {"component", s.component}});
            prov_text += (prov_text.empty() ? "" : "; ") + source_text(s);
        }
        walls.push_back({{"polynomial", w.poly.to_string()},
                         {"on_slice", shown->to_string()},
                         {"realized", w.realized},
                         {"provenance", prov}});
        lines.push_back(shown->to_string() + " = 0  (" + (w.realized ? "realized" : "unrealized") + "; " + prov_text + ")");
    }
    if (ctx.json) {
        Json j = ctx.header();
        Json states = Json::array();
        for (const auto& s : atlas.states) {
            states.push_back({{"id", s.id}, {"successors", s.successors}, {"rnd", Json::parse(s.key)}});
        }
        j["atlas"] = {{"walls", walls}, {"states", states}};
        out << j.dump(2) << "\n";
    } else {
        ctx.text_header(out);
        if (!slice.empty()) out << "slice: " << slice << "\n";
        out << "states: " << atlas.states.size() << "\n";
        out << "walls: " << lines.size() << "\n";
        for (const auto& l : lines) out << "  " << l << "\n";
    }
    return 0;
}

int cmd_threshold(Context& ctx, const std::string& weights, std::ostream& out) {
    ctx.load();
    WeightVector I = weights.empty() ? ctx.doc.weights : parse_weights(weights, ctx.doc.weights);
    auto violations = check_weights(I);
    if (!violations.empty()) throw PreconditionError("weights are not admissible: " + violations.front().message);
    ChamberAtlas atlas = explore(ctx.graph());
    if (on_wall(atlas, I)) {
        throw PreconditionError("weights " + I.to_string() + " lie on a wall; the threshold needs an interior point");
    }
    auto w = q_cartier_threshold(I, atlas);
    std::string value = w ? w->to_string() : "infinity";
    if (ctx.json) {
        Json j = ctx.header();
        j["weights"] = weights_to_json(I);
        j["threshold"] = value;
        if (w) j["threshold_approx"] = w->approx();
        out << j.dump(2) << "\n";
    } else {
        ctx.text_header(out);
        out << "weights: " << I.to_string() << "\n";
        out << "threshold: " << value << "\n";
    }
    return 0;
}

int cmd_no_pseudo(Context& ctx, const std::string& fiber_weights, std::ostream& out) {
    ctx.load();
    std::vector<Rational> a = fiber_weights.empty() ? ctx.doc.weights.a : parse_rational_list(fiber_weights);
    Rational s = min_section_weight_no_pseudoelliptic(ctx.graph(), a);
    if (ctx.json) {
        Json j = ctx.header();
        Json aj = Json::array();
        for (const auto& x : a) aj.push_back(x.get_str());
        j["fiber_weights"] = aj;
        j["s_tilde"] = s.get_str();
        out << j.dump(2) << "\n";
    } else {
        ctx.text_header(out);
        out << "s_tilde: " << s.get_str() << "\n";
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact stability, stable reduction and walls for degenerations of weighted elliptic surfaces", "wstab"};
    app.require_subcommand(1);
    Context ctx;
    app.add_flag("--json", ctx.json, "Emit a JSON report");

    std::string weights, from, to, trace_path, dot_path, slice, fiber_weights;

    auto* validate_cmd = app.add_subcommand("validate", "Check a degeneration graph against its invariants");
    validate_cmd->add_option("file", ctx.file, "Input JSON")->required();

    auto* stability_cmd = app.add_subcommand("stability", "Stability verdict at given weights");
    stability_cmd->add_option("file", ctx.file, "Input JSON")->required();
    stability_cmd->add_option("--weights", weights, "s,a1,...,an (defaults to the file's weights)");

    auto* reduce_cmd = app.add_subcommand("reduce", "Stable reduction, or a weight-lowering walk with --from");
    reduce_cmd->add_option("file", ctx.file, "Input JSON")->required();
    reduce_cmd->add_option("--from", from, "Starting weights s,a1,... where the graph is stable");
    reduce_cmd->add_option("--to", to, "Target weights (defaults to the file's weights)");
    reduce_cmd->add_option("--trace", trace_path, "Write the trace as JSON");
    reduce_cmd->add_option("--dot", dot_path, "Write a DOT filmstrip, one graph per frame");

    auto* walls_cmd = app.add_subcommand("walls", "Walls of the reachable states");
    walls_cmd->add_option("file", ctx.file, "Input JSON")->required();
    walls_cmd->add_option("--slice", slice, "Fix coordinates, e.g. s=1/2 or a2=0,a3=1/4");

    auto* threshold_cmd = app.add_subcommand("threshold", "Q-Cartier threshold w(I)");
    threshold_cmd->add_option("file", ctx.file, "Input JSON")->required();
    threshold_cmd->add_option("--weights", weights, "s,a1,...,an (defaults to the file's weights)");

    auto* no_pseudo_cmd = app.add_subcommand("no-pseudo", "Section weight below which no pseudoelliptic survives");
    no_pseudo_cmd->add_option("file", ctx.file, "Input JSON")->required();
    no_pseudo_cmd->add_option("--fiber-weights", fiber_weights, "a1,...,an (defaults to the file's weights)");

    std::vector<std::string> argv_store;
    argv_store.push_back("wstab");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : static_cast<int>(ExitCode::parse);
    }

    ctx.command = "wstab";
    for (const auto& a : args) ctx.command += " " + a;

    try {
        if (*validate_cmd) return cmd_validate(ctx, out);
        if (*stability_cmd) return cmd_stability(ctx, weights, out);
        if (*reduce_cmd) return cmd_reduce(ctx, from, to, trace_path, dot_path, out);
        if (*walls_cmd) return cmd_walls(ctx, slice, out);
        if (*threshold_cmd) return cmd_threshold(ctx, weights, out);
        if (*no_pseudo_cmd) return cmd_no_pseudo(ctx, fiber_weights, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::internal);
    }
    return static_cast<int>(ExitCode::parse);
}

}  // namespace wstab
