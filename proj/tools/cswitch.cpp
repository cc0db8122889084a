// Command-line front end: every analysis reads a system file and prints a
// text or JSON report. Exit codes: 0 verdict computed, 1 indeterminate
// (UnknownNumerical, CapExceeded), 2 invalid input.

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "cswitch/cswitch.hpp"

namespace {

using namespace cswitch;
using report::Json;

constexpr int exit_ok = 0;
constexpr int exit_indeterminate = 1;
constexpr int exit_invalid = 2;

struct GlobalOptions {
    std::string field;  // empty: keep the file's field
    std::optional<double> tol;
    std::size_t max_depth = 8;
    std::size_t cap = 1'000'000;
    std::string format = "text";
    std::uint64_t seed = 0x5eed;
};

struct Outcome {
    Json result;
    int code = exit_ok;
};

Tolerances tolerances(const GlobalOptions& g) {
    Tolerances t;
    if (g.tol) t.membership = t.psd = *g.tol;
    return t;
}

IrreducibilityOptions irreducibility_options(const GlobalOptions& g) {
    IrreducibilityOptions o;
    o.tol = tolerances(g);
    o.seed = g.seed;
    return o;
}

AnySystem load(const std::string& path, const GlobalOptions& g) {
    AnySystem sys = io::load_system(path);
    if (g.field == "rational") return std::visit([](const auto& s) -> AnySystem { return s.template as<Rational>(); }, sys);
    if (g.field == "float") return std::visit([](const auto& s) -> AnySystem { return s.template as<double>(); }, sys);
    return sys;
}

Json parameters(const GlobalOptions& g) {
    Json p;
    p["tolerances"] = report::tolerances(tolerances(g));
    p["max_depth"] = g.max_depth;
    p["cap"] = g.cap;
    p["seed"] = g.seed;
    return p;
}

/// Flattens a report into "key: value" lines.
void print_text(const Json& j, const std::string& prefix, std::ostream& out) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) print_text(value, prefix.empty() ? key : prefix + "." + key, out);
        return;
    }
    if (j.is_array() && !j.empty() && (j.front().is_object())) {
        for (std::size_t i = 0; i < j.size(); ++i) print_text(j[i], prefix + "[" + std::to_string(i) + "]", out);
        return;
    }
    out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
}

void emit(const std::string& command, const Json& system, const GlobalOptions& g, const Json& body, double ms) {
    Json doc;
    doc["command"] = command;
    doc["system"] = system;
    doc["parameters"] = parameters(g);
    doc["result"] = body;
    doc["timing_ms"] = ms;
    if (g.format == "json") {
        std::cout << doc.dump(2) << "\n";
    } else {
        print_text(doc, "", std::cout);
    }
}

template <Field T>
linalg::Subspace<T> parse_basis(const std::string& text, std::size_t n, const Tolerances& tol) {
    io::Json rows;
    try {
        rows = io::Json::parse(text);
    } catch (const io::Json::parse_error& e) {
        throw Error(ErrorKind::invalid_argument, std::string("--basis: ") + e.what());
    }
    if (!rows.is_array()) throw Error(ErrorKind::invalid_argument, "--basis must be a JSON array of rows");
    linalg::Subspace<T> x(n, tol.membership);
    for (const auto& r : rows) {
        if (!r.is_array() || r.size() != n) throw Error(ErrorKind::dimension_mismatch, "--basis rows must have n entries");
        Vector<T> v;
        for (const auto& e : r) v.push_back(io::detail::parse_entry<T>(e, "--basis entry"));
        x.add(v);
    }
    return x;
}

struct Analyses {
    GlobalOptions g;
    std::string file;
    bool cross_check = false;
    bool lift_irreducibility = false;
    std::size_t node = 0;
    std::string basis;

    template <Field T>
    Outcome validate(const SwitchedSystem<T>& sys) const {
        return {report::to_json(validate_system(sys))};
    }

    template <Field T>
    Outcome deadbeat(const SwitchedSystem<T>& sys) const {
        const auto v = deadbeat::gurvits_constrained(sys, tolerances(g));
        Outcome o{report::to_json(v, sys)};
        if (cross_check) {
            try {
                const bool bf = deadbeat::deadbeat_bruteforce(sys, g.cap, tolerances(g));
                o.result["bruteforce"] = bf;
                o.result["bruteforce_agrees"] = bf == v.is_deadbeat;
            } catch (const CapExceeded& e) {
                o.result["bruteforce"] = nullptr;
                o.result["bruteforce_error"] = e.what();
            }
        }
        return o;
    }

    template <Field T>
    Outcome boundedness(const SwitchedSystem<T>& sys) const {
        boundedness::StructureOptions opt;
        opt.irreducibility = irreducibility_options(g);
        opt.max_depth = g.max_depth;
        opt.cap = g.cap;
        const auto r = boundedness::boundedness_structure(sys, opt);
        return {report::to_json(r), r.conditions == boundedness::Conditions::indeterminate ? exit_indeterminate : exit_ok};
    }

    template <Field T>
    Outcome irreducible_node(const SwitchedSystem<T>& sys) const {
        const auto v = boundedness::node_irreducible(sys, node, irreducibility_options(g));
        Json j = report::to_json(v);
        j["node"] = node;
        return {j, v.status == IrreducibilityStatus::unknown_numerical ? exit_indeterminate : exit_ok};
    }

    template <Field T>
    Outcome lift(const SwitchedSystem<T>& sys) const {
        const auto v = lift::lift_irreducible(sys, irreducibility_options(g));
        Json j = report::to_json(v);
        j["lifted_dim"] = sys.n() * sys.node_count();
        j["lifted_matrices"] = sys.graph().edge_count();
        return {j, v.status == IrreducibilityStatus::unknown_numerical ? exit_indeterminate : exit_ok};
    }

    template <Field T>
    Outcome cjsr_bounds(const SwitchedSystem<T>& sys) const {
        try {
            return {report::to_json(boundedness::cjsr_bounds(sys, g.max_depth, g.cap))};
        } catch (const CapExceeded& e) {
            Json j;
            j["error"] = {{"kind", "CapExceeded"}, {"message", e.what()}, {"required", e.required()}, {"cap", e.cap()}};
            return {j, exit_indeterminate};
        }
    }

    template <Field T>
    Outcome escape_length(const SwitchedSystem<T>& sys) const {
        const auto x = parse_basis<T>(basis, sys.n(), tolerances(g));
        const auto k = boundedness::escape_cycle_length(sys, node, x, tolerances(g));
        Json j;
        j["node"] = node;
        j["subspace_dim"] = x.dim();
        j["length"] = k ? Json(*k) : Json(nullptr);
        j["bound"] = boundedness::escape_bound(sys.n(), sys.node_count());
        return {j};
    }
};

int fail(const std::string& command, const GlobalOptions& g, const Error& e, int code) {
    if (g.format == "json") {
        Json doc;
        doc["command"] = command;
        doc["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
        std::cout << doc.dump(2) << "\n";
    }
    std::cerr << "error: " << e.what() << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Analyses for constrained switching systems"};
    app.require_subcommand(1);
    GlobalOptions g;
    Analyses a;

    auto add_globals = [&](CLI::App* sub) {
        sub->add_option("--field", g.field, "Scalar field for the analysis (default: the file's)")
            ->check(CLI::IsMember({"rational", "float"}));
        sub->add_option("--tol", g.tol, "Membership and PSD tolerance for the float field")
            ->check(CLI::PositiveNumber);
        sub->add_option("--max-depth", g.max_depth, "Path length for bounds enumeration")->check(CLI::PositiveNumber);
        sub->add_option("--cap", g.cap, "Largest path enumeration allowed")->check(CLI::PositiveNumber);
        sub->add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--seed", g.seed, "Seed for randomized irreducibility layers");
    };
    auto analysis = [&](const std::string& name, const std::string& help) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("file", a.file, "System file")->required();
        add_globals(sub);
        return sub;
    };

    CLI::App* validate = analysis("validate", "Check a system file");
    CLI::App* deadbeat = analysis("deadbeat", "Decide CJSR = 0");
    deadbeat->add_flag("--cross-check", a.cross_check, "Also run the brute-force check");
    CLI::App* boundedness = analysis("boundedness", "Linear connectivity and unavoidable irreducible nodes");
    CLI::App* irreducible_node = analysis("irreducible-node", "Irreducibility of one node");
    irreducible_node->add_option("--node", a.node, "Node index")->required();
    CLI::App* lift = analysis("lift", "Emit the Kronecker lift as an arbitrary-switching system");
    lift->add_flag("--irreducibility", a.lift_irreducibility, "Report irreducibility of the lifted set instead");
    CLI::App* cjsr = analysis("cjsr-bounds", "Lower and upper bounds on the CJSR");
    CLI::App* escape = analysis("escape-length", "Shortest cycle moving a subspace");
    escape->add_option("--node", a.node, "Node index")->required();
    escape->add_option("--basis", a.basis, "Subspace basis as JSON rows, e.g. [[1,0]]")->required();

    CLI::App* gen = app.add_subcommand("gen", "Generate a named system file");
    gen->require_subcommand(1);
    generators::CernyParams cerny_params;
    CLI::App* cerny = gen->add_subcommand("cerny", "Cerny tightness family");
    cerny->add_option("--n", cerny_params.n, "Matrix dimension")->required()->check(CLI::PositiveNumber);
    cerny->add_option("--m", cerny_params.m, "Node count (>= 2)")->required()->check(CLI::Range(2, 1 << 20));
    cerny->add_flag("--reset-edge", cerny_params.reset_edge, "Add the edge 0 -> 1 labeled 1");
    std::string a1 = "1/2", a2 = "1/3";
    CLI::App* vehicle = gen->add_subcommand("vehicle", "Vehicle left-inverter error system");
    vehicle->add_option("--a1", a1, "a(T1) as a rational");
    vehicle->add_option("--a2", a2, "a(T2) as a rational");
    std::string example_id;
    CLI::App* example = gen->add_subcommand("example", "Named example: ex1, ex2, ex-weakness");
    example->add_option("id", example_id, "Example id")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_invalid;
    }

    std::string command = "gen";
    try {
        if (gen->parsed()) {
            if (cerny->parsed()) std::cout << io::serialize_system(generators::gen_cerny(cerny_params));
            if (vehicle->parsed()) std::cout << io::serialize_system(generators::gen_vehicle(parse_rational(a1), parse_rational(a2)));
            if (example->parsed()) std::cout << io::serialize_system(generators::gen_example(example_id));
            return exit_ok;
        }
        a.g = g;
        CLI::App* sub = app.get_subcommands().front();
        command = sub->get_name();
        const AnySystem sys = load(a.file, g);

        if (sub == lift && !a.lift_irreducibility) {
            std::cout << std::visit([](const auto& s) { return io::serialize_system(lift::lift_as_system(s)); }, sys);
            return exit_ok;
        }

        const auto start = std::chrono::steady_clock::now();
        Outcome o = std::visit(
            [&](const auto& s) -> Outcome {
                if (sub == validate) return a.validate(s);
                if (sub == deadbeat) return a.deadbeat(s);
                if (sub == boundedness) return a.boundedness(s);
                if (sub == irreducible_node) return a.irreducible_node(s);
                if (sub == lift) return a.lift(s);
                if (sub == cjsr) return a.cjsr_bounds(s);
                return a.escape_length(s);
            },
            sys);
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        const Json summary = std::visit([](const auto& s) { return report::system_summary(s); }, sys);
        emit(command, summary, g, o.result, ms);
        return o.code;
    } catch (const CapExceeded& e) {
        return fail(command, g, e, exit_indeterminate);
    } catch (const Error& e) {
        return fail(command, g, e, exit_invalid);
    }
}
