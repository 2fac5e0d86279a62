// mflip: flip-graph experiments on triangulated one-holed surfaces.

#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "mflip/canon.hpp"
#include "mflip/explorer.hpp"
#include "mflip/families.hpp"
#include "mflip/io.hpp"
#include "mflip/lemmas.hpp"
#include "mflip/transformer.hpp"

using namespace mflip;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kBoundFailed = 1, kBadArgs = 2, kInvalid = 3, kBudget = 4 };

struct ArgError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    int g = 1;
    int n = 1;
    int n_max = 3;
    std::uint64_t seed = 0;
    int threads = 1;
    std::size_t node_budget = 20'000'000;
    double time_budget = 600.0;
    std::string format = "json";
    std::string out;
    std::string family = "a-minus";
    std::string core;
    std::string from, to;
    int apex = 1;
    int pairs = 1;
    bool no_mirror = false;

    Budget budget() const { return {node_budget, time_budget}; }
    CanonOptions canon() const { return {!no_mirror}; }
    SurfaceClass cls() const {
        if (g < 0 || n < 1 || (g == 0 && n < 3)) throw ArgError("need g >= 0, n >= 1 (n >= 3 for g = 0)");
        return {g, n, 1};
    }
};

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
    } else {
        io::write_text(o.out, text);
    }
}

std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
        out << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out.str();
}

template <class T>
std::string str(const T& v) {
    if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
    else return std::to_string(v);
}

int run_construct(const Options& o) {
    static const std::map<std::string, FamilyKind> kinds{
        {"zigzag", FamilyKind::Zigzag}, {"fan", FamilyKind::Fan}, {"a-minus", FamilyKind::AMinus}, {"a-plus", FamilyKind::APlus}};
    auto it = kinds.find(o.family);
    if (it == kinds.end()) throw ArgError("unknown family '" + o.family + "'");
    int g = it->second == FamilyKind::Zigzag || it->second == FamilyKind::Fan ? 0 : o.g;
    FamilySpec spec{it->second, {g, o.n, 1}, o.apex, std::nullopt};
    if (!o.core.empty()) spec.core = io::read_triangulation(o.core);
    emit(o, io::dump(construct(spec).normalized()));
    return kOk;
}

int run_enumerate(const Options& o) {
    auto store = enumerate(seed_triangulation(o.cls()), o.budget(), o.threads, o.canon());
    if (o.format == "dot") {
        emit(o, io::to_dot(store));
    } else if (o.format == "csv") {
        emit(o, csv({"g", "n", "nodes", "edges", "partial"},
                    {{str(o.g), str(o.n), str(store.node_count()), str(store.edge_count()), str(store.partial())}}));
    } else {
        emit(o, io::to_json(store).dump() + "\n");
    }
    return store.partial() ? kBudget : kOk;
}

int run_diameter(const Options& o) {
    auto store = enumerate(seed_triangulation(o.cls()), o.budget(), o.threads, o.canon());
    json doc{{"g", o.g}, {"n", o.n}, {"nodes", store.node_count()}, {"edges", store.edge_count()},
             {"partial", store.partial()}};
    if (!store.partial()) {
        auto d = diameter(store, o.threads);
        doc["diameter"] = d.diameter;
        doc["from"] = to_hex(std::string(store.code(d.from)));
        doc["to"] = to_hex(std::string(store.code(d.to)));
        doc["bfs_runs"] = d.bfs_runs;
    }
    if (o.format == "csv") {
        emit(o, csv({"g", "n", "nodes", "edges", "diameter", "partial"},
                    {{str(o.g), str(o.n), str(store.node_count()), str(store.edge_count()),
                      store.partial() ? "" : str(doc["diameter"].get<int>()), str(store.partial())}}));
    } else {
        emit(o, doc.dump() + "\n");
    }
    return store.partial() ? kBudget : kOk;
}

int run_distance(const Options& o) {
    if (o.from.empty() || o.to.empty()) throw ArgError("distance needs --from and --to");
    auto u = io::read_triangulation(o.from), v = io::read_triangulation(o.to);
    if (u.surface() != v.surface()) throw ArgError("--from and --to are in different classes");
    json doc{{"g", u.genus()}, {"n", u.marks()}};
    int code = kOk;
    try {
        auto path = shortest_path(u, v, o.budget(), o.canon());
        doc["distance"] = path.length();
        doc["path"] = path.moves;
        doc["partial"] = false;
    } catch (const BudgetExceeded& e) {
        doc["partial"] = true;
        doc["error"] = e.what();
        code = kBudget;
    }
    emit(o, doc.dump() + "\n");
    return code;
}

}  // namespace

namespace {

std::vector<std::pair<Triangulation, Triangulation>> random_pairs(const SurfaceClass& cls, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::pair<Triangulation, Triangulation>> out;
    for (int k = 0; k < count; ++k) {
        auto u = random_walk(seed_triangulation(cls), 200, rng);
        out.emplace_back(u, random_walk(seed_triangulation(cls), 200, rng));
    }
    return out;
}

int run_transform(const Options& o) {
    std::vector<std::pair<Triangulation, Triangulation>> pairs;
    if (!o.from.empty() || !o.to.empty()) {
        if (o.from.empty() || o.to.empty()) throw ArgError("transform needs both --from and --to");
        pairs.emplace_back(io::read_triangulation(o.from), io::read_triangulation(o.to));
        if (pairs[0].first.surface() != pairs[0].second.surface()) throw ArgError("--from and --to are in different classes");
    } else {
        if (o.g < 1) throw ArgError("transform needs g >= 1");
        pairs = random_pairs(o.cls(), o.pairs, o.seed);
    }
    TransformOptions topts;
    topts.canon = o.canon();
    topts.core_budget = o.budget();
    std::vector<TransformReport> reports;
    try {
        reports = transform_batch(pairs, topts, o.threads);
    } catch (const BudgetExceeded& e) {
        emit(o, json{{"partial", true}, {"error", e.what()}}.dump() + "\n");
        return kBudget;
    }
    bool ok = true;
    for (const auto& r : reports) ok = ok && (r.bound_conditional || r.path.length() <= r.bound);
    if (o.format == "csv") {
        std::vector<std::vector<std::string>> rows;
        for (std::size_t i = 0; i < reports.size(); ++i) {
            const auto& r = reports[i];
            std::vector<std::string> row{str(i), str(r.path.start.genus()), str(r.path.start.marks()), str(r.a0),
                                         str(r.path.length()), str(r.bound)};
            for (const char* ph : {kPhaseFan, kPhaseLoopify, kPhaseHandsMove, kPhaseHandsBind, kPhaseCore}) {
                row.push_back(str(r.phase_lengths.at(ph)));
            }
            row.push_back(r.bound_conditional ? "conditional" : str(r.path.length() <= r.bound));
            rows.push_back(std::move(row));
        }
        emit(o, csv({"pair", "g", "n", "a0", "length", "bound", "fan", "loopify", "hands_move", "hands_bind", "core",
                     "within_bound"},
                    rows));
    } else if (reports.size() == 1) {
        emit(o, io::to_json(reports[0]).dump() + "\n");
    } else {
        json all = json::array();
        for (const auto& r : reports) all.push_back(io::to_json(r));
        emit(o, all.dump() + "\n");
    }
    return ok ? kOk : kBoundFailed;
}

int run_verify_bounds(const Options& o) {
    if (o.g != 1) throw ArgError("verify-bounds supports --g 1");
    std::vector<std::vector<std::string>> rows;
    json all = json::array();
    bool ok = true, partial = false;
    for (int n = 1; n <= o.n_max && !partial; ++n) {
        auto store = enumerate(seed_triangulation({1, n, 1}), o.budget(), o.threads, o.canon());
        int lower = 5 * n / 2 - 2, upper = (23 * n + 64) / 8;
        partial = store.partial();
        int d = partial ? -1 : diameter(store, o.threads).diameter;
        bool pass = !partial && lower <= d && d <= upper;
        ok = ok && (pass || partial);
        rows.push_back({str(n), str(store.node_count()), str(store.edge_count()), partial ? "" : str(d), str(lower),
                        str(upper), partial ? "partial" : pass ? "pass" : "fail"});
        json row{{"n", n}, {"nodes", store.node_count()}, {"edges", store.edge_count()}, {"lower", lower},
                 {"upper", upper}, {"partial", partial}, {"pass", pass}};
        if (!partial) row["diameter"] = d;
        all.push_back(row);
    }
    if (o.format == "json") {
        emit(o, all.dump() + "\n");
    } else {
        emit(o, csv({"n", "nodes", "edges", "diameter", "lower", "upper", "result"}, rows));
    }
    if (!ok) return kBoundFailed;
    return partial ? kBudget : kOk;
}

int run_replay_lemmas(const Options& o) {
    if (o.g != 1) throw ArgError("replay-lemmas supports --g 1");
    std::vector<ReplayTally> tallies;
    std::vector<int> sizes;
    CanonOptions off{false};
    for (int n = 2; n <= o.n_max; ++n) {
        auto big = enumerate(seed_triangulation({1, n, 1}), o.budget(), o.threads, off);
        auto small = enumerate(seed_triangulation({1, n - 1, 1}), o.budget(), o.threads, off);
        if (big.partial() || small.partial()) throw BudgetExceeded("store for n=" + std::to_string(n) + " over budget");
        auto add = [&](ReplayTally t) {
            tallies.push_back(std::move(t));
            sizes.push_back(n);
        };
        add(replay_deletion_contraction(big, small));
        add(replay_incidence_inequality(big, small, o.pairs, o.seed));
        add(replay_ear_condition(big));
        if (n >= 3) {
            auto core = standard_core(1);
            for (auto& t : replay_first_incident_flip(big, a_family(Sign::Minus, n, core), a_family(Sign::Plus, n, core))) {
                add(std::move(t));
            }
        }
    }
    // lower-bound recurrence on the A family
    ReplayTally rec{"recurrence"};
    std::vector<int> d(static_cast<std::size_t>(o.n_max + 1), 0);
    for (int n = 1; n <= o.n_max; ++n) {
        auto core = standard_core(1);
        d[static_cast<std::size_t>(n)] = distance(a_family(Sign::Minus, n, core), a_family(Sign::Plus, n, core), o.budget());
        int dn = d[static_cast<std::size_t>(n)];
        ++rec.instances;
        bool good = dn >= 5 * n / 2 - 2;
        if (n == 2) good = good && dn >= 3;
        if (n >= 3) {
            good = good && dn >= std::min(d[static_cast<std::size_t>(n - 1)] + 3, d[static_cast<std::size_t>(n - 2)] + 5);
        }
        rec.violations += !good;
    }
    tallies.push_back(rec);
    sizes.push_back(o.n_max);

    bool ok = true, complete = true;
    std::vector<std::vector<std::string>> rows;
    json all = json::array();
    for (std::size_t i = 0; i < tallies.size(); ++i) {
        const auto& t = tallies[i];
        ok = ok && t.violations == 0;
        complete = complete && t.complete;
        rows.push_back({t.name, str(sizes[i]), str(t.instances), str(t.geodesics), str(t.violations), str(t.complete),
                        t.passed() ? "pass" : "fail"});
        all.push_back({{"lemma", t.name}, {"n", sizes[i]}, {"instances", t.instances}, {"geodesics", t.geodesics},
                       {"violations", t.violations}, {"complete", t.complete}, {"pass", t.passed()}});
    }
    if (o.format == "json") {
        emit(o, all.dump() + "\n");
    } else {
        emit(o, csv({"check", "n", "instances", "geodesics", "violations", "complete", "result"}, rows));
    }
    if (!ok) return kBoundFailed;
    return complete ? kOk : kBudget;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Flip graphs of triangulated surfaces with one boundary curve"};
    app.require_subcommand(1);
    Options o;
    std::string format;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--g", o.g, "genus");
        sub->add_option("--n", o.n, "marked points on the boundary");
        sub->add_option("--n-max", o.n_max, "largest n");
        sub->add_option("--seed", o.seed, "seed for random pairs");
        sub->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--node-budget", o.node_budget, "node cap for enumeration and search");
        sub->add_option("--time-budget-s", o.time_budget, "time cap in seconds");
        sub->add_option("--format", format, "json, csv or dot")->check(CLI::IsMember({"json", "csv", "dot"}));
        sub->add_option("--out", o.out, "output file (stdout if absent)");
        sub->add_flag("--no-mirror", o.no_mirror, "do not identify reflections for n <= 2");
    };
    auto* construct_cmd = app.add_subcommand("construct", "emit a family member as a triangulation file");
    auto* enumerate_cmd = app.add_subcommand("enumerate", "enumerate the modular flip graph");
    auto* diameter_cmd = app.add_subcommand("diameter", "exact diameter of the modular flip graph");
    auto* distance_cmd = app.add_subcommand("distance", "flip distance between two triangulation files");
    auto* transform_cmd = app.add_subcommand("transform", "certified flip path with the phase accounting");
    auto* verify_cmd = app.add_subcommand("verify-bounds", "diameter against the lower and upper bounds");
    auto* replay_cmd = app.add_subcommand("replay-lemmas", "replay the deletion and geodesic lemmas");
    for (auto* sub : {construct_cmd, enumerate_cmd, diameter_cmd, distance_cmd, transform_cmd, verify_cmd, replay_cmd}) {
        common(sub);
    }
    construct_cmd->add_option("--family", o.family, "zigzag, fan, a-minus or a-plus");
    construct_cmd->add_option("--apex", o.apex, "fan apex");
    construct_cmd->add_option("--core", o.core, "core triangulation file (g >= 1)");
    for (auto* sub : {distance_cmd, transform_cmd}) {
        sub->add_option("--from", o.from, "source triangulation file");
        sub->add_option("--to", o.to, "target triangulation file");
    }
    transform_cmd->add_option("--pairs", o.pairs, "random pairs when no files are given");
    replay_cmd->add_option("--pairs", o.pairs, "random pairs for the incidence inequality");
    replay_cmd->callback([&] {
        if (replay_cmd->count("--pairs") == 0) o.pairs = 100;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kBadArgs;
    }
    try {
        auto* sub = app.get_subcommands().front();
        o.format = format.empty() ? (sub == verify_cmd || sub == replay_cmd ? "csv" : "json") : format;
        if (o.format == "dot" && sub != enumerate_cmd) throw ArgError("dot output is only for enumerate");
        if (sub == construct_cmd) return run_construct(o);
        if (sub == enumerate_cmd) return run_enumerate(o);
        if (sub == diameter_cmd) return run_diameter(o);
        if (sub == distance_cmd) return run_distance(o);
        if (sub == transform_cmd) return run_transform(o);
        if (sub == verify_cmd) return run_verify_bounds(o);
        return run_replay_lemmas(o);
    } catch (const ArgError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadArgs;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        std::cout << json{{"partial", true}, {"error", e.what()}}.dump() << "\n";
        return kBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    }
}
