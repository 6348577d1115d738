#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coising/catalog.hpp"
#include "coising/chimera.hpp"
#include "coising/co_trees.hpp"
#include "coising/decompose.hpp"
#include "coising/experiment.hpp"
#include "coising/graph_io.hpp"
#include "coising/io.hpp"
#include "coising/isomorphism.hpp"
#include "coising/spectrum.hpp"
#include "coising/version.hpp"

namespace {

using namespace coising;
namespace fs = std::filesystem;

struct GlobalOptions {
    std::uint64_t seed = 0;
    int threads = 0;
    std::string out_dir = ".";
    std::string format = "csv";
    std::string schedule_path;
    double beta = kDefaultBeta;
    bool beta_set = false;
    bool dry_run = false;
};

struct NamedGraph {
    std::string name;
    Graph graph;
    std::string source; // catalog literal, file path, or derivation note
};

/// Resolves "G13", "G13i" (seeded isomorphic variant), or a file path.
NamedGraph resolve_graph(const std::string& token, const GlobalOptions& opts,
                         std::map<std::string, std::string>& digests) {
    const auto names = catalog_names();
    if (std::find(names.begin(), names.end(), token) != names.end()) {
        const Graph& g = catalog_get(token);
        digests["catalog:" + token] = fnv1a64_hex(serialize_graph(g));
        return {token, g, "catalog"};
    }
    // BASEi / BASEi2 ...: seeded relabeling of a catalog graph.
    auto ipos = token.find_last_of('i');
    if (ipos != std::string::npos && ipos > 0) {
        const std::string base = token.substr(0, ipos);
        const std::string suffix = token.substr(ipos + 1);
        const bool numeric_suffix = std::all_of(suffix.begin(), suffix.end(),
                                                [](char c) { return std::isdigit((unsigned char)c); });
        if (numeric_suffix && std::find(names.begin(), names.end(), base) != names.end()) {
            const Graph& g = catalog_get(base);
            std::uint64_t variant = suffix.empty() ? 1 : (std::uint64_t)std::stoull(suffix);
            Rng rng(sub_seed(opts.seed, 0x150u + variant * 1315423911ull));
            auto perm = VertexPermutation::random(g.n(), rng);
            Graph variant_graph = relabel(g, perm);
            digests["derived:" + token] = fnv1a64_hex(serialize_graph(variant_graph));
            return {token, std::move(variant_graph), "relabeled " + base};
        }
    }
    const std::string text = read_file(token);
    digests["file:" + token] = fnv1a64_hex(text);
    Graph g = parse_graph(text);
    return {fs::path(token).stem().string(), std::move(g), token};
}

Schedule resolve_schedule(const GlobalOptions& opts, std::map<std::string, std::string>& digests) {
    std::string path = opts.schedule_path;
    if (path.empty()) {
        if (const char* env = std::getenv("COISING_SCHEDULE")) path = env;
    }
    Schedule sched = default_schedule();
    if (!path.empty()) {
        const std::string text = read_file(path);
        digests["schedule:" + path] = fnv1a64_hex(text);
        sched = load_schedule(text);
    }
    if (opts.beta_set) sched.set_beta(opts.beta);
    return sched;
}

std::vector<double> parse_grid(const std::string& spec) {
    if (spec.empty()) return SweepConfig::default_grid();
    std::vector<double> grid;
    if (spec.find(':') != std::string::npos) {
        double lo, hi;
        int count;
        if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &lo, &hi, &count) != 3 || count < 1)
            throw parse_error("grid: expected lo:hi:count");
        for (int i = 0; i < count; ++i)
            grid.push_back(count == 1 ? lo : lo + (hi - lo) * (double)i / (double)(count - 1));
        return grid;
    }
    std::istringstream in(spec);
    std::string cell;
    while (std::getline(in, cell, ',')) grid.push_back(std::stod(cell));
    return grid;
}

struct CommandContext {
    GlobalOptions opts;
    std::map<std::string, std::string> digests;
    std::vector<std::string> outputs;
    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

    std::string out_path(const std::string& filename) const {
        return (fs::path(opts.out_dir) / filename).string();
    }

    void emit(const std::string& filename, const std::string& content) {
        fs::create_directories(opts.out_dir);
        const std::string path = out_path(filename);
        write_file(path, content);
        outputs.push_back(path);
    }

    void finish(const std::string& command, const nlohmann::ordered_json& config) {
        RunManifest manifest;
        manifest.command = command;
        manifest.config = config;
        manifest.seed = opts.seed;
        manifest.input_digests = digests;
        manifest.outputs = outputs;
        manifest.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        fs::create_directories(opts.out_dir);
        write_file(out_path(command + ".manifest.json"), manifest.to_json().dump(2) + "\n");
    }
};

std::vector<std::string> split_names(const std::string& csv) {
    std::vector<std::string> names;
    std::istringstream in(csv);
    std::string cell;
    while (std::getline(in, cell, ',')) {
        if (!cell.empty()) names.push_back(cell);
    }
    return names;
}

int run_spectrum(CommandContext& ctx, const std::string& input, const std::string& compare) {
    auto named = resolve_graph(input, ctx.opts, ctx.digests);
    if (ctx.opts.dry_run) return 0;
    auto poly = classical_spectrum_auto(named.graph);
    auto doc = polynomial_to_json(poly);
    doc["graph"] = named.name;
    auto cuts = articulation_vertices(named.graph);
    doc["cut_vertices"] = cuts;
    ctx.emit(named.name + ".spectrum.json", doc.dump(2) + "\n");
    std::printf("%s: n=%d edges=%zu states=%s cut_vertices=%zu\n", named.name.c_str(), named.graph.n(),
                named.graph.edge_count(), poly.total().str().c_str(), cuts.size());
    int exit_code = 0;
    if (!compare.empty()) {
        auto other = resolve_graph(compare, ctx.opts, ctx.digests);
        const bool co = co_ising(named.graph, other.graph);
        std::printf("CO-ISING: %s\n", co ? "true" : "false");
    }
    ctx.finish("spectrum", {{"input", input}, {"compare", compare}});
    return exit_code;
}

int run_check(CommandContext& ctx, const std::string& g1, const std::string& g2) {
    auto a = resolve_graph(g1, ctx.opts, ctx.digests);
    auto b = resolve_graph(g2, ctx.opts, ctx.digests);
    if (ctx.opts.dry_run) return 0;
    nlohmann::ordered_json doc;
    doc["pair"] = {a.name, b.name};
    doc["co_ising"] = co_ising(a.graph, b.graph);
    auto witness = isomorphism_witness(a.graph, b.graph);
    doc["isomorphic"] = witness.has_value();
    if (witness) doc["witness"] = witness->mapping();
    ctx.emit("check." + a.name + "." + b.name + ".json", doc.dump(2) + "\n");
    std::printf("co_ising=%s isomorphic=%s\n", doc["co_ising"].get<bool>() ? "true" : "false",
                witness ? "true" : "false");
    ctx.finish("check", {{"g1", g1}, {"g2", g2}});
    return 0;
}

int run_compose(CommandContext& ctx, const std::string& g1, int root1, const std::string& g2, int root2,
                bool with_spectrum) {
    auto a = resolve_graph(g1, ctx.opts, ctx.digests);
    auto b = resolve_graph(g2, ctx.opts, ctx.digests);
    RootedGraph ra(a.graph, root1), rb(b.graph, root2);
    if (ctx.opts.dry_run) return 0;
    auto joined = vertex_identify(ra, rb);
    nlohmann::ordered_json doc;
    doc["graph"] = graph_to_json(joined.graph);
    doc["root"] = joined.root;
    if (with_spectrum) {
        doc["rooted_spectrum"] = polynomial_to_json(rooted_spectrum(joined));
        const auto direct = polynomial_to_json(compose_rooted(rooted_spectrum(ra), rooted_spectrum(rb)));
        doc["composed_spectrum"] = direct;
    }
    ctx.emit("compose." + a.name + "." + b.name + ".json", doc.dump(2) + "\n");
    std::printf("composed: n=%d edges=%zu root=%d\n", joined.graph.n(), joined.graph.edge_count(),
                joined.root);
    ctx.finish("compose", {{"g1", g1}, {"root1", root1}, {"g2", g2}, {"root2", root2}});
    return 0;
}

int run_search_trees(CommandContext& ctx, int max_n) {
    if (ctx.opts.dry_run) return 0;
    auto pairs = find_co_rooted_trees(max_n);
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& pair : pairs) {
        nlohmann::ordered_json entry;
        entry["first"] = {{"graph", graph_to_json(pair.first.graph)}, {"root", pair.first.root}};
        entry["second"] = {{"graph", graph_to_json(pair.second.graph)}, {"root", pair.second.root}};
        entry["rooted_spectrum"] = polynomial_to_json(pair.shared_spectrum);
        doc.push_back(std::move(entry));
    }
    ctx.emit("co_rooted_trees.json", doc.dump(2) + "\n");
    std::printf("co-rooted tree pairs up to n=%d: %zu\n", max_n, pairs.size());
    ctx.finish("search-trees", {{"max_n", max_n}});
    return 0;
}

SweepConfig build_sweep_config(CommandContext& ctx, const std::string& method, const std::string& grid,
                               const MimicConfig& mimic, const StochasticParams& stochastic) {
    SweepConfig cfg;
    cfg.s_grid = parse_grid(grid);
    cfg.schedule = resolve_schedule(ctx.opts, ctx.digests);
    cfg.beta = cfg.schedule.beta();
    cfg.seed = ctx.opts.seed;
    cfg.mimic = mimic;
    cfg.stochastic = stochastic;
    if (method == "dense")
        cfg.method = SweepMethod::dense;
    else if (method == "stochastic")
        cfg.method = SweepMethod::stochastic;
    else if (method == "sampled")
        cfg.method = SweepMethod::sampled;
    else
        throw parse_error("method must be dense, stochastic, or sampled");
    cfg.validate();
    return cfg;
}

void emit_curves(CommandContext& ctx, const std::string& stem, const std::vector<ObservableCurve>& curves) {
    if (ctx.opts.format == "json") {
        nlohmann::ordered_json doc = nlohmann::ordered_json::array();
        for (const auto& curve : curves) {
            nlohmann::ordered_json c;
            c["graph"] = curve.graph_name;
            c["observable"] = curve.observable_name;
            auto pts = nlohmann::ordered_json::array();
            for (const auto& p : curve.points) pts.push_back({p.s, p.mean, p.ci_low, p.ci_high});
            c["points"] = std::move(pts);
            doc.push_back(std::move(c));
        }
        ctx.emit(stem + ".curves.json", doc.dump(2) + "\n");
    } else {
        ctx.emit(stem + ".curves.csv", curves_to_csv(curves));
    }
}

int run_sweep(CommandContext& ctx, const std::string& input, const std::string& method,
              const std::string& grid, const MimicConfig& mimic, const StochasticParams& stochastic) {
    auto named = resolve_graph(input, ctx.opts, ctx.digests);
    auto cfg = build_sweep_config(ctx, method, grid, mimic, stochastic);
    if (ctx.opts.dry_run) return 0;
    auto curves = sweep(named.name, named.graph, cfg);
    emit_curves(ctx, named.name, curves);
    std::printf("sweep %s: %zu grid points, method=%s\n", named.name.c_str(), cfg.s_grid.size(),
                method.c_str());
    ctx.finish("sweep", {{"input", input}, {"method", method}, {"grid", grid}, {"beta", cfg.beta}});
    return 0;
}

int run_discriminate(CommandContext& ctx, const std::string& catalog_list,
                     const std::vector<std::string>& files, const std::string& method,
                     const std::string& grid, int embeddings, const MimicConfig& mimic,
                     const StochasticParams& stochastic) {
    std::vector<std::pair<std::string, Graph>> graphs;
    for (const auto& token : split_names(catalog_list)) {
        auto named = resolve_graph(token, ctx.opts, ctx.digests);
        graphs.emplace_back(named.name, named.graph);
    }
    for (const auto& file : files) {
        auto named = resolve_graph(file, ctx.opts, ctx.digests);
        graphs.emplace_back(named.name, named.graph);
    }
    auto cfg = build_sweep_config(ctx, method, grid, mimic, stochastic);
    if (ctx.opts.dry_run) return 0;
    auto result = discriminate(graphs, cfg, embeddings);
    std::vector<ObservableCurve> all_curves;
    for (const auto& curves : result.curves) all_curves.insert(all_curves.end(), curves.begin(), curves.end());
    emit_curves(ctx, "discriminate", all_curves);
    nlohmann::ordered_json verdicts = nlohmann::ordered_json::array();
    for (const auto& v : result.verdicts) {
        verdicts.push_back(verdict_to_json(v));
        std::printf("%s vs %s: %s (separation %.3g at s_p=%.3g, %s)\n", v.pair.first.c_str(),
                    v.pair.second.c_str(), v.distinguishable ? "DISTINGUISHABLE" : "not distinguished",
                    v.separation, v.best_sp, v.best_observable.c_str());
    }
    ctx.emit("verdicts.json", verdicts.dump(2) + "\n");
    ctx.finish("discriminate", {{"catalog", catalog_list},
                                {"files", files},
                                {"method", method},
                                {"grid", grid},
                                {"embeddings", embeddings}});
    return 0;
}

int run_mimic(CommandContext& ctx, const std::string& input, double s_p, MimicConfig mimic) {
    auto named = resolve_graph(input, ctx.opts, ctx.digests);
    mimic.seed = ctx.opts.seed;
    mimic.validate();
    SweepConfig scfg;
    scfg.schedule = resolve_schedule(ctx.opts, ctx.digests);
    scfg.beta = scfg.schedule.beta();
    if (ctx.opts.dry_run) return 0;
    auto rows = mimic_run(named.graph, s_p, mimic, scfg);
    std::string csv = "gauge,energy,magnetization,q2,omega2\n";
    for (std::size_t gauge = 0; gauge < rows.size(); ++gauge) {
        csv += std::to_string(gauge);
        for (int k = 0; k < 4; ++k) csv += "," + fmt_double(rows[gauge].value(k));
        csv += "\n";
    }
    ctx.emit(named.name + ".gauges.csv", csv);
    nlohmann::ordered_json summary;
    summary["graph"] = named.name;
    summary["s_p"] = s_p;
    // gauge-mean observables with the standard error of the mean
    ObservableSet pooled;
    const double r = (double)rows.size();
    double mean[4] = {0, 0, 0, 0}, ss[4] = {0, 0, 0, 0};
    for (const auto& row : rows)
        for (int k = 0; k < 4; ++k) mean[k] += row.value(k) / r;
    for (const auto& row : rows)
        for (int k = 0; k < 4; ++k) ss[k] += (row.value(k) - mean[k]) * (row.value(k) - mean[k]);
    pooled.energy = mean[0];
    pooled.magnetization = mean[1];
    pooled.q2 = mean[2];
    pooled.omega2 = mean[3];
    if (rows.size() > 1) {
        pooled.energy_err = std::sqrt(ss[0] / (r * (r - 1.0)));
        pooled.magnetization_err = std::sqrt(ss[1] / (r * (r - 1.0)));
        pooled.q2_err = std::sqrt(ss[2] / (r * (r - 1.0)));
        pooled.omega2_err = std::sqrt(ss[3] / (r * (r - 1.0)));
    }
    summary["observables"] = observables_to_json(pooled);
    for (int k = 0; k < 4; ++k) {
        std::vector<double> vals;
        vals.reserve(rows.size());
        for (const auto& row : rows) vals.push_back(row.value(k));
        auto boot = bootstrap_ci(vals, mimic.bootstrap_resamples, mimic.confidence,
                                 sub_seed(mimic.seed, 1000003ull + (std::uint64_t)k));
        summary[kObservableNames[k]] = {{"mean", boot.mean}, {"ci_low", boot.ci_low}, {"ci_high", boot.ci_high}};
        std::printf("%s: %.6g [%.6g, %.6g]\n", kObservableNames[k], boot.mean, boot.ci_low, boot.ci_high);
    }
    ctx.emit(named.name + ".mimic_summary.json", summary.dump(2) + "\n");
    ctx.finish("mimic", {{"input", input},
                         {"s_p", s_p},
                         {"gauges", mimic.num_gauges},
                         {"anneals", mimic.anneals_per_gauge},
                         {"resamples", mimic.bootstrap_resamples},
                         {"confidence", mimic.confidence}});
    return 0;
}

int run_embed(CommandContext& ctx, const std::string& input, int m, int k) {
    auto named = resolve_graph(input, ctx.opts, ctx.digests);
    if (ctx.opts.dry_run) return 0;
    auto topo = chimera_graph(m);
    auto found = find_native_embeddings(named.graph, topo, k, ctx.opts.seed);
    for (std::size_t i = 0; i < found.embeddings.size(); ++i) {
        if (!verify_embedding(named.graph, topo, found.embeddings[i]))
            throw std::runtime_error("internal error: emitted embedding failed verification");
        ctx.emit(named.name + ".embedding" + std::to_string(i) + ".json",
                 embedding_to_json(named.name, m, found.embeddings[i]).dump(2) + "\n");
    }
    std::printf("%s into C_%d: %zu embedding(s)%s\n", named.name.c_str(), m, found.embeddings.size(),
                found.budget_exhausted ? " [budget exhausted]" : "");
    ctx.finish("embed", {{"input", input}, {"m", m}, {"k", k}});
    return found.embeddings.empty() ? 1 : 0;
}

int run_catalog(CommandContext& ctx, const std::string& name) {
    if (!name.empty()) {
        auto named = resolve_graph(name, ctx.opts, ctx.digests);
        if (ctx.opts.dry_run) return 0;
        if (ctx.opts.format == "json")
            ctx.emit(named.name + ".graph.json", graph_to_json(named.graph).dump(2) + "\n");
        else
            ctx.emit(named.name + ".graph", serialize_graph(named.graph));
        std::printf("%s: n=%d edges=%zu\n", named.name.c_str(), named.graph.n(), named.graph.edge_count());
        ctx.finish("catalog", {{"name", name}});
        return 0;
    }
    if (ctx.opts.dry_run) return 0;
    for (const auto& entry : catalog_names()) {
        const Graph& g = catalog_get(entry);
        std::printf("%-14s n=%2d edges=%zu\n", entry.c_str(), g.n(), g.edge_count());
    }
    ctx.finish("catalog", {{"name", ""}});
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"co-Ising graph discrimination toolkit"};
    app.set_version_flag("--version", coising::kVersion);
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    GlobalOptions opts;
    app.add_option("--seed", opts.seed, "global RNG seed")->capture_default_str();
    app.add_option("--threads", opts.threads, "worker thread cap (0 = hardware)");
    app.add_option("--out", opts.out_dir, "output directory")->capture_default_str();
    app.add_option("--format", opts.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--schedule", opts.schedule_path, "schedule CSV (default: $COISING_SCHEDULE or linear)");
    auto* beta_opt = app.add_option("--beta", opts.beta, "inverse temperature");
    app.add_flag("--dry-run", opts.dry_run, "validate inputs without computing");

    std::string input, compare, g2;
    int root1 = 1, root2 = 1;
    bool with_spectrum = false;
    int max_n = 10;
    std::string method = "dense", grid, catalog_list;
    std::vector<std::string> files;
    int embeddings = 1, chimera_m = 16, embed_k = 5;
    double s_p = 0.5;
    coising::MimicConfig mimic;
    coising::StochasticParams stochastic;

    auto add_stochastic_flags = [&](CLI::App* cmd) {
        cmd->add_option("--probes", stochastic.num_probes, "stochastic probes per point");
        cmd->add_option("--krylov", stochastic.krylov_dim, "Krylov dimension");
    };
    auto add_mimic_flags = [&](CLI::App* cmd) {
        cmd->add_option("--gauges", mimic.num_gauges, "random gauges");
        cmd->add_option("--anneals", mimic.anneals_per_gauge, "anneals per gauge");
        cmd->add_option("--resamples", mimic.bootstrap_resamples, "bootstrap resamples");
        cmd->add_option("--confidence", mimic.confidence, "bootstrap confidence");
    };

    auto* spectrum_cmd = app.add_subcommand("spectrum", "Ising polynomial of a graph");
    spectrum_cmd->add_option("input", input, "graph file")->required(false);
    spectrum_cmd->add_option("--catalog", input, "catalog graph name");
    spectrum_cmd->add_option("--compare", compare, "second graph for a co-Ising check");

    auto* check_cmd = app.add_subcommand("check", "co-Ising + isomorphism verdict for two graphs");
    check_cmd->add_option("g1", input)->required();
    check_cmd->add_option("g2", g2)->required();

    auto* compose_cmd = app.add_subcommand("compose", "identify the roots of two rooted graphs");
    compose_cmd->add_option("--g1", input)->required();
    compose_cmd->add_option("--root1", root1)->required();
    compose_cmd->add_option("--g2", g2)->required();
    compose_cmd->add_option("--root2", root2)->required();
    compose_cmd->add_flag("--spectrum", with_spectrum, "also emit the rooted spectra");

    auto* trees_cmd = app.add_subcommand("search-trees", "co-rooted tree pairs up to max-n vertices");
    trees_cmd->add_option("--max-n", max_n)->check(CLI::Range(1, 12));

    auto* sweep_cmd = app.add_subcommand("sweep", "observable curves over the anneal grid");
    sweep_cmd->add_option("input", input, "graph file")->required(false);
    sweep_cmd->add_option("--catalog", input, "catalog graph name");
    sweep_cmd->add_option("--method", method)->check(CLI::IsMember({"dense", "stochastic", "sampled"}));
    sweep_cmd->add_option("--grid", grid, "comma list or lo:hi:count");
    add_stochastic_flags(sweep_cmd);
    add_mimic_flags(sweep_cmd);

    auto* disc_cmd = app.add_subcommand("discriminate", "pairwise distinguishability verdicts");
    disc_cmd->add_option("--catalog", catalog_list, "comma-separated catalog names");
    disc_cmd->add_option("files", files, "additional graph files");
    disc_cmd->add_option("--method", method)->check(CLI::IsMember({"dense", "stochastic", "sampled"}));
    disc_cmd->add_option("--grid", grid, "comma list or lo:hi:count");
    disc_cmd->add_option("--embeddings", embeddings, "embedding replicas per graph");
    add_stochastic_flags(disc_cmd);
    add_mimic_flags(disc_cmd);

    auto* mimic_cmd = app.add_subcommand("mimic", "gauge-sampled estimates at one pause point");
    mimic_cmd->add_option("input", input, "graph file")->required(false);
    mimic_cmd->add_option("--catalog", input, "catalog graph name");
    mimic_cmd->add_option("--sp", s_p, "pause point")->check(CLI::Range(0.0, 1.0));
    add_mimic_flags(mimic_cmd);

    auto* embed_cmd = app.add_subcommand("embed", "native Chimera embeddings");
    embed_cmd->add_option("input", input, "graph file")->required(false);
    embed_cmd->add_option("--catalog", input, "catalog graph name");
    embed_cmd->add_option("--m", chimera_m, "Chimera grid size")->check(CLI::Range(1, 64));
    embed_cmd->add_option("--k", embed_k, "embeddings to find");

    auto* catalog_cmd = app.add_subcommand("catalog", "list or dump the built-in graphs");
    catalog_cmd->add_option("--name", input, "graph to dump");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage errors exit 2; --help/--version exit 0
    }
    opts.beta_set = beta_opt->count() > 0;
    if (opts.threads > 0) coising::worker_threads() = opts.threads;

    CommandContext ctx;
    ctx.opts = opts;
    try {
        if (spectrum_cmd->parsed()) {
            if (input.empty()) throw coising::parse_error("spectrum: need a graph file or --catalog name");
            return run_spectrum(ctx, input, compare);
        }
        if (check_cmd->parsed()) return run_check(ctx, input, g2);
        if (compose_cmd->parsed()) return run_compose(ctx, input, root1, g2, root2, with_spectrum);
        if (trees_cmd->parsed()) return run_search_trees(ctx, max_n);
        if (sweep_cmd->parsed()) {
            if (input.empty()) throw coising::parse_error("sweep: need a graph file or --catalog name");
            return run_sweep(ctx, input, method, grid, mimic, stochastic);
        }
        if (disc_cmd->parsed()) return run_discriminate(ctx, catalog_list, files, method, grid, embeddings,
                                                        mimic, stochastic);
        if (mimic_cmd->parsed()) {
            if (input.empty()) throw coising::parse_error("mimic: need a graph file or --catalog name");
            return run_mimic(ctx, input, s_p, mimic);
        }
        if (embed_cmd->parsed()) {
            if (input.empty()) throw coising::parse_error("embed: need a graph file or --catalog name");
            return run_embed(ctx, input, chimera_m, embed_k);
        }
        if (catalog_cmd->parsed()) return run_catalog(ctx, input);
    } catch (const coising::parse_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const coising::lookup_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
