#include <tiling/cli.hpp>
#include <tiling/constructions.hpp>
#include <tiling/errors.hpp>
#include <tiling/theorem_lab.hpp>
#include <tiling/tiling.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

using json = nlohmann::ordered_json;

namespace tiling::cli {

namespace {
    struct Config {
        std::string format = "text";
        std::string pattern;
        std::optional<int> r;
        std::string graph;
        std::vector<std::string> graphs;
        std::string corpus;
        std::string out;
        std::string dump_lp;
        std::string x = "0";
        std::string p = "1/2";
        int n = 0;
        int s = 1;
        int random_count = 0;
        std::uint64_t seed = 0;
        bool columns = false;
        bool integral = false;
        bool full = false;
        bool audit = false;
        std::optional<int> target;
        std::optional<long> max_columns;
        std::optional<long> max_nodes;
        std::optional<long> time_budget_secs;
    };

    Limits limits_of(const Config & c)
    {
        Limits l;
        if (c.max_columns)
            l.max_columns = static_cast<std::size_t>(*c.max_columns);
        if (c.max_nodes)
            l.max_nodes = static_cast<std::uint64_t>(*c.max_nodes);
        if (c.time_budget_secs)
            l.deadline = std::chrono::steady_clock::now() + std::chrono::seconds(*c.time_budget_secs);
        return l;
    }

    Pattern load_pattern(const Config & c)
    {
        if (c.pattern.empty())
            throw InputError("--pattern is required");
        if (std::filesystem::is_regular_file(c.pattern)) {
            auto g = read_graph_file(c.pattern).graph;
            if (c.r) {
                auto p = optimal_r_colouring(g, *c.r, c.pattern);
                if (! p)
                    throw InputError("pattern file has no proper " + std::to_string(*c.r) + "-colouring");
                return *p;
            }
            return pattern_from_graph(g, c.pattern);
        }
        return standard_pattern(c.pattern, c.r);
    }

    LabelledGraph load_graph(const std::string & path)
    {
        if (path.empty())
            throw InputError("--graph is required");
        return read_graph_file(path);
    }

    json column_json(const MultiplicityVector & mv)
    {
        json col = json::object();
        for (auto [v, m] : mv)
            col[std::to_string(v)] = m;
        return col;
    }

    std::string column_text(const MultiplicityVector & mv)
    {
        std::ostringstream s;
        s << "{";
        for (std::size_t i = 0; i < mv.size(); ++i)
            s << (i ? " " : "") << mv[i].first << ":" << mv[i].second;
        s << "}";
        return s.str();
    }

    void write_file(const std::string & path, const std::string & content)
    {
        std::ofstream f(path);
        if (! f)
            throw InputError("cannot write " + path);
        f << content;
    }

    int cmd_homs(const Config & c, std::ostream & out)
    {
        auto h = load_pattern(c);
        auto g = load_graph(c.graph).graph;
        auto columns = enumerate_columns(h, g, limits_of(c).max_columns);
        std::uint64_t total = 0;
        for (auto & col : columns)
            total += col.class_size;

        if (c.format == "json") {
            json j{{"homomorphisms", total}};
            if (c.columns) {
                json cols = json::array();
                for (auto & col : columns)
                    cols.push_back({{"column", column_json(col.multiplicities)}, {"class_size", col.class_size}});
                j["columns"] = cols;
            }
            out << j.dump() << "\n";
        }
        else if (c.format == "csv") {
            out << "homomorphisms,columns\n" << total << "," << columns.size() << "\n";
        }
        else {
            out << total << "\n";
            if (c.columns)
                for (auto & col : columns)
                    out << column_text(col.multiplicities) << " x" << col.class_size << "\n";
        }
        return success;
    }

    int cmd_tile(const Config & c, std::ostream & out)
    {
        auto h = load_pattern(c);
        auto g = load_graph(c.graph).graph;
        auto limits = limits_of(c);

        if (c.integral) {
            auto r = integral_tiling_number(g, h, c.target, limits);
            if (c.format == "json") {
                json copies = json::array();
                for (auto & cp : r.tiling.copies)
                    copies.push_back({{"vertices", cp.vertices}, {"embedding", cp.embedding}});
                out << json{{"value", r.value}, {"proven_optimal", r.proven_optimal}, {"nodes", r.nodes}, {"copies", copies}}.dump()
                    << "\n";
            }
            else if (c.format == "csv") {
                out << "value,proven_optimal,nodes\n" << r.value << "," << (r.proven_optimal ? "yes" : "no") << "," << r.nodes << "\n";
            }
            else {
                out << r.value << (r.proven_optimal ? "" : " (target reached, search stopped)") << "\n";
                for (auto & cp : r.tiling.copies) {
                    out << "copy";
                    for (Vertex v : cp.vertices)
                        out << " " << v;
                    out << "\n";
                }
            }
            return success;
        }

        if (! c.dump_lp.empty())
            write_file(c.dump_lp, dump_lp(build_tiling_lp(g, h, limits).problem));
        auto r = fractional_tiling_number(g, h, limits);
        auto check = check_tiling(g, h, r.tiling);
        if (c.format == "json")
            out << json{{"value", r.value.str()}, {"certificate_ok", check.ok}, {"certificate", json::parse(tiling_json(r.tiling))}}.dump()
                << "\n";
        else if (c.format == "csv")
            out << "value,certificate_ok\n" << r.value << "," << (check.ok ? "yes" : "no") << "\n";
        else
            out << r.value << "\n" << tiling_json(r.tiling) << "\n";
        if (! check.ok) {
            out << "certificate check failed: " << check.violation << "\n";
            return check_failure;
        }
        return success;
    }

    int cmd_cover(const Config & c, std::ostream & out)
    {
        auto h = load_pattern(c);
        auto g = load_graph(c.graph).graph;
        auto r = fractional_cover_number(g, h, c.full ? CoverMethod::full : CoverMethod::lazy, limits_of(c));
        auto check = check_cover(g, h, r.cover);
        if (c.format == "json")
            out << json{{"value", r.value.str()}, {"rows_used", r.rows_used}, {"certificate_ok", check.ok},
                           {"certificate", json::parse(cover_json(r.cover))}}
                       .dump()
                << "\n";
        else if (c.format == "csv")
            out << "value,rows_used,certificate_ok\n" << r.value << "," << r.rows_used << "," << (check.ok ? "yes" : "no") << "\n";
        else
            out << r.value << "\n" << cover_json(r.cover) << "\n";
        if (! check.ok) {
            out << "certificate check failed: " << check.violation << "\n";
            return check_failure;
        }
        return success;
    }

    int cmd_duality(const Config & c, std::ostream & out)
    {
        auto h = load_pattern(c);
        auto g = load_graph(c.graph).graph;
        auto r = verify_duality(g, h, limits_of(c));
        if (c.format == "json") {
            out << json{{"tiling_number", r.tiling_number.str()}, {"cover_number", r.cover_number.str()}, {"equal", r.equal},
                           {"tiling_certificate_ok", r.tiling_check.ok}, {"cover_certificate_ok", r.cover_check.ok},
                           {"tiling", json::parse(tiling_json(r.tiling))}, {"cover", json::parse(cover_json(r.cover))}}
                       .dump()
                << "\n";
        }
        else if (c.format == "csv") {
            out << "tiling_number,cover_number,equal,certificates_ok\n"
                << r.tiling_number << "," << r.cover_number << "," << (r.equal ? "yes" : "no") << ","
                << (r.tiling_check.ok && r.cover_check.ok ? "yes" : "no") << "\n";
        }
        else {
            out << r.tiling_number << (r.equal ? " = " : " != ") << r.cover_number << "\n";
            if (! r.tiling_check.ok)
                out << "tiling certificate: " << r.tiling_check.violation << "\n";
            if (! r.cover_check.ok)
                out << "cover certificate: " << r.cover_check.violation << "\n";
        }
        return r.ok() ? success : check_failure;
    }

    std::string sizes_text(std::span<const int> sizes)
    {
        std::string s = "(";
        for (std::size_t i = 0; i < sizes.size(); ++i)
            s += (i ? "," : "") + std::to_string(sizes[i]);
        return s + ")";
    }

    int cmd_extremal(const Config & c, std::ostream & out)
    {
        auto h = load_pattern(c);
        ExtremalSpec spec{h.r(), h.order(), h.smallest_class(), Rational::parse(c.x), c.n};
        auto lg = build_extremal_graph(spec);
        auto sz = extremal_sizes(spec);
        std::vector<int> sizes{sz.v1, sz.v2, sz.v3, sz.s};
        if (! c.out.empty())
            write_file(c.out, c.format == "text" && c.out.ends_with(".txt") ? write_graph_text(lg.graph) : write_graph_json(lg));

        std::optional<ExtremalAudit> audit;
        if (c.audit)
            audit = audit_extremal_tiling(spec, h, limits_of(c));

        if (c.format == "json") {
            json j{{"r", spec.r}, {"h_size", spec.h_size}, {"ell_r", spec.ell_r}, {"x", spec.x.str()}, {"n", spec.n}, {"parts", sizes}};
            if (c.out.empty())
                j["graph"] = json::parse(write_graph_json(lg));
            if (audit)
                j["audit"] = {{"copies_checked", audit->copies_checked}, {"copies_meet_v1", audit->copies_meet_v1},
                    {"tiling_number", audit->tiling_number}, {"xn", audit->xn.str()}, {"tiling_equals_xn", audit->tiling_equals_xn},
                    {"delta", audit->delta.str()}, {"high_degree_count", audit->high_degree_count},
                    {"degree_count_ok", audit->degree_count_ok}, {"ok", audit->ok()}};
            out << j.dump() << "\n";
        }
        else if (c.format == "csv") {
            out << "r,h_size,ell_r,x,n,v1,v2,v3,s";
            if (audit)
                out << ",copies_meet_v1,tiling_number,xn,high_degree_count,ok";
            out << "\n" << spec.r << "," << spec.h_size << "," << spec.ell_r << "," << spec.x << "," << spec.n;
            for (int s : sizes)
                out << "," << s;
            if (audit)
                out << "," << (audit->copies_meet_v1 ? "yes" : "no") << "," << audit->tiling_number << "," << audit->xn << ","
                    << audit->high_degree_count << "," << (audit->ok() ? "yes" : "no");
            out << "\n";
        }
        else {
            out << "parts " << sizes_text(sizes) << "\n";
            if (audit) {
                out << "copies checked " << audit->copies_checked << ", all meet V1 in >= " << spec.ell_r << ": "
                    << (audit->copies_meet_v1 ? "yes" : "no") << "\n";
                out << "tiling " << audit->tiling_number << (audit->tiling_equals_xn ? " = " : " != ") << "xn = " << audit->xn << "\n";
                out << "vertices of degree >= " << audit->delta << ": " << audit->high_degree_count
                    << (audit->degree_count_ok ? " (as constructed)" : " (MISMATCH)") << "\n";
            }
        }
        return audit && ! audit->ok() ? check_failure : success;
    }

    int cmd_k333(const Config & c, std::ostream & out)
    {
        auto x = Rational::parse(c.x);
        auto lg = build_k333_counterexample(x, c.n);
        auto sizes = k333_sizes(x, c.n);
        if (! c.out.empty())
            write_file(c.out, write_graph_json(lg));

        std::optional<K333Audit> audit;
        if (c.audit)
            audit = audit_k333_counterexample(x, c.n, limits_of(c));

        if (c.format == "json") {
            json j{{"x", x.str()}, {"n", c.n}, {"parts", sizes}};
            if (c.out.empty())
                j["graph"] = json::parse(write_graph_json(lg));
            if (audit)
                j["audit"] = {{"delta", audit->delta.str()}, {"required_count", audit->required_count.str()},
                    {"high_degree_count", audit->high_degree_count}, {"tiling_number", audit->tiling_number},
                    {"xn", audit->xn.str()}, {"proven", audit->proven}, {"ok", audit->ok()}};
            out << j.dump() << "\n";
        }
        else if (c.format == "csv") {
            out << "x,n,v1,v2,v3,v4";
            if (audit)
                out << ",high_degree_count,required,tiling_number,xn,ok";
            out << "\n" << x << "," << c.n;
            for (int s : sizes)
                out << "," << s;
            if (audit)
                out << "," << audit->high_degree_count << "," << audit->required_count << "," << audit->tiling_number << ","
                    << audit->xn << "," << (audit->ok() ? "yes" : "no");
            out << "\n";
        }
        else {
            out << "parts " << sizes_text(sizes) << "\n";
            if (audit) {
                out << "vertices of degree >= " << audit->delta << ": " << audit->high_degree_count << " (required "
                    << audit->required_count << ")\n";
                out << "K_{3,3,3}-tiling number " << audit->tiling_number << (Rational(audit->tiling_number) < audit->xn ? " < " : " >= ")
                    << "xn = " << audit->xn << (audit->proven ? " (proven by exhaustive search)" : " (search stopped at target)")
                    << "\n";
            }
        }
        return audit && ! audit->ok() ? check_failure : success;
    }

    int cmd_blowup(const Config & c, std::ostream & out)
    {
        auto g = blow_up(load_graph(c.graph).graph, c.s);
        std::string text = c.format == "json" ? write_graph_json(g) : write_graph_text(g);
        if (! c.out.empty())
            write_file(c.out, text);
        else
            out << text;
        return success;
    }

    int cmd_gen_random(const Config & c, std::ostream & out)
    {
        auto g = random_graph(c.n, Rational::parse(c.p), c.seed);
        std::string text = c.format == "json" ? write_graph_json(g) : write_graph_text(g);
        if (! c.out.empty())
            write_file(c.out, text);
        else
            out << text;
        return success;
    }

    struct VerifyRow {
        std::string id;
        std::string label;
        int n = 0;
        bool hypothesis = false;
        Rational cover;
        Rational xn;
        Rational slack;
        BoundOutcome bound = BoundOutcome::hypothesis_not_met;
        bool duality_ok = false;
    };

    int cmd_verify(const Config & c, std::ostream & out)
    {
        auto h = load_pattern(c);
        auto x = Rational::parse(c.x);
        MedianHypothesis::for_pattern(h, x).validate();
        auto limits = limits_of(c);

        std::vector<std::pair<std::string, Graph>> instances;
        if (c.random_count > 0) {
            auto p = Rational::parse(c.p);
            for (int i = 0; i < c.random_count; ++i) {
                std::ostringstream id;
                id << "random-" << std::setw(4) << std::setfill('0') << i;
                instances.emplace_back(id.str(), random_graph(c.n, p, c.seed + static_cast<std::uint64_t>(i)));
            }
        }
        if (! c.corpus.empty()) {
            std::vector<std::filesystem::path> files;
            for (auto & entry : std::filesystem::directory_iterator(c.corpus))
                if (entry.is_regular_file())
                    files.push_back(entry.path());
            std::ranges::sort(files);
            for (auto & f : files)
                instances.emplace_back("corpus-" + f.filename().string(), read_graph_file(f.string()).graph);
        }
        for (auto & path : c.graphs)
            instances.emplace_back("file-" + std::filesystem::path(path).filename().string(), read_graph_file(path).graph);
        if (instances.empty())
            throw InputError("verify needs --random, --corpus or --graph");

        std::vector<VerifyRow> rows;
        for (auto & [id, g] : instances) {
            VerifyRow row;
            row.id = id;
            row.label = g.label();
            row.n = g.order();
            auto duality = verify_duality(g, h, limits);
            row.duality_ok = duality.ok();
            row.cover = duality.cover_number;
            row.xn = x * Rational(g.order());
            row.slack = row.cover - row.xn;
            auto hyp = check_median_hypothesis(g, MedianHypothesis::for_pattern(h, x));
            row.hypothesis = hyp.met;
            if (hyp.met)
                row.bound = row.cover >= row.xn ? BoundOutcome::holds : BoundOutcome::violated;
            rows.push_back(std::move(row));
        }
        std::ranges::sort(rows, {}, &VerifyRow::id);

        bool failed = false;
        auto bound_text = [](BoundOutcome b) {
            return b == BoundOutcome::hypothesis_not_met ? std::string("skipped") : to_string(b);
        };
        if (c.format == "json") {
            json arr = json::array();
            for (auto & r : rows)
                arr.push_back({{"id", r.id}, {"n", r.n}, {"x", x.str()}, {"hypothesis", r.hypothesis}, {"cover", r.cover.str()},
                    {"xn", r.xn.str()}, {"slack", r.slack.str()}, {"bound", bound_text(r.bound)}, {"duality", r.duality_ok ? "ok" : "FAIL"}});
            out << json{{"pattern", h.name()}, {"rows", arr}}.dump() << "\n";
        }
        else {
            out << "# tilinglab verify v1\n";
            out << "id,n,x,hypothesis,cover,xn,slack,bound,duality\n";
            for (auto & r : rows)
                out << r.id << "," << r.n << "," << x << "," << (r.hypothesis ? "yes" : "no") << "," << r.cover << "," << r.xn << ","
                    << r.slack << "," << bound_text(r.bound) << "," << (r.duality_ok ? "ok" : "FAIL") << "\n";
        }
        for (auto & r : rows)
            failed = failed || ! r.duality_ok || r.bound == BoundOutcome::violated;
        return failed ? check_failure : success;
    }
}

int run(int argc, char ** argv, std::ostream & out, std::ostream & err)
{
    CLI::App app{"Exact fractional and integral graph tiling laboratory", "tilinglab"};
    app.require_subcommand(1);
    Config c;

    auto fraction_check = CLI::Validator(
        [](std::string & s) -> std::string {
            try {
                Rational::parse(s);
                return {};
            }
            catch (const InputError & e) {
                return e.what();
            }
        },
        "FRACTION");

    auto add_common = [&](CLI::App * sub) {
        sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
        sub->add_option("--seed", c.seed, "Random seed");
        sub->add_option("--max-columns", c.max_columns, "Cap on distinct homomorphism columns")->check(CLI::NonNegativeNumber);
        sub->add_option("--max-nodes", c.max_nodes, "Cap on branch-and-bound nodes")->check(CLI::NonNegativeNumber);
        sub->add_option("--time-budget-secs", c.time_budget_secs, "Wall-clock budget")->check(CLI::NonNegativeNumber);
    };
    auto add_pattern = [&](CLI::App * sub) {
        sub->add_option("--pattern,--H", c.pattern, "Pattern name (K3, P3, C4, K_{3,3,3}, ...) or graph file")->required();
        sub->add_option("--r", c.r, "Colour count for the pattern (default: chromatic number)")->check(CLI::Range(2, 1000));
    };

    auto homs = app.add_subcommand("homs", "Count homomorphisms H -> G");
    add_pattern(homs);
    homs->add_option("--graph", c.graph, "Host graph file")->required();
    homs->add_flag("--columns", c.columns, "List distinct multiplicity columns");
    add_common(homs);

    auto tile = app.add_subcommand("tile", "Fractional (default) or integral tiling number");
    add_pattern(tile);
    tile->add_option("--graph", c.graph, "Host graph file")->required();
    tile->add_flag("--integral", c.integral, "Maximum number of vertex-disjoint copies");
    tile->add_option("--target", c.target, "Stop once this many copies are found")->check(CLI::NonNegativeNumber);
    tile->add_option("--dump-lp", c.dump_lp, "Write the tiling LP in text form to this file");
    add_common(tile);

    auto cover = app.add_subcommand("cover", "Fractional cover number");
    add_pattern(cover);
    cover->add_option("--graph", c.graph, "Host graph file")->required();
    cover->add_flag("--full", c.full, "Use every column row instead of lazy generation");
    add_common(cover);

    auto duality = app.add_subcommand("duality", "Check tiling number = cover number exactly");
    add_pattern(duality);
    duality->add_option("--graph", c.graph, "Host graph file")->required();
    add_common(duality);

    auto extremal = app.add_subcommand("extremal", "Four-part extremal graph");
    add_pattern(extremal);
    extremal->add_option("--x", c.x, "x as p/q")->required()->check(fraction_check);
    extremal->add_option("--n", c.n, "Vertex count")->required()->check(CLI::PositiveNumber);
    extremal->add_option("--out", c.out, "Write the labelled graph here");
    extremal->add_flag("--audit", c.audit, "Audit copies, tiling number and degrees");
    add_common(extremal);

    auto k333 = app.add_subcommand("k333", "K_{3,3,3} counterexample graph");
    k333->add_option("--x", c.x, "x as p/q")->required()->check(fraction_check);
    k333->add_option("--n", c.n, "Vertex count")->required()->check(CLI::PositiveNumber);
    k333->add_option("--out", c.out, "Write the labelled graph here");
    k333->add_flag("--audit", c.audit, "Check degrees and the K_{3,3,3}-tiling number");
    add_common(k333);

    auto blowup = app.add_subcommand("blowup", "Replace every vertex by s clones");
    blowup->add_option("--graph", c.graph, "Graph file")->required();
    blowup->add_option("--s", c.s, "Clone count")->required();
    blowup->add_option("--out", c.out, "Output file");
    add_common(blowup);

    auto verify = app.add_subcommand("verify", "Batch hypothesis, cover bound and duality checks");
    add_pattern(verify);
    verify->add_option("--x", c.x, "x as p/q")->required()->check(fraction_check);
    verify->add_option("--random", c.random_count, "Number of seeded random hosts")->check(CLI::NonNegativeNumber);
    verify->add_option("--n", c.n, "Order of random hosts")->check(CLI::NonNegativeNumber);
    verify->add_option("--p", c.p, "Edge probability as p/q")->check(fraction_check);
    verify->add_option("--corpus", c.corpus, "Directory of graph files");
    verify->add_option("--graph", c.graphs, "Graph file (repeatable)");
    add_common(verify);

    auto gen = app.add_subcommand("gen-random", "Seeded Erdos-Renyi host");
    gen->add_option("--n", c.n, "Vertex count")->required()->check(CLI::NonNegativeNumber);
    gen->add_option("--p", c.p, "Edge probability as p/q")->required()->check(fraction_check);
    gen->add_option("--out", c.out, "Output file");
    add_common(gen);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return success;
        }
        err << e.what() << "\n";
        return input_error;
    }

    try {
        if (homs->parsed())
            return cmd_homs(c, out);
        if (tile->parsed())
            return cmd_tile(c, out);
        if (cover->parsed())
            return cmd_cover(c, out);
        if (duality->parsed())
            return cmd_duality(c, out);
        if (extremal->parsed())
            return cmd_extremal(c, out);
        if (k333->parsed())
            return cmd_k333(c, out);
        if (blowup->parsed())
            return cmd_blowup(c, out);
        if (verify->parsed())
            return cmd_verify(c, out);
        if (gen->parsed())
            return cmd_gen_random(c, out);
    }
    catch (const SpecError & e) {
        err << "spec error: " << e.what() << "\n";
        if (! e.suggestion().empty())
            err << e.suggestion() << "\n";
        return input_error;
    }
    catch (const InputError & e) {
        err << "input error: " << e.what() << "\n";
        return input_error;
    }
    catch (const ResourceError & e) {
        err << "resource cap: " << e.what() << "\n";
        return resource_cap;
    }
    catch (const InvariantError & e) {
        err << "invariant failure: " << e.what() << "\n";
        return check_failure;
    }
    return input_error;
}

int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
    std::vector<std::string> storage{"tilinglab"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char *> argv;
    for (auto & s : storage)
        argv.push_back(s.data());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace tiling::cli
