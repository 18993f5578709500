#include <nibbler/cover.hh>
#include <nibbler/errors.hh>
#include <nibbler/finisher.hh>
#include <nibbler/instances.hh>
#include <nibbler/nibble.hh>
#include <nibbler/patterns.hh>
#include <nibbler/pipeline.hh>
#include <nibbler/schedule.hh>
#include <nibbler/serialize.hh>
#include <nibbler/sweep.hh>

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

using namespace nibbler;

using std::cerr;
using std::cout;
using std::optional;
using std::string;

namespace
{
    enum Exit : int
    {
        ok = 0,
        validation = 2,
        budget = 3,
        io = 4
    };

    auto emit(const Json & j, const string & out_path) -> void
    {
        if (out_path.empty())
            cout << j.dump(2) << '\n';
        else
            write_text_file(out_path, j.dump(2) + "\n");
    }
}

auto main(int argc, char * argv[]) -> int
{
    CLI::App app{ "Correspondence colouring by iterated nibbles" };
    app.require_subcommand(1);

    // gen
    auto gen = app.add_subcommand("gen", "Generate a seeded graph or cover");
    gen->require_subcommand(1);
    int n = 0, a = 0, b = 0, degree_budget = 0, q = 0;
    double p = 0.0, target_k = 0.0, drop = 0.0;
    string pattern_spec, out_path, graph_path, cover_type = "identity";
    Seed seed = 0;

    auto gen_gnp = gen->add_subcommand("gnp", "Erdos-Renyi G(n, p)");
    gen_gnp->add_option("--n", n)->required();
    gen_gnp->add_option("--p", p)->required();
    auto gen_bip = gen->add_subcommand("bipartite", "Random bipartite graph with parts a, b");
    gen_bip->add_option("--a", a)->required();
    gen_bip->add_option("--b", b)->required();
    gen_bip->add_option("--p", p)->required();
    auto gen_planted = gen->add_subcommand("planted", "Greedy locally sparse graph");
    gen_planted->add_option("--n", n)->required();
    gen_planted->add_option("--target-k", target_k)->required();
    gen_planted->add_option("--pattern", pattern_spec)->required();
    gen_planted->add_option("--degree-budget", degree_budget)->required();
    auto gen_cover = gen->add_subcommand("cover", "Identity or random q-fold cover of a graph");
    gen_cover->add_option("--graph", graph_path)->required();
    gen_cover->add_option("--q", q)->required();
    gen_cover->add_option("--type", cover_type)->check(CLI::IsMember({ "identity", "random" }));
    gen_cover->add_option("--drop", drop, "probability of removing each matched pair");
    for (auto sub : { gen_gnp, gen_bip, gen_planted, gen_cover }) {
        sub->add_option("--seed", seed)->required();
        sub->add_option("--out", out_path);
    }

    // certify
    double k = 1.0;
    bool serial = false, per_vertex = false;
    auto certify = app.add_subcommand("certify", "Check (k, F)-local sparsity");
    certify->add_option("--graph", graph_path)->required();
    certify->add_option("--k", k)->required();
    certify->add_option("--pattern", pattern_spec)->required();
    certify->add_flag("--serial", serial);
    certify->add_flag("--per-vertex", per_vertex);
    certify->add_option("--out", out_path);

    // validate-cover
    string cover_path;
    auto validate = app.add_subcommand("validate-cover", "Check the cover conditions");
    validate->add_option("--cover", cover_path)->required();

    // nibble-step
    double eta = 0.0, ell = 0.0, d = 0.0, beta = 0.0, epsilon = 0.5;
    int s = 1, t = 1;
    auto step = app.add_subcommand("nibble-step", "One round of the wasteful colouring procedure");
    step->add_option("--cover", cover_path)->required();
    step->add_option("--eta", eta)->required();
    step->add_option("--ell", ell)->required();
    step->add_option("--d", d)->required();
    step->add_option("--beta", beta)->required();
    step->add_option("--seed", seed)->required();
    step->add_option("--k", k);
    step->add_option("--s", s);
    step->add_option("--t", t);
    step->add_option("--out", out_path);

    // schedule
    std::size_t max_entries = 64;
    auto sched = app.add_subcommand("schedule", "Print the parameter schedule");
    sched->add_option("--d", d)->required();
    sched->add_option("--eps", epsilon)->required();
    sched->add_option("--k", k)->required();
    sched->add_option("--s", s)->required();
    sched->add_option("--t", t)->required();
    sched->add_option("--max-entries", max_entries, "sequence entries printed before truncating");

    // color
    int retries = 200;
    bool best_effort = false;
    optional<double> d_override;
    string trace_path;
    std::uint64_t round_cap = 1'000'000;
    auto color = app.add_subcommand("color", "Run the full colouring pipeline");
    color->add_option("--cover", cover_path)->required();
    color->add_option("--eps", epsilon)->required();
    color->add_option("--k", k)->required();
    color->add_option("--s", s)->required();
    color->add_option("--t", t)->required();
    color->add_option("--seed", seed)->required();
    color->add_option("--retries", retries);
    color->add_option("--d", d_override, "degree parameter, defaults to the max colour degree");
    color->add_option("--round-cap", round_cap);
    color->add_flag("--best-effort", best_effort);
    color->add_option("--out", out_path, "colouring JSON");
    color->add_option("--trace", trace_path, "trace JSON");

    // finish
    int ell_int = 0;
    auto fin = app.add_subcommand("finish", "Complete a cover by resampling");
    fin->add_option("--cover", cover_path)->required();
    fin->add_option("--ell", ell_int)->required();
    fin->add_option("--seed", seed)->required();
    fin->add_option("--round-cap", round_cap);
    fin->add_option("--out", out_path);

    // verify
    string colouring_path;
    auto verify = app.add_subcommand("verify", "Check a colouring file against a cover file");
    verify->add_option("--cover", cover_path)->required();
    verify->add_option("--colouring,--coloring", colouring_path)->required();

    // sweep
    string config_path;
    auto sweep = app.add_subcommand("sweep", "Run an experiment grid");
    sweep->add_option("--config", config_path)->required();

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp & e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError & e) {
        app.exit(e);
        return validation;
    }

    try {
        if (gen->parsed()) {
            Graph g{ 0 };
            if (gen_cover->parsed()) {
                auto base = read_graph_file(graph_path).graph;
                auto c = cover_type == "identity" ? identity_list_cover(base, q) : random_cover(base, q, seed, drop);
                emit(cover_to_json(c), out_path);
                return ok;
            }
            if (gen_gnp->parsed())
                g = gnp(n, p, seed);
            else if (gen_bip->parsed())
                g = random_bipartite(a, b, p, seed);
            else
                g = planted_sparse(n, target_k, pattern_from_spec(pattern_spec), degree_budget, seed);
            auto text = graph_to_json_text(g);
            if (out_path.empty())
                cout << text << '\n';
            else
                write_text_file(out_path, text + "\n");
        }
        else if (certify->parsed()) {
            auto g = read_graph_file(graph_path).graph;
            auto f = pattern_from_spec(pattern_spec);
            auto report = certify_local_sparsity(g, k, f, serial ? Execution::serial : Execution::parallel);
            emit(sparsity_report_to_json(report, per_vertex), out_path);
            return report.holds() ? ok : validation;
        }
        else if (validate->parsed()) {
            auto c = read_cover_file(cover_path);
            auto violations = validate_cover(c);
            Json j;
            j["valid"] = violations.empty();
            auto items = Json::array();
            for (auto & v : violations) {
                Json vj;
                vj["clause"] = clause_name(v.clause);
                vj["items"] = v.items;
                vj["message"] = v.message;
                items.push_back(std::move(vj));
            }
            j["violations"] = std::move(items);
            cout << j.dump(2) << '\n';
            return violations.empty() ? ok : validation;
        }
        else if (step->parsed()) {
            auto c = read_cover_file(cover_path);
            auto params = derived_params(eta, ell, d, beta);
            auto outcome = wasteful_step(c, params, seed);
            auto next = next_cover(c, outcome);
            Json j;
            j["params"] = { { "keep", params.keep }, { "uncolour", params.uncolour }, { "ell_next", params.ell_next },
                { "d_next", params.d_next }, { "beta_next", params.beta_next } };
            j["hypotheses"] = hypotheses_to_json(check_hypotheses(c, params, k, s, t));
            j["outcome"] = outcome_to_json(outcome);
            j["accept"] = accept_to_json(iteration_accept(next.cover, params));
            emit(j, out_path);
        }
        else if (sched->parsed()) {
            ScheduleInputs in{ epsilon, d, k, s, t };
            auto schedule = build_schedule(in);
            auto j = schedule_to_json(schedule, max_entries);
            j["sanity"] = sanity_to_json(check_schedule_sanity(schedule));
            if (extended_precision_requested()) {
                auto extended = build_schedule_extended(in);
                j["extended_recheck"] = { { "i_star", extended.i_star },
                    { "max_relative_drift", precision_drift(schedule, extended) } };
            }
            cout << j.dump(2) << '\n';
        }
        else if (color->parsed()) {
            auto c = read_cover_file(cover_path);
            PipelineOptions options;
            options.epsilon = epsilon;
            options.k = k;
            options.s = s;
            options.t = t;
            options.seed = seed;
            options.retry_budget = retries;
            options.best_effort = best_effort;
            options.d = d_override;
            options.round_cap = round_cap;
            auto result = run_pipeline(c, options);

            auto trace = pipeline_trace_to_json(result);
            if (! trace_path.empty())
                write_text_file(trace_path, trace.dump(2) + "\n");
            if (! result.success()) {
                cerr << "nibbler: " << result.message << '\n';
                if (trace_path.empty())
                    cout << trace.dump(2) << '\n';
                return result.status == PipelineStatus::finisher_precondition ? validation : budget;
            }
            emit(colouring_to_json(result.colouring), out_path);
        }
        else if (fin->parsed()) {
            auto c = read_cover_file(cover_path);
            auto result = final_blow(c, ell_int, seed, round_cap);
            Json j = colouring_to_json(result.colouring);
            j["trace"] = resample_trace_to_json(result.trace);
            emit(j, out_path);
            if (! result.success) {
                cerr << "nibbler: round cap " << round_cap << " exceeded\n";
                return budget;
            }
        }
        else if (verify->parsed()) {
            auto report = verify_colouring_files(cover_path, colouring_path);
            Json j;
            j["ok"] = report.ok;
            j["message"] = report.message;
            if (report.conflict)
                j["conflict"] = { report.conflict->first, report.conflict->second };
            if (report.vertex)
                j["vertex"] = *report.vertex;
            cout << j.dump(2) << '\n';
            return report.ok ? ok : validation;
        }
        else if (sweep->parsed()) {
            auto config = parse_sweep_config(read_text_file(config_path));
            auto rows = run_sweep(config);
            std::size_t good = 0;
            for (auto & r : rows)
                good += r.success;
            cout << good << "/" << rows.size() << " runs succeeded; summary in " << config.output_dir << "/summary.csv\n";
        }
        return ok;
    }
    catch (const IoError & e) {
        cerr << "nibbler: " << e.what() << '\n';
        return io;
    }
    catch (const BudgetExhausted & e) {
        cerr << "nibbler: " << e.what() << '\n';
        return budget;
    }
    catch (const std::logic_error & e) {
        cerr << "nibbler: internal error: " << e.what() << '\n';
        return EXIT_FAILURE;
    }
    catch (const std::exception & e) {
        // InvalidInput, PreconditionViolated, ScheduleDiverged
        cerr << "nibbler: " << e.what() << '\n';
        return validation;
    }
}
