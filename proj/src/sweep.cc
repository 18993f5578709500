#include <nibbler/sweep.hh>
#include <nibbler/errors.hh>
#include <nibbler/instances.hh>
#include <nibbler/pipeline.hh>

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>

using std::string;
using std::to_string;
using std::vector;

namespace fs = std::filesystem;

namespace nibbler
{
    auto fnv1a_hex(const string & text) -> string
    {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char ch : text) {
            h ^= ch;
            h *= 0x100000001b3ULL;
        }
        char buffer[17];
        std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(h));
        return buffer;
    }

    namespace
    {
        template <typename T_>
        auto scalar_or_list(const nlohmann::json & entry, const string & key, vector<T_> fallback) -> vector<T_>
        {
            if (! entry.contains(key))
                return fallback;
            auto & v = entry[key];
            if (v.is_array()) {
                if (v.empty())
                    throw InvalidInput{ "sweep config: \"" + key + "\" must not be an empty list" };
                return v.get<vector<T_>>();
            }
            return { v.get<T_>() };
        }

        auto check_generator(const nlohmann::json & g) -> void
        {
            static const std::map<string, vector<string>> required{
                { "gnp", { "n", "p" } },
                { "bipartite", { "a", "b", "p" } },
                { "planted", { "n", "target_k", "pattern", "degree_budget" } },
                { "edgeless", { "n" } },
                { "file", { "path" } } };
            if (! g.is_object() || ! g.contains("type") || ! g["type"].is_string())
                throw InvalidInput{ "sweep config: \"generator\" must be an object with a string \"type\"" };
            auto it = required.find(g["type"].get<string>());
            if (it == required.end())
                throw InvalidInput{ "sweep config: unknown generator type \"" + g["type"].get<string>() + "\"" };
            for (auto & key : it->second)
                if (! g.contains(key))
                    throw InvalidInput{ "sweep config: generator " + it->first + " needs \"" + key + "\"" };
        }

        auto generate(const Json & g, Seed seed) -> Graph
        {
            auto type = g["type"].get<string>();
            if (type == "gnp")
                return gnp(g["n"].get<int>(), g["p"].get<double>(), seed);
            if (type == "bipartite")
                return random_bipartite(g["a"].get<int>(), g["b"].get<int>(), g["p"].get<double>(), seed);
            if (type == "planted")
                return planted_sparse(g["n"].get<int>(), g["target_k"].get<double>(), pattern_from_spec(g["pattern"].get<string>()),
                        g["degree_budget"].get<int>(), seed);
            if (type == "edgeless")
                return Graph{ g["n"].get<int>() };
            return read_graph_file(g["path"].get<string>()).graph;
        }

        auto run_json(const SweepRun & r) -> Json
        {
            Json j;
            j["generator"] = r.generator;
            j["cover"] = r.cover_type;
            j["q"] = r.q ? Json(*r.q) : Json("auto");
            j["drop_probability"] = r.drop_probability;
            j["epsilon"] = r.epsilon;
            j["k"] = r.k;
            j["s"] = r.s;
            j["t"] = r.t;
            j["seed"] = r.seed;
            j["retries"] = r.retries;
            j["best_effort"] = r.best_effort;
            return j;
        }

        auto auto_q(const Graph & g, const SweepRun & r) -> int
        {
            auto d = std::max(3.0, double(g.max_degree()));
            try {
                auto s = build_schedule({ r.epsilon, d, std::max(r.k, 0.5), r.s, r.t });
                return std::max(1, static_cast<int>(std::ceil(s.ell[0])));
            }
            catch (const std::exception &) {
                return 8 * g.max_degree() + 1;
            }
        }

        auto format_double(double x) -> string
        {
            std::ostringstream out;
            out.precision(10);
            out << x;
            return out.str();
        }
    }

    auto parse_sweep_config(const string & text) -> SweepConfig
    {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        }
        catch (const nlohmann::json::exception & e) {
            throw InvalidInput{ string{ "sweep config: " } + e.what() };
        }
        if (! j.is_object() || ! j.contains("output_dir") || ! j["output_dir"].is_string())
            throw InvalidInput{ "sweep config must be an object with a string \"output_dir\"" };
        if (j.contains("grid") && ! j["grid"].is_array())
            throw InvalidInput{ "sweep config: \"grid\" must be a list" };

        SweepConfig config;
        try {
            config.output_dir = j["output_dir"].get<string>();
            config.threads = j.value("threads", 1);
            if (config.threads < 1)
                throw InvalidInput{ "sweep config: \"threads\" must be at least 1" };

            std::size_t point = 0;
            for (auto & entry : j.value("grid", nlohmann::json::array())) {
                if (! entry.is_object() || ! entry.contains("generator"))
                    throw InvalidInput{ "sweep config: every grid entry needs a \"generator\"" };
                check_generator(entry["generator"]);
                if (! entry.contains("seeds"))
                    throw InvalidInput{ "sweep config: every grid entry needs explicit \"seeds\"" };

                SweepRun base;
                base.generator = Json::parse(entry["generator"].dump());
                base.cover_type = entry.value("cover", string{ "identity" });
                if (base.cover_type != "identity" && base.cover_type != "random")
                    throw InvalidInput{ "sweep config: cover must be \"identity\" or \"random\"" };
                if (entry.contains("q") && ! (entry["q"].is_string() && entry["q"] == "auto"))
                    base.q = entry["q"].get<int>();
                base.drop_probability = entry.value("drop_probability", 0.0);
                base.s = entry.value("s", 1);
                base.t = entry.value("t", 1);
                base.retries = entry.value("retries", 200);
                base.best_effort = entry.value("best_effort", false);

                auto seeds = scalar_or_list<Seed>(entry, "seeds", {});
                for (auto eps : scalar_or_list<double>(entry, "epsilon", { 0.5 }))
                    for (auto k : scalar_or_list<double>(entry, "k", { 1.0 })) {
                        for (auto seed : seeds) {
                            auto run = base;
                            run.point = point;
                            run.epsilon = eps;
                            run.k = k;
                            run.seed = seed;
                            config.runs.push_back(std::move(run));
                        }
                        ++point;
                    }
            }
        }
        catch (const nlohmann::json::exception & e) {
            throw InvalidInput{ string{ "sweep config: " } + e.what() };
        }
        return config;
    }

    auto sweep_csv_header() -> string
    {
        return "run_id,instance_hash,point,n,delta_h,measured_k,epsilon,k,s,t,seed,ell0,stages,i_star,status,success,point_success_rate,wall_ms";
    }

    auto sweep_csv_row(const SweepRow & r, bool with_time) -> string
    {
        std::ostringstream out;
        out << r.run_id << ',' << r.instance_hash << ',' << r.point << ',' << r.n << ',' << r.delta_h << ','
            << r.measured_k << ',' << format_double(r.epsilon) << ',' << format_double(r.k) << ',' << r.s << ',' << r.t << ','
            << r.seed << ',' << r.ell0 << ',' << r.stages << ',' << (r.i_star ? to_string(*r.i_star) : "") << ','
            << r.status << ',' << (r.success ? 1 : 0) << ',' << format_double(r.point_success_rate) << ',';
        if (with_time)
            out << format_double(r.wall_ms);
        return out.str();
    }

    auto run_sweep(const SweepConfig & config) -> vector<SweepRow>
    {
        auto runs_dir = fs::path{ config.output_dir } / "runs";
        std::error_code ec;
        fs::create_directories(runs_dir, ec);
        if (ec)
            throw IoError{ "cannot create " + runs_dir.string() + ": " + ec.message() };

        vector<SweepRow> rows(config.runs.size());
        vector<string> io_errors(config.runs.size());

#pragma omp parallel for schedule(dynamic) num_threads(config.threads)
        for (std::size_t i = 0 ; i < config.runs.size() ; ++i) {
            auto & run = config.runs[i];
            auto & row = rows[i];
            auto start = std::chrono::steady_clock::now();

            row.run_id = fnv1a_hex(run_json(run).dump());
            row.point = run.point;
            row.epsilon = run.epsilon;
            row.k = run.k;
            row.s = run.s;
            row.t = run.t;
            row.seed = run.seed;

            auto prefix = (runs_dir / row.run_id).string();
            Json trace;
            trace["run"] = run_json(run);
            try {
                auto g = generate(run.generator, derive_seed(run.seed, 1));
                auto q = run.q ? *run.q : auto_q(g, run);
                auto c = run.cover_type == "identity" ? identity_list_cover(g, q)
                    : random_cover(g, q, derive_seed(run.seed, 2), run.drop_probability);
                auto cover_text = cover_to_json(c).dump();
                row.instance_hash = fnv1a_hex(cover_text);
                row.n = g.size();
                row.delta_h = c.cover.max_degree();
                row.measured_k = certify_local_sparsity(c.cover, 0.0, PatternGraph::complete_bipartite(run.s, run.t)).max_count;
                write_text_file(prefix + ".cover.json", cover_text);

                PipelineOptions options;
                options.epsilon = run.epsilon;
                options.k = run.k;
                options.s = run.s;
                options.t = run.t;
                options.seed = derive_seed(run.seed, 3);
                options.retry_budget = run.retries;
                options.best_effort = run.best_effort;

                auto result = run_pipeline(c, options);
                row.ell0 = result.ell0;
                row.stages = result.stages.size();
                if (result.schedule)
                    row.i_star = result.schedule->i_star;
                row.status = status_name(result.status);
                trace["pipeline"] = pipeline_trace_to_json(result);

                if (result.success()) {
                    write_text_file(prefix + ".colouring.json", colouring_to_json(result.colouring).dump());
                    auto verdict = verify_colouring_files(prefix + ".cover.json", prefix + ".colouring.json");
                    row.success = verdict.ok;
                    trace["verifier"] = verdict.message;
                    if (! verdict.ok)
                        row.status = "verifier_rejected";
                }
            }
            catch (const IoError & e) {
                row.status = "io_error";
                io_errors[i] = e.what();
            }
            catch (const std::exception & e) {
                row.status = "precondition";
                trace["error"] = e.what();
            }

            row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            trace["status"] = row.status;
            trace["success"] = row.success;
            try {
                write_text_file(prefix + ".trace.json", trace.dump(2));
            }
            catch (const IoError & e) {
                io_errors[i] = e.what();
            }
        }

        for (auto & e : io_errors)
            if (! e.empty())
                throw IoError{ e };

        std::map<std::size_t, std::pair<int, int>> per_point;
        for (auto & r : rows) {
            auto & [good, total] = per_point[r.point];
            good += r.success;
            ++total;
        }
        for (auto & r : rows) {
            auto [good, total] = per_point[r.point];
            r.point_success_rate = double(good) / total;
        }

        std::ostringstream csv;
        csv << sweep_csv_header() << '\n';
        for (auto & r : rows)
            csv << sweep_csv_row(r) << '\n';
        write_text_file((fs::path{ config.output_dir } / "summary.csv").string(), csv.str());
        return rows;
    }
}
