// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.

#include <nibbler/errors.hh>
#include <nibbler/finisher.hh>
#include <nibbler/instances.hh>
#include <nibbler/lifting.hh>
#include <nibbler/nibble.hh>
#include <nibbler/patterns.hh>
#include <nibbler/pipeline.hh>
#include <nibbler/schedule.hh>
#include <nibbler/serialize.hh>
#include <nibbler/sweep.hh>

#include "fixtures.hh"
#include "oracles.hh"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace nibbler;
using std::string;
using std::vector;

namespace fs = std::filesystem;

namespace
{
    struct Verdict
    {
        bool pass = true;
        std::ostringstream detail;

        auto fail(const string & why) -> void
        {
            if (pass)
                detail << why;
            else if (detail.str().size() < 400)
                detail << "; " << why;
            pass = false;
        }
    };

    int failures = 0;

    template <typename Body_>
    auto criterion(int id, const string & title, Body_ body) -> void
    {
        auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            body(v);
        }
        catch (const std::exception & e) {
            v.fail(string{ "exception: " } + e.what());
        }
        auto seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (! v.pass)
            ++failures;
        std::cout << (v.pass ? "PASS" : "FAIL") << " " << id << " " << title << " [" << seconds << " s] "
            << v.detail.str() << std::endl;
    }

    auto scratch(const string & name) -> string
    {
        auto dir = fs::path{ NIBBLER_TEST_SCRATCH } / "acceptance" / name;
        fs::remove_all(dir);
        fs::create_directories(dir);
        return dir.string();
    }

    auto binomial(std::uint64_t n, std::uint64_t r) -> std::uint64_t
    {
        if (r > n)
            return 0;
        std::uint64_t b = 1;
        for (std::uint64_t i = 1 ; i <= r ; ++i)
            b = b * (n - r + i) / i;
        return b;
    }

    auto factorial(std::uint64_t n) -> std::uint64_t
    {
        std::uint64_t f = 1;
        for (std::uint64_t i = 2 ; i <= n ; ++i)
            f *= i;
        return f;
    }

    auto proper_partial(const CorrespondenceCover & c, const PartialColouring & phi) -> bool
    {
        vector<char> chosen(c.cover.size(), 0);
        for (Vertex v = 0 ; v < phi.size() ; ++v)
            if (phi.coloured(v)) {
                auto & l = c.lists[v];
                if (std::find(l.begin(), l.end(), phi.colour(v)) == l.end())
                    return false;
                chosen[phi.colour(v)] = 1;
            }
        for (auto [x, y] : c.cover.edges())
            if (chosen[x] && chosen[y])
                return false;
        return true;
    }

    /// Removes an edge of some copy of f until none is left.
    auto make_free(Graph g, const PatternGraph & f) -> Graph
    {
        while (true) {
            auto copies = find_copies(g, f, 1);
            if (copies.empty())
                return g;
            auto doomed = copies[0].edges[0];
            vector<Edge> kept;
            for (auto e : g.edges())
                if (e != doomed)
                    kept.push_back(e);
            g = Graph{ g.size(), kept };
        }
    }

    auto criterion_1(Verdict & v) -> void
    {
        vector<Graph> patterns;
        for (int n = 1 ; n <= 4 ; ++n)
            for (auto & f : oracle::all_graphs(n))
                patterns.push_back(f);
        oracle::Gen gen{ 101 };
        std::size_t comparisons = 0;
        for (int trial = 0 ; trial < 200 ; ++trial) {
            auto g = gen.graph(gen.between(0, 7), gen.real(0.05, 0.95));
            for (auto & f : patterns) {
                ++comparisons;
                auto got = count_copies(g, PatternGraph{ f });
                auto want = oracle::count_copies(g, f);
                if (got != want)
                    v.fail("trial " + std::to_string(trial) + ": " + std::to_string(got) + " vs oracle " + std::to_string(want));
            }
        }
        v.detail << (v.pass ? "" : " ") << comparisons << " comparisons over " << patterns.size() << " patterns";
    }

    auto criterion_2(Verdict & v) -> void
    {
        vector<PatternGraph> patterns{ PatternGraph::complete(2), PatternGraph::path(3), PatternGraph::complete(3),
            PatternGraph::cycle(4), PatternGraph::complete_bipartite(2, 2), PatternGraph::path(4), PatternGraph::cycle(6),
            PatternGraph::complete_bipartite(3, 3) };
        for (auto & f : patterns) {
            auto aut = oracle::automorphisms(f.graph());
            std::uint64_t m = f.size();
            for (int delta = 0 ; delta <= 10 ; ++delta) {
                auto want = binomial(delta, m) * factorial(m) / aut;
                auto got = count_copies(Graph::complete(delta), f);
                if (got != want)
                    v.fail(f.name() + " in K" + std::to_string(delta) + ": " + std::to_string(got) + " vs " + std::to_string(want));
            }
        }
        if (v.pass)
            v.detail << "8 patterns, clique sizes 0..10";
    }

    auto criterion_3(Verdict & v) -> void
    {
        auto c = fixtures::bowtie_cover();
        auto c6 = PatternGraph::cycle(6);
        if (! validate_cover(c).empty())
            v.fail("fixture is not a valid cover");
        auto base = count_copies(c.base, c6), lifted = count_copies(c.cover, c6);
        if (base != 0)
            v.fail("base graph has " + std::to_string(base) + " six-cycles");
        if (lifted < 1)
            v.fail("cover has no six-cycle");
        if (s2_lift_condition(c6))
            v.fail("second lifting condition reported true for C6");
        v.detail << (v.pass ? "" : " ") << "C6 copies: base " << base << ", cover " << lifted;
    }

    auto criterion_4(Verdict & v) -> void
    {
        vector<PatternGraph> patterns{ PatternGraph::complete(2), PatternGraph::path(3), PatternGraph::complete(3),
            PatternGraph::cycle(4), PatternGraph::path(4), PatternGraph::cycle(5), PatternGraph::cycle(6),
            PatternGraph::complete_bipartite(3, 2) };

        oracle::Gen gen{ 404 };
        int s1_trials = 0, s1_violations = 0;
        for (int trial = 0 ; trial < 1000 ; ++trial) {
            auto & f = patterns[trial % patterns.size()];
            auto g = gen.graph(gen.between(3, 12), gen.real(0.2, 0.8));
            auto base_counts = neighbourhood_copy_counts_serial(g, f);
            std::uint64_t k = 0;
            for (auto x : base_counts)
                k = std::max(k, x);
            auto c = random_cover(g, gen.between(1, 5), derive_seed(404, trial), gen.chance(0.3) ? 0.3 : 0.0);
            ++s1_trials;
            // the cover is (k, F)-locally sparse whenever the base is, both by certificate and by oracle count
            bool ok = certify_local_sparsity(c.cover, double(k), f).holds();
            for (Colour x = 0 ; ok && x < c.cover.size() ; ++x)
                ok = oracle::count_in_neighbourhood(c.cover, x, f.graph()) <= k;
            if (! ok)
                ++s1_violations;
        }

        int s2_trials = 0, s2_violations = 0;
        for (int trial = 0 ; trial < 1000 ; ++trial) {
            auto & f = patterns[trial % patterns.size()];
            auto envelope = multipartite_envelope(f);
            auto g = make_free(gen.graph(gen.between(3, 12), gen.real(0.2, 0.9)), f);
            auto c = random_cover(g, gen.between(1, 4), derive_seed(405, trial), gen.chance(0.3) ? 0.3 : 0.0);
            ++s2_trials;
            if (count_copies(c.cover, envelope) != 0)
                ++s2_violations;
        }

        if (s1_violations)
            v.fail(std::to_string(s1_violations) + " sparsity violations in covers");
        if (s2_violations)
            v.fail(std::to_string(s2_violations) + " envelope copies in covers of F-free graphs");
        v.detail << (v.pass ? "" : " ") << "first property " << s1_trials << " trials, second property " << s2_trials << " trials";
    }

    auto criterion_5(Verdict & v) -> void
    {
        oracle::Gen gen{ 505 };
        int runs = 0, violations = 0;
        for (int trial = 0 ; trial < 1200 ; ++trial) {
            auto g = gen.graph(gen.between(1, 30), gen.real(0.05, 0.6));
            int q = gen.between(1, 12);
            auto c = random_cover(g, q, derive_seed(505, trial), gen.chance(0.5) ? gen.real(0.0, 0.7) : 0.0);
            double d = std::max(1.0, c.cover.max_degree() / gen.real(1.0, 2.0));
            double ell = gen.real(1.0, 2.0) * q;
            double eta = gen.real(0.01, 0.9) * std::min(1.0, ell);
            auto p = derived_params(eta, ell, d, 0.0);
            auto out = wasteful_step(c, p, derive_seed(506, trial));
            ++runs;

            bool ok = proper_partial(c, out.phi);
            for (Vertex u = 0 ; ok && u < c.base.size() ; ++u) {
                if (out.phi.coloured(u))
                    continue;
                auto available = oracle::available_list(c, out.phi, u);
                vector<Colour> kept;
                for (auto x : c.lists[u])
                    if (out.kept[x])
                        kept.push_back(x);
                auto subset = [] (const vector<Colour> & a, const vector<Colour> & b) {
                    return std::all_of(a.begin(), a.end(), [&] (Colour x) { return std::find(b.begin(), b.end(), x) != b.end(); });
                };
                ok = subset(out.pruned_lists[u], kept) && subset(kept, available);
            }
            if (! ok)
                ++violations;
        }
        if (violations)
            v.fail(std::to_string(violations) + " runs with an improper colouring or broken list chain");
        v.detail << (v.pass ? "" : " ") << runs << " runs";
    }

    auto criterion_6(Verdict & v) -> void
    {
        auto g = gnp(12, 0.4, 606);
        auto c = random_cover(g, 6, 607, 0.2);
        double d = 4.0;
        if (c.cover.max_degree() > 2 * d)
            throw std::logic_error{ "calibration instance has colour degree above 2d" };
        auto p = derived_params(0.3, 6.0, d, 0.0);

        // each colour survives its coin with probability keep / (1 - eta/ell)^deg and each neighbour stays
        // inactive with probability 1 - eta/ell, independently, so the product is keep exactly
        long double step = 1.0L - 0.3L / 6.0L, exact = 1.0L;
        for (int j = 0 ; j < 2 * int(d) ; ++j)
            exact *= step;
        if (std::fabs(double(exact) - p.keep) > 1e-12)
            v.fail("keep " + std::to_string(p.keep) + " vs product " + std::to_string(double(exact)));

        const int runs = 100000;
        vector<long> hits(c.cover.size(), 0);
        for (int r = 0 ; r < runs ; ++r) {
            auto out = wasteful_step_serial(c, p, derive_seed(608, r));
            for (Colour x = 0 ; x < c.cover.size() ; ++x)
                hits[x] += out.kept[x];
        }
        double keep = double(exact);
        double tolerance = 4.0 * std::sqrt(keep * (1.0 - keep) / runs);
        double worst = 0.0;
        for (Colour x = 0 ; x < c.cover.size() ; ++x) {
            double deviation = std::fabs(double(hits[x]) / runs - keep);
            worst = std::max(worst, deviation);
            if (deviation > tolerance)
                v.fail("colour " + std::to_string(x) + " of degree " + std::to_string(c.cover.degree(x))
                        + " deviates by " + std::to_string(deviation));
        }
        v.detail << (v.pass ? "" : " ") << c.cover.size() << " colours, keep " << keep << ", worst deviation " << worst
            << " vs tolerance " << tolerance;
    }

    auto criterion_7(Verdict & v) -> void
    {
        int points = 0, bad_points = 0;
        for (double d : { 1e6, 1e9, 1e12 })
            for (double eps : { 0.1, 0.5, 1.0 })
                for (auto [s, t] : { std::pair{ 2, 2 }, std::pair{ 3, 2 }, std::pair{ 4, 4 } })
                    for (double k_exp : { 0.0, (s + t) / 20.0, (s + t) / 10.0 }) {
                        ++points;
                        double k = std::pow(d, k_exp);
                        std::ostringstream where;
                        where << "d=" << d << " eps=" << eps << " (s,t)=(" << s << "," << t << ") k=d^" << k_exp;
                        vector<string> problems;
                        try {
                            auto sched = build_schedule({ eps, d, k, s, t });
                            double st = s + t;
                            double arg = d * std::pow(k, -1.0 / st);
                            double C = k <= std::pow(d, eps * st / 200.0) ? 4.0 + eps : 8.0;
                            if (sched.C != C)
                                problems.push_back("C " + std::to_string(sched.C));
                            double mu = (C - eps) / 2.0 * std::log1p(eps / (8.0 * C));
                            double L = std::log(arg);
                            auto cap = static_cast<std::size_t>(std::ceil(16.0 / mu * L * std::log(L)));

                            std::size_t first_ratio = 0, bound_failures = 0, first_bound = 0;
                            for (std::size_t i = 1 ; i <= sched.i_star ; ++i)
                                if (sched.d[i] / sched.ell[i] > sched.d[i - 1] / sched.ell[i - 1] && ! first_ratio)
                                    first_ratio = i;
                            double lower = d * std::pow(arg, -4.0 / (C - 7.0 * eps / 8.0));
                            for (std::size_t i = 0 ; i <= sched.i_star ; ++i)
                                if (sched.ell[i] < lower && ! bound_failures++)
                                    first_bound = i;
                            std::size_t first_end = 0;
                            while (! (sched.d[first_end] <= sched.ell[first_end] / 100.0))
                                ++first_end;

                            if (first_ratio)
                                problems.push_back("ratio d/ell increases at " + std::to_string(first_ratio));
                            if (bound_failures) {
                                std::ostringstream m;
                                m << "ell below " << lower << " at " << bound_failures << " indices from " << first_bound
                                    << " (ell_" << sched.i_star << " = " << sched.ell[sched.i_star] << ")";
                                problems.push_back(m.str());
                            }
                            if (first_end != sched.i_star)
                                problems.push_back("endpoint index " + std::to_string(sched.i_star) + " vs first " + std::to_string(first_end));
                            if (sched.i_star > cap)
                                problems.push_back("endpoint " + std::to_string(sched.i_star) + " beyond cap " + std::to_string(cap));

                            auto drift = precision_drift(sched, build_schedule_extended({ eps, d, k, s, t }));
                            if (! (drift <= 1e-6))
                                problems.push_back("extended precision drift " + std::to_string(drift));
                        }
                        catch (const ScheduleDiverged & e) {
                            problems.push_back(string{ "diverged: " } + e.what());
                        }
                        if (! problems.empty()) {
                            ++bad_points;
                            std::cout << "  schedule point " << where.str() << ":";
                            for (auto & p : problems)
                                std::cout << " [" << p << "]";
                            std::cout << "\n";
                        }
                    }
        if (bad_points)
            v.fail(std::to_string(bad_points) + " of " + std::to_string(points) + " grid points fail");
        else
            v.detail << points << " grid points";
    }

    auto criterion_8(Verdict & v) -> void
    {
        oracle::Gen gen{ 808 };
        int completed = 0;
        std::uint64_t worst_rounds = 0;
        for (int trial = 0 ; trial < 100 ; ++trial) {
            int ell = trial % 2 ? 32 : 16;
            auto g = gen.graph(gen.between(20, 300), gen.real(0.01, 0.2));
            auto c = random_cover(g, ell, derive_seed(808, trial), 0.0);
            int bound = ell / 8;
            vector<Edge> kept;
            vector<int> degree(c.cover.size(), 0);
            for (auto [x, y] : c.cover.edges())
                if (degree[x] < bound && degree[y] < bound) {
                    kept.emplace_back(x, y);
                    ++degree[x];
                    ++degree[y];
                }
            c.cover = Graph{ c.cover.size(), kept };
            auto r = final_blow(c, ell, derive_seed(809, trial), 1000000);
            worst_rounds = std::max<std::uint64_t>(worst_rounds, r.trace.rounds);
            if (r.success && oracle::proper_total(c, r.colouring))
                ++completed;
            else
                v.fail("trial " + std::to_string(trial) + " did not complete to a proper colouring");
        }
        v.detail << (v.pass ? "" : " ") << completed << "/100 completed, at most " << worst_rounds << " resamples";
    }

    auto criterion_9(Verdict & v) -> void
    {
        auto dir = scratch("soundness");
        int emitted = 0, rejected = 0, runs = 0;

        auto check_files = [&] (const CorrespondenceCover & c, const PartialColouring & phi, const string & stem) {
            write_text_file(stem + ".cover.json", cover_to_json(c).dump());
            write_text_file(stem + ".colouring.json", colouring_to_json(phi).dump());
            ++emitted;
            auto report = verify_colouring_files(stem + ".cover.json", stem + ".colouring.json");
            if (! report.ok || ! oracle::proper_total(read_cover_file(stem + ".cover.json"), phi)) {
                ++rejected;
                v.fail(stem + ": " + report.message);
            }
        };

        oracle::Gen gen{ 909 };
        for (int trial = 0 ; trial < 40 ; ++trial) {
            CorrespondenceCover c;
            PipelineOptions o;
            o.seed = derive_seed(909, trial);
            o.retry_budget = 5;
            o.best_effort = trial % 3 == 0;
            switch (trial % 4) {
                case 0: {
                    auto g = planted_sparse(gen.between(60, 150), 0.0, PatternGraph::complete(2), gen.between(8, 14), o.seed);
                    o.k = 0.0;
                    auto delta = std::max(3, g.max_degree());
                    c = identity_list_cover(g, int(std::ceil(8.0 * delta / std::log(double(delta)))) + gen.between(0, 10));
                    break;
                }
                case 1: {
                    auto g = planted_sparse(gen.between(30, 80), 10.0, PatternGraph::complete_bipartite(2, 2), gen.between(5, 10), o.seed);
                    o.k = 10.0;
                    o.s = o.t = 2;
                    c = random_cover(g, 8 * std::max(1, g.max_degree()) + 1, o.seed);
                    break;
                }
                case 2: {
                    auto g = gnp(gen.between(10, 60), gen.real(0.05, 0.3), o.seed);
                    c = random_cover(g, 8 * std::max(1, g.max_degree()) + gen.between(0, 5), o.seed, gen.real(0.0, 0.5));
                    break;
                }
                default:
                    c = identity_list_cover(Graph{ gen.between(0, 10) }, 1);
            }
            ++runs;
            auto r = run_pipeline(c, o);
            if (r.success())
                check_files(c, r.colouring, dir + "/pipeline_" + std::to_string(trial));
        }

        auto sweep_dir = scratch("sweep");
        auto config = parse_sweep_config(R"({"output_dir": ")" + sweep_dir + R"(", "threads": 4, "grid": [
            {"generator": {"type": "gnp", "n": 40, "p": 0.15}, "cover": "random", "q": "auto", "drop_probability": 0.2, "seeds": [1, 2, 3, 4, 5]},
            {"generator": {"type": "planted", "n": 120, "target_k": 0, "pattern": "K2", "degree_budget": 12},
             "q": "auto", "k": 0, "retries": 3, "best_effort": true, "seeds": [1, 2, 3, 4, 5]},
            {"generator": {"type": "bipartite", "a": 20, "b": 20, "p": 0.3}, "cover": "random", "q": 64, "seeds": [1, 2, 3]}]})");
        for (auto & row : run_sweep(config)) {
            ++runs;
            if (! row.success)
                continue;
            ++emitted;
            auto stem = sweep_dir + "/runs/" + row.run_id;
            auto report = verify_colouring_files(stem + ".cover.json", stem + ".colouring.json");
            if (! report.ok) {
                ++rejected;
                v.fail(row.run_id + ": " + report.message);
            }
        }

        auto golden = string{ NIBBLER_GOLDEN_DIR };
        auto corrupted = verify_colouring_files(golden + "/bowtie_cover.json", golden + "/bowtie_colouring_corrupted.json");
        if (corrupted.ok || corrupted.conflict != std::pair{ 4, 9 } || corrupted.message.find("colours 4 and 9") == string::npos)
            v.fail("corrupted fixture: " + corrupted.message);
        if (! verify_colouring_files(golden + "/bowtie_cover.json", golden + "/bowtie_colouring.json").ok)
            v.fail("clean fixture rejected");
        if (emitted == 0)
            v.fail("no colouring was emitted");

        v.detail << (v.pass ? "" : " ") << emitted << " colourings from " << runs << " runs verified from files, "
            << rejected << " rejected; corrupted fixture: " << corrupted.message;
    }
}

auto main() -> int
{
    omp_set_num_threads(4);
    criterion(1, "copy counts match subset enumeration", criterion_1);
    criterion(2, "clique copy counts follow the closed form", criterion_2);
    criterion(3, "bowtie two-fold cover creates a six-cycle", criterion_3);
    criterion(4, "lifting properties of random covers", criterion_4);
    criterion(5, "wasteful step invariants", criterion_5);
    criterion(6, "keep probability calibration", criterion_6);
    criterion(7, "parameter schedule grid", criterion_7);
    criterion(8, "finisher completes dominated instances", criterion_8);
    criterion(9, "emitted colourings pass the file verifier", criterion_9);
    std::cout << (failures ? "FAILED " : "ALL PASSED ") << failures << " of 9" << std::endl;
    return failures;
}
