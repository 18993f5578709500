#include <nibbler/serialize.hh>
#include <nibbler/errors.hh>
#include <nibbler/lifting.hh>

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>

using std::optional;
using std::string;
using std::to_string;
using std::vector;

namespace nibbler
{
    auto read_text_file(const string & path) -> string
    {
        std::ifstream in{ path, std::ios::binary };
        if (! in)
            throw IoError{ "cannot open " + path + " for reading" };
        std::ostringstream buffer;
        buffer << in.rdbuf();
        if (in.bad())
            throw IoError{ "error reading " + path };
        return buffer.str();
    }

    auto write_text_file(const string & path, const string & text) -> void
    {
        std::ofstream out{ path, std::ios::binary | std::ios::trunc };
        if (! out)
            throw IoError{ "cannot open " + path + " for writing" };
        out << text;
        if (! out.flush())
            throw IoError{ "error writing " + path };
    }

    namespace
    {
        auto graph_json(const Graph & g) -> Json
        {
            Json j;
            j["n"] = g.size();
            auto edges = Json::array();
            for (auto [u, v] : g.edges())
                edges.push_back({ u, v });
            j["edges"] = std::move(edges);
            return j;
        }

        auto graph_from(const nlohmann::json & j, const string & what) -> Graph
        {
            if (! j.is_object() || ! j.contains("n") || ! j.contains("edges"))
                throw InvalidInput{ what + " must be an object with \"n\" and \"edges\"" };
            vector<Edge> edges;
            for (auto & e : j.at("edges")) {
                if (! e.is_array() || e.size() != 2)
                    throw InvalidInput{ what + ": each edge must be a pair" };
                edges.emplace_back(e[0].get<int>(), e[1].get<int>());
            }
            return Graph{ j.at("n").get<int>(), edges };
        }

        auto parse_json(const string & text, const string & what) -> nlohmann::json
        {
            try {
                return nlohmann::json::parse(text);
            }
            catch (const nlohmann::json::exception & e) {
                throw InvalidInput{ what + ": " + e.what() };
            }
        }

        template <typename T_>
        auto optional_json(const optional<T_> & x) -> Json
        {
            return x ? Json(*x) : Json(nullptr);
        }
    }

    auto cover_to_json(const CorrespondenceCover & c) -> Json
    {
        Json j;
        j["base"] = graph_json(c.base);
        j["cover"] = graph_json(c.cover);
        j["lists"] = c.lists;
        if (! c.colour_names.empty())
            j["colour_names"] = c.colour_names;
        return j;
    }

    auto parse_cover_json(const string & text) -> CorrespondenceCover
    {
        auto j = parse_json(text, "cover JSON");
        if (! j.is_object() || ! j.contains("base") || ! j.contains("cover") || ! j.contains("lists"))
            throw InvalidInput{ "cover JSON must be an object with \"base\", \"cover\" and \"lists\"" };
        try {
            auto base = graph_from(j["base"], "cover JSON base");
            auto cover = graph_from(j["cover"], "cover JSON cover");
            auto lists = j["lists"].get<vector<vector<Colour>>>();
            if (static_cast<int>(lists.size()) != base.size())
                throw InvalidInput{ "cover JSON has " + to_string(lists.size()) + " lists for " + to_string(base.size()) + " vertices" };
            auto c = CorrespondenceCover::make(std::move(base), std::move(cover), std::move(lists));
            if (j.contains("colour_names"))
                c.colour_names = j["colour_names"].get<vector<int>>();
            return c;
        }
        catch (const nlohmann::json::exception & e) {
            throw InvalidInput{ string{ "cover JSON: " } + e.what() };
        }
    }

    auto read_cover_file(const string & path) -> CorrespondenceCover
    {
        return parse_cover_json(read_text_file(path));
    }

    auto colouring_to_json(const PartialColouring & phi) -> Json
    {
        Json j;
        j["colouring"] = phi.assignment();
        return j;
    }

    auto parse_colouring_json(const string & text) -> PartialColouring
    {
        auto j = parse_json(text, "colouring JSON");
        if (! j.is_object() || ! j.contains("colouring") || ! j["colouring"].is_array())
            throw InvalidInput{ "colouring JSON must be an object with a \"colouring\" array" };
        try {
            auto a = j["colouring"].get<vector<Colour>>();
            for (auto x : a)
                if (x < -1)
                    throw InvalidInput{ "colouring JSON: colour " + to_string(x) + " is negative" };
            return PartialColouring{ std::move(a) };
        }
        catch (const nlohmann::json::exception & e) {
            throw InvalidInput{ string{ "colouring JSON: " } + e.what() };
        }
    }

    auto read_colouring_file(const string & path) -> PartialColouring
    {
        return parse_colouring_json(read_text_file(path));
    }

    auto pattern_from_spec(const string & spec) -> PatternGraph
    {
        std::smatch m;
        static const std::regex single{ R"(([KCP])_?\{?(\d+)\}?)" };
        static const std::regex multi{ R"(K_?\{?(\d+(?:,\d+)+)\}?)" };
        if (std::regex_match(spec, m, single)) {
            auto n = std::stoi(m[2]);
            switch (m[1].str()[0]) {
                case 'K': return PatternGraph::complete(n);
                case 'C': return PatternGraph::cycle(n);
                default: return PatternGraph::path(n);
            }
        }
        if (std::regex_match(spec, m, multi)) {
            vector<int> sizes;
            std::stringstream parts{ m[1].str() };
            for (string part ; std::getline(parts, part, ',') ; )
                sizes.push_back(std::stoi(part));
            if (sizes.size() == 2 && sizes[0] >= sizes[1])
                return PatternGraph::complete_bipartite(sizes[0], sizes[1]);
            return complete_multipartite(sizes);
        }
        auto g = read_graph_file(spec);
        return PatternGraph{ g.graph, spec };
    }

    auto pattern_to_json(const PatternGraph & f) -> Json
    {
        Json j = graph_json(f.graph());
        j["name"] = f.name();
        j["aut_count"] = f.aut_count();
        j["bipartite"] = f.is_bipartite();
        if (auto st = f.s_t())
            j["s_t"] = { st->first, st->second };
        return j;
    }

    auto sparsity_report_to_json(const SparsityReport & r, bool per_vertex) -> Json
    {
        Json j;
        j["holds"] = r.holds();
        j["k"] = r.k;
        j["max_count"] = r.max_count;
        j["argmax_vertex"] = r.argmax_vertex;
        if (r.witness) {
            Json w;
            w["vertex"] = r.witness->vertex;
            auto copies = Json::array();
            for (auto & c : r.witness->copies) {
                Json cj;
                cj["vertices"] = c.vertices;
                auto edges = Json::array();
                for (auto [u, v] : c.edges)
                    edges.push_back({ u, v });
                cj["edges"] = std::move(edges);
                copies.push_back(std::move(cj));
            }
            w["copies"] = std::move(copies);
            j["witness"] = std::move(w);
        }
        else
            j["witness"] = nullptr;
        if (per_vertex)
            j["per_vertex_counts"] = r.per_vertex_counts;
        return j;
    }

    auto hypotheses_to_json(const HypothesisReport & r) -> Json
    {
        Json j;
        j["all_pass"] = r.all_pass();
        auto items = Json::array();
        for (auto & i : r.items) {
            Json ij;
            ij["id"] = i.id;
            ij["description"] = i.description;
            ij["pass"] = i.pass;
            ij["enforced"] = i.enforced;
            ij["measured"] = i.measured;
            ij["offender"] = optional_json(i.offender);
            items.push_back(std::move(ij));
        }
        j["items"] = std::move(items);
        return j;
    }

    auto accept_to_json(const AcceptReport & r) -> Json
    {
        Json j;
        j["accepted"] = r.accepted;
        j["failed"] = r.failed;
        j["details"] = r.details;
        return j;
    }

    auto outcome_to_json(const NibbleOutcome & o) -> Json
    {
        Json j;
        j["colouring"] = o.phi.assignment();
        j["pruned_lists"] = o.pruned_lists;
        Json t;
        t["activated"] = o.trace.activated;
        t["kept"] = o.trace.kept;
        t["coloured"] = o.trace.coloured;
        t["uncoloured"] = o.trace.uncoloured;
        t["kept_per_vertex"] = o.trace.kept_per_vertex;
        t["kept_uncoloured_edges"] = o.trace.kept_uncoloured_edges;
        j["trace"] = std::move(t);
        return j;
    }

    namespace
    {
        template <typename T_>
        auto sequence_json(const vector<T_> & xs, std::size_t max_entries) -> Json
        {
            Json j;
            j["length"] = xs.size();
            if (xs.size() <= max_entries) {
                j["values"] = xs;
                return j;
            }
            auto half = max_entries / 2;
            j["head"] = vector<T_>(xs.begin(), xs.begin() + half);
            j["tail"] = vector<T_>(xs.end() - (max_entries - half), xs.end());
            j["tail_start"] = xs.size() - (max_entries - half);
            return j;
        }
    }

    auto schedule_to_json(const Schedule & s, std::size_t max_entries) -> Json
    {
        Json j;
        j["epsilon"] = s.inputs.epsilon;
        j["d0"] = s.inputs.d;
        j["k"] = s.inputs.k;
        j["s"] = s.inputs.s;
        j["t"] = s.inputs.t;
        j["C"] = s.C;
        j["mu"] = s.mu;
        j["eta"] = s.eta;
        j["log_arg"] = s.log_arg;
        j["cap"] = s.cap;
        j["i_star"] = s.i_star;
        j["ell"] = sequence_json(s.ell, max_entries);
        j["d"] = sequence_json(s.d, max_entries);
        j["beta"] = sequence_json(s.beta, max_entries);
        j["keep"] = sequence_json(s.keep, max_entries);
        j["uncolour"] = sequence_json(s.uncolour, max_entries);
        return j;
    }

    auto sanity_to_json(const ScheduleSanity & s) -> Json
    {
        Json j;
        j["all_pass"] = s.all_pass();
        j["ratio_monotone"] = s.i1_ratio_monotone;
        j["ratio_first_failure"] = optional_json(s.i1_first_failure);
        j["ell_lower_bound"] = s.i2_lower_bound;
        j["ell_lower_bound_exponent"] = s.i2_exponent;
        j["exponent_in_unit_interval"] = s.i2_exponent_in_unit_interval;
        j["ell_lower_bound_holds"] = s.i2_lower_bound_holds;
        j["ell_lower_bound_first_failure"] = optional_json(s.i2_first_failure);
        j["ell_lower_bound_failures"] = s.i2_failures;
        j["i_star_within_cap"] = s.i3_within_cap;
        j["endpoint_reached"] = s.endpoint_reached;
        j["i_star_minimal"] = s.i_star_minimal;
        j["recurrences_consistent"] = s.recurrences_consistent;
        j["max_recurrence_error"] = s.max_recurrence_error;
        Json stage;
        stage["k_cap"] = optional_json(s.k_cap_first_failure);
        stage["ell_window"] = optional_json(s.ell_window_first_failure);
        stage["s_bound"] = optional_json(s.s_bound_first_failure);
        stage["eta_window"] = optional_json(s.eta_window_first_failure);
        stage["beta_small"] = optional_json(s.beta_small_first_failure);
        j["stage_hypotheses_first_failure"] = std::move(stage);
        return j;
    }

    auto resample_trace_to_json(const ResampleTrace & t) -> Json
    {
        Json j;
        j["rounds"] = t.rounds;
        j["resampled_events"] = t.resampled_events;
        j["resampled_vertices"] = t.resampled_vertices;
        j["final_proper"] = t.final_proper;
        return j;
    }

    auto pipeline_trace_to_json(const PipelineResult & r) -> Json
    {
        Json j;
        j["status"] = status_name(r.status);
        j["message"] = r.message;
        j["scheduled_k"] = r.scheduled_k;
        j["d"] = r.d;
        j["ell0"] = r.ell0;
        j["short_circuit"] = r.short_circuit;
        j["early_handover"] = r.early_handover;
        j["failed_stage"] = optional_json(r.failed_stage);
        if (r.schedule) {
            j["i_star"] = r.schedule->i_star;
            j["C"] = r.schedule->C;
            j["eta"] = r.schedule->eta;
        }
        else {
            j["i_star"] = nullptr;
        }
        auto stages = Json::array();
        for (auto & s : r.stages) {
            Json sj;
            sj["stage"] = s.stage;
            sj["ell"] = s.ell;
            sj["d"] = s.d;
            sj["beta"] = s.beta;
            sj["vertices"] = s.vertices;
            sj["min_list"] = s.min_list;
            sj["max_colour_degree"] = s.max_colour_degree;
            sj["attempts"] = s.attempts;
            sj["accepted"] = s.accepted;
            sj["coloured"] = s.coloured;
            sj["failed"] = s.failed;
            if (! s.accepted)
                sj["details"] = vector<string>(s.details.begin(), s.details.begin() + std::min<std::size_t>(s.details.size(), 20));
            stages.push_back(std::move(sj));
        }
        j["stages"] = std::move(stages);
        j["finisher_ell"] = r.finisher_ell;
        j["finisher"] = resample_trace_to_json(r.finisher);
        return j;
    }

    auto verify_colouring(const CorrespondenceCover & c, const PartialColouring & phi) -> VerifyReport
    {
        VerifyReport r;
        auto fail = [&] (string message) {
            r.ok = false;
            r.message = std::move(message);
            return r;
        };

        if (phi.size() != c.base.size())
            return fail("colouring has " + to_string(phi.size()) + " entries for " + to_string(c.base.size()) + " vertices");

        vector<char> chosen(c.cover.size(), 0);
        for (Vertex v = 0 ; v < phi.size() ; ++v) {
            auto x = phi.colour(v);
            if (x == -1) {
                r.vertex = v;
                return fail("vertex " + to_string(v) + " is uncoloured");
            }
            auto l = c.list(v);
            if (std::find(l.begin(), l.end(), x) == l.end()) {
                r.vertex = v;
                return fail("vertex " + to_string(v) + " has colour " + to_string(x) + ", which is not in its list");
            }
            chosen[x] = 1;
        }

        for (auto [x, y] : c.cover.edges())
            if (chosen[x] && chosen[y]) {
                r.conflict = std::pair{ x, y };
                return fail("colours " + to_string(x) + " and " + to_string(y) + " are both chosen and adjacent in the cover");
            }
        r.message = "ok";
        return r;
    }

    auto verify_colouring_files(const string & cover_path, const string & colouring_path) -> VerifyReport
    {
        auto c = read_cover_file(cover_path);
        auto phi = read_colouring_file(colouring_path);
        return verify_colouring(c, phi);
    }
}
