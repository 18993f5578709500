#ifndef NIBBLER_GUARD_SERIALIZE_HH
#define NIBBLER_GUARD_SERIALIZE_HH 1

#include <nibbler/cover.hh>
#include <nibbler/finisher.hh>
#include <nibbler/nibble.hh>
#include <nibbler/patterns.hh>
#include <nibbler/pipeline.hh>
#include <nibbler/schedule.hh>

#include <json.hpp>

#include <optional>
#include <string>
#include <utility>

namespace nibbler
{
    using Json = nlohmann::ordered_json;

    /// Throws IoError.
    auto read_text_file(const std::string & path) -> std::string;
    auto write_text_file(const std::string & path, const std::string & text) -> void;

    /// {"base": graph, "cover": graph, "lists": [[colour, ...], ...]}, graph as {"n", "edges"}.
    auto cover_to_json(const CorrespondenceCover & c) -> Json;
    auto parse_cover_json(const std::string & text) -> CorrespondenceCover;
    auto read_cover_file(const std::string & path) -> CorrespondenceCover;

    /// {"colouring": [colour or -1, ...]}.
    auto colouring_to_json(const PartialColouring & phi) -> Json;
    auto parse_colouring_json(const std::string & text) -> PartialColouring;
    auto read_colouring_file(const std::string & path) -> PartialColouring;

    /// "K3", "C6", "P4", "K2,2" or "K_{2,2}", "K2,2,1"; anything else is read as a graph file.
    auto pattern_from_spec(const std::string & spec) -> PatternGraph;
    auto pattern_to_json(const PatternGraph & f) -> Json;

    auto sparsity_report_to_json(const SparsityReport & r, bool per_vertex = false) -> Json;
    auto hypotheses_to_json(const HypothesisReport & r) -> Json;
    auto accept_to_json(const AcceptReport & r) -> Json;
    auto outcome_to_json(const NibbleOutcome & o) -> Json;
    auto schedule_to_json(const Schedule & s, std::size_t max_entries = 64) -> Json;
    auto sanity_to_json(const ScheduleSanity & s) -> Json;
    auto resample_trace_to_json(const ResampleTrace & t) -> Json;
    auto pipeline_trace_to_json(const PipelineResult & r) -> Json;

    struct VerifyReport
    {
        bool ok = true;
        std::string message;
        std::optional<Vertex> vertex;                           // uncoloured or off-list vertex
        std::optional<std::pair<Colour, Colour>> conflict;      // adjacent chosen colours, smaller first
    };

    /// Totality, list membership and properness, checked straight off the cover's edge list.
    auto verify_colouring(const CorrespondenceCover & c, const PartialColouring & phi) -> VerifyReport;

    /// Reloads both files before checking, so nothing in memory is trusted.
    auto verify_colouring_files(const std::string & cover_path, const std::string & colouring_path) -> VerifyReport;
}

#endif
