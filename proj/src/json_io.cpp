#include "rpcfrag/json_io.hpp"

#include "rpcfrag/error.hpp"

namespace rpcfrag {

Json to_json(const SetPartition& pi)
{
    Json j = Json::array();
    for (const auto& b : pi.blocks()) j.push_back(b);
    return j;
}

SetPartition partition_from_json(const Json& j)
{
    require(j.is_array(), ErrorCode::malformed_partition, "a partition is a list of blocks");
    std::vector<Block> blocks;
    for (const auto& b : j) {
        require(b.is_array(), ErrorCode::malformed_partition, "each block is a list of integers");
        Block block;
        for (const auto& e : b) {
            require(e.is_number_integer(), ErrorCode::malformed_partition,
                    "block elements must be integers");
            block.push_back(e.get<int>());
        }
        blocks.push_back(std::move(block));
    }
    return canonicalize(blocks);
}

SetPartition parse_partition(const std::string& text)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error&) {
        fail(ErrorCode::malformed_partition, "partition is not valid JSON: " + text);
    }
    return partition_from_json(j);
}

Json to_json(const MassPartition& s)
{
    return {{"masses", s.masses}, {"dust_bound", s.dust_bound}};
}

Json to_json(const SizeBiasedSequence& s)
{
    return {{"sticks", s.sticks}, {"dust_bound", s.dust_bound}};
}

Json to_json(const CascadeTree& tree)
{
    Json levels = Json::array();
    for (const auto& level : tree.levels) {
        Json nodes = Json::array();
        for (const auto& node : level)
            nodes.push_back({{"index", node.index}, {"weight", node.weight}, {"dust", node.dust}});
        levels.push_back(std::move(nodes));
    }
    return {{"xs", tree.xs},
            {"eps", tree.eps},
            {"root_dust", tree.root_dust},
            {"truncation_bounds", tree.truncation_bounds},
            {"levels", std::move(levels)}};
}

Json to_json(const NestedIntervals& nested)
{
    Json levels = Json::array();
    for (const auto& family : nested.levels) {
        Json intervals = Json::array();
        for (const auto& iv : family.intervals)
            intervals.push_back({{"left", iv.left}, {"right", iv.right}, {"parent", iv.parent}});
        levels.push_back({{"length", family.length}, {"intervals", std::move(intervals)}});
    }
    return {{"xs", nested.xs},
            {"domain", nested.domain},
            {"eps", nested.eps},
            {"truncation_bounds", nested.truncation_bounds},
            {"levels", std::move(levels)}};
}

Json to_json(const TestReport& r)
{
    Json extras = Json::object();
    for (const auto& [k, v] : r.extras) extras[k] = v;
    Json j = {{"name", r.name},         {"statistic", r.statistic}, {"value", r.value},
              {"threshold", r.threshold}, {"pass", r.pass},         {"replicas", r.replicas},
              {"seed", r.seed},         {"extras", std::move(extras)}};
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

Json trajectory_header(const Trajectory& traj)
{
    return {{"record", "header"},
            {"direction", direction_name(traj.direction)},
            {"n", traj.n},
            {"horizon", traj.horizon},
            {"events", traj.events.size()}};
}

Json to_json(const TrajectoryEvent& event)
{
    return {{"time", event.time}, {"partition", to_json(event.partition)}};
}

}  // namespace rpcfrag
