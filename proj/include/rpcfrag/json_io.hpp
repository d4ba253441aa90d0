#pragma once

#include "rpcfrag/cascade.hpp"
#include "rpcfrag/engines.hpp"
#include "rpcfrag/oracle.hpp"
#include "rpcfrag/partition.hpp"
#include "rpcfrag/samplers.hpp"

#include <json.hpp>

namespace rpcfrag {

using Json = nlohmann::json;

Json to_json(const SetPartition& pi);
// Accepts any list of disjoint blocks covering {1..n}; malformed input is a
// malformed_partition error.
SetPartition partition_from_json(const Json& j);
SetPartition parse_partition(const std::string& text);

Json to_json(const MassPartition& s);
Json to_json(const SizeBiasedSequence& s);
Json to_json(const CascadeTree& tree);
Json to_json(const NestedIntervals& nested);
Json to_json(const TestReport& report);

Json trajectory_header(const Trajectory& traj);
Json to_json(const TrajectoryEvent& event);

}  // namespace rpcfrag
