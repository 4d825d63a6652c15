#pragma once

// Netlist parsing and system assembly: branch admittance models are embedded
// into node coordinates through incidence columns and summed into the
// network admittance; apparatus models stack beside it; the whole-system
// model is the inverse of the total admittance.

#include <optional>
#include <string>
#include <vector>

#include "dss/model.hpp"

namespace dss {

inline const std::string kGround = "GROUND";

enum class BranchKind { R, L, C, RL, DssFile };

struct Branch {
    std::string id;
    BranchKind kind = BranchKind::R;
    std::string from;
    std::string to;  ///< node id or kGround
    std::optional<double> r, l, c;
    std::string model_file;  ///< kind == DssFile only
};

struct Apparatus {
    std::string bus;
    std::string model_file;
};

struct Network {
    std::vector<std::string> nodes;  ///< declaration order fixes node indexing
    std::vector<Branch> branches;
    std::vector<Apparatus> apparatus;

    Index node_index(const std::string& id) const;  // -1 for GROUND
};

/// Node-to-branch-port incidence. Column b of mout is the branch's node
/// signature: +1 at `from`, -1 at `to`, a single entry for shunts to ground.
/// min is the voltage-difference map, the transpose of mout.
struct IncidenceMaps {
    Mat mout;  ///< n_nodes x n_branches
    Mat min;   ///< n_branches x n_nodes
};

IncidenceMaps incidence(const Network& net);

/// Parse and validate a netlist document. See the README for the format.
Network parse_netlist(const std::string& text);

/// parse_netlist on the contents of `path`.
Network load_netlist(const std::string& path);

/// Scalar admittance model of one branch, states origin-prefixed with
/// "branch:<id>". R, L, C map to the element primitives; RL is the chain
/// inverse(series(R, sL)); dss_file loads a 1x1 admittance model from disk
/// (relative paths resolved against base_dir).
DssModel branch_admittance(const Branch& branch, const std::string& base_dir = "");

/// Nodal admittance model of the whole network: inputs are the node
/// voltages, outputs the node injection currents,
///     Y = sum_b embed(Y_b, m_b, m_b^T).
/// Its transfer matrix at any s equals the classical complex nodal
/// admittance matrix.
DssModel network_admittance(const Network& net, const std::string& base_dir = "");

/// All apparatus admittance blocks appended and embedded into full node
/// ordering; buses without apparatus get zero coupling. States are
/// origin-prefixed with "apparatus:<bus>".
DssModel apparatus_stack(const Network& net, const std::string& base_dir = "");

/// Whole-system closure inverse(sum(ynet, yapp)): inputs become nodal
/// current injections, outputs nodal voltages. Adds one virtual voltage
/// state per node; every other state keeps its branch or apparatus origin.
DssModel whole_system(const DssModel& ynet, const DssModel& yapp);

} // namespace dss
