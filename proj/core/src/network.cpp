#include "dss/network.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "dss/algebra.hpp"
#include "dss/elements.hpp"
#include "dss/serialize.hpp"

namespace dss {

using nlohmann::json;

Index Network::node_index(const std::string& id) const {
    if (id == kGround) return -1;
    const auto it = std::find(nodes.begin(), nodes.end(), id);
    if (it == nodes.end()) throw UnknownNode("node '" + id + "' is not declared");
    return static_cast<Index>(it - nodes.begin());
}

IncidenceMaps incidence(const Network& net) {
    const Index n = static_cast<Index>(net.nodes.size());
    const Index nb = static_cast<Index>(net.branches.size());
    Mat mout = Mat::Zero(n, nb);
    for (Index b = 0; b < nb; ++b) {
        const Branch& br = net.branches[static_cast<size_t>(b)];
        const Index from = net.node_index(br.from);
        const Index to = net.node_index(br.to);
        if (from >= 0) mout(from, b) += 1.0;
        if (to >= 0) mout(to, b) -= 1.0;
    }
    return {mout, mout.transpose()};
}

namespace {

double positive_param(const json& j, const std::string& key, const std::string& branch_id) {
    if (!j.contains(key) || !j[key].is_number())
        throw ParseError("branch '" + branch_id + "' is missing numeric parameter \"" + key + "\"");
    const double v = j[key].get<double>();
    if (!(v > 0.0) || !std::isfinite(v))
        throw NonPositiveValue("branch '" + branch_id + "' parameter \"" + key +
                               "\" must be positive and finite");
    return v;
}

BranchKind parse_kind(const std::string& kind, const std::string& branch_id) {
    if (kind == "R") return BranchKind::R;
    if (kind == "L") return BranchKind::L;
    if (kind == "C") return BranchKind::C;
    if (kind == "RL") return BranchKind::RL;
    if (kind == "dss_file") return BranchKind::DssFile;
    throw UnknownBranchKind("branch '" + branch_id + "' has unknown kind \"" + kind + "\"");
}

std::string require_string(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_string())
        throw ParseError(where + " is missing string field \"" + key + "\"");
    return j[key].get<std::string>();
}

} // namespace

Network parse_netlist(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("netlist is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("nodes") || !doc["nodes"].is_array() ||
        !doc.contains("branches") || !doc["branches"].is_array())
        throw ParseError("netlist must be an object with \"nodes\" and \"branches\" arrays");

    Network net;
    std::unordered_set<std::string> node_set;
    for (const auto& n : doc["nodes"]) {
        if (!n.is_string()) throw ParseError("node ids must be strings");
        std::string id = n.get<std::string>();
        if (id == kGround) throw ParseError("ground is implicit and cannot be declared as a node");
        if (!node_set.insert(id).second) throw ParseError("duplicate node id '" + id + "'");
        net.nodes.push_back(std::move(id));
    }
    if (doc["branches"].empty()) throw ParseError("netlist needs at least one branch");

    std::unordered_set<std::string> branch_ids;
    for (const auto& jb : doc["branches"]) {
        if (!jb.is_object()) throw ParseError("branches must be objects");
        Branch b;
        b.id = require_string(jb, "id", "a branch");
        if (!branch_ids.insert(b.id).second)
            throw ParseError("duplicate branch id '" + b.id + "'");
        b.kind = parse_kind(require_string(jb, "kind", "branch '" + b.id + "'"), b.id);
        b.from = require_string(jb, "from", "branch '" + b.id + "'");
        b.to = require_string(jb, "to", "branch '" + b.id + "'");
        if (b.from == kGround && b.to == kGround)
            throw ParseError("branch '" + b.id + "' connects ground to ground");
        if (b.from == kGround || node_set.count(b.from) == 0) {
            if (b.from == kGround)
                throw ParseError("branch '" + b.id + "' must start at a declared node");
            throw UnknownNode("branch '" + b.id + "' references undeclared node '" + b.from + "'");
        }
        if (b.to != kGround && node_set.count(b.to) == 0)
            throw UnknownNode("branch '" + b.id + "' references undeclared node '" + b.to + "'");

        switch (b.kind) {
        case BranchKind::R: b.r = positive_param(jb, "R", b.id); break;
        case BranchKind::L: b.l = positive_param(jb, "L", b.id); break;
        case BranchKind::C: b.c = positive_param(jb, "C", b.id); break;
        case BranchKind::RL:
            b.r = positive_param(jb, "R", b.id);
            b.l = positive_param(jb, "L", b.id);
            break;
        case BranchKind::DssFile:
            b.model_file = require_string(jb, "model_file", "branch '" + b.id + "'");
            break;
        }
        net.branches.push_back(std::move(b));
    }

    if (doc.contains("apparatus")) {
        if (!doc["apparatus"].is_array()) throw ParseError("\"apparatus\" must be an array");
        for (const auto& ja : doc["apparatus"]) {
            if (!ja.is_object()) throw ParseError("apparatus entries must be objects");
            Apparatus app;
            app.bus = require_string(ja, "bus", "an apparatus");
            if (node_set.count(app.bus) == 0)
                throw UnknownNode("apparatus references undeclared bus '" + app.bus + "'");
            app.model_file = require_string(ja, "model_file", "apparatus at bus '" + app.bus + "'");
            net.apparatus.push_back(std::move(app));
        }
    }
    return net;
}

namespace {

std::string read_text_file(const std::string& path) {
    FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw FileNotFound("cannot open '" + path + "'");
    std::string text;
    char buf[4096];
    size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) text.append(buf, got);
    std::fclose(f);
    return text;
}

std::string resolve(const std::string& base_dir, const std::string& path) {
    if (base_dir.empty() || path.empty() || path.front() == '/') return path;
    return base_dir + "/" + path;
}

} // namespace

Network load_netlist(const std::string& path) {
    return parse_netlist(read_text_file(path));
}

DssModel branch_admittance(const Branch& branch, const std::string& base_dir) {
    DssModel y = [&] {
        switch (branch.kind) {
        case BranchKind::R: return resistor(*branch.r, PortRole::Admittance);
        case BranchKind::L: return inductor_admittance(*branch.l);
        case BranchKind::C: return capacitor_admittance(*branch.c);
        case BranchKind::RL:
            return inverse(series({resistor(*branch.r, PortRole::Impedance),
                                   inductor_impedance(*branch.l)}));
        case BranchKind::DssFile: {
            DssModel m = load_model(resolve(base_dir, branch.model_file));
            if (m.m() != 1 || m.p() != 1)
                throw DimensionMismatch("branch '" + branch.id +
                                        "' model must be a scalar admittance");
            return m;
        }
        }
        throw Error("unreachable branch kind");
    }();
    return with_origin_prefix(y, "branch:" + branch.id);
}

namespace {

std::vector<std::string> node_port_labels(const Network& net, const char* suffix) {
    std::vector<std::string> labels;
    labels.reserve(net.nodes.size());
    for (const auto& id : net.nodes) labels.push_back("node:" + id + "/" + suffix);
    return labels;
}

} // namespace

DssModel network_admittance(const Network& net, const std::string& base_dir) {
    if (net.branches.empty()) throw ParseError("network has no branches");
    const IncidenceMaps inc = incidence(net);
    const auto vin = node_port_labels(net, "v");
    const auto iout = node_port_labels(net, "i");

    DssModel acc;
    for (size_t b = 0; b < net.branches.size(); ++b) {
        const DssModel yb = branch_admittance(net.branches[b], base_dir);
        const Mat col = inc.mout.col(static_cast<Index>(b));
        DssModel term = embed(yb, col, col.transpose(), vin, iout);
        acc = (b == 0) ? std::move(term) : sum(acc, term);
    }
    return acc;
}

DssModel apparatus_stack(const Network& net, const std::string& base_dir) {
    const Index n = static_cast<Index>(net.nodes.size());
    const auto vin = node_port_labels(net, "v");
    const auto iout = node_port_labels(net, "i");
    if (net.apparatus.empty())
        return make_dss(Mat(0, 0), Mat(0, 0), Mat(0, n), Mat(n, 0), Mat::Zero(n, n),
                        {}, vin, iout);

    DssModel stacked;
    Mat lmat = Mat::Zero(n, static_cast<Index>(net.apparatus.size()));
    for (size_t a = 0; a < net.apparatus.size(); ++a) {
        const Apparatus& app = net.apparatus[a];
        DssModel m = load_model(resolve(base_dir, app.model_file));
        if (m.m() != 1 || m.p() != 1)
            throw DimensionMismatch("apparatus at bus '" + app.bus +
                                    "' must be a scalar admittance block");
        m = with_origin_prefix(m, "apparatus:" + app.bus);
        stacked = (a == 0) ? std::move(m) : append(stacked, m);
        lmat(net.node_index(app.bus), static_cast<Index>(a)) = 1.0;
    }
    return embed(stacked, lmat, lmat.transpose(), vin, iout);
}

DssModel whole_system(const DssModel& ynet, const DssModel& yapp) {
    if (ynet.m() != yapp.m() || ynet.p() != yapp.p())
        throw DimensionMismatch("network and apparatus blocks must share node dimensions");
    return inverse(sum(ynet, yapp));
}

} // namespace dss
