// dsskit: command-line front end for descriptor state-space system assembly
// and analysis. Every command reads files, writes one machine-readable
// output file (or stdout for verify), and reports problems on stderr with a
// stable exit code:
//   1 usage, file, or input errors
//   2 irregular pencil / numerical failure
//   3 virtual or out-of-range mode requested
//   4 defective (repeated) mode
//   5 DAE index too high for the transform
//   6 verification mismatch

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <dss/algebra.hpp>
#include <dss/elements.hpp>
#include <dss/modal.hpp>
#include <dss/network.hpp>
#include <dss/serialize.hpp>
#include <dss/transform.hpp>

namespace {

bool g_quiet = false;

void note(const std::string& msg) {
    if (!g_quiet) std::cerr << "dsskit: " << msg << "\n";
}

int exit_code_for(const dss::Error& e) {
    if (dynamic_cast<const dss::VirtualModeRequested*>(&e)) return 3;
    if (dynamic_cast<const dss::DefectiveMode*>(&e)) return 4;
    if (dynamic_cast<const dss::HigherIndex*>(&e)) return 5;
    if (dynamic_cast<const dss::IrregularPencil*>(&e)) return 2;
    if (dynamic_cast<const dss::SingularE*>(&e)) return 2;
    if (dynamic_cast<const dss::SingularAtS*>(&e)) return 2;
    if (dynamic_cast<const dss::ConvergenceFailure*>(&e)) return 2;
    return 1;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const dss::Error& e) {
        std::cerr << "dsskit: error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "dsskit: error: " << e.what() << "\n";
        return 1;
    }
}

std::string dir_of(const std::string& path) {
    const auto pos = path.find_last_of('/');
    return pos == std::string::npos ? std::string() : path.substr(0, pos);
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw dss::FileNotFound("cannot write '" + path + "'");
    out << text;
}

dss::DssModel build_whole_system(const std::string& netlist_path) {
    const dss::Network net = dss::load_netlist(netlist_path);
    const std::string base = dir_of(netlist_path);
    return dss::whole_system(dss::network_admittance(net, base),
                             dss::apparatus_stack(net, base));
}

std::vector<double> log_spaced(double from, double to, int points) {
    std::vector<double> w(static_cast<size_t>(points));
    for (int k = 0; k < points; ++k)
        w[static_cast<size_t>(k)] =
            from * std::pow(to / from, static_cast<double>(k) / (points - 1));
    return w;
}

// Classical complex nodal admittance matrix, assembled by scalar arithmetic
// (independent of the composition algebra for the built-in branch kinds).
dss::CMat oracle_admittance(const dss::Network& net, const std::string& base,
                            dss::Complex s) {
    const auto n = static_cast<dss::Index>(net.nodes.size());
    dss::CMat y = dss::CMat::Zero(n, n);
    for (const auto& br : net.branches) {
        dss::Complex yb;
        switch (br.kind) {
        case dss::BranchKind::R: yb = 1.0 / *br.r; break;
        case dss::BranchKind::L: yb = 1.0 / (s * *br.l); break;
        case dss::BranchKind::C: yb = s * *br.c; break;
        case dss::BranchKind::RL: yb = 1.0 / (*br.r + s * *br.l); break;
        case dss::BranchKind::DssFile: {
            const std::string path =
                br.model_file.front() == '/' || base.empty() ? br.model_file
                                                             : base + "/" + br.model_file;
            yb = dss::eval_tf(dss::load_model(path), s)(0, 0);
            break;
        }
        }
        const dss::Index f = net.node_index(br.from);
        const dss::Index t = net.node_index(br.to);
        if (f >= 0) y(f, f) += yb;
        if (t >= 0) y(t, t) += yb;
        if (f >= 0 && t >= 0) {
            y(f, t) -= yb;
            y(t, f) -= yb;
        }
    }
    for (const auto& app : net.apparatus) {
        const std::string path = app.model_file.front() == '/' || base.empty()
                                     ? app.model_file
                                     : base + "/" + app.model_file;
        const dss::Index bus = net.node_index(app.bus);
        y(bus, bus) += dss::eval_tf(dss::load_model(path), s)(0, 0);
    }
    return y;
}

int cmd_build(const std::string& netlist_path, const std::string& out_path) {
    dss::save_model(build_whole_system(netlist_path), out_path);
    note("wrote " + out_path);
    return 0;
}

int cmd_modes(const std::string& model_path, const std::string& out_path, bool hz) {
    const dss::DssModel model = dss::load_model(model_path);
    const dss::ModeSet modes = dss::generalized_eig(model);
    write_file(out_path, dss::modes_to_csv(modes, hz));
    note("wrote " + out_path);
    return 0;
}

int cmd_participation(const std::string& model_path, long mode_index,
                      const std::string& out_path) {
    const dss::DssModel model = dss::load_model(model_path);
    const dss::ModeSet modes = dss::normalize(dss::generalized_eig(model), model);
    if (mode_index < 0 || mode_index >= modes.size())
        throw dss::VirtualModeRequested("mode index " + std::to_string(mode_index) +
                                        " is out of range (model has " +
                                        std::to_string(modes.size()) + " modes)");
    if (modes.classification[static_cast<size_t>(mode_index)] != dss::ModeClass::Finite)
        throw dss::VirtualModeRequested("mode " + std::to_string(mode_index) +
                                        " is a virtual mode; participation is undefined");
    if (modes.defective[static_cast<size_t>(mode_index)])
        throw dss::DefectiveMode("mode " + std::to_string(mode_index) +
                                 " is repeated or defective");
    const dss::ParticipationReport report = dss::participation(model, modes);
    for (const auto& mp : report.modes) {
        if (mp.mode_index != mode_index) continue;
        write_file(out_path, dss::participation_to_csv(mp));
        note("wrote " + out_path);
        return 0;
    }
    throw dss::DefectiveMode("mode " + std::to_string(mode_index) + " has no participation data");
}

int cmd_freqresp(const std::string& model_path, double from, double to, int points,
                 const std::string& out_path) {
    const dss::DssModel model = dss::load_model(model_path);
    std::string csv = "omega_rad_s";
    for (dss::Index i = 0; i < model.p(); ++i)
        for (dss::Index j = 0; j < model.m(); ++j) {
            const std::string suffix = "_" + std::to_string(i) + "_" + std::to_string(j);
            csv += ",mag" + suffix + ",arg" + suffix;
        }
    csv += '\n';
    int written = 0;
    for (double w : log_spaced(from, to, points)) {
        dss::CMat g;
        try {
            g = dss::eval_tf(model, dss::Complex(0.0, w));
        } catch (const dss::SingularAtS&) {
            note("skipping singular sample at omega = " + dss::format_double(w));
            continue;
        }
        csv += dss::format_double(w);
        for (dss::Index i = 0; i < model.p(); ++i)
            for (dss::Index j = 0; j < model.m(); ++j) {
                csv += ',';
                csv += dss::format_double(std::abs(g(i, j)));
                csv += ',';
                csv += dss::format_double(std::arg(g(i, j)));
            }
        csv += '\n';
        ++written;
    }
    if (written == 0) throw dss::SingularAtS("every requested sample hit a singular point");
    write_file(out_path, csv);
    note("wrote " + out_path);
    return 0;
}

int cmd_convert(const std::string& model_path, const std::string& out_path) {
    const dss::SsResult ss = dss::to_ss(dss::load_model(model_path));
    write_file(out_path, dss::ss_to_json(ss));
    note("wrote " + out_path);
    return 0;
}

int cmd_verify(const std::string& netlist_path, const std::string& model_path) {
    const dss::Network net = dss::load_netlist(netlist_path);
    const std::string base = dir_of(netlist_path);
    const dss::DssModel model = model_path.empty()
                                    ? dss::whole_system(dss::network_admittance(net, base),
                                                        dss::apparatus_stack(net, base))
                                    : dss::load_model(model_path);
    if (model.m() != static_cast<dss::Index>(net.nodes.size()) ||
        model.p() != static_cast<dss::Index>(net.nodes.size()))
        throw dss::DimensionMismatch("model port count does not match the netlist node count");

    double max_err = 0.0;
    int valid = 0;
    for (double w : log_spaced(1e-1, 1e4, 20)) {
        const dss::Complex s(0.0, w);
        dss::CMat got, want;
        try {
            const dss::CMat y = oracle_admittance(net, base, s);
            want = y.fullPivLu().solve(dss::CMat::Identity(y.rows(), y.cols()));
            got = dss::eval_tf(model, s);
        } catch (const dss::SingularAtS&) {
            note("skipping singular sample at omega = " + dss::format_double(w));
            continue;
        }
        const double scale = std::max(want.norm(), 1e-300);
        max_err = std::max(max_err, (got - want).norm() / scale);
        ++valid;
    }
    if (valid == 0) throw dss::SingularAtS("every verification sample hit a singular point");
    std::cout << "max relative error = " << dss::format_double(max_err) << "\n";
    return max_err < 1e-9 ? 0 : 6;
}

struct SweepTarget {
    std::string branch_id;
    std::string field;
};

SweepTarget resolve_param(const dss::Network& net, const std::string& param_path) {
    const auto first = param_path.find('.');
    const auto second = param_path.find('.', first + 1);
    if (first == std::string::npos || second == std::string::npos ||
        param_path.substr(0, first) != "branches")
        throw dss::ParseError("param path must look like branches.<id>.<R|L|C>");
    SweepTarget target{param_path.substr(first + 1, second - first - 1),
                       param_path.substr(second + 1)};
    for (const auto& br : net.branches) {
        if (br.id != target.branch_id) continue;
        if ((target.field == "R" && br.r) || (target.field == "L" && br.l) ||
            (target.field == "C" && br.c))
            return target;
        throw dss::ParseError("branch '" + target.branch_id + "' has no parameter \"" +
                              target.field + "\"");
    }
    throw dss::ParseError("no branch with id '" + target.branch_id + "'");
}

int cmd_sweep(const std::string& netlist_path, const std::string& param_path,
              double from, double to, int steps, const std::string& out_path) {
    dss::Network net = dss::load_netlist(netlist_path);
    const std::string base = dir_of(netlist_path);
    const SweepTarget target = resolve_param(net, param_path);

    std::string csv = "param,mode_index,re_rad_s,im_rad_s\n";
    for (int k = 0; k < steps; ++k) {
        const double value = from + (to - from) * static_cast<double>(k) / (steps - 1);
        if (!(value > 0.0))
            throw dss::NonPositiveValue("sweep reaches a non-positive parameter value");
        for (auto& br : net.branches) {
            if (br.id != target.branch_id) continue;
            if (target.field == "R") br.r = value;
            else if (target.field == "L") br.l = value;
            else br.c = value;
        }
        const dss::DssModel whole = dss::whole_system(dss::network_admittance(net, base),
                                                      dss::apparatus_stack(net, base));
        const dss::ModeSet modes = dss::generalized_eig(whole);
        for (dss::Index i = 0; i < modes.size(); ++i) {
            if (modes.classification[static_cast<size_t>(i)] != dss::ModeClass::Finite) continue;
            csv += dss::format_double(value);
            csv += ',';
            csv += std::to_string(i);
            csv += ',';
            csv += dss::format_double(modes.eigenvalues[static_cast<size_t>(i)].real());
            csv += ',';
            csv += dss::format_double(modes.eigenvalues[static_cast<size_t>(i)].imag());
            csv += '\n';
        }
    }
    write_file(out_path, csv);
    note("wrote " + out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"descriptor state-space modeling and modal analysis"};
    app.require_subcommand(1);

    double tol = 0.0;
    app.add_option("--tol", tol, "rank / regularity tolerance (0 = automatic)")
        ->check(CLI::NonNegativeNumber);
    app.add_flag("--quiet", g_quiet, "suppress progress notes on stderr");

    std::string netlist_path, model_path, out_path, param_path, verify_model;
    long mode_index = 0;
    double from = 0.0, to = 0.0;
    int points = 0, steps = 0;
    bool hz = false;

    auto* build = app.add_subcommand("build", "assemble the whole-system model from a netlist");
    build->add_option("netlist", netlist_path, "netlist JSON file")->required();
    build->add_option("out", out_path, "output model JSON file")->required();

    auto* modes = app.add_subcommand("modes", "compute all modes of a model");
    modes->add_option("model", model_path, "model JSON file")->required();
    modes->add_option("out", out_path, "output CSV file")->required();
    modes->add_flag("--hz", hz, "add a frequency column in Hz");

    auto* part = app.add_subcommand("participation", "participation factors of one mode");
    part->add_option("model", model_path, "model JSON file")->required();
    part->add_option("out", out_path, "output CSV file")->required();
    part->add_option("--mode-index", mode_index, "mode row index from the modes CSV")->required();

    auto* freq = app.add_subcommand("freqresp", "frequency response samples");
    freq->add_option("model", model_path, "model JSON file")->required();
    freq->add_option("out", out_path, "output CSV file")->required();
    freq->add_option("--from", from, "start angular frequency rad/s")->required();
    freq->add_option("--to", to, "end angular frequency rad/s")->required();
    freq->add_option("--points", points, "number of log-spaced samples")->required();

    auto* convert = app.add_subcommand("convert", "reduce a model to explicit state space");
    convert->add_option("model", model_path, "model JSON file")->required();
    convert->add_option("out", out_path, "output JSON file")->required();

    auto* verify = app.add_subcommand("verify", "compare a model against nodal arithmetic");
    verify->add_option("netlist", netlist_path, "netlist JSON file")->required();
    verify->add_option("--model", verify_model, "model file to check (default: rebuild)");

    auto* sweep = app.add_subcommand("sweep", "finite-mode locus over one parameter");
    sweep->add_option("netlist", netlist_path, "netlist JSON file")->required();
    sweep->add_option("out", out_path, "output CSV file")->required();
    sweep->add_option("--param", param_path, "parameter path, e.g. branches.b1.L")->required();
    sweep->add_option("--from", from, "first parameter value")->required();
    sweep->add_option("--to", to, "last parameter value")->required();
    sweep->add_option("--steps", steps, "number of sweep steps")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Fold CLI11's many parse-error codes into the documented usage code.
        return app.exit(e) == 0 ? 0 : 1;
    }

    return guarded([&]() -> int {
        if (tol > 0.0) dss::set_rank_tolerance(tol);
        if (build->parsed()) return cmd_build(netlist_path, out_path);
        if (modes->parsed()) return cmd_modes(model_path, out_path, hz);
        if (part->parsed()) return cmd_participation(model_path, mode_index, out_path);
        if (freq->parsed()) {
            if (!(from > 0.0) || !(to > from) || points < 2) {
                std::cerr << "dsskit: freqresp needs 0 < --from < --to and --points >= 2\n";
                return 1;
            }
            return cmd_freqresp(model_path, from, to, points, out_path);
        }
        if (convert->parsed()) return cmd_convert(model_path, out_path);
        if (verify->parsed()) return cmd_verify(netlist_path, verify_model);
        if (sweep->parsed()) {
            if (steps < 2 || from == to) {
                std::cerr << "dsskit: sweep needs --steps >= 2 and --from != --to\n";
                return 1;
            }
            return cmd_sweep(netlist_path, param_path, from, to, steps, out_path);
        }
        return 1;
    });
}
