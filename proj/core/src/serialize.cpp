#include "dss/serialize.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

#include <nlohmann/json.hpp>

namespace dss {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double x) {
    if (x == 0.0) return "0";  // merge the two signed zeros
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

namespace {

ordered_json matrix_to_json(const Mat& m) {
    ordered_json rows = ordered_json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Mat matrix_from_json(const ordered_json& j, Index rows, Index cols, const std::string& name) {
    if (!j.is_array() || static_cast<Index>(j.size()) != rows)
        throw ParseError("matrix \"" + name + "\" must have " + std::to_string(rows) + " rows");
    Mat m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        const auto& row = j[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<Index>(row.size()) != cols)
            throw ParseError("matrix \"" + name + "\" row " + std::to_string(i) + " must have " +
                             std::to_string(cols) + " entries");
        for (Index k = 0; k < cols; ++k) {
            const auto& cell = row[static_cast<size_t>(k)];
            if (!cell.is_number()) throw ParseError("matrix \"" + name + "\" has a non-numeric entry");
            m(i, k) = cell.get<double>();
        }
    }
    return m;
}

ordered_json labels_to_json(const std::vector<StateLabel>& labels) {
    ordered_json arr = ordered_json::array();
    for (const auto& l : labels) {
        arr.push_back({{"name", l.name},
                       {"origin", l.origin},
                       {"kind", l.kind == StateKind::Virtual ? "virtual" : "physical"}});
    }
    return arr;
}

std::vector<StateLabel> labels_from_json(const ordered_json& j, Index n) {
    if (!j.is_array() || static_cast<Index>(j.size()) != n)
        throw ParseError("\"state_labels\" must list every state");
    std::vector<StateLabel> labels;
    labels.reserve(j.size());
    for (const auto& jl : j) {
        if (!jl.is_object() || !jl.contains("name") || !jl.contains("origin") || !jl.contains("kind"))
            throw ParseError("state labels need \"name\", \"origin\" and \"kind\"");
        const std::string kind = jl["kind"].get<std::string>();
        if (kind != "physical" && kind != "virtual")
            throw ParseError("state label kind must be \"physical\" or \"virtual\"");
        labels.push_back({jl["name"].get<std::string>(), jl["origin"].get<std::string>(),
                          kind == "virtual" ? StateKind::Virtual : StateKind::Physical});
    }
    return labels;
}

std::vector<std::string> strings_from_json(const ordered_json& j, Index count, const std::string& name) {
    if (!j.is_array() || static_cast<Index>(j.size()) != count)
        throw ParseError("\"" + name + "\" must have " + std::to_string(count) + " entries");
    std::vector<std::string> out;
    out.reserve(j.size());
    for (const auto& s : j) {
        if (!s.is_string()) throw ParseError("\"" + name + "\" entries must be strings");
        out.push_back(s.get<std::string>());
    }
    return out;
}

} // namespace

std::string model_to_json(const DssModel& model) {
    ordered_json j;
    j["n"] = model.n();
    j["m"] = model.m();
    j["p"] = model.p();
    j["E"] = matrix_to_json(model.E);
    j["A"] = matrix_to_json(model.A);
    j["B"] = matrix_to_json(model.B);
    j["C"] = matrix_to_json(model.C);
    j["D"] = matrix_to_json(model.D);
    j["state_labels"] = labels_to_json(model.state_labels);
    j["input_labels"] = model.input_labels;
    j["output_labels"] = model.output_labels;
    return j.dump(2) + "\n";
}

DssModel model_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const ordered_json::exception& e) {
        throw ParseError(std::string("model file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("model file must be a JSON object");
    for (const char* key : {"n", "m", "p"})
        if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 0)
            throw ParseError(std::string("model file needs a non-negative integer \"") + key + "\"");
    const Index n = j["n"].get<Index>(), m = j["m"].get<Index>(), p = j["p"].get<Index>();
    for (const char* key : {"E", "A", "B", "C", "D", "state_labels", "input_labels", "output_labels"})
        if (!j.contains(key)) throw ParseError(std::string("model file is missing \"") + key + "\"");

    return make_dss(matrix_from_json(j["E"], n, n, "E"), matrix_from_json(j["A"], n, n, "A"),
                    matrix_from_json(j["B"], n, m, "B"), matrix_from_json(j["C"], p, n, "C"),
                    matrix_from_json(j["D"], p, m, "D"), labels_from_json(j["state_labels"], n),
                    strings_from_json(j["input_labels"], m, "input_labels"),
                    strings_from_json(j["output_labels"], p, "output_labels"));
}

namespace {

std::string read_file(const std::string& path) {
    FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw FileNotFound("cannot open '" + path + "'");
    std::string text;
    char buf[4096];
    size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) text.append(buf, got);
    std::fclose(f);
    return text;
}

} // namespace

DssModel load_model(const std::string& path) {
    return model_from_json(read_file(path));
}

void save_model(const DssModel& model, const std::string& path) {
    const std::string text = model_to_json(model);
    FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw FileNotFound("cannot write '" + path + "'");
    std::fwrite(text.data(), 1, text.size(), f);
    std::fclose(f);
}

std::string ss_to_json(const SsResult& ss) {
    ordered_json j;
    j["n1"] = ss.A.rows();
    j["m"] = ss.B.cols();
    j["p"] = ss.C.rows();
    j["A"] = matrix_to_json(ss.A);
    j["B"] = matrix_to_json(ss.B);
    j["Bd"] = matrix_to_json(ss.Bd);
    j["C"] = matrix_to_json(ss.C);
    j["D"] = matrix_to_json(ss.D);
    j["Dd"] = matrix_to_json(ss.Dd);
    j["kept_labels"] = labels_to_json(ss.kept_labels);
    j["is_proper"] = ss.is_proper;
    return j.dump(2) + "\n";
}

std::string modes_to_csv(const ModeSet& modes, bool with_hz) {
    std::string csv = with_hz ? "mode_index,re_rad_s,im_rad_s,freq_hz,class\n"
                              : "mode_index,re_rad_s,im_rad_s,class\n";
    for (Index i = 0; i < modes.size(); ++i) {
        const bool finite = modes.classification[static_cast<size_t>(i)] == ModeClass::Finite;
        const Complex lambda = modes.eigenvalues[static_cast<size_t>(i)];
        csv += std::to_string(i);
        csv += ',';
        if (finite) {
            csv += format_double(lambda.real());
            csv += ',';
            csv += format_double(lambda.imag());
            csv += ',';
            if (with_hz) {
                csv += format_double(lambda.imag() / (2.0 * M_PI));
                csv += ',';
            }
        } else {
            csv += with_hz ? ",,," : ",,";
        }
        csv += finite ? "finite" : "virtual";
        csv += '\n';
    }
    return csv;
}

std::string participation_to_csv(const ModeParticipation& mode) {
    std::string csv = "state,origin,ptilde_mag,ptilde_arg\n";
    for (const auto& entry : mode.entries) {
        csv += entry.state.name;
        csv += ',';
        csv += entry.state.origin;
        csv += ',';
        csv += format_double(std::abs(entry.weighted));
        csv += ',';
        csv += format_double(std::arg(entry.weighted));
        csv += '\n';
    }
    return csv;
}

} // namespace dss
