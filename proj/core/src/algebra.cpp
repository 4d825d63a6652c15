#include "dss/algebra.hpp"

#include <string>
#include <unordered_set>
#include <utility>

namespace dss {

namespace {

Mat blkdiag(const Mat& a, const Mat& b) {
    Mat out = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

std::string label_key(const StateLabel& l) { return l.origin + "\x1f" + l.name; }

// Concatenate the state labels of two operands. A collision is first
// resolved by prefixing both sides' origins with a stack position; if the
// labels are still equal after that the models are genuinely
// indistinguishable and the caller's DuplicateLabel is allowed to surface.
std::vector<StateLabel> merge_state_labels(const std::vector<StateLabel>& a,
                                           const std::vector<StateLabel>& b) {
    std::unordered_set<std::string> keys;
    for (const auto& l : a) keys.insert(label_key(l));
    bool collision = false;
    for (const auto& l : b)
        if (keys.count(label_key(l))) { collision = true; break; }

    std::vector<StateLabel> out;
    out.reserve(a.size() + b.size());
    if (!collision) {
        out.insert(out.end(), a.begin(), a.end());
        out.insert(out.end(), b.begin(), b.end());
        return out;
    }
    for (const auto& l : a) out.push_back({l.name, "s0/" + l.origin, l.kind});
    for (const auto& l : b) out.push_back({l.name, "s1/" + l.origin, l.kind});
    return out;
}

// Append one virtual state per port. Re-inverting a model recreates the same
// port names, so lengthen the "virtual:" prefix until the label is unique.
void append_virtual_labels(std::vector<StateLabel>& states,
                           const std::vector<std::string>& ports) {
    std::unordered_set<std::string> keys;
    for (const auto& l : states) keys.insert(label_key(l));
    for (const auto& port : ports) {
        StateLabel l{port, "virtual:" + port, StateKind::Virtual};
        while (keys.count(label_key(l))) l.origin = "virtual:" + l.origin;
        keys.insert(label_key(l));
        states.push_back(std::move(l));
    }
}

} // namespace

DssModel with_origin_prefix(const DssModel& model, const std::string& prefix) {
    DssModel out = model;
    for (auto& l : out.state_labels) l.origin = prefix + "/" + l.origin;
    return out;
}

DssModel inverse(const DssModel& model) {
    const Index n = model.n(), m = model.m(), p = model.p();
    if (m != p) throw NonSquareIO("inverse requires as many outputs as inputs");

    Mat e = blkdiag(model.E, Mat::Zero(m, m));
    Mat a(n + m, n + m);
    a << model.A, model.B,
        -model.C, -model.D;
    Mat b = Mat::Zero(n + m, m);
    b.bottomRows(m) = Mat::Identity(m, m);
    Mat c = Mat::Zero(m, n + m);
    c.rightCols(m) = Mat::Identity(m, m);
    Mat d = Mat::Zero(m, m);

    std::vector<StateLabel> states = model.state_labels;
    append_virtual_labels(states, model.input_labels);

    DssModel out = make_dss(e, a, b, c, d, std::move(states),
                            model.output_labels, model.input_labels);
    if (!pencil_is_regular(out))
        throw IrregularPencil("inverse produced a singular pencil; the source system has no inverse");
    return out;
}

DssModel sum(const DssModel& g1, const DssModel& g2) {
    if (g1.m() != g2.m() || g1.p() != g2.p())
        throw DimensionMismatch("sum requires matching input and output dimensions");
    Mat e = blkdiag(g1.E, g2.E);
    Mat a = blkdiag(g1.A, g2.A);
    Mat b(g1.n() + g2.n(), g1.m());
    b << g1.B, g2.B;
    Mat c(g1.p(), g1.n() + g2.n());
    c << g1.C, g2.C;
    return make_dss(e, a, b, c, g1.D + g2.D,
                    merge_state_labels(g1.state_labels, g2.state_labels),
                    g1.input_labels, g1.output_labels);
}

DssModel append(const DssModel& g1, const DssModel& g2) {
    Mat b = blkdiag(g1.B, g2.B);
    Mat c = blkdiag(g1.C, g2.C);
    Mat d = blkdiag(g1.D, g2.D);

    std::vector<std::string> inputs = g1.input_labels;
    inputs.insert(inputs.end(), g2.input_labels.begin(), g2.input_labels.end());
    std::vector<std::string> outputs = g1.output_labels;
    outputs.insert(outputs.end(), g2.output_labels.begin(), g2.output_labels.end());

    return make_dss(blkdiag(g1.E, g2.E), blkdiag(g1.A, g2.A), b, c, d,
                    merge_state_labels(g1.state_labels, g2.state_labels),
                    std::move(inputs), std::move(outputs));
}

DssModel embed(const DssModel& model, const Mat& lmat, const Mat& rmat,
               std::vector<std::string> input_labels,
               std::vector<std::string> output_labels) {
    if (lmat.cols() != model.p())
        throw DimensionMismatch("embed: output map must have p columns");
    if (rmat.rows() != model.m())
        throw DimensionMismatch("embed: input map must have m rows");

    const Index m2 = rmat.cols(), p2 = lmat.rows();
    if (input_labels.empty()) {
        input_labels = (m2 == model.m()) ? model.input_labels : default_port_labels(m2, "u");
    } else if (static_cast<Index>(input_labels.size()) != m2) {
        throw DimensionMismatch("embed: input label count must match new input dimension");
    }
    if (output_labels.empty()) {
        output_labels = (p2 == model.p()) ? model.output_labels : default_port_labels(p2, "y");
    } else if (static_cast<Index>(output_labels.size()) != p2) {
        throw DimensionMismatch("embed: output label count must match new output dimension");
    }

    return make_dss(model.E, model.A, model.B * rmat, lmat * model.C, lmat * model.D * rmat,
                    model.state_labels, std::move(input_labels), std::move(output_labels));
}

DssModel matrix_append(const std::vector<std::vector<DssModel>>& blocks) {
    if (blocks.empty() || blocks.front().empty()) throw EmptyGrid("matrix_append needs a nonempty grid");
    const size_t rows = blocks.size(), cols = blocks.front().size();
    for (const auto& row : blocks)
        if (row.size() != cols) throw DimensionMismatch("matrix_append grid must be rectangular");

    std::vector<Index> row_p(rows), col_m(cols);
    for (size_t i = 0; i < rows; ++i) row_p[i] = blocks[i][0].p();
    for (size_t j = 0; j < cols; ++j) col_m[j] = blocks[0][j].m();
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) {
            if (blocks[i][j].p() != row_p[i])
                throw DimensionMismatch("matrix_append: blocks in a grid row must share output dimension");
            if (blocks[i][j].m() != col_m[j])
                throw DimensionMismatch("matrix_append: blocks in a grid column must share input dimension");
        }

    DssModel stacked = blocks[0][0];
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j)
            if (i != 0 || j != 0) stacked = append(stacked, blocks[i][j]);

    const Index m_total = [&] { Index s = 0; for (Index m : col_m) s += m; return s; }();
    const Index p_total = [&] { Index s = 0; for (Index p : row_p) s += p; return s; }();

    std::vector<Index> col_off(cols, 0), row_off(rows, 0);
    for (size_t j = 1; j < cols; ++j) col_off[j] = col_off[j - 1] + col_m[j - 1];
    for (size_t i = 1; i < rows; ++i) row_off[i] = row_off[i - 1] + row_p[i - 1];

    // Stacked ports run row-major over the grid; rmat copies each shared
    // column input into every block of that column, lmat sums each grid
    // row's outputs.
    Mat rmat = Mat::Zero(stacked.m(), m_total);
    Mat lmat = Mat::Zero(p_total, stacked.p());
    Index in_pos = 0, out_pos = 0;
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) {
            rmat.block(in_pos, col_off[j], col_m[j], col_m[j]) = Mat::Identity(col_m[j], col_m[j]);
            lmat.block(row_off[i], out_pos, row_p[i], row_p[i]) = Mat::Identity(row_p[i], row_p[i]);
            in_pos += col_m[j];
            out_pos += row_p[i];
        }

    std::vector<std::string> inputs, outputs;
    for (size_t j = 0; j < cols; ++j)
        inputs.insert(inputs.end(), blocks[0][j].input_labels.begin(), blocks[0][j].input_labels.end());
    for (size_t i = 0; i < rows; ++i)
        outputs.insert(outputs.end(), blocks[i][0].output_labels.begin(), blocks[i][0].output_labels.end());

    return embed(stacked, lmat, rmat, std::move(inputs), std::move(outputs));
}

DssModel feedback(const DssModel& g1, const DssModel& g2, double sign) {
    if (g1.p() != g2.m() || g2.p() != g1.m())
        throw DimensionMismatch("feedback requires complementary port dimensions");
    const Index n1 = g1.n(), n2 = g2.n(), p1 = g1.p(), m = g1.m();

    // States [x1; x2; w] with w := y held by an algebraic row:
    //   0 = C1 x1 + sign*D1*C2 x2 + (sign*D1*D2 - I) w + D1 u
    Mat e = blkdiag(blkdiag(g1.E, g2.E), Mat::Zero(p1, p1));
    Mat a = Mat::Zero(n1 + n2 + p1, n1 + n2 + p1);
    a.topLeftCorner(n1, n1) = g1.A;
    a.block(0, n1, n1, n2) = sign * g1.B * g2.C;
    a.block(0, n1 + n2, n1, p1) = sign * g1.B * g2.D;
    a.block(n1, n1, n2, n2) = g2.A;
    a.block(n1, n1 + n2, n2, p1) = g2.B;
    a.block(n1 + n2, 0, p1, n1) = g1.C;
    a.block(n1 + n2, n1, p1, n2) = sign * g1.D * g2.C;
    a.block(n1 + n2, n1 + n2, p1, p1) = sign * g1.D * g2.D - Mat::Identity(p1, p1);

    Mat b = Mat::Zero(n1 + n2 + p1, m);
    b.topRows(n1) = g1.B;
    b.bottomRows(p1) = g1.D;
    Mat c = Mat::Zero(p1, n1 + n2 + p1);
    c.rightCols(p1) = Mat::Identity(p1, p1);

    std::vector<StateLabel> states = merge_state_labels(g1.state_labels, g2.state_labels);
    append_virtual_labels(states, g1.output_labels);

    DssModel out = make_dss(e, a, b, c, Mat::Zero(p1, m), std::move(states),
                            g1.input_labels, g1.output_labels);
    if (!pencil_is_regular(out))
        throw IrregularPencil("feedback loop is algebraically ill-posed");
    return out;
}

} // namespace dss
