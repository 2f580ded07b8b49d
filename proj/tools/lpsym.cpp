// Command-line front end: symmetry classification of the projected
// Minkowski-type equation det D^2 u = (1+|x|^2)^{-(p+n+1)/2} u^{p-1},
// numeric certification of the one-parameter group actions as convex-body
// transformations, and the unimodular rotation-scaling-rotation split.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lpsym/classify.hpp"
#include "lpsym/report_json.hpp"
#include "lpsym/verify.hpp"

namespace {

using namespace lpsym;

struct OutputOptions {
    std::string format = "text";
    std::string out_path;
    bool timing = false;
};

void add_output_flags(CLI::App* cmd, OutputOptions& oo) {
    cmd->add_option("--format", oo.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--out", oo.out_path, "Write the report to a file");
    cmd->add_flag("--timing", oo.timing, "Include timing_ms in JSON output (non-reproducible)");
}

int emit(const OutputOptions& oo, const Json& envelope, const std::string& text) {
    std::string payload = oo.format == "json" ? envelope.dump(2) + "\n" : text;
    if (!oo.out_path.empty()) {
        std::ofstream f(oo.out_path, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot open output file " << oo.out_path << "\n";
            return 1;
        }
        f << payload;
    }
    std::cout << payload;
    return 0;
}

Json envelope(const std::string& command, Json inputs, Json results, const OutputOptions& oo, double ms) {
    Json env;
    env["schema"] = 1;
    env["command"] = command;
    env["inputs"] = std::move(inputs);
    env["results"] = std::move(results);
    if (oo.timing) env["timing_ms"] = ms;
    return env;
}

MatD parse_matrix(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::stringstream ss(text);
    std::string row;
    while (std::getline(ss, row, ';')) {
        std::vector<double> r;
        std::stringstream rs(row);
        std::string cell;
        while (std::getline(rs, cell, ',')) r.push_back(std::stod(cell));
        if (!r.empty()) rows.push_back(std::move(r));
    }
    if (rows.empty()) throw CLI::ValidationError("--matrix", "empty matrix");
    MatD m(int(rows.size()), int(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size()) throw CLI::ValidationError("--matrix", "ragged matrix rows");
        for (size_t j = 0; j < rows[i].size(); ++j) m(int(i), int(j)) = rows[i][j];
    }
    return m;
}

struct ActionArgs {
    std::string id;
    int axis = 1;  // 1-based on the command line
    double eps = 0.3;
    std::string matrix;
    uint64_t seed = 1;
};

GroupAction build_action(const ActionArgs& aa, int n) {
    Rng rng(aa.seed);
    if (aa.id == "g1") {
        MatD R = aa.matrix.empty() ? rng.rotation(n) : parse_matrix(aa.matrix);
        return GroupAction::g1(std::move(R));
    }
    if (aa.id == "g2") return GroupAction::g2(n, aa.eps);
    if (aa.id == "g3") return GroupAction::g3(n, aa.axis - 1, aa.eps);
    if (aa.id == "g4") return GroupAction::g4(n, aa.eps);
    if (aa.id == "g5") return GroupAction::g5(n, aa.axis - 1, aa.eps);
    if (aa.id == "g6") {
        MatD A = aa.matrix.empty() ? rng.special_linear(n) : parse_matrix(aa.matrix);
        return GroupAction::g6(std::move(A));
    }
    if (aa.id == "g7") return GroupAction::g7(n, aa.axis - 1, aa.eps);
    if (aa.id == "g8") return GroupAction::g8(n, aa.axis - 1, aa.eps);
    if (aa.id == "g9") return GroupAction::g9(n, aa.axis - 1, aa.eps);
    throw CLI::ValidationError("--action", "unknown action id: " + aa.id);
}

std::string render_report_text(const ResidualReport& r) {
    std::ostringstream os;
    os << r.kind << " " << r.subject;
    if (!r.p.empty()) os << " at p = " << r.p;
    os << " on " << r.field << " (n = " << r.n << ")\n";
    os << "  samples " << r.samples << ", evaluated " << r.evaluated << ", skipped " << r.skipped << "\n";
    os << "  max |residual| = " << r.max_abs << ", mean = " << r.mean_abs << ", tolerance = " << r.tolerance
       << "\n";
    for (auto& [k, v] : r.notes) os << "  " << k << ": " << v << "\n";
    os << "  verdict: " << r.verdict << "\n";
    return os.str();
}

int check_expectation(const ResidualReport& r, const std::string& expect) {
    if (expect.empty() || r.verdict == expect) return 0;
    std::cerr << "error: verdict " << r.verdict << " does not match expected " << expect << "\n";
    return 2;
}

int run_classify(int n, const std::string& p_text, int degree, const OutputOptions& oo) {
    Rat p = parse_rat(p_text);
    auto t0 = std::chrono::steady_clock::now();
    LieAlgebraBasis basis = classify(n, p, degree);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    std::ostringstream os;
    os << "symmetry algebra for n = " << n << ", p = " << rat_str(p) << " (ansatz degree " << degree << ")\n";
    os << "dimension " << basis.dimension << "; determining system: " << basis.system_rows << " rows, "
       << basis.system_cols << " cols, rank " << basis.system_rank << "\n";
    for (size_t i = 0; i < basis.generators.size(); ++i)
        os << "  [" << family_name(basis.tags[i]) << "] " << basis.generators[i].str() << "\n";

    Json inputs{{"n", n}, {"p", rat_str(p)}, {"ansatz_degree", degree}};
    return emit(oo, envelope("classify", inputs, to_json(basis), oo, ms), os.str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symmetry classification and certification for the projected Minkowski-type equation"};
    app.require_subcommand(1);

    OutputOptions oo;

    // classify
    int n = 2, degree = 3;
    std::string p_text = "1";
    auto* c_classify = app.add_subcommand("classify", "Compute the symmetry Lie algebra basis");
    c_classify->add_option("--n", n, "Dimension (>= 1)")->required();
    c_classify->add_option("--p", p_text, "Exponent p as an exact rational (e.g. -3/1, 0.5)")->required();
    c_classify->add_option("--ansatz-degree", degree, "Polynomial ansatz degree (>= 2)");
    add_output_flags(c_classify, oo);

    // scan
    std::vector<std::string> p_list;
    std::string p_from, p_to, p_step;
    auto* c_scan = app.add_subcommand("scan", "Tabulate algebra dimension over a range of p");
    c_scan->add_option("--n", n, "Dimension (>= 1)")->required();
    c_scan->add_option("--p", p_list, "Explicit p values (repeatable)");
    c_scan->add_option("--p-from", p_from, "Range start");
    c_scan->add_option("--p-to", p_to, "Range end");
    c_scan->add_option("--step", p_step, "Range step (> 0)");
    c_scan->add_option("--ansatz-degree", degree, "Polynomial ansatz degree (>= 2)");
    add_output_flags(c_scan, oo);

    // verify
    ActionArgs aa;
    int samples = 1000;
    double radius = 5.0;
    std::string expect = "confirmed";
    std::string field_name = "unit-ball";
    auto* c_verify = app.add_subcommand("verify", "Transport a solution under an action and certify it");
    c_verify->add_option("--n", n, "Dimension")->required();
    c_verify->add_option("--p", p_text, "Exponent p")->required();
    c_verify->add_option("--action", aa.id, "Action id g1..g9")->required();
    c_verify->add_option("--eps", aa.eps, "Group parameter (dilation factor for g7, scale for g2)");
    c_verify->add_option("--axis", aa.axis, "Axis (1-based) for g3, g5, g7, g8, g9");
    c_verify->add_option("--matrix", aa.matrix, "Matrix for g1/g6 as 'a,b;c,d'");
    c_verify->add_option("--samples", samples, "Sample count");
    c_verify->add_option("--radius", radius, "Chart sampling radius");
    c_verify->add_option("--seed", aa.seed, "RNG seed");
    c_verify->add_option("--expect", expect, "Expected verdict")
        ->check(CLI::IsMember({"confirmed", "refuted", "inconclusive"}));
    add_output_flags(c_verify, oo);

    // resolve
    auto* c_resolve = app.add_subcommand("resolve", "Resolve an action as convex-body transformations");
    c_resolve->add_option("--n", n, "Dimension")->required();
    c_resolve->add_option("--action", aa.id, "Action id g1..g9")->required();
    c_resolve->add_option("--eps", aa.eps, "Group parameter");
    c_resolve->add_option("--axis", aa.axis, "Axis (1-based)");
    c_resolve->add_option("--matrix", aa.matrix, "Matrix for g1/g6");
    c_resolve->add_option("--samples", samples, "Sample count");
    c_resolve->add_option("--radius", radius, "Chart sampling radius");
    c_resolve->add_option("--seed", aa.seed, "RNG seed");
    add_output_flags(c_resolve, oo);

    // decompose
    std::string matrix_text;
    auto* c_decompose = app.add_subcommand("decompose", "Rotation-scaling-rotation split of a unimodular matrix");
    c_decompose->add_option("--matrix", matrix_text, "Square matrix as 'a,b;c,d'")->required();
    add_output_flags(c_decompose, oo);

    // lemma
    std::string lemma_id;
    auto* c_lemma = app.add_subcommand("lemma", "Certify one support-function identity on a random body");
    c_lemma->add_option("--n", n, "Dimension")->required();
    c_lemma
        ->add_option("--lemma", lemma_id,
                     "One of rotation, axis-scaling, translation, shear-last, shear-axis "
                     "(aliases 4.1, 4.2, 5.1, 6.2, 6.3)")
        ->required();
    c_lemma->add_option("--eps", aa.eps, "Shear parameter");
    c_lemma->add_option("--axis", aa.axis, "Axis (1-based)");
    c_lemma->add_option("--samples", samples, "Direction count");
    c_lemma->add_option("--seed", aa.seed, "RNG seed");
    c_lemma->add_option("--expect", expect, "Expected verdict")
        ->check(CLI::IsMember({"confirmed", "refuted", "inconclusive"}));
    add_output_flags(c_lemma, oo);

    CLI11_PARSE(app, argc, argv);

    try {
        auto t0 = std::chrono::steady_clock::now();
        auto elapsed_ms = [&t0] {
            return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        };

        if (c_classify->parsed()) return run_classify(n, p_text, degree, oo);

        if (c_scan->parsed()) {
            std::vector<Rat> ps;
            for (auto& s : p_list) ps.push_back(parse_rat(s));
            if (!p_from.empty() || !p_to.empty() || !p_step.empty()) {
                if (p_from.empty() || p_to.empty() || p_step.empty())
                    throw std::invalid_argument("range scan needs --p-from, --p-to and --step");
                Rat from = parse_rat(p_from), to = parse_rat(p_to), step = parse_rat(p_step);
                if (step <= 0) throw std::invalid_argument("step must be positive");
                for (Rat p = from; p <= to; p += step) ps.push_back(p);
            }
            auto rows = scan(n, ps, degree);
            std::ostringstream os;
            os << "p,dimension,special\n";
            for (auto& r : rows) os << rat_str(r.p) << "," << r.dimension << "," << r.special << "\n";
            Json inputs{{"n", n}, {"ansatz_degree", degree}};
            Json presult = Json::array();
            for (auto& r : rows) presult.push_back(rat_str(r.p));
            inputs["p_values"] = presult;
            return emit(oo, envelope("scan", inputs, Json{{"rows", to_json(rows)}}, oo, elapsed_ms()),
                        os.str());
        }

        if (c_verify->parsed()) {
            Rat p = parse_rat(p_text);
            GroupAction action = build_action(aa, n);
            SamplePlan plan(n, radius, samples, aa.seed);
            ScalarField u = fields::unit_ball(n);
            ResidualReport r = certify_action(action, p, u, plan);
            Json inputs{{"n", n},       {"p", rat_str(p)},   {"action", aa.id},
                        {"eps", aa.eps}, {"axis", aa.axis},  {"samples", samples},
                        {"radius", radius}, {"seed", aa.seed}, {"expect", expect}};
            int rc = emit(oo, envelope("verify", inputs, to_json(r), oo, elapsed_ms()),
                          render_report_text(r));
            return rc != 0 ? rc : check_expectation(r, expect);
        }

        if (c_resolve->parsed()) {
            GroupAction action = build_action(aa, n);
            auto transforms = action.resolve();
            Rng rng(aa.seed);
            MatD body = rng.nonsingular(n + 1);
            SamplePlan plan(n, radius, samples, aa.seed);
            ResidualReport r = certify_resolution(action, body, plan);

            std::ostringstream os;
            os << action.str() << " resolves to:\n";
            Json tj = Json::array();
            for (auto& t : transforms) {
                os << "  " << to_json(t).dump() << "\n";
                tj.push_back(to_json(t));
            }
            os << render_report_text(r);
            Json inputs{{"n", n},        {"action", aa.id}, {"eps", aa.eps},
                        {"axis", aa.axis}, {"samples", samples}, {"radius", radius},
                        {"seed", aa.seed}};
            Json results{{"transforms", std::move(tj)}, {"certification", to_json(r)}};
            int rc = emit(oo, envelope("resolve", inputs, results, oo, elapsed_ms()), os.str());
            return rc != 0 ? rc : check_expectation(r, "confirmed");
        }

        if (c_decompose->parsed()) {
            MatD A = parse_matrix(matrix_text);
            SLDecomposition d = sl_decompose(A);
            MatD lam(A.rows(), A.rows());
            for (int i = 0; i < A.rows(); ++i) lam(i, i) = d.lambda[i];
            double err = frobenius(d.P * lam * d.Q - A);
            std::ostringstream os;
            os << "P = " << to_json(d.P).dump() << "\n";
            os << "lambda = " << Json(d.lambda).dump() << "\n";
            os << "Q = " << to_json(d.Q).dump() << "\n";
            os << "reconstruction error = " << err << "\n";
            Json results = to_json(d);
            results["reconstruction_error"] = err;
            return emit(oo, envelope("decompose", Json{{"matrix", matrix_text}}, results, oo, elapsed_ms()),
                        os.str());
        }

        if (c_lemma->parsed()) {
            SupportLemma lemma;
            if (lemma_id == "rotation" || lemma_id == "4.1")
                lemma = SupportLemma::Rotation;
            else if (lemma_id == "axis-scaling" || lemma_id == "4.2")
                lemma = SupportLemma::AxisScaling;
            else if (lemma_id == "translation" || lemma_id == "5.1")
                lemma = SupportLemma::Translation;
            else if (lemma_id == "shear-last" || lemma_id == "6.2")
                lemma = SupportLemma::ShearLast;
            else if (lemma_id == "shear-axis" || lemma_id == "6.3")
                lemma = SupportLemma::ShearAxis;
            else
                throw std::invalid_argument("unknown lemma id: " + lemma_id);

            Rng rng(aa.seed);
            MatD body = rng.nonsingular(n + 1);
            LemmaParams params;
            params.axis = aa.axis - 1;
            params.eps = aa.eps;
            params.S = rng.rotation(n + 1);
            params.k.resize(n + 1);
            for (auto& f : params.k) f = rng.uniform(0.5, 2.0);
            params.b.resize(n + 1);
            for (auto& c : params.b) c = rng.uniform(-1.0, 1.0);
            SamplePlan plan(n, 1.0, samples, aa.seed);
            ResidualReport r = certify_lemma(lemma, body, params, plan);
            Json inputs{{"n", n},       {"lemma", lemma_name(lemma)}, {"eps", aa.eps},
                        {"axis", aa.axis}, {"samples", samples},      {"seed", aa.seed}};
            int rc = emit(oo, envelope("lemma", inputs, to_json(r), oo, elapsed_ms()),
                          render_report_text(r));
            return rc != 0 ? rc : check_expectation(r, expect);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
