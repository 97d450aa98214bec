// Command-line front end. Exit codes: 0 success, 1 verification failure,
// 2 usage or input error.
#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "tdq/classify.hpp"
#include "tdq/cohomology.hpp"
#include "tdq/core.hpp"
#include "tdq/deform.hpp"
#include "tdq/io.hpp"
#include "tdq/linear.hpp"
#include "tdq/words.hpp"

using namespace tdq;
using nlohmann::json;

namespace {

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    json j;
    in >> j;
    return j;
}

// A linear base from either a table in column-permutation notation or a JSON
// file holding a bialgebra ({"dim","T","delta","epsilon"}) or a set table
// ({"order","values"}).
TernaryBialgebra load_base(const std::string& notation, const std::string& input_path) {
    if (notation.empty() == input_path.empty())
        throw std::invalid_argument("give exactly one of --notation and --input");
    if (!notation.empty()) return linearize_set(table_from_notation_string(notation));
    json j = read_json_file(input_path);
    if (j.contains("T")) return bialgebra_from_json(j);
    if (j.contains("values")) return linearize_set(table_from_json(j));
    throw std::invalid_argument(input_path + ": neither a bialgebra nor a table");
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write " + out_path);
    out << j.dump(2) << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ternary self-distributive structure toolkit"};
    app.require_subcommand(1);

    // ------------------------------------------------------------------ check
    auto* check = app.add_subcommand("check", "verify axioms of a ternary table");
    std::string check_notation;
    std::string expect = "quandle";
    check->add_option("--notation", check_notation,
                      "table in column-permutation notation, e.g. \"(1),(12); (12),(1)\"")
        ->required();
    check->add_option("--expect", expect, "quandle|rack|shelf|medial|report")
        ->check(CLI::IsMember({"quandle", "rack", "shelf", "medial", "report"}));

    // -------------------------------------------------------------- enumerate
    auto* enumerate = app.add_subcommand("enumerate", "enumerate isomorphism classes");
    int order = 2;
    bool racks = false;
    enumerate->add_option("--order", order, "structure order")->required();
    enumerate->add_flag("--racks", racks, "drop the idempotence requirement");

    // ------------------------------------------------------------------ words
    auto* words = app.add_subcommand("words", "search group words for distributivity");
    int length = 3;
    words->add_option("--length", length, "word length (odd)")->required();

    // ---------------------------------------------------------------- linmaps
    auto* linmaps = app.add_subcommand("linmaps", "linear-map layer");
    linmaps->require_subcommand(1);
    auto* dim2 = linmaps->add_subcommand(
        "classify-dim2", "all signed-basis solutions of the matrix identities in dimension 2");
    std::string dim2_out;
    dim2->add_option("--out", dim2_out, "output JSON path (default stdout)");
    auto* lincheck =
        linmaps->add_subcommand("check", "structure identities of a linear base");
    std::string lincheck_notation, lincheck_input;
    lincheck->add_option("--notation", lincheck_notation, "set table to linearize");
    lincheck->add_option("--input", lincheck_input, "bialgebra or table JSON file");

    // ------------------------------------------------------------- cohomology
    auto* cohomology = app.add_subcommand("cohomology", "assemble differentials and report");
    std::string coh_notation, coh_input, coh_out;
    cohomology->add_option("--notation", coh_notation, "set table to linearize");
    cohomology->add_option("--input", coh_input, "bialgebra or table JSON file");
    cohomology->add_option("--out", coh_out, "output JSON path (default stdout)");

    // ----------------------------------------------------------------- deform
    auto* deform = app.add_subcommand("deform", "truncated formal deformations");
    deform->require_subcommand(1);
    auto* dcheck = deform->add_subcommand("check", "order-by-order validity of a deformation");
    std::string dc_notation, dc_input, dc_t1, dc_delta1;
    int dc_order = 1;
    dcheck->add_option("--notation", dc_notation, "base set table to linearize");
    dcheck->add_option("--input", dc_input, "base bialgebra or table JSON file");
    dcheck->add_option("--t1", dc_t1, "order-1 deformation of T (LinearMap JSON)")->required();
    dcheck->add_option("--delta1", dc_delta1, "order-1 deformation of Delta (LinearMap JSON)");
    dcheck->add_option("--order", dc_order, "truncation order N >= 1");
    auto* dtriv = deform->add_subcommand(
        "trivialize", "absorb a leading coboundary term into an equivalence");
    std::string dt_notation, dt_input, dt_t1, dt_delta1;
    dtriv->add_option("--notation", dt_notation, "base set table to linearize");
    dtriv->add_option("--input", dt_input, "base bialgebra or table JSON file");
    dtriv->add_option("--t1", dt_t1, "order-1 deformation of T (LinearMap JSON)")->required();
    dtriv->add_option("--delta1", dt_delta1, "order-1 deformation of Delta (LinearMap JSON)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*check) {
            TernaryTable t = table_from_notation_string(check_notation);
            StructureReport r = classify_structure(t);
            std::cout << "shelf: " << (r.is_shelf ? "yes" : "no") << "\n"
                      << "rack: " << (r.is_rack ? "yes" : "no") << "\n"
                      << "quandle: " << (r.is_quandle ? "yes" : "no") << "\n"
                      << "medial: " << (r.is_medial ? "yes" : "no") << "\n";
            if (r.shelf_witness) {
                auto w = *r.shelf_witness;
                std::cout << "distributivity fails at (x,y,z,u,v) = (" << w[0] + 1 << "," << w[1] + 1
                          << "," << w[2] + 1 << "," << w[3] + 1 << "," << w[4] + 1 << ")\n";
            }
            if (expect == "report") return 0;
            bool ok = expect == "quandle" ? r.is_quandle
                      : expect == "rack"  ? r.is_rack
                      : expect == "shelf" ? r.is_shelf
                                          : r.is_medial;
            return ok ? 0 : 1;
        }
        if (*enumerate) {
            EnumerateOptions opts;
            opts.require_idempotence = !racks;
            auto classes = enumerate_ternary_quandles(order, opts);
            for (const auto& c : classes)
                std::cout << table_to_notation_string(c.representative)
                          << "  # class size " << c.class_size << "\n";
            std::cout << classes.size() << " classes\n";
            return 0;
        }
        if (*words) {
            auto found = search_words(length);
            for (const auto& w : found) std::cout << word_to_string(w) << "\n";
            std::cout << found.size() << " words\n";
            return 0;
        }
        if (*dim2) {
            auto solutions = classify_dim2_maps();
            emit(dim2_solutions_to_json(solutions), dim2_out);
            std::cerr << solutions.size() << " solutions\n";
            return 0;
        }
        if (*lincheck) {
            TernaryBialgebra b = load_base(lincheck_notation, lincheck_input);
            bool distributive = check_linear_distributive(b.T, b.coalgebra);
            bool compatible = check_compatibility(b.T, b.coalgebra);
            CoassocReport coassoc = check_coassoc(b.coalgebra);
            AssocReport assoc = check_ternary_assoc(b.T, b.eta);
            json out = {{"dim", b.dim},
                        {"distributive", distributive},
                        {"compatible", compatible},
                        {"coassociative_total", coassoc.total},
                        {"coassociative_weak", coassoc.weak},
                        {"counital", coassoc.counital},
                        {"associative_total", assoc.total},
                        {"associative_weak", assoc.weak}};
            if (assoc.unit_laws) out["unit_laws"] = *assoc.unit_laws;
            emit(out, "");
            return (distributive && compatible && coassoc.total) ? 0 : 1;
        }
        if (*cohomology) {
            TernaryBialgebra b = load_base(coh_notation, coh_input);
            try {
                DifferentialPair pair = DifferentialPair::assemble(b);
                CohomologyReport r = cohomology_report(pair);
                json out = cohomology_report_to_json(r);
                out["d2_d1_residual"] = linear_map_to_json(pair.d2 * pair.d1);
                out["d2_d1_residual_zero"] = true;
                emit(out, coh_out);
                return 0;
            } catch (const ChainConditionError& e) {
                LinearMap residual = build_d2(b) * build_d1(b);
                json out = {{"chain_condition_violation", true},
                            {"witness_column", e.witness_column},
                            {"d2_d1_residual", linear_map_to_json(residual)}};
                emit(out, coh_out);
                return 1;
            }
        }
        if (*dcheck || *dtriv) {
            const bool checking = static_cast<bool>(*dcheck);
            TernaryBialgebra b = load_base(checking ? dc_notation : dt_notation,
                                           checking ? dc_input : dt_input);
            const int d3 = b.dim * b.dim * b.dim;
            const int N = checking ? dc_order : 1;
            if (N < 1) throw std::invalid_argument("--order must be >= 1");
            std::vector<LinearMap> t_terms(N, LinearMap::zero(b.dim, d3));
            std::vector<LinearMap> delta_terms(N, LinearMap::zero(d3, b.dim));
            t_terms[0] = linear_map_from_json(read_json_file(checking ? dc_t1 : dt_t1));
            const std::string& delta1_path = checking ? dc_delta1 : dt_delta1;
            if (!delta1_path.empty())
                delta_terms[0] = linear_map_from_json(read_json_file(delta1_path));
            TruncatedDeformation d(b, std::move(t_terms), std::move(delta_terms));

            if (checking) {
                json defects = json::array();
                bool valid = true;
                for (int k = 1; k <= d.order; ++k) {
                    ObstructionTriple defect = deformation_defect(d, k);
                    json entry = {{"order", k},
                                  {"phi1_zero", defect.phi1.is_zero()},
                                  {"phi2_zero", defect.phi2.is_zero()},
                                  {"phi3_zero", defect.phi3.is_zero()}};
                    if (!defect.phi1.is_zero()) entry["phi1"] = linear_map_to_json(defect.phi1);
                    if (!defect.phi2.is_zero()) entry["phi2"] = linear_map_to_json(defect.phi2);
                    if (!defect.phi3.is_zero()) entry["phi3"] = linear_map_to_json(defect.phi3);
                    valid = valid && defect.all_zero();
                    defects.push_back(entry);
                }
                emit({{"order", d.order}, {"valid_mod", valid}, {"defects", defects}}, "");
                return valid ? 0 : 1;
            }
            auto phi = trivialize_coboundary(d);
            if (!phi) {
                emit({{"trivializable", false}}, "");
                return 1;
            }
            TruncatedDeformation moved = apply_equivalence(*phi, d);
            bool pushed = !moved.first_nonzero_order().has_value() ||
                          *moved.first_nonzero_order() > 1;
            emit({{"trivializable", true},
                  {"g", linear_map_to_json(phi->phi_terms[0])},
                  {"pushed_past_order_one", pushed}},
                 "");
            return pushed ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
